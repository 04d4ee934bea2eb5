#pragma once

#include "qdouble/rootdata.hpp"

#include "json.hpp"

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdouble::cli {

/// Suites in execution order.
const std::vector<std::string>& all_suites();

struct JobSpec {
    std::string path;
    std::string type;
    int rank = 0;
    std::set<int> X;       // 0-based
    std::vector<int> tau;  // 0-based involution
    std::string lattice = "P";
    std::vector<IWeight> lattice_rows;
    long height = 2;
    int degree = 4;
    int maxdeg = 8;
    std::vector<double> q0{0.3, 0.5, 0.8};
    double precision = 1e-10;
    /// Added to one Serre coefficient; nonzero only in failure-path fixtures.
    long serre_perturbation = 0;
    std::vector<std::string> suites = all_suites();
};

/// Syntax or semantic error in a spec file, with a 1-based position.
class SpecError : public std::runtime_error {
public:
    SpecError(const std::string& path, int line, int col, const std::string& msg);
    int line() const { return line_; }
    int col() const { return col_; }
    const std::string& message() const { return msg_; }

private:
    int line_, col_;
    std::string msg_;
};

JobSpec parse_spec_text(const std::string& text, const std::string& path = "<input>");
/// Throws std::runtime_error when the file cannot be read.
JobSpec parse_spec(const std::string& path);
/// Comma-separated suite list; throws std::invalid_argument on unknown names.
std::vector<std::string> parse_suites(const std::string& list);

struct RunResult {
    int exit_code = 0;
    nlohmann::json report;
};
/// Exit 0 when every check passes, 1 on any failure, 2 when some check is undecided and none fails.
RunResult run(const JobSpec& job);

struct CatalogEntry {
    std::string file;  // under the fixtures directory
    std::string type;
    int rank;
    std::set<int> X;
    std::vector<int> tau;
    std::string real_form;
    std::string pair;
};
const std::vector<CatalogEntry>& catalog();
/// "A1 X=∅ τ=id : sl(2,R) / so(2) ⊆ su(2)", one line per entry.
std::string list_catalog();
std::string describe(const CatalogEntry& e);

}  // namespace qdouble::cli

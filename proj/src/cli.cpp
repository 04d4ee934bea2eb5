#include "qdouble/cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace qdouble::cli {

const std::vector<std::string>& all_suites() {
    static const std::vector<std::string> s{"satake", "serre", "hopf",      "reps",   "braid",  "coideal",
                                            "star",   "spherical", "dual", "haar", "double", "dkmodule"};
    return s;
}

SpecError::SpecError(const std::string& path, int line, int col, const std::string& msg)
    : std::runtime_error(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
      line_(line),
      col_(col),
      msg_(msg) {}

namespace {

/// Cursor over one value; columns are 1-based within the line.
class Cursor {
public:
    Cursor(const std::string& path, int line, int col0, std::string text)
        : path_(path), line_(line), col0_(col0), s_(std::move(text)) {}

    [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
        throw SpecError(path_, line_, col0_ + static_cast<int>(at), msg);
    }
    [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }
    int col() const { return col0_ + static_cast<int>(pos_); }
    std::size_t pos() const { return pos_; }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    void expect(char c) {
        if (!peek(c)) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }
    void end() {
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
    }
    long integer() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start || !std::isdigit(static_cast<unsigned char>(s_[pos_ - 1]))) fail("expected an integer", start);
        return std::stol(s_.substr(start, pos_ - start));
    }
    double real() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) ||
                                     std::string("+-.eE").find(s_[pos_]) != std::string::npos))
            ++pos_;
        try {
            std::size_t used = 0;
            double v = std::stod(s_.substr(start, pos_ - start), &used);
            if (used != pos_ - start) fail("malformed number", start);
            return v;
        } catch (const std::logic_error&) {
            fail("expected a number", start);
        }
    }
    std::string word() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected a name");
        return s_.substr(start, pos_ - start);
    }
    /// [a, b, ...] via an element parser.
    template <class F>
    void list(F&& element) {
        expect('[');
        if (accept(']')) return;
        do element();
        while (accept(','));
        expect(']');
    }

private:
    std::string path_;
    int line_, col0_;
    std::string s_;
    std::size_t pos_ = 0;
};

struct Pos {
    int line = 0, col = 0;
};

std::string trim(const std::string& s, std::size_t& lead) {
    lead = 0;
    while (lead < s.size() && std::isspace(static_cast<unsigned char>(s[lead]))) ++lead;
    std::size_t end = s.size();
    while (end > lead && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(lead, end - lead);
}

}  // namespace

JobSpec parse_spec_text(const std::string& text, const std::string& path) {
    JobSpec job;
    job.path = path;
    std::map<std::string, Pos> seen;
    std::vector<std::pair<std::pair<long, long>, Pos>> tau_pairs;
    std::vector<std::pair<long, Pos>> x_entries;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        std::size_t lead = 0;
        const std::string line = trim(raw, lead);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw SpecError(path, lineno, static_cast<int>(lead) + 1, "expected 'key = value'");
        std::size_t klead = 0;
        const std::string key = trim(line.substr(0, eq), klead);
        const int kcol = static_cast<int>(lead + klead) + 1;
        if (key.empty()) throw SpecError(path, lineno, kcol, "missing key");
        if (seen.count(key)) throw SpecError(path, lineno, kcol, "duplicate key '" + key + "'");
        seen[key] = {lineno, kcol};
        Cursor c(path, lineno, static_cast<int>(lead + eq + 1) + 1, line.substr(eq + 1));

        if (key == "type") {
            std::string t = c.word();
            if (t != "A" && t != "B" && t != "C" && t != "D" && t != "G2") c.fail("unsupported type '" + t + "'", 1);
            job.type = t;
        } else if (key == "rank") {
            const long r = c.integer();
            if (r < 1 || r > 8) c.fail("unsupported rank " + std::to_string(r), 1);
            job.rank = static_cast<int>(r);
        } else if (key == "X") {
            c.list([&] {
                const int col = c.col() + 1;
                x_entries.push_back({c.integer(), {lineno, col}});
            });
        } else if (key == "tau") {
            c.list([&] {
                c.skip_ws();
                const Pos p{lineno, c.col()};
                c.expect('(');
                const long a = c.integer();
                c.expect(',');
                const long b = c.integer();
                c.expect(')');
                tau_pairs.push_back({{a, b}, p});
            });
        } else if (key == "lattice") {
            c.skip_ws();
            if (c.peek('[')) {
                job.lattice = "custom";
                c.list([&] {
                    IWeight row;
                    c.list([&] { row.push_back(c.integer()); });
                    job.lattice_rows.push_back(std::move(row));
                });
            } else {
                const bool quoted = c.accept('"');
                job.lattice = c.word();
                if (quoted) c.expect('"');
                if (job.lattice != "P" && job.lattice != "Q") c.fail("lattice must be P, Q or a list of rows", 1);
            }
        } else if (key == "height" || key == "degree" || key == "maxdeg") {
            const long v = c.integer();
            if (v <= 0) c.fail(key + " must be positive", 1);
            if (key == "height") job.height = v;
            else if (key == "degree") job.degree = static_cast<int>(v);
            else job.maxdeg = static_cast<int>(v);
        } else if (key == "q0") {
            job.q0.clear();
            c.list([&] {
                const std::size_t at = c.pos();
                const double v = c.real();
                if (!(v > 0 && v < 1)) c.fail("q0 samples must lie in (0,1)", at + 1);
                job.q0.push_back(v);
            });
            if (job.q0.empty()) c.fail("q0 needs at least one sample", 1);
        } else if (key == "precision") {
            const double v = c.real();
            if (!(v > 0)) c.fail("precision must be positive", 1);
            job.precision = v;
        } else if (key == "serre_perturbation") {
            job.serre_perturbation = c.integer();
        } else {
            throw SpecError(path, lineno, kcol, "unknown key '" + key + "'");
        }
        c.end();
    }

    const int after = lineno + 1;
    if (job.type.empty()) throw SpecError(path, after, 1, "missing key 'type'");
    if (job.rank == 0) throw SpecError(path, after, 1, "missing key 'rank'");
    if (job.type == "G2" && job.rank != 2) throw SpecError(path, seen["rank"].line, seen["rank"].col, "G2 has rank 2");
    if ((job.type == "B" || job.type == "D") && job.rank < 2)
        throw SpecError(path, seen["rank"].line, seen["rank"].col, "unsupported rank for type " + job.type);

    for (const auto& [x, p] : x_entries) {
        if (x < 1 || x > job.rank) throw SpecError(path, p.line, p.col, "X index out of range");
        job.X.insert(static_cast<int>(x - 1));
    }
    job.tau.resize(job.rank);
    for (int i = 0; i < job.rank; ++i) job.tau[i] = i;
    std::vector<bool> used(job.rank, false);
    for (const auto& [ab, p] : tau_pairs) {
        const auto [a, b] = ab;
        if (a < 1 || a > job.rank || b < 1 || b > job.rank) throw SpecError(path, p.line, p.col, "tau index out of range");
        if (used[a - 1] || used[b - 1]) throw SpecError(path, p.line, p.col, "tau pairs overlap");
        used[a - 1] = used[b - 1] = true;
        job.tau[a - 1] = static_cast<int>(b - 1);
        job.tau[b - 1] = static_cast<int>(a - 1);
    }
    if (job.lattice == "custom")
        for (const auto& row : job.lattice_rows)
            if (row.size() != static_cast<std::size_t>(job.rank))
                throw SpecError(path, seen["lattice"].line, seen["lattice"].col, "lattice row has wrong length");
    return job;
}

JobSpec parse_spec(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_spec_text(ss.str(), path);
}

std::vector<std::string> parse_suites(const std::string& list) {
    std::vector<std::string> out;
    std::stringstream ss(list);
    std::string s;
    while (std::getline(ss, s, ',')) {
        std::size_t lead = 0;
        s = trim(s, lead);
        if (s.empty()) continue;
        if (s == "all") return all_suites();
        if (std::find(all_suites().begin(), all_suites().end(), s) == all_suites().end())
            throw std::invalid_argument("unknown suite '" + s + "'");
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    }
    if (out.empty()) throw std::invalid_argument("no suites selected");
    std::vector<std::string> ordered;
    for (const auto& a : all_suites())
        if (std::find(out.begin(), out.end(), a) != out.end()) ordered.push_back(a);
    return ordered;
}

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> c{
        {"a1_split.spec", "A", 1, {}, {0}, "sl(2,R)", "so(2) ⊆ su(2)"},
        {"a1_compact.spec", "A", 1, {0}, {0}, "su(2)", "su(2) ⊆ su(2)"},
        {"d2_diagonal.spec", "D", 2, {}, {1, 0}, "sl(2,C)", "u ⊆ u ⊕ u"},
        {"a2_split.spec", "A", 2, {}, {0, 1}, "sl(3,R)", "so(3) ⊆ su(3)"},
        {"a2_su21.spec", "A", 2, {}, {1, 0}, "su(2,1)", "s(u(2) ⊕ u(1)) ⊆ su(3)"},
        {"b2_split.spec", "B", 2, {}, {0, 1}, "so(3,2)", "so(3) ⊕ so(2) ⊆ so(5)"},
        {"b2_so41.spec", "B", 2, {1}, {0, 1}, "so(4,1)", "so(4) ⊆ so(5)"},
        {"g2_split.spec", "G2", 2, {}, {0, 1}, "g2(2)", "su(2) ⊕ su(2) ⊆ g2"},
        {"a3_split.spec", "A", 3, {}, {0, 1, 2}, "sl(4,R)", "so(4) ⊆ su(4)"},
        {"a3_su22.spec", "A", 3, {}, {2, 1, 0}, "su(2,2)", "s(u(2) ⊕ u(2)) ⊆ su(4)"},
        {"a3_su31.spec", "A", 3, {1}, {2, 1, 0}, "su(3,1)", "s(u(3) ⊕ u(1)) ⊆ su(4)"},
        {"a3_sl2h.spec", "A", 3, {0, 2}, {0, 1, 2}, "sl(2,H)", "sp(2) ⊆ su(4)"},
        {"b3_split.spec", "B", 3, {}, {0, 1, 2}, "so(4,3)", "so(4) ⊕ so(3) ⊆ so(7)"},
        {"b3_so52.spec", "B", 3, {2}, {0, 1, 2}, "so(5,2)", "so(5) ⊕ so(2) ⊆ so(7)"},
        {"c3_split.spec", "C", 3, {}, {0, 1, 2}, "sp(6,R)", "u(3) ⊆ sp(3)"},
        {"c3_sp12.spec", "C", 3, {0, 2}, {0, 1, 2}, "sp(1,2)", "sp(1) ⊕ sp(2) ⊆ sp(3)"},
    };
    return c;
}

std::string describe(const CatalogEntry& e) {
    std::string x = "∅";
    if (!e.X.empty()) {
        x = "{";
        bool first = true;
        for (int i : e.X) {
            x += (first ? "" : ",") + std::to_string(i + 1);
            first = false;
        }
        x += "}";
    }
    std::string t;
    for (int i = 0; i < e.rank; ++i)
        if (e.tau[i] > i) t += "(" + std::to_string(i + 1) + " " + std::to_string(e.tau[i] + 1) + ")";
    if (t.empty()) t = "id";
    return e.type + (e.type == "G2" ? "" : std::to_string(e.rank)) + " X=" + x + " τ=" + t + " : " + e.real_form + " / " +
           e.pair;
}

std::string list_catalog() {
    std::string out;
    for (const auto& e : catalog()) out += describe(e) + "  [" + e.file + "]\n";
    return out;
}

}  // namespace qdouble::cli

#include "qdouble/cli.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"qdouble: exact verification of quantum symmetric pairs and their doubles"};
    app.require_subcommand(1);

    std::string spec, out, suites;
    long height = 0;
    int degree = 0;
    auto* verify = app.add_subcommand("verify", "Run verification suites on a diagram spec file");
    verify->add_option("spec", spec, "Diagram spec file")->required();
    verify->add_option("--suite", suites, "Comma-separated suites");
    verify->add_option("--out", out, "Write the JSON report here instead of stdout");
    verify->add_option("--height", height, "Highest-weight height bound")->check(CLI::PositiveNumber);
    verify->add_option("--degree", degree, "Certificate degree bound")->check(CLI::PositiveNumber);
    auto* cat = app.add_subcommand("catalog", "List the shipped Satake diagram fixtures");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 3;
    }

    if (*cat) {
        std::cout << qdouble::cli::list_catalog();
        return 0;
    }

    qdouble::cli::JobSpec job;
    try {
        job = qdouble::cli::parse_spec(spec);
        if (!suites.empty()) job.suites = qdouble::cli::parse_suites(suites);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 3;
    }
    if (height > 0) job.height = height;
    if (degree > 0) job.degree = degree;

    const auto result = qdouble::cli::run(job);
    const std::string text = result.report.dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out, std::ios::binary);
        if (!f || !(f << text)) {
            std::cerr << "cannot write " << out << "\n";
            return 4;
        }
    }
    return result.exit_code;
}

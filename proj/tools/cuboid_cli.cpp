// Command-line front end: verify, fiber, degenerate, search, report.

#include "cuboid/pipeline.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

struct Options {
    std::string format = "text";
    std::string output;
    std::vector<std::string> s_values;
    long bound = 100;
    unsigned workers = 0;
    std::vector<std::string> from;
};

cuboid::OutputFormat parse_format(const std::string& f) {
    return f == "json" ? cuboid::OutputFormat::json : cuboid::OutputFormat::text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact obstruction pipeline for 2+3 factorizations of the cuboid quintic"};
    app.require_subcommand(1, 1);
    Options opt;
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--output,-o", opt.output, "Write output to this file instead of stdout");

    auto* verify = app.add_subcommand("verify", "Check the identities defining the obstruction curve");
    auto* fiber = app.add_subcommand("fiber", "Rational points on fibers s = s0");
    fiber->add_option("--s", opt.s_values, "Fiber values (rational, e.g. 4/9); default 1 4 4/9 2");
    auto* degenerate = app.add_subcommand("degenerate", "Classify the degenerate locus L = C = 0");
    auto* search = app.add_subcommand("search", "Height-bounded rational point search on the curve");
    search->add_option("--bound", opt.bound, "Height bound on s = p/q (max(|p|, q))")->check(CLI::Range(1L, 1000000L));
    search->add_option("--workers", opt.workers, "Worker threads (default: $CUBOID_WORKERS or hardware threads)")
        ->check(CLI::Range(1U, 4096U));
    auto* report = app.add_subcommand("report", "Aggregate step results and print the verdict");
    report->add_option("--from", opt.from, "JSON step results to merge; missing steps are recomputed");
    report->add_option("--bound", opt.bound, "Height bound if the search step is recomputed")->check(CLI::Range(1L, 1000000L));
    report->add_option("--workers", opt.workers, "Worker threads for a recomputed search")->check(CLI::Range(1U, 4096U));
    for (auto* sub : {verify, fiber, degenerate, search, report}) {
        sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--output,-o", opt.output, "Write output to this file instead of stdout");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cuboid::kExitUsage;
    }

    std::ofstream file;
    if (!opt.output.empty()) {
        file.open(opt.output);
        if (!file) {
            std::cerr << "error: cannot open output file " << opt.output << "\n";
            return cuboid::kExitUsage;
        }
    }
    std::ostream& out = opt.output.empty() ? std::cout : file;
    const cuboid::OutputFormat fmt = parse_format(opt.format);
    cuboid::SearchConfig cfg{cuboid::BigInt(opt.bound), opt.workers == 0 ? cuboid::default_workers() : opt.workers};

    std::vector<cuboid::Rational> s_values;
    try {
        for (const auto& s : opt.s_values) s_values.push_back(cuboid::Rational::parse(s));
    } catch (const std::exception& e) {
        std::cerr << "error: invalid fiber value: " << e.what() << "\n";
        return cuboid::kExitUsage;
    }
    if (s_values.empty()) s_values = cuboid::default_fiber_values();

    try {
        const cuboid::ObstructionSystem& sys = cuboid::shared_system();
        if (*verify) return cuboid::cmd_verify(sys, out, fmt);
        if (*fiber) return cuboid::cmd_fiber(sys, s_values, out, fmt);
        if (*degenerate) return cuboid::cmd_degenerate(sys, out, fmt);
        if (*search) return cuboid::cmd_search(sys, cfg, out, fmt);
        if (*report) return cuboid::cmd_report(sys, opt.from, cfg, out, std::cerr, fmt);
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cuboid::kExitCheckFailed;
    }
    return cuboid::kExitUsage;
}

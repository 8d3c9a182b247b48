#include "acceptance/criteria.hh"

#include <CLI11.hpp>

#include <iostream>

auto main(int argc, char ** argv) -> int
{
    CLI::App app{"Runs the acceptance criteria and prints one PASS/FAIL line each."};
    lhom::acceptance::Options options;
    std::vector<int> only;
    app.add_option("--seed", options.seed, "Seed for instance generation")->default_val(1);
    app.add_option("--threads", options.threads, "Parallelism budget")->default_val(1);
    app.add_option("--only", only, "Run only these criteria");
    CLI11_PARSE(app, argc, argv);
    auto ids = only.empty() ? lhom::acceptance::criterion_ids() : only;
    return lhom::acceptance::run_criteria(ids, options, std::cout) ? 0 : 1;
}

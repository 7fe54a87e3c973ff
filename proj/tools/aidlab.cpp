#include <CLI11.hpp>

#include <iostream>

#include "aidlab/commands.hpp"

using namespace aidlab;

int main(int argc, char** argv)
{
    CLI::App app{"aidlab: derivations and almost inner derivations of Lie algebras, in exact arithmetic"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    app.add_option("--seed", cfg.sampling.seed, "seed of the random sample phase")->capture_default_str();
    app.add_option("--max-samples", cfg.sampling.max_samples, "sample budget of the upper bound")->capture_default_str();
    app.add_option("--stall-limit", cfg.sampling.stall_limit, "random samples without progress before stopping")->capture_default_str();
    app.add_option("--out", cfg.out, "write JSON here instead of stdout");
    app.add_option("--parametric-depth", cfg.parametric_depth, "case-split depth of the parametric solver")->capture_default_str();
    bool no_parametric = false;
    app.add_flag("--no-parametric", no_parametric, "do not close sandwich gaps with the parametric solver");

    std::string target, derivation, witness;
    bool hall = false;
    ScalarsArgs sargs;

    auto* analyze = app.add_subcommand("analyze", "certify or bound AID for a family spec or algebra JSON file");
    analyze->add_option("target", target, "family spec (L:n, W:n, free:r,c, ...) or algebra JSON path")->required();

    auto* suite = app.add_subcommand("paper-suite", "run the reproduction matrix");

    auto* wit = app.add_subcommand("witness", "verify a piecewise witness for a derivation");
    wit->add_option("target", target, "family spec or algebra JSON path")->required();
    wit->add_option("--derivation", derivation, "ad:e<k>, a named derivation, or a matrix JSON path")->required();
    wit->add_option("--witness", witness, "built-in witness name or witness JSON path (default: the derivation name)");

    auto* fam = app.add_subcommand("family", "dump algebra JSON");
    fam->add_option("target", target, "family spec or algebra JSON path")->required();
    fam->add_flag("--hall", hall, "include the Hall basis of free:r,c");

    auto* scalars = app.add_subcommand("scalars", "extension and restriction of scalars");
    scalars->require_subcommand(1);
    auto* restrict_cmd = scalars->add_subcommand("restrict", "restrict K ⊗ g to Q");
    auto* scaled_cmd = scalars->add_subcommand("scaled", "scaled derivations of the restricted algebra");
    for (auto* sub : {restrict_cmd, scaled_cmd}) {
        sub->add_option("--minpoly", sargs.minpoly, "monic minimal polynomial in x")->capture_default_str();
        sub->add_option("--algebra", sargs.algebra, "family spec or algebra JSON path")->capture_default_str();
    }
    scaled_cmd->add_option("--derivation", sargs.derivations, "ad:e<k> or a named derivation with a built-in witness; repeatable")
        ->capture_default_str();
    scaled_cmd->add_option("--y", sargs.y, "basis vector e<k> outside ker D, one per --derivation in order");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_error;
    }
    cfg.parametric_fallback = !no_parametric;
    cfg.sampling.threads = worker_limit();

    try {
        if (*analyze) return cmd_analyze(target, cfg, std::cout);
        if (*suite) return cmd_paper_suite(cfg, std::cout);
        if (*wit) return cmd_witness(target, derivation, witness.empty() ? derivation : witness, cfg, std::cout);
        if (*fam) return cmd_family(target, hall, cfg, std::cout);
        if (*restrict_cmd) return cmd_scalars_restrict(sargs, cfg, std::cout);
        if (*scaled_cmd) return cmd_scalars_scaled(sargs, cfg, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "aidlab: " << e.what() << "\n";
        return exit_error;
    }
    return exit_error;
}

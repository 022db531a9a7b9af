#include <CLI11.hpp>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "latlrr/report.hpp"

namespace {

void add_tolerance_flags(CLI::App* app, latlrr::ToleranceProfile& tol) {
    app->add_option("--rank-tol", tol.rank_rel_tol, "relative singular-value cutoff")
        ->envname("LATLRR_RANK_TOL");
    app->add_option("--eq-tol", tol.eq_rel_tol, "relative residual cutoff for equalities")
        ->envname("LATLRR_EQ_TOL");
    app->add_option("--psd-tol", tol.psd_tol, "eigenvalue negativity slack")
        ->envname("LATLRR_PSD_TOL");
    app->add_option("--sigma-group-tol", tol.sigma_group_rel_tol,
                    "relative gap for grouping equal singular values")
        ->envname("LATLRR_SIGMA_GROUP_TOL");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Closed-form LRR/LatLRR solution sets, certificates, and the "
                 "nuclear-vs-rank counterexample"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    latlrr::ToleranceProfile tol;

    // generate
    latlrr::ProblemSpec spec;
    std::string spectrum = "generic";
    std::vector<int> groups;
    std::string gen_out;
    auto* gen = app.add_subcommand("generate", "write a seeded low-rank matrix file");
    gen->add_option("--rows", spec.rows)->required();
    gen->add_option("--cols", spec.cols)->required();
    gen->add_option("--rank", spec.rank)->required();
    gen->add_option("--spectrum", spectrum)
        ->check(CLI::IsMember({"generic", "repeated", "decaying"}));
    gen->add_option("--groups", groups, "repeated-spectrum group sizes (sum = rank)");
    gen->add_option("--ratio", spec.ratio, "decaying-spectrum ratio");
    gen->add_option("--seed", spec.seed);
    gen->add_option("--out", gen_out)->required();

    // counterexample
    std::string ce_matrix, ce_mode = "canonical", ce_out;
    std::uint64_t ce_seed = 0;
    auto* ce = app.add_subcommand(
        "counterexample", "certify a nuclear optimum that is not a rank optimum");
    ce->add_option("matrix", ce_matrix)->required();
    ce->add_option("--mode", ce_mode)->check(CLI::IsMember({"canonical", "random"}));
    ce->add_option("--seed", ce_seed);
    ce->add_option("--out", ce_out)->required();
    add_tolerance_flags(ce, tol);

    // solve
    std::string sv_matrix, sv_problem = "latlrr", sv_a, sv_out;
    latlrr::SolverOptions opts;
    auto* sv = app.add_subcommand("solve",
                                  "run the convex solver and certify its output");
    sv->add_option("matrix", sv_matrix)->required();
    sv->add_option("--problem", sv_problem)->check(CLI::IsMember({"latlrr", "lrr"}));
    sv->add_option("--a", sv_a, "right-hand side A for lrr (default: X)");
    sv->add_option("--max-iters", opts.max_iters);
    sv->add_option("--penalty-init", opts.penalty_init);
    sv->add_option("--penalty-growth", opts.penalty_growth);
    sv->add_option("--penalty-cap", opts.penalty_cap);
    sv->add_option("--primal-tol", opts.primal_tol);
    sv->add_option("--change-tol", opts.change_tol);
    sv->add_option("--seed", opts.seed);
    sv->add_flag("--random-init", opts.random_init);
    sv->add_option("--out", sv_out)->required();
    add_tolerance_flags(sv, tol);

    // verify
    std::string vf_matrix, vf_z, vf_l, vf_out;
    auto* vf = app.add_subcommand("verify", "certify a supplied (Z, L) pair");
    vf->add_option("matrix", vf_matrix)->required();
    vf->add_option("z", vf_z)->required();
    vf->add_option("l", vf_l)->required();
    vf->add_option("--out", vf_out)->required();
    add_tolerance_flags(vf, tol);

    // exhibit
    std::string ex_matrix, ex_out;
    int ex_count = 2;
    std::uint64_t ex_seed = 0;
    auto* ex = app.add_subcommand("exhibit",
                                  "produce distinct certified nuclear optima");
    ex->add_option("matrix", ex_matrix)->required();
    ex->add_option("--count", ex_count);
    ex->add_option("--seed", ex_seed);
    ex->add_option("--out", ex_out)->required();
    add_tolerance_flags(ex, tol);

    // property-suite
    std::uint64_t ps_seed = 0;
    std::string ps_out;
    int ps_max_dim = 60, ps_max_rank = 20;
    auto* ps = app.add_subcommand("property-suite",
                                  "run all cross-module property batteries");
    ps->add_option("--seed", ps_seed);
    ps->add_option("--max-dim", ps_max_dim, "largest matrix side in the ensemble");
    ps->add_option("--max-rank", ps_max_rank, "largest rank in the ensemble");
    ps->add_option("--out", ps_out)->required();
    add_tolerance_flags(ps, tol);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : latlrr::kExitUsage;
    }

    try {
        latlrr::CommandResult result;
        if (*gen) {
            if (spectrum == "repeated") spec.spectrum = latlrr::SpectrumKind::Repeated;
            else if (spectrum == "decaying") spec.spectrum = latlrr::SpectrumKind::Decaying;
            spec.groups = groups;
            result = latlrr::cmd_generate(spec, gen_out);
        } else if (*ce) {
            result = latlrr::cmd_counterexample(ce_matrix, ce_mode, ce_seed, ce_out, tol);
        } else if (*sv) {
            std::optional<std::filesystem::path> a_path;
            if (!sv_a.empty()) a_path = sv_a;
            result = latlrr::cmd_solve(sv_matrix, sv_problem, a_path, opts, sv_out, tol);
        } else if (*vf) {
            result = latlrr::cmd_verify(vf_matrix, vf_z, vf_l, vf_out, tol);
        } else if (*ex) {
            if (ex_count < 2) {
                std::fprintf(stderr, "exhibit: count must be at least 2\n");
                return latlrr::kExitUsage;
            }
            result = latlrr::cmd_exhibit(ex_matrix, ex_count, ex_seed, ex_out, tol);
        } else if (*ps) {
            result = latlrr::cmd_property_suite(ps_seed, ps_out, tol, ps_max_dim,
                                                ps_max_rank);
        }
        return result.exit_code;
    } catch (const latlrr::DimensionError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return latlrr::kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return latlrr::kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return latlrr::kExitUsage;
    }
}

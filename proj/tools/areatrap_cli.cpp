// Command-line front end. Talks to the library exclusively through the
// C API in areatrap/capi.h, the same surface other language bindings get.
//
// Exit codes: 0 success, 1 validation error, 2 internal error, 3 oracle
// mismatch.

#include <areatrap/capi.h>

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>

namespace {

int exit_code_for(int status) {
    switch (status) {
        case ATP_OK: return 0;
        case ATP_E_INTERNAL: return 2;
        case ATP_E_ORACLE_MISMATCH: return 3;
        default: return 1;
    }
}

int finish(int status) {
    if (status != ATP_OK) std::fprintf(stderr, "error: %s\n", atp_last_error());
    return exit_code_for(status);
}

struct CloudGuard {
    atp_cloud* ptr = nullptr;
    ~CloudGuard() { atp_cloud_free(ptr); }
};

struct SolutionGuard {
    atp_solution* ptr = nullptr;
    ~SolutionGuard() { atp_solution_free(ptr); }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"area-trapping polymer toolkit"};
    app.require_subcommand(1);

    // sample
    double sample_n = 0.0;
    std::uint64_t sample_seed = 0, sample_trial = 0;
    std::string sample_out;
    auto* sample = app.add_subcommand("sample", "draw a Poisson cloud and write it");
    sample->add_option("--n", sample_n, "box side")->required();
    sample->add_option("--seed", sample_seed, "master seed")->required();
    sample->add_option("--trial", sample_trial, "trial index (default 0)");
    sample->add_option("--out", sample_out, "cloud file path")->required();

    // solve
    std::string solve_cloud, solve_out, solve_mode = "auto";
    double solve_n = 0.0, solve_alpha = 0.0;
    std::uint64_t solve_seed = 0, solve_trial = 0;
    bool solve_have_n = false;
    auto* solve = app.add_subcommand("solve", "solve the area-constrained problem");
    solve->add_option("--cloud", solve_cloud, "cloud file (alternative to --n/--seed)");
    solve->add_option("--n", solve_n, "box side for a fresh sample")->each([&](const std::string&) {
        solve_have_n = true;
    });
    solve->add_option("--seed", solve_seed, "master seed for a fresh sample");
    solve->add_option("--trial", solve_trial, "trial index (default 0)");
    solve->add_option("--alpha", solve_alpha, "area parameter in (0, 1/2)")->required();
    solve->add_option("--mode", solve_mode, "auto | exact | lagrangian");
    solve->add_option("--out", solve_out, "path file to write")->required();

    // limit-shape
    double ls_alpha = 0.0;
    std::string ls_curve_out;
    std::int64_t ls_samples = 101;
    auto* limit = app.add_subcommand("limit-shape", "print alpha,c,w and optionally the curve");
    limit->add_option("--alpha", ls_alpha, "area parameter in (0, 1/2)")->required();
    limit->add_option("--curve-out", ls_curve_out, "write sampled psi as x,psi_x CSV");
    limit->add_option("--samples", ls_samples, "curve sample count (default 101)");

    // trial
    std::string trial_config;
    std::uint64_t trial_index = 0;
    auto* trial = app.add_subcommand("trial", "run a single trial of a config");
    trial->add_option("--config", trial_config, "experiment config JSON")->required();
    trial->add_option("--index", trial_index, "trial index")->required();

    // sweep
    std::string sweep_config, sweep_out;
    int sweep_threads = 0;
    auto* sweep = app.add_subcommand("sweep", "run every trial of a config");
    sweep->add_option("--config", sweep_config, "experiment config JSON")->required();
    sweep->add_option("--out", sweep_out, "results CSV (default: outputs.results_csv)");
    sweep->add_option("--threads", sweep_threads, "worker threads (default auto)");

    // fit
    std::string fit_in, fit_field;
    auto* fit = app.add_subcommand("fit", "log-log exponent fit of a results column");
    fit->add_option("--in", fit_in, "results CSV")->required();
    fit->add_option("--field", fit_field, "column to fit")->required();

    // plot
    std::string plot_in, plot_kind, plot_out, plot_field;
    auto* plot = app.add_subcommand("plot", "render an SVG from results or a curve");
    plot->add_option("--in", plot_in, "input CSV")->required();
    plot->add_option("--kind", plot_kind, "shape | exponents | lln")->required();
    plot->add_option("--out", plot_out, "SVG path")->required();
    plot->add_option("--field", plot_field, "column for exponents (default mfl_interior)");

    // oracle-check
    std::int64_t oc_trials = 200, oc_max_points = 10;
    std::uint64_t oc_seed = 1;
    auto* oracle = app.add_subcommand("oracle-check", "compare solvers against brute force");
    oracle->add_option("--trials", oc_trials, "instance count (default 200)");
    oracle->add_option("--max-points", oc_max_points, "points per instance cap (default 10)");
    oracle->add_option("--seed", oc_seed, "master seed (default 1)");

    CLI11_PARSE(app, argc, argv);

    if (sample->parsed()) {
        CloudGuard cloud;
        int rc = atp_cloud_sample(sample_n, sample_seed, sample_trial, &cloud.ptr);
        if (rc == ATP_OK) rc = atp_cloud_save(cloud.ptr, sample_out.c_str());
        if (rc == ATP_OK)
            std::printf("wrote %s (%lld points)\n", sample_out.c_str(),
                        static_cast<long long>(atp_cloud_count(cloud.ptr)));
        return finish(rc);
    }

    if (solve->parsed()) {
        CloudGuard cloud;
        int rc;
        if (!solve_cloud.empty())
            rc = atp_cloud_load(solve_cloud.c_str(), &cloud.ptr);
        else if (solve_have_n)
            rc = atp_cloud_sample(solve_n, solve_seed, solve_trial, &cloud.ptr);
        else {
            std::fprintf(stderr, "error: pass either --cloud or --n/--seed\n");
            return 1;
        }
        if (rc != ATP_OK) return finish(rc);

        atp_solve_options opts;
        atp_solve_options_init(&opts);
        opts.mode = solve_mode.c_str();
        SolutionGuard sol;
        double frontier = -1.0;
        rc = atp_solve(cloud.ptr, solve_alpha, &opts, &sol.ptr, &frontier);
        if (rc == ATP_E_INFEASIBLE) {
            std::fprintf(stderr, "infeasible: max trappable area %.17g < threshold\n", frontier);
            return 1;
        }
        if (rc == ATP_OK) rc = atp_solution_save(sol.ptr, solve_out.c_str());
        if (rc == ATP_OK)
            std::printf("length=%lld area=%.17g gap=%lld method=%s -> %s\n",
                        static_cast<long long>(atp_solution_length(sol.ptr)),
                        atp_solution_area(sol.ptr),
                        static_cast<long long>(atp_solution_gap(sol.ptr)),
                        atp_solution_method(sol.ptr), solve_out.c_str());
        return finish(rc);
    }

    if (limit->parsed()) {
        double c = 0.0, w = 0.0;
        int rc = atp_limit_shape(ls_alpha, &c, &w);
        if (rc == ATP_OK) {
            std::printf("alpha,c,w\n%.17g,%.17g,%.17g\n", ls_alpha, c, w);
            if (!ls_curve_out.empty())
                rc = atp_limit_shape_curve(ls_alpha, ls_samples, ls_curve_out.c_str());
        }
        return finish(rc);
    }

    if (trial->parsed()) {
        char* csv = nullptr;
        int rc = atp_trial_csv(trial_config.c_str(), trial_index, &csv);
        if (rc == ATP_OK) {
            std::fputs(csv, stdout);
            atp_string_free(csv);
        }
        return finish(rc);
    }

    if (sweep->parsed()) {
        int rc = atp_sweep(sweep_config.c_str(), sweep_out.empty() ? nullptr : sweep_out.c_str(),
                           sweep_threads);
        return finish(rc);
    }

    if (fit->parsed()) {
        atp_fit_result result;
        int rc = atp_fit(fit_in.c_str(), fit_field.c_str(), &result);
        if (rc == ATP_OK)
            std::printf("field,slope,intercept,stderr_slope,r_squared,points\n%s,%.17g,%.17g,%.17g,%.17g,%lld\n",
                        fit_field.c_str(), result.slope, result.intercept, result.stderr_slope,
                        result.r_squared, static_cast<long long>(result.points));
        return finish(rc);
    }

    if (plot->parsed()) {
        int rc = atp_plot(plot_in.c_str(), plot_kind.c_str(),
                          plot_field.empty() ? nullptr : plot_field.c_str(), plot_out.c_str());
        return finish(rc);
    }

    if (oracle->parsed()) {
        std::int64_t mismatches = 0;
        int rc = atp_oracle_check(oc_trials, oc_max_points, oc_seed, &mismatches);
        if (rc == ATP_OK)
            std::printf("ok: %lld instances agree with brute force\n",
                        static_cast<long long>(oc_trials));
        else if (rc == ATP_E_ORACLE_MISMATCH)
            std::fprintf(stderr, "%lld mismatches\n", static_cast<long long>(mismatches));
        return finish(rc);
    }

    return 1;
}

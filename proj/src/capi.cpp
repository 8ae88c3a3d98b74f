#include "areatrap/capi.h"

#include "areatrap/constrained.hpp"
#include "areatrap/errors.hpp"
#include "areatrap/harness.hpp"
#include "areatrap/limitshape.hpp"
#include "areatrap/lpp.hpp"
#include "areatrap/sampler.hpp"
#include "areatrap/textio.hpp"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

struct atp_cloud {
    areatrap::sampler::PointCloud impl;
};

struct atp_solution {
    areatrap::constrained::ConstrainedSolution impl;
    double n = 0.0;
    std::string method;
};

namespace {

thread_local std::string g_last_error;

int code_of(const areatrap::Error& e) {
    using areatrap::ErrorCode;
    switch (e.code()) {
        case ErrorCode::invalid_parameter:
        case ErrorCode::invalid_order:
        case ErrorCode::degenerate_chord:
        case ErrorCode::degenerate_anchor:
        case ErrorCode::invalid_region:
        case ErrorCode::invalid_endpoint:
        case ErrorCode::invalid_input: return ATP_E_INVALID;
        case ErrorCode::parse_error: return ATP_E_PARSE;
        case ErrorCode::validation_error: return ATP_E_VALIDATION;
        case ErrorCode::io_error: return ATP_E_IO;
        case ErrorCode::infeasible: return ATP_E_INFEASIBLE;
        case ErrorCode::size_cap_exceeded: return ATP_E_SIZE_CAP;
        case ErrorCode::insufficient_data: return ATP_E_INSUFFICIENT;
        case ErrorCode::empty_plot: return ATP_E_EMPTY_PLOT;
        case ErrorCode::internal: return ATP_E_INTERNAL;
    }
    return ATP_E_INTERNAL;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return ATP_OK;
    } catch (const areatrap::Error& e) {
        g_last_error = e.what();
        return code_of(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return ATP_E_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return ATP_E_INTERNAL;
    }
}

int require(bool cond, const char* what) {
    if (cond) return ATP_OK;
    g_last_error = what;
    return ATP_E_INVALID;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

} // namespace

extern "C" {

const char* atp_version(void) { return "areatrap 1.0.0"; }

const char* atp_last_error(void) { return g_last_error.c_str(); }

int atp_cloud_sample(double n, uint64_t master_seed, uint64_t trial_index, atp_cloud** out) {
    if (int rc = require(out != nullptr, "null output handle")) return rc;
    return guarded([&] {
        areatrap::sampler::SeedSpec seed{master_seed, trial_index};
        auto cloud = std::make_unique<atp_cloud>();
        cloud->impl = areatrap::sampler::sample_poisson_square(n, seed);
        *out = cloud.release();
    });
}

int atp_cloud_load(const char* path, atp_cloud** out) {
    if (int rc = require(path && out, "null argument")) return rc;
    return guarded([&] {
        auto cloud = std::make_unique<atp_cloud>();
        cloud->impl = areatrap::sampler::load_cloud(path);
        *out = cloud.release();
    });
}

int atp_cloud_save(const atp_cloud* cloud, const char* path) {
    if (int rc = require(cloud && path, "null argument")) return rc;
    return guarded([&] { areatrap::sampler::save_cloud(cloud->impl, path); });
}

void atp_cloud_free(atp_cloud* cloud) { delete cloud; }

int64_t atp_cloud_count(const atp_cloud* cloud) {
    return cloud ? static_cast<int64_t>(cloud->impl.count()) : -1;
}

double atp_cloud_box(const atp_cloud* cloud) { return cloud ? cloud->impl.n : -1.0; }

uint64_t atp_cloud_seed(const atp_cloud* cloud) { return cloud ? cloud->impl.seed : 0; }

void atp_solve_options_init(atp_solve_options* opts) {
    if (!opts) return;
    opts->mode = "auto";
    opts->lambda_tol = 0.0;
    opts->max_bisect = 60;
    opts->exact_cap = 4000;
    opts->lambda_max = 0.0;
}

int atp_solve(const atp_cloud* cloud, double alpha, const atp_solve_options* opts,
              atp_solution** out, double* max_trappable) {
    if (int rc = require(cloud && out, "null argument")) return rc;
    areatrap::constrained::SolveOptions cpp_opts;
    if (opts) {
        cpp_opts.lambda_tol = opts->lambda_tol;
        cpp_opts.max_bisect = opts->max_bisect;
        cpp_opts.exact_cap = opts->exact_cap;
        cpp_opts.lambda_max = opts->lambda_max;
    }
    try {
        if (opts && opts->mode) cpp_opts.mode = areatrap::constrained::method_from_name(opts->mode);
        auto sol = std::make_unique<atp_solution>();
        sol->impl = areatrap::constrained::solve_constrained(cloud->impl, alpha, cpp_opts);
        sol->n = cloud->impl.n;
        sol->method = areatrap::constrained::method_name(sol->impl.method);
        *out = sol.release();
        g_last_error.clear();
        return ATP_OK;
    } catch (const areatrap::InfeasibleError& e) {
        if (max_trappable) *max_trappable = e.max_trappable_area();
        g_last_error = e.what();
        return ATP_E_INFEASIBLE;
    } catch (const areatrap::Error& e) {
        g_last_error = e.what();
        return code_of(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return ATP_E_INTERNAL;
    }
}

int64_t atp_solution_length(const atp_solution* sol) { return sol ? sol->impl.length : -1; }

double atp_solution_area(const atp_solution* sol) { return sol ? sol->impl.achieved_area : -1.0; }

double atp_solution_upper_bound(const atp_solution* sol) {
    return sol ? sol->impl.upper_bound : -1.0;
}

int64_t atp_solution_gap(const atp_solution* sol) { return sol ? sol->impl.gap : -1; }

const char* atp_solution_method(const atp_solution* sol) {
    return sol ? sol->method.c_str() : "";
}

int64_t atp_solution_vertex_count(const atp_solution* sol) {
    return sol ? static_cast<int64_t>(sol->impl.path.vertices.size()) : -1;
}

int atp_solution_vertex(const atp_solution* sol, int64_t index, double* x, double* y) {
    if (int rc = require(sol && x && y, "null argument")) return rc;
    if (int rc = require(index >= 0 && index < atp_solution_vertex_count(sol),
                         "vertex index out of range"))
        return rc;
    const auto& p = sol->impl.path.vertices[static_cast<std::size_t>(index)];
    *x = p.x;
    *y = p.y;
    return ATP_OK;
}

int atp_solution_save(const atp_solution* sol, const char* path) {
    if (int rc = require(sol && path, "null argument")) return rc;
    return guarded([&] { areatrap::constrained::save_solution(sol->impl, sol->n, path); });
}

void atp_solution_free(atp_solution* sol) { delete sol; }

int atp_lpp_length(const atp_cloud* cloud, int64_t* out) {
    if (int rc = require(cloud && out, "null argument")) return rc;
    return guarded([&] {
        *out = areatrap::lpp::lpp_length(cloud->impl, {0.0, 0.0},
                                         {cloud->impl.n, cloud->impl.n});
    });
}

int atp_limit_shape(double alpha, double* c_out, double* w_out) {
    if (int rc = require(c_out && w_out, "null argument")) return rc;
    return guarded([&] {
        const auto shape = areatrap::limitshape::make_shape(alpha);
        *c_out = shape.c;
        *w_out = shape.w;
    });
}

int atp_limit_shape_curve(double alpha, int64_t samples, const char* out_path) {
    if (int rc = require(out_path != nullptr, "null output path")) return rc;
    if (int rc = require(samples >= 2, "need at least 2 samples")) return rc;
    return guarded([&] {
        const auto shape = areatrap::limitshape::make_shape(alpha);
        std::string csv = "x,psi_x\n";
        for (int64_t k = 0; k < samples; ++k) {
            const double x = static_cast<double>(k) / static_cast<double>(samples - 1);
            csv += areatrap::textio::format_double(x) + "," +
                   areatrap::textio::format_double(areatrap::limitshape::psi(shape, x)) + "\n";
        }
        areatrap::textio::write_file(out_path, csv);
    });
}

int atp_trial_csv(const char* config_path, uint64_t trial_index, char** csv_out) {
    if (int rc = require(config_path && csv_out, "null argument")) return rc;
    return guarded([&] {
        const auto cfg = areatrap::harness::load_config(config_path);
        const auto rec = areatrap::harness::run_trial(cfg, trial_index);
        *csv_out = dup_string(std::string(areatrap::harness::kResultsHeader) + "\n" +
                              areatrap::harness::record_to_csv_row(rec) + "\n");
    });
}

void atp_string_free(char* s) { std::free(s); }

int atp_sweep(const char* config_path, const char* out_csv, int threads) {
    if (int rc = require(config_path != nullptr, "null config path")) return rc;
    return guarded([&] {
        const auto cfg = areatrap::harness::load_config(config_path);
        std::string out = out_csv ? out_csv : cfg.results_csv;
        if (out.empty())
            areatrap::fail(areatrap::ErrorCode::invalid_parameter,
                           "no output path: pass one or set outputs.results_csv");
        areatrap::harness::sweep(cfg, out, threads);
    });
}

int atp_fit(const char* results_csv, const char* field, atp_fit_result* out) {
    if (int rc = require(results_csv && field && out, "null argument")) return rc;
    return guarded([&] {
        const auto records = areatrap::harness::load_records(results_csv);
        const auto fit = areatrap::harness::fit_exponent(records, field);
        out->slope = fit.slope;
        out->intercept = fit.intercept;
        out->stderr_slope = fit.stderr_slope;
        out->r_squared = fit.r_squared;
        out->points = static_cast<int64_t>(fit.points.size());
    });
}

int atp_lln_table(const char* results_csv, char** csv_out) {
    if (int rc = require(results_csv && csv_out, "null argument")) return rc;
    return guarded([&] {
        const auto records = areatrap::harness::load_records(results_csv);
        *csv_out = dup_string(areatrap::harness::lln_table(records));
    });
}

int atp_plot(const char* in_csv, const char* kind, const char* field, const char* out_svg) {
    if (int rc = require(in_csv && kind && out_svg, "null argument")) return rc;
    return guarded([&] {
        areatrap::harness::emit_plot(in_csv, kind, field ? field : "", out_svg);
    });
}

int atp_oracle_check(int64_t trials, int64_t max_points, uint64_t seed, int64_t* mismatches) {
    std::int64_t count = 0;
    const int rc = guarded([&] {
        count = areatrap::harness::oracle_check(trials, max_points, seed);
    });
    if (mismatches) *mismatches = count;
    if (rc != ATP_OK) return rc;
    if (count > 0) {
        g_last_error = std::to_string(count) + " oracle mismatches";
        return ATP_E_ORACLE_MISMATCH;
    }
    return ATP_OK;
}

} // extern "C"

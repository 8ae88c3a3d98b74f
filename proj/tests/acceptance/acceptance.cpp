// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Statistical criteria run on pinned seeds so the suite is
// deterministic; tolerances are trend/property windows, not sharp asymptotic
// values, because the underlying exponents are asymptotic statements.

#include "areatrap/constrained.hpp"
#include "areatrap/errors.hpp"
#include "areatrap/harness.hpp"
#include "areatrap/limitshape.hpp"
#include "areatrap/lpp.hpp"
#include "areatrap/oracle.hpp"
#include "areatrap/rng.hpp"
#include "areatrap/roughness.hpp"
#include "areatrap/sampler.hpp"
#include "areatrap/textio.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

using namespace areatrap;

namespace {

constexpr double kPi = 3.14159265358979323846;
int g_failures = 0;

void report(int criterion, bool pass, const std::string& what) {
    std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion, what.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

void report_extra(bool pass, const std::string& what) {
    std::printf("[%s] diagnostic  : %s\n", pass ? "PASS" : "FAIL", what.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(hw, count));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                body(i);
            }
        });
    for (auto& t : pool) t.join();
}

double mean_of(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

std::string temp_file(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

// ---------------------------------------------------------------------------
// 1. Oracle equivalence for the constrained solver
// ---------------------------------------------------------------------------
void criterion_1() {
    const auto started = std::chrono::steady_clock::now();
    const double n = 4.0;
    const std::vector<double> alphas{0.05, 0.15, 0.25, 0.35};

    std::atomic<int> exact_bad{0}, lagrangian_bad{0}, gap_zero{0}, feasible_count{0};
    parallel_for(500, [&](std::size_t t) {
        SplitMix64 rng(derive_seed(101, t));
        sampler::PointCloud cloud;
        cloud.n = n;
        const int count = static_cast<int>(rng.next_u64() % 13);
        for (int i = 0; i < count; ++i)
            cloud.points.push_back({n * rng.next_open01(), n * rng.next_open01()});
        std::sort(cloud.points.begin(), cloud.points.end(),
                  [](const geometry::Point& a, const geometry::Point& b) {
                      return a.x != b.x ? a.x < b.x : a.y < b.y;
                  });

        for (double alpha : alphas) {
            const auto truth = oracle::brute_constrained(cloud, alpha);

            constrained::SolveOptions exact_opts;
            exact_opts.mode = constrained::SolveMethod::exact;
            try {
                const auto sol = constrained::solve_constrained(cloud, alpha, exact_opts);
                if (!truth.feasible || sol.length != truth.length) ++exact_bad;
            } catch (const InfeasibleError&) {
                if (truth.feasible) ++exact_bad;
            }

            constrained::SolveOptions lag_opts;
            lag_opts.mode = constrained::SolveMethod::lagrangian;
            try {
                const auto sol = constrained::solve_constrained(cloud, alpha, lag_opts);
                if (!truth.feasible) {
                    ++lagrangian_bad;
                    continue;
                }
                ++feasible_count;
                if (sol.length > truth.length || sol.length + sol.gap < truth.length)
                    ++lagrangian_bad;
                if (sol.gap == 0) ++gap_zero;
            } catch (const InfeasibleError&) {
                if (truth.feasible) ++lagrangian_bad;
            }
        }
    });

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    const double gap_rate =
        feasible_count > 0 ? static_cast<double>(gap_zero) / feasible_count : 0.0;
    const bool pass = exact_bad == 0 && lagrangian_bad == 0 && gap_rate >= 0.90 && secs < 60.0;
    report(1, pass,
           "oracle equivalence on 500 clouds x 4 alphas: exact mismatches " +
               std::to_string(exact_bad.load()) + ", lagrangian violations " +
               std::to_string(lagrangian_bad.load()) + ", gap=0 rate " + fmt(gap_rate, 3) +
               " (need >= 0.90), " + fmt(secs, 1) + "s");
}

// ---------------------------------------------------------------------------
// 2. LIS and restricted-LPP oracles
// ---------------------------------------------------------------------------
void criterion_2() {
    const auto started = std::chrono::steady_clock::now();
    const std::int64_t mismatches = harness::oracle_check(1000, 10, 202);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    report(2, mismatches == 0 && secs < 60.0,
           "lpp/above-chord/in-region vs brute force on 1000 clouds: " +
               std::to_string(mismatches) + " mismatches, " + fmt(secs, 1) + "s");
}

// ---------------------------------------------------------------------------
// 3. Limit-shape mathematics
// ---------------------------------------------------------------------------
double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fb,
               double fm, double tol) {
    const double m = 0.5 * (a + b);
    const double flm = f(0.5 * (a + m)), frm = f(0.5 * (m + b));
    const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    const double two = (m - a) / 6 * (fa + 4 * flm + fm) + (b - m) / 6 * (fm + 4 * frm + fb);
    if (std::abs(two - whole) <= 15 * tol) return two + (two - whole) / 15;
    return simpson(f, a, m, fa, fm, flm, tol / 2) + simpson(f, m, b, fm, fb, frm, tol / 2);
}

void criterion_3() {
    bool ok = true;
    std::string detail;
    double prev_c = 0.0, prev_w = 2.0;
    double worst_residual = 0.0;
    for (int i = 1; i <= 49 && ok; ++i) {
        const double alpha = 0.01 * i;
        const double c = limitshape::solve_c(alpha);
        const double resid = std::abs(limitshape::implicit_lhs(c) - (0.5 + alpha));
        worst_residual = std::max(worst_residual, resid);
        if (resid > 1e-10) ok = false, detail = "residual at alpha=" + fmt(alpha, 2);
        if (c <= prev_c) ok = false, detail = "c not increasing";
        const double w = limitshape::w_of(c);
        if (w >= prev_w) ok = false, detail = "w not decreasing";
        prev_c = c;
        prev_w = w;
    }
    for (double alpha : {0.05, 0.1, 0.2, 0.3, 0.4}) {
        const auto shape = limitshape::make_shape(alpha);
        geometry::Polyline phi;
        for (int k = 0; k <= 40000; ++k) {
            const double x = k / 40000.0;
            phi.push_back({x, limitshape::psi(shape, x)});
        }
        if (std::abs(limitshape::j_functional(phi) - shape.w) > 1e-6)
            ok = false, detail = "J(psi) != w at alpha=" + fmt(alpha, 2);
        auto f = [&](double x) { return limitshape::psi(shape, x); };
        const double integral = simpson(f, 0.0, 1.0, f(0.0), f(1.0), f(0.5), 1e-10);
        if (std::abs(integral - (0.5 + alpha)) > 1e-8)
            ok = false, detail = "area identity at alpha=" + fmt(alpha, 2);
    }
    const double w_tiny = limitshape::w_of(limitshape::solve_c(0.001));
    if (!(w_tiny > 0.99 && w_tiny < 1.0)) ok = false, detail = "w(0.001) out of (0.99, 1)";
    report(3, ok,
           "implicit-equation residual <= 1e-10 (worst " + fmt(worst_residual * 1e12, 2) +
               "e-12), monotone c/w, J(psi)=w to 1e-6, area identity to 1e-8, w(0.001)=" +
               fmt(w_tiny, 6) + (ok ? "" : " -- " + detail));
}

// ---------------------------------------------------------------------------
// 4. Unconstrained LLN with the limit constant 2
// ---------------------------------------------------------------------------
void criterion_4() {
    const double n = 100.0;
    std::vector<double> ratios(50);
    parallel_for(ratios.size(), [&](std::size_t t) {
        const auto cloud = sampler::sample_poisson_square(n, {404, t});
        ratios[t] = static_cast<double>(lpp::lpp_length(cloud, {0, 0}, {n, n})) / (2.0 * n);
    });
    const double mean = mean_of(ratios);
    report(4, mean >= 0.92 && mean <= 1.00,
           "mean L/(2n) over 50 trials at n=100: " + fmt(mean) + " in [0.92, 1.00]");
}

// ---------------------------------------------------------------------------
// 5/6/10 + concentration diagnostic share one constrained batch at alpha=0.25
// ---------------------------------------------------------------------------
struct ConstrainedBatch {
    std::vector<double> ratios;      // L_alpha / (2 w n)
    std::vector<double> hausdorff;   // dist / n
    std::vector<double> lengths;
    int facet_angle_pass = 0;
    int solved = 0;
};

ConstrainedBatch run_constrained_batch(double n, int trials, std::uint64_t seed, double w) {
    ConstrainedBatch batch;
    batch.ratios.resize(trials);
    batch.hausdorff.resize(trials);
    batch.lengths.resize(trials);
    std::vector<int> angle_ok(trials, 0), solved(trials, 0);
    const auto shape = limitshape::make_shape(0.25);
    parallel_for(trials, [&](std::size_t t) {
        const auto cloud = sampler::sample_poisson_square(n, {seed, t});
        try {
            const auto sol = constrained::solve_constrained(cloud, 0.25);
            solved[t] = 1;
            batch.ratios[t] = static_cast<double>(sol.length) / (2.0 * w * n);
            batch.lengths[t] = static_cast<double>(sol.length);
            batch.hausdorff[t] =
                limitshape::deviation_from_limit(sol.path, shape, n, n / 1e3) / n;
            const auto rep = roughness::analyze(sol.path, kPi / 10);
            angle_ok[t] = roughness::facet_angle_check(rep, 0.05) ? 1 : 0;
        } catch (const InfeasibleError&) {
            solved[t] = 0;
        }
    });
    for (int t = 0; t < trials; ++t) {
        batch.solved += solved[t];
        batch.facet_angle_pass += angle_ok[t];
    }
    return batch;
}

void criteria_5_6_10_and_concentration() {
    const double w = limitshape::make_shape(0.25).w;
    const ConstrainedBatch at50 = run_constrained_batch(50.0, 30, 505, w);
    const ConstrainedBatch at100 = run_constrained_batch(100.0, 50, 506, w);

    const double r50 = mean_of(at50.ratios), r100 = mean_of(at100.ratios);
    const bool c5 = at50.solved == 30 && at100.solved == 50 && r50 >= 0.80 && r50 <= 1.05 &&
                    r100 >= 0.80 && r100 <= 1.05 && r100 >= r50;
    report(5, c5,
           "mean L_alpha/(2 w n) at alpha=0.25: n=50 -> " + fmt(r50) + ", n=100 -> " + fmt(r100) +
               ", both in [0.80, 1.05] and nondecreasing");

    const double h50 = mean_of(at50.hausdorff), h100 = mean_of(at100.hausdorff);
    report(6, h100 <= 0.15 && h100 < h50,
           "mean hausdorff/n: n=50 -> " + fmt(h50) + ", n=100 -> " + fmt(h100) +
               " (need <= 0.15 and smaller than at n=50)");

    const double angle_rate = static_cast<double>(at100.facet_angle_pass) / at100.solved;
    report(10, angle_rate >= 0.95,
           "facet angles inside (omega, pi/2-omega) at n=100, omega=0.05: rate " +
               fmt(angle_rate, 3) + " over " + std::to_string(at100.solved) +
               " trials (need >= 0.95)");

    const double mean_l = mean_of(at100.lengths);
    double var = 0.0;
    for (double l : at100.lengths) var += (l - mean_l) * (l - mean_l);
    var /= static_cast<double>(at100.lengths.size() - 1);
    const double sd = std::sqrt(var);
    report_extra(sd <= std::pow(100.0, 0.75),
                 "concentration envelope: sd of L_alpha at n=100 is " + fmt(sd, 2) +
                     " <= n^0.75 = " + fmt(std::pow(100.0, 0.75), 2));
}

// ---------------------------------------------------------------------------
// 7. Transversal-fluctuation exponent of unconstrained geodesics
// ---------------------------------------------------------------------------
void criterion_7() {
    const auto started = std::chrono::steady_clock::now();
    const std::vector<double> ns{50, 100, 200, 400};
    std::vector<harness::TrialRecord> records;
    std::mutex mu;
    std::uint64_t index = 0;
    for (double n : ns) {
        std::vector<double> tf(30);
        parallel_for(tf.size(), [&](std::size_t t) {
            const auto cloud = sampler::sample_poisson_square(n, {707 + (std::uint64_t)n, t});
            const auto geo = lpp::topmost_geodesic(cloud, {0, 0}, {n, n});
            tf[t] = lpp::transversal_fluctuation(geo.path, {0, 0}, {n, n});
        });
        std::lock_guard<std::mutex> lock(mu);
        for (double v : tf) {
            harness::TrialRecord rec;
            rec.n = n;
            rec.alpha = 0.25;
            rec.status = "solved";
            rec.trial_index = index++;
            rec.tf_unconstrained = v;
            records.push_back(rec);
        }
    }
    const auto fit = harness::fit_exponent(records, "tf_unconstrained");
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    report(7, fit.slope >= 0.50 && fit.slope <= 0.85 && secs < 300.0,
           "TF exponent over n in {50,100,200,400}, 30 trials: slope " + fmt(fit.slope, 3) +
               " in [0.50, 0.85], " + fmt(secs, 1) + "s");
}

// ---------------------------------------------------------------------------
// 8/9. Facet-length and local-roughness exponents from the main sweep
// ---------------------------------------------------------------------------
void criteria_8_9(std::vector<harness::TrialRecord>& sweep_records) {
    const char* config_json = R"({
        "master_seed": 808,
        "n_values": [40, 60, 90, 135],
        "alpha_values": [0.25],
        "replicates": [20, 20, 20, 10],
        "delta": 0.3141592653589793,
        "epsilon": 0.1
    })";
    const auto cfg = harness::config_from_json(config_json, "acceptance");
    const std::string out = temp_file("areatrap_acceptance_sweep.csv");
    const auto started = std::chrono::steady_clock::now();
    harness::sweep(cfg, out, 0);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    sweep_records = harness::load_records(out);
    std::filesystem::remove(out);

    const auto mfl_fit = harness::fit_exponent(sweep_records, "mfl_interior");

    std::vector<double> ns{40, 60, 90, 135};
    std::vector<double> mfl_scaled, mean_mfl, mean_mlr;
    for (double n : ns) {
        double sum_mfl = 0, sum_mlr = 0;
        int count = 0;
        for (const auto& r : sweep_records)
            if (r.n == n && r.status == "solved") {
                sum_mfl += r.mfl_interior;
                sum_mlr += r.mlr_interior;
                ++count;
            }
        mean_mfl.push_back(sum_mfl / count);
        mean_mlr.push_back(sum_mlr / count);
        mfl_scaled.push_back(sum_mfl / count / std::pow(n, 2.0 / 3.0));
    }
    const bool scaled_increasing = mfl_scaled[0] < mfl_scaled[1] &&
                                   mfl_scaled[1] < mfl_scaled[2] && mfl_scaled[2] < mfl_scaled[3];
    report(8, mfl_fit.slope >= 0.60 && mfl_fit.slope <= 0.95 && scaled_increasing,
           "MFL exponent: slope " + fmt(mfl_fit.slope, 3) +
               " in [0.60, 0.95]; mfl_interior/n^(2/3) = {" + fmt(mfl_scaled[0], 3) + ", " +
               fmt(mfl_scaled[1], 3) + ", " + fmt(mfl_scaled[2], 3) + ", " +
               fmt(mfl_scaled[3], 3) + "} strictly increasing; sweep " + fmt(secs, 1) + "s");

    const auto mlr_fit = harness::fit_exponent(sweep_records, "mlr_interior");
    const double ratio135 = mean_mlr[3] / mean_mfl[3];
    report(9, mlr_fit.slope >= 0.30 && mlr_fit.slope <= 0.70 && ratio135 <= 0.5,
           "MLR exponent: slope " + fmt(mlr_fit.slope, 3) +
               " in [0.30, 0.70]; mlr/mfl at n=135 = " + fmt(ratio135, 3) + " <= 0.5");
}

// ---------------------------------------------------------------------------
// 11. Nonempty good-alpha set on a 9-point grid
// ---------------------------------------------------------------------------
void criterion_11(std::vector<std::vector<roughness::ScanRow>>& scans) {
    const int seeds = 30;
    std::vector<int> nonempty(seeds, 0);
    scans.resize(seeds);
    parallel_for(seeds, [&](std::size_t t) {
        const auto cloud = sampler::sample_poisson_square(100.0, {1111, t});
        const auto scan = roughness::scan_good_alphas(cloud, 0.2, 0.3, 9, 0.1, kPi / 10);
        nonempty[t] = scan.any_good ? 1 : 0;
        scans[t] = scan.rows;
    });
    int hits = 0;
    for (int h : nonempty) hits += h;
    const double rate = static_cast<double>(hits) / seeds;
    report(11, rate >= 0.90,
           "nonempty (n,eps,delta)-good alpha set on [0.2,0.3] x 9 at n=100: rate " +
               fmt(rate, 3) + " over 30 seeds (need >= 0.90)");
}

// ---------------------------------------------------------------------------
// 12. Hard invariants on every solved trial
// ---------------------------------------------------------------------------
void criterion_12(const std::vector<harness::TrialRecord>& sweep_records,
                  const std::vector<std::vector<roughness::ScanRow>>& scans) {
    int violations = 0;
    for (const auto& r : sweep_records) {
        if (r.status != "solved") continue;
        if (r.achieved_area_ratio < 0.5 + r.alpha - 1e-12) ++violations;
        if (r.l_alpha > r.l_unconstrained) ++violations;
        if (r.gap < 0) ++violations;
    }
    for (const auto& rows : scans) {
        std::int64_t prev = std::numeric_limits<std::int64_t>::max();
        for (const auto& row : rows) {
            if (!row.solved) continue;
            if (row.length > prev) ++violations;
            prev = row.length;
        }
    }
    // weak duality double-check on a fresh instance, straight from the samples
    const auto cloud = sampler::sample_poisson_square(60.0, {1212, 0});
    constrained::SolveOptions opts;
    opts.mode = constrained::SolveMethod::lagrangian;
    const auto sol = constrained::solve_constrained(cloud, 0.25, opts);
    for (const auto& [lambda, score] : sol.dual_samples)
        if (static_cast<double>(sol.length) > score - lambda * sol.threshold + 1e-6) ++violations;
    report(12, violations == 0,
           "hard invariants (area threshold, L_alpha <= L, gap >= 0, alpha-scan monotone, "
           "weak duality): " +
               std::to_string(violations) + " violations");
}

// ---------------------------------------------------------------------------
// 13. Byte-level determinism of sweep and plots
// ---------------------------------------------------------------------------
void criterion_13() {
    const char* config_json = R"({
        "master_seed": 131313,
        "n_values": [8, 12],
        "alpha_values": [0.05, 0.2],
        "replicates": 3
    })";
    const auto cfg = harness::config_from_json(config_json, "mini");
    const std::string out1 = temp_file("areatrap_det_1.csv");
    const std::string out2 = temp_file("areatrap_det_2.csv");
    harness::sweep(cfg, out1, 1);
    harness::sweep(cfg, out2, 2);
    const bool csv_same = textio::read_file(out1) == textio::read_file(out2);

    const std::string svg1 = harness::render_plot(out1, "lln", "");
    const std::string svg2 = harness::render_plot(out2, "lln", "");
    const std::string shape1 = harness::render_plot(out1, "shape", "");
    const std::string shape2 = harness::render_plot(out2, "shape", "");
    const bool svg_same = svg1 == svg2 && shape1 == shape2;

    std::filesystem::remove(out1);
    std::filesystem::remove(out2);
    report(13, csv_same && svg_same,
           std::string("mini sweep byte-identical across runs and thread counts: csv ") +
               (csv_same ? "ok" : "DIFFERS") + ", svg " + (svg_same ? "ok" : "DIFFERS"));
}

} // namespace

int main() {
    const auto started = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criteria_5_6_10_and_concentration();
    criterion_7();

    std::vector<harness::TrialRecord> sweep_records;
    criteria_8_9(sweep_records);

    std::vector<std::vector<roughness::ScanRow>> scans;
    criterion_11(scans);
    criterion_12(sweep_records, scans);
    criterion_13();

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::printf("%s: %d failure(s), %.1fs total\n", g_failures == 0 ? "ACCEPTED" : "REJECTED",
                g_failures, secs);
    return g_failures == 0 ? 0 : 1;
}

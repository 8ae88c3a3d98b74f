#include "areatrap/harness.hpp"

#include "areatrap/errors.hpp"
#include "areatrap/limitshape.hpp"
#include "areatrap/lpp.hpp"
#include "areatrap/oracle.hpp"
#include "areatrap/rng.hpp"
#include "areatrap/roughness.hpp"
#include "areatrap/textio.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <thread>

namespace areatrap::harness {

using nlohmann::json;

std::uint64_t ExperimentConfig::total_trials() const {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < n_values.size(); ++i)
        total += static_cast<std::uint64_t>(replicates[i]) * alpha_values.size();
    return total;
}

namespace {

[[noreturn]] void config_fail(const std::string& origin, const std::string& what) {
    fail(ErrorCode::validation_error, origin + ": " + what);
}

void check_known_keys(const json& obj, std::initializer_list<const char*> known,
                      const std::string& origin, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k) ok = true;
        if (!ok) config_fail(origin, "unknown key '" + it.key() + "' in " + where);
    }
}

} // namespace

ExperimentConfig config_from_json(const std::string& text, const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorCode::parse_error, origin + ": " + e.what());
    }
    if (!root.is_object()) config_fail(origin, "config must be a JSON object");
    check_known_keys(root,
                     {"master_seed", "n_values", "alpha_values", "replicates", "delta",
                      "epsilon", "solver", "hausdorff_ds", "outputs", "threads"},
                     origin, "config");
    for (const char* req : {"master_seed", "n_values", "alpha_values", "replicates"})
        if (!root.contains(req)) config_fail(origin, std::string("missing key '") + req + "'");

    ExperimentConfig cfg;
    try {
        cfg.master_seed = root.at("master_seed").get<std::uint64_t>();
        cfg.n_values = root.at("n_values").get<std::vector<double>>();
        cfg.alpha_values = root.at("alpha_values").get<std::vector<double>>();
        const json& reps = root.at("replicates");
        if (reps.is_number_integer())
            cfg.replicates.assign(cfg.n_values.size(), reps.get<int>());
        else
            cfg.replicates = reps.get<std::vector<int>>();
        if (root.contains("delta")) cfg.delta = root.at("delta").get<double>();
        if (root.contains("epsilon")) cfg.epsilon = root.at("epsilon").get<double>();
        if (root.contains("hausdorff_ds")) cfg.hausdorff_ds = root.at("hausdorff_ds").get<double>();
        if (root.contains("threads")) {
            const json& t = root.at("threads");
            if (t.is_string() && t.get<std::string>() == "auto")
                cfg.threads = 0;
            else
                cfg.threads = t.get<int>();
        }
        if (root.contains("outputs")) {
            const json& outs = root.at("outputs");
            check_known_keys(outs, {"results_csv"}, origin, "outputs");
            if (outs.contains("results_csv"))
                cfg.results_csv = outs.at("results_csv").get<std::string>();
        }
        if (root.contains("solver")) {
            const json& s = root.at("solver");
            check_known_keys(s, {"mode", "lambda_tol", "max_bisect", "exact_cap", "lambda_max"},
                             origin, "solver");
            if (s.contains("mode"))
                cfg.solver.mode = constrained::method_from_name(s.at("mode").get<std::string>());
            if (s.contains("lambda_tol")) cfg.solver.lambda_tol = s.at("lambda_tol").get<double>();
            if (s.contains("max_bisect")) cfg.solver.max_bisect = s.at("max_bisect").get<int>();
            if (s.contains("exact_cap"))
                cfg.solver.exact_cap = s.at("exact_cap").get<std::int64_t>();
            if (s.contains("lambda_max")) cfg.solver.lambda_max = s.at("lambda_max").get<double>();
        }
    } catch (const json::exception& e) {
        config_fail(origin, e.what());
    }

    if (cfg.n_values.empty()) config_fail(origin, "n_values must be nonempty");
    for (double n : cfg.n_values)
        if (!(n > 0.0) || !std::isfinite(n)) config_fail(origin, "n values must be positive");
    if (!std::is_sorted(cfg.n_values.begin(), cfg.n_values.end()))
        config_fail(origin, "n_values must be sorted ascending");
    if (cfg.alpha_values.empty()) config_fail(origin, "alpha_values must be nonempty");
    for (double a : cfg.alpha_values)
        if (!(a > 0.0) || !(a < 0.5)) config_fail(origin, "alpha values must lie in (0, 1/2)");
    if (cfg.replicates.size() != cfg.n_values.size())
        config_fail(origin, "replicates must be a scalar or match n_values in length");
    for (int r : cfg.replicates)
        if (r < 1) config_fail(origin, "replicates must be >= 1");
    if (!(cfg.delta >= 0.0) || !(cfg.delta < 3.14159265358979323846 / 4.0))
        config_fail(origin, "delta must lie in [0, pi/4)");
    if (!(cfg.epsilon > 0.0)) config_fail(origin, "epsilon must be > 0");
    if (!(cfg.hausdorff_ds > 0.0)) config_fail(origin, "hausdorff_ds must be > 0");
    if (cfg.threads < 0) config_fail(origin, "threads must be >= 0 or \"auto\"");
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    return config_from_json(textio::read_file(path), path);
}

const char* const kResultsHeader =
    "master_seed,trial_index,n,alpha,point_count,status,L_unconstrained,L_alpha,"
    "achieved_area_ratio,gap,mfl_all,mfl_interior,mlr_all,mlr_interior,hausdorff_over_n,"
    "tf_unconstrained,wall_ms";

namespace {

struct TrialCoords {
    std::size_t n_index = 0;
    std::size_t alpha_index = 0;
    int replicate = 0;
};

TrialCoords locate_trial(const ExperimentConfig& cfg, std::uint64_t index) {
    std::uint64_t rest = index;
    for (std::size_t ni = 0; ni < cfg.n_values.size(); ++ni) {
        const std::uint64_t block =
            static_cast<std::uint64_t>(cfg.replicates[ni]) * cfg.alpha_values.size();
        if (rest < block) {
            TrialCoords c;
            c.n_index = ni;
            c.alpha_index = static_cast<std::size_t>(rest / cfg.replicates[ni]);
            c.replicate = static_cast<int>(rest % cfg.replicates[ni]);
            return c;
        }
        rest -= block;
    }
    fail(ErrorCode::invalid_parameter,
         "trial index " + std::to_string(index) + " out of range (total " +
             std::to_string(cfg.total_trials()) + ")");
}

} // namespace

TrialRecord run_trial(const ExperimentConfig& cfg, std::uint64_t trial_index) {
    const TrialCoords coords = locate_trial(cfg, trial_index);
    const double n = cfg.n_values[coords.n_index];
    const double alpha = cfg.alpha_values[coords.alpha_index];

    const auto started = std::chrono::steady_clock::now();

    sampler::SeedSpec seed;
    seed.master_seed = derive_seed(derive_seed(cfg.master_seed, coords.n_index),
                                   coords.alpha_index);
    seed.trial_index = static_cast<std::uint64_t>(coords.replicate);
    const sampler::PointCloud cloud = sampler::sample_poisson_square(n, seed);

    TrialRecord rec;
    rec.master_seed = cfg.master_seed;
    rec.trial_index = trial_index;
    rec.n = n;
    rec.alpha = alpha;
    rec.point_count = static_cast<std::int64_t>(cloud.count());

    const geometry::Point origin{0.0, 0.0}, corner{n, n};
    const lpp::GeodesicResult geo = lpp::topmost_geodesic(cloud, origin, corner);
    rec.l_unconstrained = geo.length;
    rec.tf_unconstrained = lpp::transversal_fluctuation(geo.path, origin, corner);

    try {
        const constrained::ConstrainedSolution sol =
            constrained::solve_constrained(cloud, alpha, cfg.solver);
        rec.status = "solved";
        rec.l_alpha = sol.length;
        rec.achieved_area_ratio = sol.achieved_area / (n * n);
        rec.gap = sol.gap;

        const roughness::RoughnessReport report = roughness::analyze(sol.path, cfg.delta);
        rec.mfl_all = report.mfl_all;
        rec.mfl_interior = report.mfl_interior;
        rec.mlr_all = report.mlr_all;
        rec.mlr_interior = report.mlr_interior;

        const limitshape::LimitShape shape = limitshape::make_shape(alpha);
        rec.hausdorff_over_n =
            limitshape::deviation_from_limit(sol.path, shape, n, cfg.hausdorff_ds * n) / n;

        // hard per-trial invariants
        if (sol.achieved_area < sol.threshold)
            fail(ErrorCode::internal, "solved trial violates the area constraint");
        if (sol.length > rec.l_unconstrained)
            fail(ErrorCode::internal, "constrained length exceeds the unconstrained one");
    } catch (const InfeasibleError&) {
        rec.status = "infeasible";
    }

    rec.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - started)
                      .count();
    return rec;
}

std::string record_to_csv_row(const TrialRecord& r) {
    using textio::format_double;
    using textio::format_i64;
    using textio::format_u64;
    std::string row;
    row += format_u64(r.master_seed) + ',' + format_u64(r.trial_index) + ',' +
           format_double(r.n) + ',' + format_double(r.alpha) + ',' +
           format_i64(r.point_count) + ',' + r.status + ',' + format_i64(r.l_unconstrained) +
           ',' + format_i64(r.l_alpha) + ',' + format_double(r.achieved_area_ratio) + ',' +
           format_i64(r.gap) + ',' + format_double(r.mfl_all) + ',' +
           format_double(r.mfl_interior) + ',' + format_double(r.mlr_all) + ',' +
           format_double(r.mlr_interior) + ',' + format_double(r.hausdorff_over_n) + ',' +
           format_double(r.tf_unconstrained) + ',' + format_double(r.wall_ms);
    return row;
}

std::vector<TrialRecord> load_records(const std::string& csv_path) {
    const std::string text = textio::read_file(csv_path);
    std::vector<std::string_view> lines = textio::split(text, '\n');
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty() || lines[0] != kResultsHeader)
        fail(ErrorCode::parse_error, csv_path + ":1: results header mismatch");

    std::vector<TrialRecord> records;
    records.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string ctx = csv_path + ":" + std::to_string(i + 1);
        auto cols = textio::split(lines[i], ',');
        if (cols.size() != 17) fail(ErrorCode::parse_error, ctx + ": expected 17 columns");
        TrialRecord r;
        r.master_seed = textio::parse_u64(cols[0], ctx);
        r.trial_index = textio::parse_u64(cols[1], ctx);
        r.n = textio::parse_double(cols[2], ctx);
        r.alpha = textio::parse_double(cols[3], ctx);
        r.point_count = textio::parse_i64(cols[4], ctx);
        r.status = std::string(cols[5]);
        r.l_unconstrained = textio::parse_i64(cols[6], ctx);
        r.l_alpha = textio::parse_i64(cols[7], ctx);
        r.achieved_area_ratio = textio::parse_double(cols[8], ctx);
        r.gap = textio::parse_i64(cols[9], ctx);
        r.mfl_all = textio::parse_double(cols[10], ctx);
        r.mfl_interior = textio::parse_double(cols[11], ctx);
        r.mlr_all = textio::parse_double(cols[12], ctx);
        r.mlr_interior = textio::parse_double(cols[13], ctx);
        r.hausdorff_over_n = textio::parse_double(cols[14], ctx);
        r.tf_unconstrained = textio::parse_double(cols[15], ctx);
        r.wall_ms = textio::parse_double(cols[16], ctx);
        records.push_back(r);
    }
    return records;
}

SweepWriter::SweepWriter(const std::string& path) : path_(path), marker_(path + ".incomplete") {
    // fail on unwritable output before any compute
    textio::write_file(path_, std::string(kResultsHeader) + "\n");
    textio::write_file(marker_, "sweep in progress\n");
}

SweepWriter::~SweepWriter() = default;

void SweepWriter::append(const TrialRecord& record) {
    rows_.push_back(record);
    std::ofstream out(path_, std::ios::binary | std::ios::app);
    out << record_to_csv_row(record) << '\n';
}

void SweepWriter::finalize() {
    std::sort(rows_.begin(), rows_.end(), [](const TrialRecord& a, const TrialRecord& b) {
        if (a.n != b.n) return a.n < b.n;
        if (a.alpha != b.alpha) return a.alpha < b.alpha;
        return a.trial_index < b.trial_index;
    });
    std::string out(kResultsHeader);
    out += '\n';
    for (TrialRecord row : rows_) {
        row.wall_ms = 0.0; // byte-identical output contract
        out += record_to_csv_row(row) + '\n';
    }
    textio::write_file(path_, out);
    std::remove(marker_.c_str());
    finalized_ = true;
}

namespace {

int resolve_threads(const ExperimentConfig& cfg, int override_threads) {
    if (const char* env = std::getenv("AREATRAP_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    if (override_threads > 0) return override_threads;
    if (cfg.threads > 0) return cfg.threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

} // namespace

void sweep(const ExperimentConfig& cfg, const std::string& out_csv, int threads_override) {
    SweepWriter writer(out_csv);
    const std::uint64_t total = cfg.total_trials();
    const int threads =
        std::max(1, std::min<int>(resolve_threads(cfg, threads_override),
                                  static_cast<int>(std::min<std::uint64_t>(total, 1024))));

    std::atomic<std::uint64_t> next{0};
    std::mutex writer_mutex;
    std::vector<std::exception_ptr> failures(static_cast<std::size_t>(threads));

    auto worker = [&](int worker_id) {
        try {
            for (;;) {
                const std::uint64_t index = next.fetch_add(1);
                if (index >= total) break;
                TrialRecord rec = run_trial(cfg, index);
                std::lock_guard<std::mutex> lock(writer_mutex);
                writer.append(rec);
            }
        } catch (...) {
            failures[static_cast<std::size_t>(worker_id)] = std::current_exception();
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : failures)
        if (e) std::rethrow_exception(e);
    writer.finalize();
}

namespace {

double field_value(const TrialRecord& r, const std::string& field) {
    if (field == "point_count") return static_cast<double>(r.point_count);
    if (field == "L_unconstrained") return static_cast<double>(r.l_unconstrained);
    if (field == "L_alpha") return static_cast<double>(r.l_alpha);
    if (field == "achieved_area_ratio") return r.achieved_area_ratio;
    if (field == "gap") return static_cast<double>(r.gap);
    if (field == "mfl_all") return r.mfl_all;
    if (field == "mfl_interior") return r.mfl_interior;
    if (field == "mlr_all") return r.mlr_all;
    if (field == "mlr_interior") return r.mlr_interior;
    if (field == "hausdorff_over_n") return r.hausdorff_over_n;
    if (field == "tf_unconstrained") return r.tf_unconstrained;
    if (field == "wall_ms") return r.wall_ms;
    fail(ErrorCode::invalid_parameter, "unknown field '" + field + "'");
}

std::map<double, std::pair<double, std::int64_t>> per_n_sums(
    const std::vector<TrialRecord>& records, const std::string& field) {
    std::map<double, std::pair<double, std::int64_t>> sums;
    for (const TrialRecord& r : records) {
        if (r.status != "solved") continue;
        auto& slot = sums[r.n];
        slot.first += field_value(r, field);
        slot.second += 1;
    }
    return sums;
}

} // namespace

ExponentFit fit_exponent(const std::vector<TrialRecord>& records, const std::string& field) {
    ExponentFit fit;
    fit.field = field;
    for (const auto& [n, sum] : per_n_sums(records, field)) {
        const double mean = sum.first / static_cast<double>(sum.second);
        if (!(mean > 0.0)) {
            std::cerr << "fit_exponent: dropping n=" << n << " (nonpositive mean of " << field
                      << ")\n";
            continue;
        }
        fit.points.emplace_back(std::log(n), std::log(mean));
    }
    const std::size_t m = fit.points.size();
    if (m < 3)
        fail(ErrorCode::insufficient_data,
             "exponent fit needs >= 3 distinct n with positive means, have " + std::to_string(m));

    double sx = 0, sy = 0;
    for (const auto& [x, y] : fit.points) {
        sx += x;
        sy += y;
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : fit.points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0, ss_tot = 0;
    for (const auto& [x, y] : fit.points) {
        const double e = y - (fit.intercept + fit.slope * x);
        ss_res += e * e;
        ss_tot += (y - my) * (y - my);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    fit.stderr_slope = m > 2 ? std::sqrt(ss_res / (m - 2) / sxx) : 0.0;
    return fit;
}

std::string lln_table(const std::vector<TrialRecord>& records) {
    std::map<std::pair<double, double>, std::vector<const TrialRecord*>> groups;
    for (const TrialRecord& r : records)
        if (r.status == "solved") groups[{r.n, r.alpha}].push_back(&r);

    std::string out = "n,alpha,trials,mean_length_ratio,mean_hausdorff_over_n\n";
    std::map<double, double> w_cache;
    for (const auto& [key, rows] : groups) {
        const auto [n, alpha] = key;
        auto it = w_cache.find(alpha);
        if (it == w_cache.end())
            it = w_cache.emplace(alpha, limitshape::make_shape(alpha).w).first;
        const double w = it->second;
        double ratio_sum = 0.0, hd_sum = 0.0;
        for (const TrialRecord* r : rows) {
            ratio_sum += static_cast<double>(r->l_alpha) / (2.0 * w * n);
            hd_sum += r->hausdorff_over_n;
        }
        const double count = static_cast<double>(rows.size());
        out += textio::format_double(n) + ',' + textio::format_double(alpha) + ',' +
               textio::format_u64(rows.size()) + ',' + textio::format_double(ratio_sum / count) +
               ',' + textio::format_double(hd_sum / count) + '\n';
    }
    return out;
}

} // namespace areatrap::harness

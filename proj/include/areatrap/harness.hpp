#pragma once

#include "areatrap/constrained.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace areatrap::harness {

struct ExperimentConfig {
    std::uint64_t master_seed = 0;
    std::vector<double> n_values;        // sorted ascending, > 0
    std::vector<double> alpha_values;    // in (0, 1/2)
    std::vector<int> replicates;         // one entry per n (scalars broadcast)
    double delta = 0.3141592653589793;   // pi/10
    double epsilon = 0.1;
    constrained::SolveOptions solver;
    double hausdorff_ds = 0.001;         // sampling step as a fraction of n
    std::string results_csv;             // optional default output path
    int threads = 0;                     // 0 = auto

    std::uint64_t total_trials() const;
};

// Strict JSON parse: missing required keys, unknown keys or invalid values
// all fail with parse-error/validation-error.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig config_from_json(const std::string& text, const std::string& origin);

struct TrialRecord {
    std::uint64_t master_seed = 0;
    std::uint64_t trial_index = 0;
    double n = 0.0;
    double alpha = 0.0;
    std::int64_t point_count = 0;
    std::string status;                  // "solved" | "infeasible"
    std::int64_t l_unconstrained = 0;
    std::int64_t l_alpha = 0;
    double achieved_area_ratio = 0.0;    // area / n^2
    std::int64_t gap = 0;
    double mfl_all = 0.0;
    double mfl_interior = 0.0;
    double mlr_all = 0.0;
    double mlr_interior = 0.0;
    double hausdorff_over_n = 0.0;
    double tf_unconstrained = 0.0;
    double wall_ms = 0.0;                // measured; excluded from determinism
};

extern const char* const kResultsHeader;

// Deterministic function of (config, trial_index) up to wall_ms. The trial
// seed chains derive_seed over (master_seed, n_index, alpha_index, replicate)
// so extending a grid axis never perturbs existing trials.
TrialRecord run_trial(const ExperimentConfig& config, std::uint64_t trial_index);

std::string record_to_csv_row(const TrialRecord& r);
std::vector<TrialRecord> load_records(const std::string& csv_path);

// Incremental results writer: rows are appended as trials finish (the file is
// a valid partial CSV at any instant, flagged by a `.incomplete` marker) and
// rewritten in sorted order on finalize. Destruction without finalize leaves
// the partial file and the marker behind.
class SweepWriter {
public:
    explicit SweepWriter(const std::string& path);
    ~SweepWriter();
    void append(const TrialRecord& record);
    void finalize();
    const std::string& marker_path() const { return marker_; }

private:
    std::string path_;
    std::string marker_;
    std::vector<TrialRecord> rows_;
    bool finalized_ = false;
};

// Runs every (n, alpha, replicate) trial on a small worker pool. Output rows
// are sorted by (n, alpha, trial_index) and wall_ms is written as 0, making
// the file bytes a pure function of the config regardless of thread count.
// Thread resolution order: AREATRAP_THREADS, then threads_override (> 0),
// then config.threads, then hardware.
void sweep(const ExperimentConfig& config, const std::string& out_csv, int threads_override = 0);

struct ExponentFit {
    std::string field;
    std::vector<std::pair<double, double>> points; // (log n, log mean)
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
    double r_squared = 0.0;
};

// OLS of ln(per-n mean of `field`) against ln n over solved rows. Groups
// with nonpositive means are excluded; fewer than 3 surviving points is
// insufficient-data.
ExponentFit fit_exponent(const std::vector<TrialRecord>& records, const std::string& field);

// Per-(n, alpha) means of L_alpha / (2 w_alpha n) and hausdorff_over_n,
// with w recomputed from the implicit equation at each alpha.
std::string lln_table(const std::vector<TrialRecord>& records);

// Self-contained deterministic SVG. Kinds:
//   shape     - psi curves for each distinct alpha (results CSV) or a single
//               sampled curve (x,psi_x CSV)
//   exponents - log-log per-n means of `field` with the fitted line
//   lln       - mean L_alpha/(2 w n) against n, one series per alpha
std::string render_plot(const std::string& in_csv, const std::string& kind,
                        const std::string& field);
void emit_plot(const std::string& in_csv, const std::string& kind, const std::string& field,
               const std::string& out_svg);

// Cross-checks production solvers against the oracle on `trials` random
// instances; returns the number of mismatches (0 = all agree) and prints
// one line per mismatch with the offending seed.
std::int64_t oracle_check(std::int64_t trials, std::int64_t max_points, std::uint64_t seed);

} // namespace areatrap::harness

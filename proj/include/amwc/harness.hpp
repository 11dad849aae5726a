#ifndef AMWC_HARNESS_HPP
#define AMWC_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "amwc/config.hpp"

namespace amwc {

enum class Preset { Paper, Ci };

Preset preset_from_string(const std::string& text);
std::string to_string(Preset preset);

/// Hardware defaults of a preset (f_max, L, M, W, B).
SystemConfig preset_config(Preset preset);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// 95% Wilson score interval for successes / trials.
Interval wilson_interval(int successes, int trials, double z = 1.959963984540054);

// ---------------------------------------------------------------- spark map

struct SparkPlan {
  SystemConfig base;  // M, L, master_seed used; p and q_prime come from the grid
  std::vector<std::pair<int, int>> grid;  // (p, q')
  int trials = 1000;
  double tol = 1e-8;
  int threads = 1;
};

struct SparkRow {
  int p = 0;
  int q_prime = 0;
  int gcd = 0;
  bool q_gt_p = false;
  bool evaluated = false;  // false when N < Mq'
  double rate = 0.0;
  int trials = 0;
  bool duplicates_found = false;
};

std::vector<std::pair<int, int>> spark_grid(int p_max, int q_max);
std::vector<SparkRow> run_spark_map(const SparkPlan& plan);
void write_spark_csv(std::ostream& out, const SparkPlan& plan, const std::vector<SparkRow>& rows);

// ----------------------------------------------------------- recovery sweep

struct SweepPlan {
  SystemConfig base;   // f_max, L, M, W, B, lpf_kind, master_seed
  int p = 1;
  std::vector<int> q_grid;
  int K_B = 10;
  double snr_db = 0.0;  // +inf for noiseless
  int trials = 100;
  int threads = 1;
  bool stop_at_90 = false;  // end the sweep at the first point reaching 0.9
};

struct CurvePoint {
  double f_s_total = 0.0;
  double per_channel_rate = 0.0;
  double rate = 0.0;
  int successes = 0;
  int trials = 0;
  Interval ci;
  int trial_errors = 0;
  int rank_warnings = 0;
  double mean_support = 0.0;
  bool monotonicity_violation = false;
  // config echo
  int p = 0;
  int q_prime = 0;
  int M = 0;
  int L = 0;
  int K_B = 0;
  double snr_db = 0.0;
  LpfKind lpf_kind = LpfKind::Ideal;
  std::uint64_t seed = 0;
};

/// Odd q' in [q_min, q_max] coprime with p; q_min defaults to the smallest
/// odd q' with M q' >= 2 K_B.
std::vector<int> default_q_grid(int p, int M, int K_B, int q_max, int q_min = 0);

std::vector<CurvePoint> run_recovery_sweep(const SweepPlan& plan);

/// Marks points whose rate drops below the previous point by more than two
/// binomial standard deviations.
void flag_monotonicity(std::vector<CurvePoint>& points);

/// Smallest f_s_total with rate >= 0.9 (points sorted by f_s_total).
std::optional<double> minimal_rate_90(const std::vector<CurvePoint>& points);

void write_curve_csv_header(std::ostream& out);
void write_curve_csv_rows(std::ostream& out, const std::vector<CurvePoint>& points);

/// One AMWC/cMWC comparison point at roughly equal per-channel rate.
struct ChannelComparison {
  int q = 0;             // cMWC q'
  int q_amwc = 0;        // 4q - 1
  CurvePoint cmwc;
  CurvePoint amwc;
};

/// M_c-channel cMWC at q' = q against an M_a-channel, p_a AMWC at
/// q' = p_a q - 1, the nearest grid point not above the cMWC per-channel rate.
std::vector<ChannelComparison> run_channel_comparison(const SystemConfig& base, const std::vector<int>& q_values,
                                                      int M_cmwc, int M_amwc, int p_amwc, int K_B, double snr_db,
                                                      int trials, int threads);

// ----------------------------------------------------------- pipeline check

struct PipelinePlan {
  int configs = 50;
  std::vector<int> p_values{1, 2, 3, 4};
  std::vector<int> L_values{7, 31};
  int q_min = 3;
  int q_max = 19;
  int W_max = 4;
  int M_max = 3;
  std::uint64_t seed = 1;
  double threshold = 1e-9;
  std::optional<double> calibration_factor;  // multiplies the calibration scalar (test hook)
  int threads = 1;
};

struct PipelineCase {
  SystemConfig cfg;
  double rel_error = 0.0;
};

struct PipelineReport {
  std::vector<PipelineCase> cases;
  double worst = 0.0;
  bool passed = false;
};

/// Random noiseless signals through acquire() against model_predict() on
/// the extracted X2W.
PipelineReport run_pipeline_check(const PipelinePlan& plan);
void write_pipeline_csv(std::ostream& out, const PipelineReport& report);

}  // namespace amwc

#endif  // AMWC_HARNESS_HPP

#include "amwc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>

#include "amwc/frontend.hpp"
#include "amwc/index_maps.hpp"
#include "amwc/parallel.hpp"
#include "amwc/pr_signals.hpp"
#include "amwc/recovery.hpp"
#include "amwc/rng.hpp"
#include "amwc/sensing.hpp"
#include "amwc/waveforms.hpp"

namespace amwc {
namespace {

constexpr std::uint64_t kTagChips = 0x43484950ULL;
constexpr std::uint64_t kTagFilter = 0x4C5046ULL;
constexpr std::uint64_t kTagTrial = 0x545249ULL;
constexpr std::uint64_t kTagSpark = 0x535041ULL;
constexpr std::uint64_t kTagPipe = 0x504950ULL;

std::uint64_t chip_seed(std::uint64_t master) { return derive_seed(master, {kTagChips}); }

std::uint64_t filter_seed(std::uint64_t master, int p, int q_prime) {
  return derive_seed(master, {kTagFilter, std::uint64_t(p), std::uint64_t(q_prime)});
}

struct TrialOutcome {
  bool success = false;
  bool error = false;
  bool rank_warning = false;
  int support_size = 0;
};

}  // namespace

Preset preset_from_string(const std::string& text) {
  if (text == "paper") return Preset::Paper;
  if (text == "ci") return Preset::Ci;
  throw std::invalid_argument("unknown preset '" + text + "' (expected paper|ci)");
}

std::string to_string(Preset preset) { return preset == Preset::Paper ? "paper" : "ci"; }

SystemConfig preset_config(Preset preset) {
  SystemConfig cfg;
  if (preset == Preset::Paper) {
    cfg.f_max_hz = 10e9;
    cfg.L = 127;
    cfg.M = 3;
    cfg.W = 15;
    cfg.band_max_width_hz = 5e6;
  } else {
    // Same f_p as the paper preset on a shorter sequence.
    cfg.L = 31;
    cfg.f_max_hz = 10e9 * 31.0 / 127.0;
    cfg.M = 3;
    cfg.W = 7;
    cfg.band_max_width_hz = 5e6;
  }
  cfg.p = 1;
  cfg.q_prime = 11;
  return cfg;
}

Interval wilson_interval(int successes, int trials, double z) {
  if (trials <= 0) return {0.0, 1.0};
  const double n = trials;
  const double phat = successes / n;
  const double z2 = z * z;
  const double centre = (phat + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

// ---------------------------------------------------------------- spark map

std::vector<std::pair<int, int>> spark_grid(int p_max, int q_max) {
  std::vector<std::pair<int, int>> g;
  for (int p = 1; p <= p_max; ++p)
    for (int q = 1; q <= q_max; q += 2) g.emplace_back(p, q);
  return g;
}

std::vector<SparkRow> run_spark_map(const SparkPlan& plan) {
  if (plan.grid.empty()) throw std::invalid_argument("spark map: empty grid");
  if (plan.trials < 1) throw std::invalid_argument("spark map: trials must be >= 1");
  std::vector<SparkRow> rows;
  for (const auto& [p, q] : plan.grid) {
    SystemConfig cfg = plan.base;
    cfg.p = p;
    cfg.q_prime = q;
    const DerivedParams dp = derive_params(cfg);
    const WindowContext ctx = make_context(dp);
    const PRBank bank = make_pr_bank(dp, chip_seed(cfg.master_seed));
    const CMatrix D = build_D(bank, dp, ctx);

    SparkRow row;
    row.p = p;
    row.q_prime = q;
    row.gcd = std::gcd(p, q);
    row.q_gt_p = q > p;
    row.duplicates_found = find_identical_columns(D).has_value();
    if (D.cols() >= D.rows()) {
      row.evaluated = true;
      row.trials = plan.trials;
      row.rate = column_independence_rate(
          D, plan.trials, derive_seed(cfg.master_seed, {kTagSpark, std::uint64_t(p), std::uint64_t(q)}), plan.tol,
          plan.threads);
    }
    rows.push_back(row);
  }
  return rows;
}

void write_spark_csv(std::ostream& out, const SparkPlan& plan, const std::vector<SparkRow>& rows) {
  out << "p,q_prime,gcd,coprime,q_gt_p,M,L,trials,rate,ci_lo,ci_hi,duplicates_found,evaluated,seed\n";
  for (const SparkRow& r : rows) {
    const int succ = static_cast<int>(std::lround(r.rate * r.trials));
    const Interval ci = wilson_interval(succ, r.trials);
    out << r.p << ',' << r.q_prime << ',' << r.gcd << ',' << (r.gcd == 1) << ',' << r.q_gt_p << ',' << plan.base.M
        << ',' << plan.base.L << ',' << r.trials << ',' << r.rate << ',' << ci.lo << ',' << ci.hi << ','
        << r.duplicates_found << ',' << r.evaluated << ',' << plan.base.master_seed << '\n';
  }
}

// ----------------------------------------------------------- recovery sweep

std::vector<int> default_q_grid(int p, int M, int K_B, int q_max, int q_min) {
  if (q_min <= 0) {
    q_min = 1;
    while (M * q_min < 2 * K_B) ++q_min;
  }
  std::vector<int> g;
  for (int q = q_min; q <= q_max; ++q)
    if (q % 2 == 1 && std::gcd(p, q) == 1) g.push_back(q);
  return g;
}

namespace {

CurvePoint run_point(const SweepPlan& plan, int q) {
  SystemConfig cfg = plan.base;
  cfg.p = plan.p;
  cfg.q_prime = q;
  const DerivedParams dp = derive_params(cfg);
  const PRBank bank = make_pr_bank(dp, chip_seed(cfg.master_seed));
  const FilterResponse filter = build_lpf(cfg.lpf_kind, dp, filter_seed(cfg.master_seed, cfg.p, q));
  const SensingModel model = make_sensing_model(bank, filter, dp);
  const int iterations = std::min({2 * plan.K_B, dp.rows(), dp.N});

  std::vector<TrialOutcome> outcomes(plan.trials);
  parallel_for(plan.trials, plan.threads, [&](std::int64_t t) {
    TrialOutcome& o = outcomes[t];
    try {
      Rng rng(derive_seed(cfg.master_seed, {kTagTrial, std::uint64_t(plan.p), std::uint64_t(plan.K_B),
                                            std::uint64_t(t)}));
      const MultibandDraw draw = gen_multiband(plan.K_B, dp, rng);
      const DenseSignal x = add_awgn(draw.signal, plan.snr_db, rng);
      const MeasurementSet ms = acquire(x, bank, filter, dp);
      const RecoveryResult res = dcs_somp(ms.Z, model, iterations);
      o.success = support_success(draw.support, res.support_hat);
      o.rank_warning = res.rank_warning;
      o.support_size = static_cast<int>(draw.support.size());
    } catch (const std::exception&) {
      o.error = true;
    }
  });

  CurvePoint pt;
  pt.p = plan.p;
  pt.q_prime = q;
  pt.M = cfg.M;
  pt.L = cfg.L;
  pt.K_B = plan.K_B;
  pt.snr_db = plan.snr_db;
  pt.lpf_kind = cfg.lpf_kind;
  pt.seed = cfg.master_seed;
  pt.f_s_total = dp.f_s_total;
  pt.per_channel_rate = dp.f_s_prime;
  pt.trials = plan.trials;
  double support_sum = 0.0;
  for (const TrialOutcome& o : outcomes) {
    pt.successes += o.success;
    pt.trial_errors += o.error;
    pt.rank_warnings += o.rank_warning;
    support_sum += o.support_size;
  }
  pt.rate = static_cast<double>(pt.successes) / pt.trials;
  pt.ci = wilson_interval(pt.successes, pt.trials);
  pt.mean_support = support_sum / std::max(1, pt.trials - pt.trial_errors);
  return pt;
}

}  // namespace

std::vector<CurvePoint> run_recovery_sweep(const SweepPlan& plan) {
  if (plan.q_grid.empty()) throw std::invalid_argument("recovery sweep: empty q' grid");
  if (plan.trials < 1) throw std::invalid_argument("recovery sweep: trials must be >= 1");
  std::vector<int> grid = plan.q_grid;
  std::sort(grid.begin(), grid.end());
  std::vector<CurvePoint> points;
  for (int q : grid) {
    points.push_back(run_point(plan, q));
    if (plan.stop_at_90 && points.back().rate >= 0.9) break;
  }
  flag_monotonicity(points);
  return points;
}

void flag_monotonicity(std::vector<CurvePoint>& points) {
  for (std::size_t i = 1; i < points.size(); ++i) {
    const CurvePoint& a = points[i - 1];
    CurvePoint& b = points[i];
    const double pooled = 0.5 * (a.rate + b.rate);
    const double sigma = std::sqrt(pooled * (1 - pooled) * (1.0 / a.trials + 1.0 / b.trials));
    b.monotonicity_violation = b.rate < a.rate - 2 * sigma;
  }
}

std::optional<double> minimal_rate_90(const std::vector<CurvePoint>& points) {
  for (const CurvePoint& pt : points)
    if (pt.rate >= 0.9) return pt.f_s_total;
  return std::nullopt;
}

void write_curve_csv_header(std::ostream& out) {
  out << "p,q_prime,M,L,K_B,snr_db,lpf_kind,seed,f_s_total_hz,per_channel_rate_hz,trials,successes,rate,ci_lo,ci_hi,"
         "trial_errors,rank_warnings,mean_support,monotonicity_violation\n";
}

void write_curve_csv_rows(std::ostream& out, const std::vector<CurvePoint>& points) {
  out.precision(10);
  for (const CurvePoint& pt : points)
    out << pt.p << ',' << pt.q_prime << ',' << pt.M << ',' << pt.L << ',' << pt.K_B << ',' << pt.snr_db << ','
        << to_string(pt.lpf_kind) << ',' << pt.seed << ',' << pt.f_s_total << ',' << pt.per_channel_rate << ','
        << pt.trials << ',' << pt.successes << ',' << pt.rate << ',' << pt.ci.lo << ',' << pt.ci.hi << ','
        << pt.trial_errors << ',' << pt.rank_warnings << ',' << pt.mean_support << ',' << pt.monotonicity_violation
        << '\n';
}

std::vector<ChannelComparison> run_channel_comparison(const SystemConfig& base, const std::vector<int>& q_values,
                                                      int M_cmwc, int M_amwc, int p_amwc, int K_B, double snr_db,
                                                      int trials, int threads) {
  std::vector<ChannelComparison> out;
  for (int q : q_values) {
    ChannelComparison c;
    c.q = q;
    c.q_amwc = p_amwc * q - 1;
    if (std::gcd(p_amwc, c.q_amwc) != 1 || c.q_amwc % 2 == 0)
      throw std::invalid_argument("channel comparison: p q - 1 must be odd and coprime with p");

    SweepPlan plan;
    plan.base = base;
    plan.K_B = K_B;
    plan.snr_db = snr_db;
    plan.trials = trials;
    plan.threads = threads;

    plan.base.M = M_cmwc;
    plan.p = 1;
    plan.q_grid = {q};
    c.cmwc = run_recovery_sweep(plan).front();

    plan.base.M = M_amwc;
    plan.p = p_amwc;
    plan.q_grid = {c.q_amwc};
    c.amwc = run_recovery_sweep(plan).front();
    out.push_back(c);
  }
  return out;
}

// ----------------------------------------------------------- pipeline check

PipelineReport run_pipeline_check(const PipelinePlan& plan) {
  if (plan.configs < 1) throw std::invalid_argument("pipeline check: configs must be >= 1");
  PipelineReport report;
  report.cases.resize(plan.configs);
  parallel_for(plan.configs, plan.threads, [&](std::int64_t c) {
    Rng rng(derive_seed(plan.seed, {kTagPipe, std::uint64_t(c)}));
    auto pick = [&](const std::vector<int>& v) {
      return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
    };
    SystemConfig cfg;
    cfg.p = pick(plan.p_values);
    cfg.L = pick(plan.L_values);
    cfg.q_prime = pick(default_q_grid(cfg.p, 1, 0, plan.q_max, plan.q_min));
    cfg.W = std::uniform_int_distribution<int>(1, plan.W_max)(rng);
    cfg.M = std::uniform_int_distribution<int>(1, plan.M_max)(rng);
    cfg.lpf_kind = c % 2 == 0 ? LpfKind::Ideal : LpfKind::Random;
    cfg.f_max_hz = 1e9;
    cfg.master_seed = derive_seed(plan.seed, {kTagPipe, std::uint64_t(c), 1});

    const DerivedParams dp = derive_params(cfg);
    const PRBank bank = make_pr_bank(dp, chip_seed(cfg.master_seed));
    const FilterResponse filter = build_lpf(cfg.lpf_kind, dp, filter_seed(cfg.master_seed, cfg.p, cfg.q_prime));
    const SensingModel model = make_sensing_model(bank, filter, dp);

    // Dense random spectrum over every bin strictly inside (-f_max, f_max).
    CVector half = CVector::Zero(dp.n_dense / 2 + 1);
    half(0) = std::normal_distribution<double>(0.0, 1.0)(rng);
    for (std::int64_t m = 1; m < dp.nyq_half_bins; ++m) half(m) = complex_normal(rng);
    const DenseSignal x = signal_from_half_spectrum(half, dp);

    std::optional<double> cal;
    if (plan.calibration_factor) cal = *plan.calibration_factor * default_calibration(dp);
    const MeasurementSet ms = acquire(x, bank, filter, dp, cal);
    const CMatrix expected = model_predict(model, extract_X2W(x, dp));
    report.cases[c] = {cfg, (ms.Z - expected).norm() / expected.norm()};
  });
  for (const PipelineCase& pc : report.cases) report.worst = std::max(report.worst, pc.rel_error);
  report.passed = std::all_of(report.cases.begin(), report.cases.end(),
                              [&](const PipelineCase& pc) { return pc.rel_error <= plan.threshold; });
  return report;
}

void write_pipeline_csv(std::ostream& out, const PipelineReport& report) {
  out << "case,p,q_prime,M,L,W,lpf_kind,seed,rel_error\n";
  out.precision(6);
  for (std::size_t c = 0; c < report.cases.size(); ++c) {
    const SystemConfig& cfg = report.cases[c].cfg;
    out << c << ',' << cfg.p << ',' << cfg.q_prime << ',' << cfg.M << ',' << cfg.L << ',' << cfg.W << ','
        << to_string(cfg.lpf_kind) << ',' << cfg.master_seed << ',' << std::scientific << report.cases[c].rel_error
        << std::defaultfloat << '\n';
  }
}

}  // namespace amwc

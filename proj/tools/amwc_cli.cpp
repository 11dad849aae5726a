#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "amwc/config.hpp"
#include "amwc/config_io.hpp"
#include "amwc/harness.hpp"
#include "amwc/waveforms.hpp"

namespace fs = std::filesystem;
using namespace amwc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 1;
  std::string preset = "paper";
};

void add_common(CLI::App* sub, CommonOptions& o) {
  sub->add_option("--config", o.config_path, "key = value config file (overrides preset values)");
  sub->add_option("--out", o.out_dir, "output directory")->capture_default_str();
  sub->add_option_function<std::uint64_t>("--seed", [&o](const std::uint64_t& s) {
    o.seed = s;
    o.seed_given = true;
  }, "master seed");
  sub->add_option("--threads", o.threads, "worker threads (0 = all cores)")->capture_default_str();
  sub->add_option("--preset", o.preset, "paper | ci")->check(CLI::IsMember({"paper", "ci"}))->capture_default_str();
}

SystemConfig resolve_config(const CommonOptions& o) {
  SystemConfig cfg = preset_config(preset_from_string(o.preset));
  if (!o.config_path.empty()) cfg = load_config(o.config_path, cfg);
  if (o.seed_given) cfg.master_seed = o.seed;
  validate(cfg);
  return cfg;
}

std::ofstream open_out(const CommonOptions& o, const std::string& name) {
  fs::create_directories(o.out_dir);
  const fs::path path = fs::path(o.out_dir) / name;
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  return f;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) v.push_back(std::stoi(item));
  if (v.empty()) throw std::invalid_argument("empty list '" + text + "'");
  return v;
}

double parse_snr(const std::string& text) {
  if (text == "inf" || text == "none") return kNoiseless;
  return std::stod(text);
}

std::string fmt_ghz(double hz) {
  std::ostringstream s;
  s.precision(4);
  s << std::fixed << hz / 1e9;
  return s.str();
}

// ------------------------------------------------------------------ commands

int cmd_spark_map(const CommonOptions& o, int trials, int p_max, int q_max, const std::string& pairs) {
  const bool ci = o.preset == "ci";
  SparkPlan plan;
  plan.base = resolve_config(o);
  plan.threads = o.threads;
  plan.trials = trials > 0 ? trials : (ci ? 100 : 1000);
  if (!pairs.empty()) {
    std::stringstream ss(pairs);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw std::invalid_argument("pairs must look like p:q,p:q");
      plan.grid.emplace_back(std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1)));
    }
  } else {
    plan.grid = spark_grid(p_max > 0 ? p_max : (ci ? 6 : 10), q_max > 0 ? q_max : (ci ? 11 : 25));
  }
  const std::vector<SparkRow> rows = run_spark_map(plan);
  std::ofstream f = open_out(o, "spark_map.csv");
  write_spark_csv(f, plan, rows);

  int failures = 0;
  for (const SparkRow& r : rows) {
    if (r.gcd != 1) continue;
    if (r.q_gt_p && r.evaluated && r.rate < 1.0) {
      std::cout << "FAIL lossless pair (p=" << r.p << ", q'=" << r.q_prime << ") rate " << r.rate << "\n";
      ++failures;
    }
    if (r.p > r.q_prime && !r.duplicates_found) {
      std::cout << "FAIL (p=" << r.p << ", q'=" << r.q_prime << ") has no duplicate column\n";
      ++failures;
    }
  }
  std::cout << "spark-map: " << rows.size() << " grid points, " << failures << " check failures -> "
            << (fs::path(o.out_dir) / "spark_map.csv").string() << "\n";
  return failures ? kExitCheckFailed : kExitOk;
}

struct SweepArgs {
  std::string p_list = "1,2,3,4";
  std::string snr = "inf";
  std::string lpf;
  int K_B = 0;
  int trials = 0;
  int M = 0;
  int q_min = 0;
  int q_max = 0;
  bool stop_at_90 = false;
  bool compare_channels = false;
  std::string compare_q = "3,5,7,9,11";
};

int cmd_recovery_sweep(const CommonOptions& o, const SweepArgs& a) {
  const bool ci = o.preset == "ci";
  SystemConfig base = resolve_config(o);
  if (!a.lpf.empty()) base.lpf_kind = lpf_kind_from_string(a.lpf);
  if (a.M > 0) base.M = a.M;
  const int K_B = a.K_B > 0 ? a.K_B : (ci ? 4 : 10);
  const int trials = a.trials > 0 ? a.trials : (ci ? 20 : 100);
  const double snr = parse_snr(a.snr);
  int errors = 0;

  if (a.compare_channels) {
    const std::vector<ChannelComparison> cmp =
        run_channel_comparison(base, parse_int_list(a.compare_q), 6, 1, 4, K_B, snr, trials, o.threads);
    std::ofstream f = open_out(o, "channel_comparison.csv");
    f << "q_cmwc,q_amwc,";
    write_curve_csv_header(f);
    for (const ChannelComparison& c : cmp) {
      for (const CurvePoint* pt : {&c.cmwc, &c.amwc}) {
        f << c.q << ',' << c.q_amwc << ',';
        write_curve_csv_rows(f, {*pt});
      }
      errors += c.cmwc.trial_errors + c.amwc.trial_errors;
      std::cout << "per-channel " << fmt_ghz(c.cmwc.per_channel_rate) << " GHz cMWC(M=6) " << c.cmwc.rate
                << " | " << fmt_ghz(c.amwc.per_channel_rate) << " GHz AMWC(M=1,p=4) " << c.amwc.rate << "\n";
    }
    return errors ? kExitCheckFailed : kExitOk;
  }

  std::ofstream curve = open_out(o, "recovery_curve.csv");
  std::ofstream summary = open_out(o, "minimal_rates.csv");
  write_curve_csv_header(curve);
  summary << "p,M,L,K_B,snr_db,lpf_kind,seed,trials,minimal_rate_90_hz,q_prime_at_90\n";
  for (int p : parse_int_list(a.p_list)) {
    SweepPlan plan;
    plan.base = base;
    plan.p = p;
    plan.K_B = K_B;
    plan.snr_db = snr;
    plan.trials = trials;
    plan.threads = o.threads;
    plan.stop_at_90 = a.stop_at_90;
    plan.q_grid = default_q_grid(p, base.M, K_B, a.q_max > 0 ? a.q_max : (ci ? 15 : 41), a.q_min);
    const std::vector<CurvePoint> pts = run_recovery_sweep(plan);
    write_curve_csv_rows(curve, pts);
    const std::optional<double> best = minimal_rate_90(pts);
    int q90 = 0;
    for (const CurvePoint& pt : pts) {
      errors += pt.trial_errors;
      if (!q90 && pt.rate >= 0.9) q90 = pt.q_prime;
    }
    summary << p << ',' << base.M << ',' << base.L << ',' << K_B << ',' << snr << ',' << to_string(base.lpf_kind)
            << ',' << base.master_seed << ',' << trials << ',' << (best ? std::to_string(*best) : "none") << ','
            << q90 << '\n';
    std::cout << "p=" << p << ": minimal 90% total rate " << (best ? fmt_ghz(*best) + " GHz" : "not reached")
              << "\n";
  }
  return errors ? kExitCheckFailed : kExitOk;
}

int cmd_pipeline_check(const CommonOptions& o, int configs, const std::string& p_list, bool corrupt) {
  PipelinePlan plan;
  plan.seed = resolve_config(o).master_seed;
  plan.threads = o.threads;
  if (configs > 0) plan.configs = configs;
  plan.p_values = parse_int_list(p_list);
  if (corrupt) plan.calibration_factor = 1.0 + 1e-3;
  const PipelineReport report = run_pipeline_check(plan);
  std::ofstream f = open_out(o, "pipeline_check.csv");
  write_pipeline_csv(f, report);
  std::cout << "pipeline-check: " << report.cases.size() << " configs, worst relative error " << report.worst
            << (report.passed ? " (pass)" : " (FAIL)") << "\n";
  return report.passed ? kExitOk : kExitCheckFailed;
}

int cmd_gen_config(const CommonOptions& o) {
  const SystemConfig cfg = resolve_config(o);
  std::ofstream f = open_out(o, "config.txt");
  write_config(f, cfg);
  std::cout << (fs::path(o.out_dir) / "config.txt").string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AMWC / MWC sub-Nyquist sampling laboratory"};
  app.require_subcommand(1);

  CommonOptions spark_o, sweep_o, pipe_o, gen_o;

  auto* spark = app.add_subcommand("spark-map", "column-independence rates of D over a (p, q') grid");
  add_common(spark, spark_o);
  int spark_trials = 0, p_max = 0, q_max = 0;
  std::string pairs;
  spark->add_option("--trials", spark_trials, "column draws per grid point");
  spark->add_option("--p-max", p_max, "grid p in [1, p-max]");
  spark->add_option("--q-max", q_max, "grid odd q' in [1, q-max]");
  spark->add_option("--pairs", pairs, "explicit grid, e.g. 4:19,6:9");

  auto* sweep = app.add_subcommand("recovery-sweep", "support-recovery rate against total sampling rate");
  add_common(sweep, sweep_o);
  SweepArgs sa;
  sweep->add_option("--p", sa.p_list, "comma-separated aliasing parameters")->capture_default_str();
  sweep->add_option("--snr", sa.snr, "SNR in dB, or inf")->capture_default_str();
  sweep->add_option("--lpf", sa.lpf, "ideal | random (default: config)");
  sweep->add_option("--kb", sa.K_B, "two-sided band count K_B");
  sweep->add_option("--trials", sa.trials, "trials per point");
  sweep->add_option("--M", sa.M, "analog channels");
  sweep->add_option("--q-min", sa.q_min, "smallest q'");
  sweep->add_option("--q-max", sa.q_max, "largest q'");
  sweep->add_flag("--stop-at-90", sa.stop_at_90, "stop each curve once it reaches 0.9");
  sweep->add_flag("--compare-channels", sa.compare_channels, "M=6 cMWC against M=1, p=4 AMWC");
  sweep->add_option("--compare-q", sa.compare_q, "cMWC q' values for --compare-channels")->capture_default_str();

  auto* pipe = app.add_subcommand("pipeline-check", "acquisition simulation against the matrix model");
  add_common(pipe, pipe_o);
  int configs = 0;
  std::string pipe_p = "1,2,3,4";
  bool corrupt = false;
  pipe->add_option("--configs", configs, "random configurations (default 50)");
  pipe->add_option("--p", pipe_p, "aliasing parameters to draw from")->capture_default_str();
  pipe->add_flag("--corrupt-calibration", corrupt)->group("");

  auto* gen = app.add_subcommand("gen-config", "write the resolved configuration file");
  add_common(gen, gen_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*spark) return cmd_spark_map(spark_o, spark_trials, p_max, q_max, pairs);
    if (*sweep) return cmd_recovery_sweep(sweep_o, sa);
    if (*pipe) return cmd_pipeline_check(pipe_o, configs, pipe_p, corrupt);
    if (*gen) return cmd_gen_config(gen_o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

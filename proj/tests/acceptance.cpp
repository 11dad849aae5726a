// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: amwc_acceptance [criterion numbers...]   (default: all)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "amwc/frontend.hpp"
#include "amwc/harness.hpp"
#include "amwc/index_maps.hpp"
#include "amwc/recovery.hpp"
#include "amwc/sensing.hpp"
#include "amwc/waveforms.hpp"

using namespace amwc;

namespace {

int threads() { return std::max(1u, std::thread::hardware_concurrency()); }

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Verdict c1_index_maps() {
  long checked = 0;
  for (int p = 1; p <= 12; ++p)
    for (int q = 1; q <= 12; q += 2) {
      if (std::gcd(p, q) != 1) continue;
      SystemConfig cfg;
      cfg.L = 31;
      cfg.p = p;
      cfg.q_prime = q;
      const DerivedParams dp = derive_params(cfg);
      const WindowContext ctx = make_context(dp);
      const auto table = brute_force_expansion(ctx, dp.N1, dp.N2 + q - 1);
      for (const auto& [k, e] : table) {
        const std::int64_t g = gamma(k, ctx);
        if (picking_index(k, ctx) != e.l || g != static_cast<std::int64_t>(e.r) * q)
          return {false, "mismatch at p=" + std::to_string(p) + " q'=" + std::to_string(q) + " k=" + std::to_string(k)};
        if (mod_floor(g - k, p) != 0 || e.r < ctx.R1 || e.r > ctx.R2)
          return {false, "gamma residue wrong at k=" + std::to_string(k)};
        ++checked;
      }
    }
  return {true, std::to_string(checked) + " indices checked"};
}

Verdict c2_spark() {
  SparkPlan plan;
  plan.base = preset_config(Preset::Paper);
  plan.trials = 1000;
  plan.threads = threads();
  plan.grid = {{2, 5}, {3, 7}, {4, 19}, {5, 9}, {6, 9}, {5, 3}};
  const std::vector<SparkRow> rows = run_spark_map(plan);
  std::ostringstream d;
  bool ok = true;
  for (const SparkRow& r : rows) {
    d << "(" << r.p << "," << r.q_prime << ")=" << fmt("%.3f", r.rate) << (r.duplicates_found ? "d " : " ");
    const bool expect_full = r.gcd == 1 && r.q_gt_p;
    if (expect_full) ok = ok && r.evaluated && r.rate == 1.0;
    else ok = ok && r.evaluated && (r.rate < 1.0 || r.duplicates_found);
  }
  SystemConfig cfg = plan.base;
  cfg.p = 5;
  cfg.q_prime = 3;
  const DerivedParams dp = derive_params(cfg);
  const bool dup53 = has_identical_columns(5, 3, make_pr_bank(dp, cfg.master_seed), dp);
  d << "identical(5,3)=" << dup53;
  return {ok && dup53, d.str()};
}

Verdict c3_pipeline() {
  PipelinePlan plan;
  plan.threads = threads();
  const PipelineReport r = run_pipeline_check(plan);
  bool kinds_ideal = false, kinds_random = false;
  std::set<int> ps, Ls;
  for (const PipelineCase& c : r.cases) {
    kinds_ideal |= c.cfg.lpf_kind == LpfKind::Ideal;
    kinds_random |= c.cfg.lpf_kind == LpfKind::Random;
    ps.insert(c.cfg.p);
    Ls.insert(c.cfg.L);
  }
  const bool coverage = kinds_ideal && kinds_random && ps.size() == 4 && Ls.size() == 2;
  return {r.passed && r.cases.size() == 50 && coverage,
          std::to_string(r.cases.size()) + " configs, worst " + fmt("%.2e", r.worst)};
}

Verdict c4_structure() {
  SystemConfig cfg = preset_config(Preset::Paper);
  cfg.p = 4;
  cfg.q_prime = 19;
  const DerivedParams dp = derive_params(cfg);
  bool ok = dp.N == 508 && dp.rows() == 57 && std::abs(dp.f_p_prime - dp.f_p / 4) <= 1e-9 * dp.f_p;
  for (int L : {7, 31, 127})
    for (int p = 1; p <= 8; ++p) {
      SystemConfig c = cfg;
      c.L = L;
      c.p = p;
      c.q_prime = 5;
      ok = ok && derive_params(c).N == L * p;
    }
  return {ok, "N=" + std::to_string(dp.N) + " Mq'=" + std::to_string(dp.rows()) + " f_I=" + fmt("%.4g", dp.f_p_prime)};
}

struct Curve {
  std::vector<int> grid;
  std::vector<CurvePoint> points;
  std::optional<double> rate90;
  int q90 = 0;
};

Curve sweep(int p, LpfKind kind, double snr) {
  SweepPlan plan;
  plan.base = preset_config(Preset::Paper);
  plan.base.lpf_kind = kind;
  plan.p = p;
  plan.K_B = 10;
  plan.snr_db = snr;
  plan.trials = 100;
  plan.threads = threads();
  plan.stop_at_90 = true;
  plan.q_grid = default_q_grid(p, plan.base.M, plan.K_B, 41);
  Curve c;
  c.grid = plan.q_grid;
  c.points = run_recovery_sweep(plan);
  c.rate90 = minimal_rate_90(c.points);
  for (const CurvePoint& pt : c.points)
    if (c.rate90 && pt.f_s_total == *c.rate90) c.q90 = pt.q_prime;
  return c;
}

std::string ghz(const std::optional<double>& v) { return v ? fmt("%.3f", *v / 1e9) : std::string("none"); }

Verdict c5_trend() {
  std::ostringstream d;
  std::optional<double> r[2][5];
  for (int kind = 0; kind < 2; ++kind) {
    d << (kind == 0 ? "random" : "ideal") << ":";
    for (int p : {1, 2, 4}) {
      r[kind][p] = sweep(p, kind == 0 ? LpfKind::Random : LpfKind::Ideal, kNoiseless).rate90;
      d << " p" << p << "=" << ghz(r[kind][p]);
    }
    d << (kind == 0 ? "; " : "");
  }
  auto lt = [](const std::optional<double>& a, const std::optional<double>& b) { return a && b && *a < *b; };
  const bool ok = lt(r[0][4], r[0][2]) && lt(r[0][2], r[0][1]) && lt(r[1][2], r[1][1]) && lt(r[1][4], r[1][1]);
  return {ok, d.str()};
}

Verdict c6_table() {
  const double target[5] = {0, 5.197e9, 2.126e9, 1.732e9, 1.063e9};
  std::ostringstream d;
  bool ok = true;
  for (int p = 1; p <= 4; ++p) {
    const Curve c = sweep(p, LpfKind::Random, 12.0);
    SystemConfig cfg = preset_config(Preset::Paper);
    cfg.p = p;
    std::size_t want = 0;
    double best = 1e300;
    for (std::size_t i = 0; i < c.grid.size(); ++i) {
      cfg.q_prime = c.grid[i];
      const double gap = std::abs(derive_params(cfg).f_s_total - target[p]);
      if (gap < best) {
        best = gap;
        want = i;
      }
    }
    const auto it = std::find(c.grid.begin(), c.grid.end(), c.q90);
    const bool hit = c.rate90 && it != c.grid.end() &&
                     std::abs(static_cast<long>(it - c.grid.begin()) - static_cast<long>(want)) <= 1;
    ok = ok && hit;
    const CurvePoint& last = c.points.back();
    d << "p" << p << "=" << ghz(c.rate90) << " (target " << fmt("%.3f", target[p] / 1e9) << ", q'=" << c.q90
      << " vs " << c.grid[want] << ", ci [" << fmt("%.2f", last.ci.lo) << "," << fmt("%.2f", last.ci.hi) << "]) ";
  }
  return {ok, d.str()};
}

Verdict c7_channels() {
  SystemConfig base = preset_config(Preset::Paper);
  base.lpf_kind = LpfKind::Random;
  const auto rows = run_channel_comparison(base, {3, 5, 7, 9, 11}, 6, 1, 4, 10, kNoiseless, 100, threads());
  std::ostringstream d;
  bool ok = true;
  for (const ChannelComparison& c : rows) {
    ok = ok && c.amwc.rate >= c.cmwc.rate;
    d << "q=" << c.q << ": cMWC " << fmt("%.2f", c.cmwc.rate) << " vs AMWC " << fmt("%.2f", c.amwc.rate) << "; ";
  }
  return {ok, d.str()};
}

Verdict c8_engine() {
  // Exhaustive 2-sparse recovery on L = 7, M = 2, p = 1, q' = 3.
  SystemConfig cfg;
  cfg.f_max_hz = 1e9;
  cfg.L = 7;
  cfg.M = 2;
  cfg.p = 1;
  cfg.q_prime = 3;
  cfg.W = 2;
  cfg.band_max_width_hz = 1e6;
  const DerivedParams dp = derive_params(cfg);
  const SensingModel model = make_sensing_model(make_pr_bank(dp, 1), build_lpf(LpfKind::Ideal, dp, 0), dp);
  Rng rng(2);
  auto rnd = [&](Eigen::Index r, Eigen::Index c) {
    CMatrix A(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < c; ++j) A(i, j) = complex_normal(rng);
    return A;
  };
  int exact = 0;
  bool monotone = true, distinct = true;
  for (int a = 0; a < 7; ++a)
    for (int b = a + 1; b < 7; ++b) {
      CMatrix X = CMatrix::Zero(7, model.bins());
      X.row(a) = rnd(1, model.bins());
      X.row(b) = rnd(1, model.bins());
      const CMatrix Z = model_predict(model, X);
      const RecoveryResult res = dcs_somp(Z, model, 4);
      exact += support_success(SupportSet({a + dp.N1, b + dp.N1}), res.support_hat) &&
               (reconstruct_X(res.support_hat, Z, model) - X).norm() <= 1e-10 * X.norm();
      // Round-off floor once the residual reaches zero.
      const double floor = 1e-13 * Z.norm();
      double prev = Z.norm();
      for (double r : res.residual_norms) {
        monotone = monotone && r <= prev + floor;
        prev = r;
      }
      distinct = distinct && res.support_hat.size() == res.selection_order.size();
    }

  // Flat model against the same matrix replicated per bin.
  SensingModel per = model;
  per.per_bin.assign(model.bins(), model.D);
  const CMatrix Zr = rnd(model.rows(), model.bins());
  const RecoveryResult fa = dcs_somp(Zr, model, 5);
  const RecoveryResult fb = dcs_somp(Zr, per, 5);
  const bool flat_eq = fa.selection_order == fb.selection_order && (fa.X_hat - fb.X_hat).norm() <= 1e-12 * fa.X_hat.norm();

  // Two equal-score columns: the smaller index wins, every time.
  SensingModel tie;
  tie.D = CMatrix(2, 4);
  tie.D << 1, 0, 1, 0, 0, 1, 0, 1;
  tie.q_prime = 1;
  tie.M = 2;
  tie.N1 = -2;
  tie.w_indices = {0};
  CMatrix zt(2, 1);
  zt << 1, 0;
  bool tie_ok = true;
  for (int rep = 0; rep < 10; ++rep) tie_ok = tie_ok && dcs_somp(zt, tie, 1).selection_order == std::vector<int>{-2};

  const bool ok = exact == 21 && monotone && distinct && flat_eq && tie_ok;
  return {ok, "exact " + std::to_string(exact) + "/21, monotone=" + std::to_string(monotone) + " distinct=" +
                  std::to_string(distinct) + " flat=" + std::to_string(flat_eq) + " tie=" + std::to_string(tie_ok)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"index-map oracle", c1_index_maps},       {"spark map", c2_spark},
      {"pipeline-model equality", c3_pipeline},  {"structural constants", c4_structure},
      {"recovery trend", c5_trend},              {"12 dB minimal rates", c6_table},
      {"channel count", c7_channels},            {"recovery engine", c8_engine}};
  std::vector<int> which;
  for (int a = 1; a < argc; ++a) which.push_back(std::atoi(argv[a]));
  if (which.empty())
    for (int c = 1; c <= 8; ++c) which.push_back(c);

  int failed = 0;
  for (int c : which) {
    if (c < 1 || c > 8) {
      std::fprintf(stderr, "unknown criterion %d\n", c);
      return 2;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[c - 1].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d %-24s %s  [%.1fs] %s\n", c, criteria[c - 1].first, v.pass ? "PASS" : "FAIL", secs,
                v.detail.c_str());
    std::fflush(stdout);
    failed += !v.pass;
  }
  return failed == 0 ? 0 : 1;
}

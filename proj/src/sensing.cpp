#include "amwc/sensing.hpp"

#include <numeric>
#include <ostream>
#include <random>

#include "amwc/parallel.hpp"
#include "amwc/rng.hpp"

namespace amwc {
namespace {

cdouble redraw_complex(Rng& rng, double g_min) {
  for (;;) {
    const cdouble g = complex_normal(rng);
    if (std::abs(g) >= g_min) return g;
  }
}

double redraw_real(Rng& rng, double g_min) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    const double g = n(rng);
    if (std::abs(g) >= g_min) return g;
  }
}

}  // namespace

FilterResponse build_lpf(LpfKind kind, const DerivedParams& dp, std::uint64_t seed, double g_min) {
  FilterResponse f;
  f.kind = kind;
  f.half = dp.lpf_half_bins;
  f.seed = seed;
  f.values = CVector::Ones(2 * f.half);
  if (kind == LpfKind::Ideal) {
    f.g_min = 1.0;
    return f;
  }
  if (!(g_min > 0.0)) throw std::invalid_argument("build_lpf: g_min must be positive");
  f.g_min = g_min;
  Rng rng(seed);
  f.values(f.half) = redraw_real(rng, g_min);
  for (std::int64_t m = 1; m < f.half; ++m) {
    const cdouble g = redraw_complex(rng, g_min);
    f.values(f.half + m) = g;
    f.values(f.half - m) = std::conj(g);
  }
  f.values(0) = redraw_real(rng, g_min);
  return f;
}

CMatrix build_D(const PRBank& bank, const DerivedParams& dp, const WindowContext& ctx) {
  if (!ctx.coprime()) return build_D_from_expansion(bank, dp, ctx);
  const int q = dp.q_prime;
  CMatrix D(bank.channels() * q, dp.N);
  for (int i = 0; i < bank.channels(); ++i)
    for (int u = 0; u < q; ++u)
      for (int k = dp.N1; k <= dp.N2; ++k) D(i * q + u, k - dp.N1) = sensing_coeff(i, k + u, bank, ctx);
  return D;
}

CMatrix build_D_from_expansion(const PRBank& bank, const DerivedParams& dp, const WindowContext& ctx) {
  const int q = dp.q_prime;
  CMatrix D = CMatrix::Zero(bank.channels() * q, dp.N);
  for (int u = 0; u < q; ++u)
    for (int k = dp.N1; k <= dp.N2; ++k)
      for (const Expansion& e : expansions_of(k + u, ctx))
        for (int i = 0; i < bank.channels(); ++i)
          D(i * q + u, k - dp.N1) += bank.coeff(i, static_cast<int>(e.l));
  return D;
}

std::vector<CMatrix> build_Bw(const PRBank& bank, const FilterResponse& filter, const DerivedParams& dp,
                              const WindowContext& ctx) {
  const int q = dp.q_prime;
  const std::int64_t two_w = dp.subband_bins;
  std::vector<CMatrix> B(two_w, CMatrix::Zero(bank.channels() * q, dp.N));
  auto query = [&](std::int64_t m) {
    if (!filter.in_passband(m)) throw std::logic_error("build_Bw: filter queried outside the passband");
    return filter.at(m);
  };
  for (int u = 0; u < q; ++u) {
    for (int k = dp.N1; k <= dp.N2; ++k) {
      if (ctx.coprime()) {
        const std::int64_t gp = gamma_prime(k, u, ctx);
        for (int i = 0; i < bank.channels(); ++i) {
          const cdouble d = sensing_coeff(i, k + u, bank, ctx);
          for (std::int64_t j = 0; j < two_w; ++j)
            B[j](i * q + u, k - dp.N1) = d * query(dp.w_offset + j - two_w * gp);
        }
      } else {
        for (const Expansion& e : expansions_of(k + u, ctx)) {
          const std::int64_t gp = static_cast<std::int64_t>(e.r) * q - u;
          for (int i = 0; i < bank.channels(); ++i) {
            const cdouble c = bank.coeff(i, static_cast<int>(e.l));
            for (std::int64_t j = 0; j < two_w; ++j)
              B[j](i * q + u, k - dp.N1) += c * query(dp.w_offset + j - two_w * gp);
          }
        }
      }
    }
  }
  return B;
}

SensingModel make_sensing_model(const PRBank& bank, const FilterResponse& filter, const DerivedParams& dp) {
  const WindowContext ctx = make_context(dp);
  SensingModel model;
  model.M = bank.channels();
  model.q_prime = dp.q_prime;
  model.N1 = dp.N1;
  model.D = build_D(bank, dp, ctx);
  for (std::int64_t j = 0; j < dp.subband_bins; ++j) model.w_indices.push_back(dp.w_offset + j);
  if (filter.kind != LpfKind::Ideal) model.per_bin = build_Bw(bank, filter, dp, ctx);
  return model;
}

double column_independence_rate(const CMatrix& D, int trials, std::uint64_t seed, double tol, int threads) {
  const Eigen::Index n_pick = D.rows();
  if (D.cols() < n_pick) throw std::invalid_argument("column_independence_rate: fewer columns than rows");
  if (trials < 1) throw std::invalid_argument("column_independence_rate: trials must be >= 1");
  std::vector<char> independent(trials, 0);
  parallel_for(trials, threads, [&](std::int64_t t) {
    Rng rng(derive_seed(seed, {0x53504B52ULL, static_cast<std::uint64_t>(t)}));
    std::vector<Eigen::Index> cols(D.cols());
    std::iota(cols.begin(), cols.end(), Eigen::Index{0});
    CMatrix sub(n_pick, n_pick);
    for (Eigen::Index c = 0; c < n_pick; ++c) {
      std::uniform_int_distribution<Eigen::Index> pick(c, D.cols() - 1);
      std::swap(cols[c], cols[pick(rng)]);
      sub.col(c) = D.col(cols[c]);
    }
    const Eigen::VectorXd s = Eigen::BDCSVD<CMatrix>(sub).singularValues();
    independent[t] = s(0) > 0.0 && s(n_pick - 1) / s(0) > tol;
  });
  return static_cast<double>(std::accumulate(independent.begin(), independent.end(), 0)) / trials;
}

double column_independence_rate(const SensingModel& model, int trials, std::uint64_t seed, double tol, int threads) {
  return column_independence_rate(model.D, trials, seed, tol, threads);
}

void write_matrix_csv(std::ostream& out, const CMatrix& A, int q_prime, int N1) {
  out << "row_i,row_u,col_k,re,im\n";
  out.precision(17);
  for (Eigen::Index r = 0; r < A.rows(); ++r)
    for (Eigen::Index c = 0; c < A.cols(); ++c)
      out << r / q_prime + 1 << ',' << r % q_prime << ',' << c + N1 << ',' << A(r, c).real() << ','
          << A(r, c).imag() << '\n';
}

}  // namespace amwc

#ifndef AMWC_SENSING_HPP
#define AMWC_SENSING_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "amwc/config.hpp"
#include "amwc/index_maps.hpp"
#include "amwc/pr_signals.hpp"
#include "amwc/types.hpp"

namespace amwc {

/// Passband response on the bins m in [-Wpq', Wpq'), zero elsewhere.
struct FilterResponse {
  LpfKind kind = LpfKind::Ideal;
  CVector values;  // index m + half
  std::int64_t half = 0;
  double g_min = 0.0;
  std::uint64_t seed = 0;

  bool in_passband(std::int64_t m) const { return m >= -half && m < half; }
  cdouble at(std::int64_t m) const { return in_passband(m) ? values(m + half) : cdouble(0.0, 0.0); }
};

/// Random kind: positive bins CN(0, 1), negative bins their conjugates, the
/// DC and lower-edge bins real N(0, 1); bins with |G| < g_min are redrawn.
FilterResponse build_lpf(LpfKind kind, const DerivedParams& dp, std::uint64_t seed, double g_min = 0.05);

/// Row (i, u) -> i*q' + u, column k -> k - N1.
struct SensingModel {
  CMatrix D;
  std::vector<CMatrix> per_bin;          // empty for a flat response
  std::vector<std::int64_t> w_indices;   // w_offset + j
  int M = 0;
  int q_prime = 0;
  int N1 = 0;

  bool flat() const { return per_bin.empty(); }
  const CMatrix& at_bin(std::size_t j) const { return flat() ? D : per_bin[j]; }
  Eigen::Index rows() const { return D.rows(); }
  Eigen::Index cols() const { return D.cols(); }
  std::size_t bins() const { return w_indices.size(); }
};

/// D[(i,u), k-N1] = c_{i, I(k+u)}. Falls back to build_D_from_expansion when
/// gcd(p, q') != 1.
CMatrix build_D(const PRBank& bank, const DerivedParams& dp, const WindowContext& ctx);

/// D[(i,u), k-N1] = sum of c_{i,l} over all (r, l), r in [R1, R2], with
/// r q' + l p = k + u. Zero where no such pair exists.
CMatrix build_D_from_expansion(const PRBank& bank, const DerivedParams& dp, const WindowContext& ctx);

/// B[w_j][(i,u), k-N1] = d_{i,k+u} G(w_offset + j - 2W gamma'(k, u)).
std::vector<CMatrix> build_Bw(const PRBank& bank, const FilterResponse& filter, const DerivedParams& dp,
                              const WindowContext& ctx);

/// Flat model for an ideal filter, per-bin model otherwise.
SensingModel make_sensing_model(const PRBank& bank, const FilterResponse& filter, const DerivedParams& dp);

/// Fraction of `trials` uniformly drawn (rows)-column subsets of D whose
/// sigma_min / sigma_max exceeds tol.
double column_independence_rate(const CMatrix& D, int trials, std::uint64_t seed, double tol = 1e-8,
                                int threads = 1);
double column_independence_rate(const SensingModel& model, int trials, std::uint64_t seed, double tol = 1e-8,
                                int threads = 1);

/// CSV with header row_i,row_u,col_k,re,im; row_i counts from 1.
void write_matrix_csv(std::ostream& out, const CMatrix& A, int q_prime, int N1);

}  // namespace amwc

#endif  // AMWC_SENSING_HPP

#ifndef AMWC_RECOVERY_HPP
#define AMWC_RECOVERY_HPP

#include <algorithm>
#include <stdexcept>
#include <vector>

#include <Eigen/QR>

#include "amwc/config.hpp"
#include "amwc/sensing.hpp"
#include "amwc/types.hpp"

namespace amwc {

template <typename Real>
struct RecoveryResultT {
  SupportSet support_hat;
  std::vector<int> selection_order;     // subband indices in pick order
  CMatrixT<Real> X_hat;                 // |S_hat| x 2W, rows follow support_hat
  std::vector<Real> residual_norms;     // Frobenius norm after each pick
  int iterations = 0;
  bool rank_warning = false;
};
using RecoveryResult = RecoveryResultT<double>;

namespace detail {

template <typename Real>
CMatrixT<Real> gather_columns(const CMatrixT<Real>& A, const std::vector<Eigen::Index>& cols) {
  CMatrixT<Real> out(A.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) out.col(c) = A.col(cols[c]);
  return out;
}

// Per-column least squares of Z[:, j] on the selected columns of B[w_j].
template <typename Real, typename Derived>
CMatrixT<Real> solve_selected(const SensingModel& model, const Eigen::MatrixBase<Derived>& Z,
                              const std::vector<Eigen::Index>& cols, bool& rank_warning) {
  const Eigen::Index s = static_cast<Eigen::Index>(cols.size());
  CMatrixT<Real> coef(s, Z.cols());
  if (s == 0) return coef;
  auto solve_block = [&](const CMatrixT<Real>& A, Eigen::Index j0, Eigen::Index nj) {
    Eigen::CompleteOrthogonalDecomposition<CMatrixT<Real>> cod(A);
    if (cod.rank() < s) rank_warning = true;
    coef.middleCols(j0, nj) = cod.solve(Z.middleCols(j0, nj));
  };
  if (model.flat()) {
    solve_block(gather_columns<Real>(model.D, cols), 0, Z.cols());
  } else {
    for (Eigen::Index j = 0; j < Z.cols(); ++j) solve_block(gather_columns<Real>(model.per_bin[j], cols), j, 1);
  }
  return coef;
}

template <typename Real>
CMatrixT<Real> apply_selected(const SensingModel& model, const std::vector<Eigen::Index>& cols,
                              const CMatrixT<Real>& coef) {
  if (cols.empty()) return CMatrixT<Real>::Zero(model.rows(), coef.cols());
  if (model.flat()) return gather_columns<Real>(model.D, cols) * coef;
  CMatrixT<Real> out(model.rows(), coef.cols());
  for (Eigen::Index j = 0; j < coef.cols(); ++j) out.col(j) = gather_columns<Real>(model.per_bin[j], cols) * coef.col(j);
  return out;
}

}  // namespace detail

/// Greedy joint-support pursuit over the columns of Z with one sensing
/// matrix per column (or a shared D for a flat model).
///
/// score(k) = sum_j |b_k[w_j]^H r_j|^2 / max(sum_j ||b_k[w_j]||^2, 1e-30),
/// ties go to the smallest k.
template <typename Derived>
RecoveryResult dcs_somp(const Eigen::MatrixBase<Derived>& Z, const SensingModel& model, int iterations) {
  using Real = double;
  const Eigen::Index n_cols = model.cols();
  const Eigen::Index n_bins = Z.cols();
  if (Z.rows() != model.rows() || static_cast<std::size_t>(n_bins) != model.bins())
    throw std::invalid_argument("dcs_somp: Z must be Mq' x 2W");
  if (iterations < 0 || iterations > std::min<Eigen::Index>(model.rows(), n_cols))
    throw std::invalid_argument("dcs_somp: iterations must lie in [0, min(Mq', N)]");

  RVectorT<Real> col_energy = RVectorT<Real>::Zero(n_cols);
  if (model.flat()) {
    col_energy = model.D.colwise().squaredNorm().transpose() * static_cast<Real>(n_bins);
  } else {
    for (Eigen::Index j = 0; j < n_bins; ++j) col_energy += model.per_bin[j].colwise().squaredNorm().transpose();
  }
  col_energy = col_energy.cwiseMax(Real(1e-30));

  RecoveryResult res;
  std::vector<Eigen::Index> cols;
  std::vector<char> taken(n_cols, 0);
  CMatrixT<Real> R = Z;
  CMatrixT<Real> coef;
  for (int it = 0; it < iterations; ++it) {
    RVectorT<Real> score(n_cols);
    if (model.flat()) {
      score = (model.D.adjoint() * R).rowwise().squaredNorm();
    } else {
      score.setZero();
      for (Eigen::Index j = 0; j < n_bins; ++j) score += (model.per_bin[j].adjoint() * R.col(j)).cwiseAbs2();
    }
    score = score.cwiseQuotient(col_energy);

    Eigen::Index best = -1;
    Real best_score = -1;
    for (Eigen::Index k = 0; k < n_cols; ++k)
      if (!taken[k] && score(k) > best_score) {
        best = k;
        best_score = score(k);
      }
    taken[best] = 1;
    cols.push_back(best);
    res.selection_order.push_back(static_cast<int>(best) + model.N1);

    coef = detail::solve_selected<Real>(model, Z, cols, res.rank_warning);
    R = Z - detail::apply_selected<Real>(model, cols, coef);
    res.residual_norms.push_back(R.norm());
  }
  res.iterations = iterations;
  res.support_hat = SupportSet(res.selection_order);

  // Rows of X_hat follow the sorted support.
  std::vector<std::size_t> perm(cols.size());
  for (std::size_t a = 0; a < perm.size(); ++a) perm[a] = a;
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return cols[a] < cols[b]; });
  res.X_hat.resize(static_cast<Eigen::Index>(cols.size()), n_bins);
  for (std::size_t a = 0; a < perm.size(); ++a) res.X_hat.row(a) = coef.row(perm[a]);
  return res;
}

/// Least-squares rows on `support`, zero elsewhere; N x 2W.
template <typename Derived>
CMatrix reconstruct_X(const SupportSet& support, const Eigen::MatrixBase<Derived>& Z, const SensingModel& model) {
  if (static_cast<Eigen::Index>(support.size()) > model.rows())
    throw std::invalid_argument("reconstruct_X: support larger than Mq'");
  std::vector<Eigen::Index> cols;
  for (int k : support.indices()) {
    if (k < model.N1 || k >= model.N1 + model.cols()) throw std::out_of_range("reconstruct_X: index outside [N1, N2]");
    cols.push_back(k - model.N1);
  }
  CMatrix X = CMatrix::Zero(model.cols(), Z.cols());
  bool warn = false;
  const CMatrix coef = detail::solve_selected<double>(model, Z, cols, warn);
  for (std::size_t a = 0; a < cols.size(); ++a) X.row(cols[a]) = coef.row(a);
  return X;
}

/// S_true is a subset of S_hat.
inline bool support_success(const SupportSet& truth, const SupportSet& estimate) {
  return estimate.includes(truth);
}

}  // namespace amwc

#endif  // AMWC_RECOVERY_HPP

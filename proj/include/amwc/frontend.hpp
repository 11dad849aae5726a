#ifndef AMWC_FRONTEND_HPP
#define AMWC_FRONTEND_HPP

#include <iosfwd>
#include <optional>

#include "amwc/config.hpp"
#include "amwc/pr_signals.hpp"
#include "amwc/sensing.hpp"
#include "amwc/types.hpp"
#include "amwc/waveforms.hpp"

namespace amwc {

struct MeasurementSet {
  CMatrix Z;  // Mq' x 2W, row i*q' + u, column j <-> bin w_offset + j
  double calibration = 0.0;
  int q_prime = 0;
};

/// Mix with the dense PR waveform, filter circularly over the window, keep
/// every decim-th sample. Returns 2Wq' (possibly complex) samples.
CVector channel_output(const DenseSignal& x, const RVector& chips, const FilterResponse& filter,
                       const DerivedParams& dp);

/// channel_output with the mixer spectrum already computed (rfft of x * pr).
CVector channel_output_from_mixed(const CVector& mixed_half, const FilterResponse& filter, const DerivedParams& dp);

/// q' x 2W: row u holds DFT bins (w_offset + 2W u + j) mod 2Wq', unscaled.
CMatrix channelize(const CVector& y_tilde, const DerivedParams& dp);

/// Scale that maps channelize() output onto the model: 1 / (2Wq').
double default_calibration(const DerivedParams& dp);

/// Stacked, calibrated channelizer outputs of every channel.
MeasurementSet acquire(const DenseSignal& x, const PRBank& bank, const FilterResponse& filter,
                       const DerivedParams& dp, std::optional<double> calibration = std::nullopt);

/// Flat: D X2W. Per-bin: column j is B[w_j] X2W[:, j].
template <typename Derived>
CMatrix model_predict(const SensingModel& model, const Eigen::MatrixBase<Derived>& X2W) {
  if (X2W.rows() != model.cols() || static_cast<std::size_t>(X2W.cols()) != model.bins())
    throw std::invalid_argument("model_predict: X2W must be N x 2W");
  if (model.flat()) return model.D * X2W;
  CMatrix Z(model.rows(), X2W.cols());
  for (Eigen::Index j = 0; j < X2W.cols(); ++j) Z.col(j) = model.per_bin[j] * X2W.col(j);
  return Z;
}

/// CSV with header row_i,row_u,col_j,re,im; row_i counts from 1.
void write_measurements_csv(std::ostream& out, const MeasurementSet& ms);

}  // namespace amwc

#endif  // AMWC_FRONTEND_HPP

#include "amwc/frontend.hpp"

#include <ostream>

#include "amwc/fft.hpp"

namespace amwc {

CVector channel_output_from_mixed(const CVector& mixed_half, const FilterResponse& filter, const DerivedParams& dp) {
  const std::int64_t n = dp.n_dense;
  const std::int64_t n_adc = dp.adc_len;
  if (mixed_half.size() != n / 2 + 1) throw std::invalid_argument("channel_output: spectrum length mismatch");
  if (filter.half != dp.lpf_half_bins) throw std::invalid_argument("channel_output: filter does not match params");
  // Keeping every decim-th sample folds the filtered spectrum modulo 2Wq'.
  CVector folded = CVector::Zero(n_adc);
  for (std::int64_t m = -filter.half; m < filter.half; ++m)
    folded(mod_floor(m, n_adc)) += filter.at(m) * half_spectrum_at(mixed_half, n, m);
  return ifft(folded) / static_cast<double>(n);
}

CVector channel_output(const DenseSignal& x, const RVector& chips, const FilterResponse& filter,
                       const DerivedParams& dp) {
  if (x.samples.size() != dp.n_dense) throw std::invalid_argument("channel_output: length != n_dense");
  const RVector mixed = x.samples.cwiseProduct(pr_waveform_dense(chips, dp));
  return channel_output_from_mixed(rfft(mixed), filter, dp);
}

CMatrix channelize(const CVector& y_tilde, const DerivedParams& dp) {
  if (y_tilde.size() != dp.adc_len) throw std::invalid_argument("channelize: length != 2Wq'");
  const CVector Y = fft(y_tilde);
  CMatrix blocks(dp.q_prime, dp.subband_bins);
  for (int u = 0; u < dp.q_prime; ++u)
    for (std::int64_t j = 0; j < dp.subband_bins; ++j)
      blocks(u, j) = Y(mod_floor(dp.w_offset + dp.subband_bins * u + j, dp.adc_len));
  return blocks;
}

double default_calibration(const DerivedParams& dp) { return 1.0 / static_cast<double>(dp.adc_len); }

MeasurementSet acquire(const DenseSignal& x, const PRBank& bank, const FilterResponse& filter,
                       const DerivedParams& dp, std::optional<double> calibration) {
  if (x.samples.size() != dp.n_dense) throw std::invalid_argument("acquire: length != n_dense");
  if (bank.chips.cols() != dp.L) throw std::invalid_argument("acquire: bank does not match params");
  MeasurementSet ms;
  ms.q_prime = dp.q_prime;
  ms.calibration = calibration.value_or(default_calibration(dp));
  ms.Z.resize(bank.channels() * dp.q_prime, dp.subband_bins);
  for (int i = 0; i < bank.channels(); ++i) {
    const RVector chips = bank.chips.row(i).transpose();
    ms.Z.middleRows(i * dp.q_prime, dp.q_prime) = channelize(channel_output(x, chips, filter, dp), dp) * ms.calibration;
  }
  return ms;
}

void write_measurements_csv(std::ostream& out, const MeasurementSet& ms) {
  out << "row_i,row_u,col_j,re,im\n";
  out.precision(17);
  for (Eigen::Index r = 0; r < ms.Z.rows(); ++r)
    for (Eigen::Index c = 0; c < ms.Z.cols(); ++c)
      out << r / ms.q_prime + 1 << ',' << r % ms.q_prime << ',' << c << ',' << ms.Z(r, c).real() << ','
          << ms.Z(r, c).imag() << '\n';
}

}  // namespace amwc

#include "amwc/waveforms.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "amwc/fft.hpp"

namespace amwc {

MultibandDraw gen_multiband(int K_B, const DerivedParams& dp, Rng& rng, double energy, int max_attempts) {
  if (K_B < 2 || K_B % 2 != 0) throw std::invalid_argument("gen_multiband: K_B must be a positive even count");
  if (!(energy > 0.0)) throw std::invalid_argument("gen_multiband: energy must be positive");
  const double B = dp.band_max_width;
  const std::int64_t bin_lo = 2;
  const std::int64_t bin_hi = dp.nyq_half_bins - 2;

  std::uniform_real_distribution<double> centre(0.0, dp.f_max);
  std::vector<Band> bands;
  std::vector<BinRange> ranges;
  int attempts = 0;
  while (static_cast<int>(ranges.size()) < K_B / 2) {
    if (++attempts > max_attempts) throw std::runtime_error("gen_multiband: band placement failed");
    const Band cand{centre(rng), B, energy};
    const BinRange r = band_bins(cand, dp.delta_f);
    if (r.first < bin_lo || r.first + r.count - 1 > bin_hi) continue;
    const bool clash = std::any_of(ranges.begin(), ranges.end(), [&](const BinRange& o) {
      return r.first <= o.first + o.count && o.first <= r.first + r.count;
    });
    if (clash) continue;
    bands.push_back(cand);
    ranges.push_back(r);
  }

  const std::int64_t n = dp.n_dense;
  CVector half = CVector::Zero(n / 2 + 1);
  MultibandDraw out;
  for (std::size_t b = 0; b < ranges.size(); ++b) {
    const BinRange& r = ranges[b];
    double e = 0.0;
    for (std::int64_t m = r.first; m < r.first + r.count; ++m) {
      half(m) = complex_normal(rng);
      e += std::norm(half(m));
    }
    half.segment(r.first, r.count) *= std::sqrt(energy * 0.5 * static_cast<double>(n) / e);
  }
  std::sort(bands.begin(), bands.end(), [](const Band& x, const Band& y) { return x.f_center_hz < y.f_center_hz; });
  out.bands.bands = std::move(bands);
  out.signal = signal_from_half_spectrum(half, dp);
  out.support = support_from_bands(out.bands, dp);
  return out;
}

DenseSignal signal_from_half_spectrum(const CVector& half, const DerivedParams& dp) {
  if (half.size() != dp.n_dense / 2 + 1) throw std::invalid_argument("half spectrum length mismatch");
  DenseSignal x;
  x.samples = irfft(half, dp.n_dense) / static_cast<double>(dp.n_dense);
  x.rate = dp.dense_rate;
  return x;
}

CVector half_spectrum(const DenseSignal& x) { return rfft(x.samples); }

DenseSignal add_awgn(const DenseSignal& x, double snr_db, Rng& rng) {
  const double sig = x.samples.squaredNorm();
  if (!(sig > 0.0)) throw std::invalid_argument("add_awgn: zero signal");
  if (std::isinf(snr_db) && snr_db > 0) return x;
  if (std::isnan(snr_db)) throw std::invalid_argument("add_awgn: snr is NaN");
  std::normal_distribution<double> g(0.0, 1.0);
  RVector noise(x.samples.size());
  for (Eigen::Index i = 0; i < noise.size(); ++i) noise(i) = g(rng);
  noise *= std::sqrt(sig / std::pow(10.0, snr_db / 10.0) / noise.squaredNorm());
  DenseSignal y = x;
  y.samples += noise;
  return y;
}

CMatrix extract_X2W_from_half(const CVector& half, const DerivedParams& dp) {
  const std::int64_t n = dp.n_dense;
  if (half.size() != n / 2 + 1) throw std::invalid_argument("half spectrum length mismatch");
  CMatrix X(dp.N, dp.subband_bins);
  for (int k = dp.N1; k <= dp.N2; ++k)
    for (std::int64_t j = 0; j < dp.subband_bins; ++j)
      X(k - dp.N1, j) = half_spectrum_at(half, n, dp.w_offset + j - dp.subband_bins * k) / static_cast<double>(n);
  return X;
}

CMatrix extract_X2W(const DenseSignal& x, const DerivedParams& dp) {
  if (x.samples.size() != dp.n_dense) throw std::invalid_argument("extract_X2W: length != n_dense");
  return extract_X2W_from_half(half_spectrum(x), dp);
}

void write_bands_csv(std::ostream& out, const BandSet& bands) {
  out << "f_center_hz,width_hz,energy\n";
  out.precision(17);
  for (const Band& b : bands.bands) out << b.f_center_hz << ',' << b.width_hz << ',' << b.energy << '\n';
}

}  // namespace amwc

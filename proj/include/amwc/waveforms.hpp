#ifndef AMWC_WAVEFORMS_HPP
#define AMWC_WAVEFORMS_HPP

#include <cstdint>
#include <iosfwd>
#include <limits>

#include "amwc/band.hpp"
#include "amwc/config.hpp"
#include "amwc/rng.hpp"
#include "amwc/types.hpp"

namespace amwc {

struct DenseSignal {
  RVector samples;  // n_dense samples
  double rate = 0.0;
};

struct MultibandDraw {
  DenseSignal signal;
  BandSet bands;
  SupportSet support;
};

/// K_B/2 positive bands of width B with uniformly drawn centres, rejected
/// unless disjoint with one guard bin between bands and against DC and f_max.
/// The grid bins inside each band get i.i.d. CN(0,1) values scaled to
/// `energy` per band pair, mirrored and inverted to real samples.
MultibandDraw gen_multiband(int K_B, const DerivedParams& dp, Rng& rng, double energy = 1.0,
                            int max_attempts = 10000);

/// Real signal from its half spectrum: x = irfft(half) / n_dense.
DenseSignal signal_from_half_spectrum(const CVector& half, const DerivedParams& dp);

/// Unnormalized half spectrum (rfft) of x.
CVector half_spectrum(const DenseSignal& x);

inline constexpr double kNoiseless = std::numeric_limits<double>::infinity();

/// x + n with ||x||^2 / ||n||^2 = 10^(snr_db/10) exactly; +inf leaves x as is.
DenseSignal add_awgn(const DenseSignal& x, double snr_db, Rng& rng);

/// X2W(k - N1, j) = X[(w_offset + j - 2W k) mod n_dense] / n_dense, N x 2W.
CMatrix extract_X2W(const DenseSignal& x, const DerivedParams& dp);
CMatrix extract_X2W_from_half(const CVector& half, const DerivedParams& dp);

/// CSV f_center_hz,width_hz,energy
void write_bands_csv(std::ostream& out, const BandSet& bands);

}  // namespace amwc

#endif  // AMWC_WAVEFORMS_HPP

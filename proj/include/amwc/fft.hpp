#ifndef AMWC_FFT_HPP
#define AMWC_FFT_HPP

#include <cstdint>

#include "amwc/types.hpp"

namespace amwc {

// Thin FFTW wrappers. Unnormalized; forward transforms use exp(-j 2 pi m n / N).
// Plans are cached per (kind, size) and safe to use from several threads.

CVector fft(const CVector& x);
CVector ifft(const CVector& X);

/// Half spectrum, bins 0..n/2.
CVector rfft(const RVector& x);
/// Inverse of rfft for a Hermitian spectrum given by its half, length n.
RVector irfft(const CVector& half, std::int64_t n);

/// Full-length spectrum value at signed or wrapped bin m from an rfft half.
inline cdouble half_spectrum_at(const CVector& half, std::int64_t n, std::int64_t m) {
  const std::int64_t b = mod_floor(m, n);
  return b <= n / 2 ? half(b) : std::conj(half(n - b));
}

}  // namespace amwc

#endif  // AMWC_FFT_HPP

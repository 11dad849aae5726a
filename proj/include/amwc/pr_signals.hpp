#ifndef AMWC_PR_SIGNALS_HPP
#define AMWC_PR_SIGNALS_HPP

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "amwc/config.hpp"
#include "amwc/types.hpp"

namespace amwc {

/// How c_l is obtained from the chips.
///  Discrete:   DFT of one period of the dense-grid waveform (matches the
///              time-domain simulation exactly).
///  Continuous: Fourier series of the ideal rectangular-chip waveform.
enum class CoeffMode { Discrete, Continuous };

/// Feedback taps of a primitive polynomial: bit (e-1) is set for every
/// exponent e in [1, degree] with a nonzero coefficient. Degrees 3..11.
std::uint32_t primitive_taps(int degree);

/// One full period (2^degree - 1 chips) of the Fibonacci LFSR output,
/// binary 1 -> +1 and 0 -> -1.
std::vector<int> mseq(int degree, std::uint32_t taps, std::uint32_t init_state);

/// Chip sequence held piecewise constant on the dense grid, 2q' samples per
/// chip, n_periods periods.
template <typename Derived>
RVector pr_waveform_dense(const Eigen::DenseBase<Derived>& chips, const DerivedParams& dp,
                          std::int64_t n_periods) {
  const std::int64_t L = chips.size();
  if (L != dp.L) throw std::invalid_argument("pr_waveform_dense: chip count != L");
  const std::int64_t per_chip = 2 * dp.q_prime;
  RVector out(n_periods * L * per_chip);
  std::int64_t n = 0;
  for (std::int64_t period = 0; period < n_periods; ++period)
    for (std::int64_t c = 0; c < L; ++c)
      for (std::int64_t s = 0; s < per_chip; ++s) out(n++) = chips(c);
  return out;
}

/// Chips over the whole observation window (n_dense samples).
template <typename Derived>
RVector pr_waveform_dense(const Eigen::DenseBase<Derived>& chips, const DerivedParams& dp) {
  return pr_waveform_dense(chips, dp, dp.n_dense / dp.period_len);
}

/// c_l for l in [-l_max, l_max], stored at index l + l_max.
template <typename Derived>
CVector fourier_coeffs(const Eigen::DenseBase<Derived>& chips, const DerivedParams& dp, int l_max,
                       CoeffMode mode = CoeffMode::Discrete) {
  const int L = static_cast<int>(chips.size());
  if (L != dp.L) throw std::invalid_argument("fourier_coeffs: chip count != L");
  if (l_max < 0 || (mode == CoeffMode::Discrete && l_max >= dp.q_prime * L))
    throw std::invalid_argument("fourier_coeffs: l_max must lie below the dense-grid fold-over q'L");
  const double two_pi = 2.0 * std::numbers::pi;
  const std::int64_t n_per = dp.period_len;
  CVector c(2 * l_max + 1);
  for (int l = -l_max; l <= l_max; ++l) {
    cdouble chip_dft(0.0, 0.0);
    for (int m = 0; m < L; ++m) {
      const double ph = -two_pi * static_cast<double>(mod_floor(std::int64_t{l} * m, L)) / L;
      chip_dft += chips(m) * cdouble(std::cos(ph), std::sin(ph));
    }
    cdouble shape;
    if (mode == CoeffMode::Discrete) {
      // sum_{s < 2q'} exp(-j 2 pi l s / n_per), closed form.
      if (mod_floor(l, n_per) == 0) {
        shape = static_cast<double>(2 * dp.q_prime);
      } else {
        const cdouble num = 1.0 - std::polar(1.0, -two_pi * l / static_cast<double>(L));
        const cdouble den = 1.0 - std::polar(1.0, -two_pi * l / static_cast<double>(n_per));
        shape = num / den;
      }
      c(l + l_max) = chip_dft * shape / static_cast<double>(n_per);
    } else {
      const double x = std::numbers::pi * l / static_cast<double>(L);
      const double sinc = l == 0 ? 1.0 : std::sin(x) / x;
      c(l + l_max) = chip_dft * std::polar(sinc, -x) / static_cast<double>(L);
    }
  }
  return c;
}

/// Coefficient half-range covering every index the picking rule can reach
/// (|I(k)| <= L0 + q0'), padded by p*q' and clamped below q'L.
int default_l_max(const DerivedParams& dp);

/// M periodic +-1 chip sequences and their Fourier coefficients.
struct PRBank {
  RMatrix chips;   // M x L
  CMatrix coeffs;  // M x (2 l_max + 1), column l + l_max
  int l_max = 0;
  int degree = 0;
  std::uint32_t taps = 0;
  std::vector<std::uint32_t> init_states;
  CoeffMode mode = CoeffMode::Discrete;

  int channels() const { return static_cast<int>(chips.rows()); }

  cdouble coeff(int i, int l) const {
    if (l < -l_max || l > l_max) throw std::out_of_range("PR coefficient index outside [-l_max, l_max]");
    return coeffs(i, l + l_max);
  }
};

/// m-sequence bank: same primitive polynomial on every channel, distinct
/// initial states derived from `seed`. Requires L = 2^d - 1, d in 3..11.
PRBank make_pr_bank(const DerivedParams& dp, std::uint64_t seed, CoeffMode mode = CoeffMode::Discrete);

/// Bank from explicit chips (rows = channels).
PRBank make_pr_bank(const RMatrix& chips, const DerivedParams& dp, CoeffMode mode = CoeffMode::Discrete,
                    int l_max = -1);

/// Chips as CSV, one channel per row.
void write_chips_csv(std::ostream& out, const PRBank& bank);

}  // namespace amwc

#endif  // AMWC_PR_SIGNALS_HPP

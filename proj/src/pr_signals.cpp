#include "amwc/pr_signals.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <ostream>

#include "amwc/rng.hpp"

namespace amwc {

std::uint32_t primitive_taps(int degree) {
  // x^d + ... + 1, listed without the constant term.
  static constexpr std::array<std::uint32_t, 12> table = {
      0, 0, 0,
      0b101,          // x^3 + x + 1
      0b1001,         // x^4 + x + 1
      0b10010,        // x^5 + x^2 + 1
      0b100001,       // x^6 + x + 1
      0b1000001,      // x^7 + x + 1
      0b10001110,     // x^8 + x^4 + x^3 + x^2 + 1
      0b100001000,    // x^9 + x^4 + 1
      0b1000000100,   // x^10 + x^3 + 1
      0b10000000010,  // x^11 + x^2 + 1
  };
  if (degree < 3 || degree > 11) throw std::out_of_range("no primitive polynomial tabulated for this degree");
  return table[degree];
}

std::vector<int> mseq(int degree, std::uint32_t taps, std::uint32_t init_state) {
  if (degree < 2 || degree > 31) throw std::invalid_argument("mseq: degree must be in [2, 31]");
  const std::uint32_t full = (std::uint32_t{1} << degree) - 1;
  if ((taps & (std::uint32_t{1} << (degree - 1))) == 0 || (taps & ~full) != 0)
    throw std::invalid_argument("mseq: taps must describe a degree-d polynomial");
  init_state &= full;
  if (init_state == 0) throw std::invalid_argument("mseq: initial state must be nonzero");

  // State bit b holds s[t + b]; s[t + d] = s[t] ^ sum over lower exponents e of s[t + e].
  const std::uint32_t recurrence = 1u | ((taps & (full >> 1)) << 1);
  const std::uint32_t period = full;
  std::vector<int> out(period);
  std::uint32_t state = init_state;
  for (std::uint32_t t = 0; t < period; ++t) {
    if (t > 0 && state == init_state)
      throw std::invalid_argument("mseq: taps are not primitive (period shorter than 2^d - 1)");
    out[t] = (state & 1u) ? 1 : -1;
    const std::uint32_t feedback = std::popcount(state & recurrence) & 1u;
    state = (state >> 1) | (feedback << (degree - 1));
  }
  if (state != init_state) throw std::invalid_argument("mseq: taps are not primitive");
  return out;
}

int default_l_max(const DerivedParams& dp) {
  return std::min(dp.L0 + dp.q0_prime + dp.p * dp.q_prime, dp.q_prime * dp.L - 1);
}

PRBank make_pr_bank(const RMatrix& chips, const DerivedParams& dp, CoeffMode mode, int l_max) {
  if (chips.cols() != dp.L) throw std::invalid_argument("make_pr_bank: chip matrix must have L columns");
  PRBank bank;
  bank.chips = chips;
  bank.mode = mode;
  bank.l_max = l_max < 0 ? default_l_max(dp) : l_max;
  bank.coeffs.resize(chips.rows(), 2 * bank.l_max + 1);
  for (Eigen::Index i = 0; i < chips.rows(); ++i)
    bank.coeffs.row(i) = fourier_coeffs(chips.row(i), dp, bank.l_max, mode).transpose();
  return bank;
}

PRBank make_pr_bank(const DerivedParams& dp, std::uint64_t seed, CoeffMode mode) {
  const int degree = std::bit_width(static_cast<unsigned>(dp.L));
  if ((1 << degree) - 1 != dp.L) throw std::invalid_argument("make_pr_bank: L must be 2^d - 1");
  const std::uint32_t taps = primitive_taps(degree);
  const std::uint32_t n_states = static_cast<std::uint32_t>(dp.L);
  if (static_cast<std::uint32_t>(dp.M) > n_states)
    throw std::invalid_argument("make_pr_bank: more channels than distinct initial states");

  std::vector<std::uint32_t> states;
  for (int i = 0; i < dp.M; ++i) {
    std::uint32_t s = 1 + static_cast<std::uint32_t>(derive_seed(seed, {0x50524249ULL, std::uint64_t(i)}) % n_states);
    while (std::find(states.begin(), states.end(), s) != states.end()) s = s % n_states + 1;
    states.push_back(s);
  }

  RMatrix chips(dp.M, dp.L);
  for (int i = 0; i < dp.M; ++i) {
    const std::vector<int> seq = mseq(degree, taps, states[i]);
    for (int n = 0; n < dp.L; ++n) chips(i, n) = seq[n];
  }
  PRBank bank = make_pr_bank(chips, dp, mode);
  bank.degree = degree;
  bank.taps = taps;
  bank.init_states = std::move(states);
  return bank;
}

void write_chips_csv(std::ostream& out, const PRBank& bank) {
  for (Eigen::Index i = 0; i < bank.chips.rows(); ++i) {
    for (Eigen::Index n = 0; n < bank.chips.cols(); ++n) {
      if (n) out << ',';
      out << static_cast<int>(bank.chips(i, n));
    }
    out << '\n';
  }
}

}  // namespace amwc

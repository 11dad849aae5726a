#ifndef AMWC_CONFIG_HPP
#define AMWC_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "amwc/band.hpp"
#include "amwc/types.hpp"

namespace amwc {

enum class LpfKind { Ideal, Random };

std::string to_string(LpfKind kind);
LpfKind lpf_kind_from_string(const std::string& text);

/// Hardware and observation parameters of one (A)MWC instance. p = 1 is the
/// conventional MWC.
struct SystemConfig {
  double f_max_hz = 10e9;
  int L = 127;        // chips per PR period, odd
  int M = 3;          // analog channels
  int p = 1;          // aliasing parameter
  int q_prime = 11;   // channel-trading parameter, odd
  int W = 15;         // 2W spectral samples per digital channel
  double band_max_width_hz = 5e6;
  LpfKind lpf_kind = LpfKind::Ideal;
  std::uint64_t master_seed = 1;

  /// gcd(p, q') == 1 and q' > p. Configs that fail it are still valid input.
  bool lossless_capable() const;
};

void validate(const SystemConfig& cfg);

struct AliasWindow {
  int R1 = 0;
  int R2 = 0;
  double f0_hz = 0.0;
};

struct SubbandRange {
  int N1 = 0;
  int N2 = 0;
  int N = 0;
};

/// Every rate and index constant of the sampling model. Frequencies are in
/// Hz; everything that indexes a frequency bin is an exact integer.
struct DerivedParams {
  // config echo
  int L = 0;
  int M = 0;
  int p = 0;
  int q_prime = 0;
  int W = 0;
  double f_max = 0.0;
  double band_max_width = 0.0;

  double f_nyq = 0.0;
  double f_c = 0.0;
  double f_p = 0.0;
  double f_p_prime = 0.0;
  double f_s_prime = 0.0;
  double w_lpf = 0.0;
  double f_s_total = 0.0;

  int L0 = 0;
  int q0_prime = 0;

  int R1 = 0;
  int R2 = 0;
  double f0 = 0.0;

  int N1 = 0;
  int N2 = 0;
  int N = 0;

  std::int64_t decim = 0;
  double dense_rate = 0.0;
  std::int64_t n_dense = 0;
  double T_o = 0.0;
  double delta_f = 0.0;
  std::int64_t w_offset = 0;

  // Bin-unit constants (multiples of delta_f).
  std::int64_t subband_bins = 0;  // f'_p  = 2W
  std::int64_t fp_bins = 0;       // f_p   = 2Wp
  std::int64_t adc_len = 0;       // f'_s  = 2Wq', also ADC samples per window
  std::int64_t lpf_half_bins = 0; // W_LPF/2 = Wpq'
  std::int64_t nyq_half_bins = 0; // f_max = WpL
  std::int64_t period_len = 0;    // dense samples per PR period, 2q'L

  int rows() const { return M * q_prime; }
};

DerivedParams derive_params(const SystemConfig& cfg);

AliasWindow canonical_window(int p, int q_prime, double f_s_prime);

SubbandRange subband_range(int R2, int L, int p, int q_prime);

double sampling_efficiency(int K_B, double B, int K, double f_I);

int max_aliasing_param(double f_p, double B);

/// Sorted, distinct subband indices in [N1, N2].
class SupportSet {
 public:
  SupportSet() = default;
  explicit SupportSet(std::vector<int> indices);
  SupportSet(std::vector<int> indices, int N1, int N2);

  const std::vector<int>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  bool contains(int k) const;
  bool includes(const SupportSet& other) const;
  bool operator==(const SupportSet&) const = default;

 private:
  std::vector<int> indices_;
};

/// Subband index k whose observed range F_k holds grid bin m.
inline int subband_of_bin(std::int64_t m, const DerivedParams& dp) {
  return static_cast<int>(ceil_div(dp.w_offset - m, dp.subband_bins));
}

SupportSet support_from_bands(const BandSet& bands, const DerivedParams& dp);

}  // namespace amwc

#endif  // AMWC_CONFIG_HPP

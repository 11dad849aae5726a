#include "amwc/config.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace amwc {

std::string to_string(LpfKind kind) {
  return kind == LpfKind::Ideal ? "ideal" : "random";
}

LpfKind lpf_kind_from_string(const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "ideal") return LpfKind::Ideal;
  if (t == "random") return LpfKind::Random;
  throw std::invalid_argument("unknown lpf_kind '" + text + "' (expected ideal|random)");
}

bool SystemConfig::lossless_capable() const {
  return std::gcd(p, q_prime) == 1 && q_prime > p;
}

void validate(const SystemConfig& cfg) {
  if (cfg.L < 1 || cfg.L % 2 == 0) throw std::invalid_argument("L must be a positive odd integer");
  if (cfg.q_prime < 1 || cfg.q_prime % 2 == 0)
    throw std::invalid_argument("q_prime must be a positive odd integer");
  if (cfg.p < 1) throw std::invalid_argument("p must be >= 1");
  if (cfg.M < 1) throw std::invalid_argument("M must be >= 1");
  if (cfg.W < 1) throw std::invalid_argument("W must be >= 1");
  if (!(cfg.f_max_hz > 0.0)) throw std::invalid_argument("f_max must be positive");
  if (!(cfg.band_max_width_hz > 0.0)) throw std::invalid_argument("band_max_width must be positive");
}

AliasWindow canonical_window(int p, int q_prime, double f_s_prime) {
  (void)q_prime;
  if (p < 1) throw std::invalid_argument("p must be >= 1");
  AliasWindow win;
  win.R2 = p / 2;
  win.R1 = win.R2 - p + 1;
  win.f0_hz = (win.R2 - 0.5 * p) * f_s_prime;
  return win;
}

SubbandRange subband_range(int R2, int L, int p, int q_prime) {
  // (q' + L) and (q' - L) are even for odd q', L.
  SubbandRange r;
  r.N1 = R2 * q_prime - (q_prime + L) / 2 * p + 1;
  r.N2 = R2 * q_prime - (q_prime - L) / 2 * p;
  r.N = r.N2 - r.N1 + 1;
  return r;
}

DerivedParams derive_params(const SystemConfig& cfg) {
  validate(cfg);
  DerivedParams dp;
  dp.L = cfg.L;
  dp.M = cfg.M;
  dp.p = cfg.p;
  dp.q_prime = cfg.q_prime;
  dp.W = cfg.W;
  dp.f_max = cfg.f_max_hz;
  dp.band_max_width = cfg.band_max_width_hz;

  dp.f_nyq = 2.0 * cfg.f_max_hz;
  dp.f_c = dp.f_nyq;
  dp.f_p = dp.f_c / cfg.L;
  dp.f_p_prime = dp.f_p / cfg.p;
  dp.f_s_prime = cfg.q_prime * dp.f_p / cfg.p;
  dp.w_lpf = cfg.q_prime * dp.f_p;
  dp.f_s_total = cfg.M * dp.f_s_prime;

  dp.L0 = (cfg.L - 1) / 2;
  dp.q0_prime = (cfg.q_prime - 1) / 2;

  const AliasWindow win = canonical_window(cfg.p, cfg.q_prime, dp.f_s_prime);
  dp.R1 = win.R1;
  dp.R2 = win.R2;
  dp.f0 = win.f0_hz;

  const SubbandRange range = subband_range(win.R2, cfg.L, cfg.p, cfg.q_prime);
  dp.N1 = range.N1;
  dp.N2 = range.N2;
  dp.N = range.N;

  const std::int64_t W = cfg.W, L = cfg.L, p = cfg.p, q = cfg.q_prime;
  dp.decim = 2 * L * p;
  dp.dense_rate = 2.0 * cfg.q_prime * dp.f_nyq;
  dp.n_dense = 4 * W * q * L * p;
  dp.T_o = 2.0 * cfg.W / dp.f_p_prime;
  dp.delta_f = 1.0 / dp.T_o;

  dp.subband_bins = 2 * W;
  dp.fp_bins = 2 * W * p;
  dp.adc_len = 2 * W * q;
  dp.lpf_half_bins = W * p * q;
  dp.nyq_half_bins = W * p * L;
  dp.period_len = 2 * q * L;
  // f0 * T_o = (R2 - p/2) * 2Wq', exact in integers.
  dp.w_offset = 2 * W * win.R2 * q - W * p * q;
  return dp;
}

double sampling_efficiency(int K_B, double B, int K, double f_I) {
  if (K_B < 1 || K < 1) throw std::invalid_argument("K_B and K must be >= 1");
  if (K < K_B) throw std::invalid_argument("K must be >= K_B");
  if (!(B > 0.0) || !(f_I > 0.0)) throw std::invalid_argument("B and f_I must be positive");
  const double occupied = K_B * B;
  const double recovered = K * f_I;
  if (recovered < occupied)
    throw std::invalid_argument("K * f_I < K_B * B: inconsistent sampling-efficiency inputs");
  return occupied / recovered;
}

int max_aliasing_param(double f_p, double B) {
  if (!(B > 0.0)) throw std::invalid_argument("B must be positive");
  // Absorb last-ulp error when f_p is an exact multiple of B.
  return static_cast<int>(std::floor(f_p / B * (1.0 + 1e-12)));
}

SupportSet::SupportSet(std::vector<int> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
    throw std::invalid_argument("support indices must be distinct");
}

SupportSet::SupportSet(std::vector<int> indices, int N1, int N2) : SupportSet(std::move(indices)) {
  if (!indices_.empty() && (indices_.front() < N1 || indices_.back() > N2))
    throw std::out_of_range("support index outside [N1, N2]");
}

bool SupportSet::contains(int k) const {
  return std::binary_search(indices_.begin(), indices_.end(), k);
}

bool SupportSet::includes(const SupportSet& other) const {
  return std::includes(indices_.begin(), indices_.end(), other.indices_.begin(),
                       other.indices_.end());
}

BinRange band_bins(const Band& band, double delta_f_hz) {
  const double lo = (band.f_center_hz - 0.5 * band.width_hz) / delta_f_hz;
  const double hi = (band.f_center_hz + 0.5 * band.width_hz) / delta_f_hz;
  BinRange r;
  r.first = static_cast<std::int64_t>(std::ceil(lo));
  r.count = static_cast<std::int64_t>(std::ceil(hi)) - r.first;
  if (r.count <= 0) r = {std::llround(band.f_center_hz / delta_f_hz), 1};
  return r;
}

Band band_from_bins(BinRange bins, double delta_f_hz, double energy) {
  Band b;
  b.width_hz = static_cast<double>(bins.count) * delta_f_hz;
  b.f_center_hz = (static_cast<double>(bins.first) + 0.5 * static_cast<double>(bins.count - 1)) * delta_f_hz;
  b.energy = energy;
  return b;
}

SupportSet support_from_bands(const BandSet& bands, const DerivedParams& dp) {
  std::set<int> ks;
  for (const Band& band : bands.bands) {
    const BinRange r = band_bins(band, dp.delta_f);
    for (std::int64_t m = r.first; m < r.first + r.count; ++m) {
      if (m <= -dp.nyq_half_bins || m >= dp.nyq_half_bins)
        throw std::invalid_argument("band outside the Nyquist range");
      ks.insert(subband_of_bin(m, dp));
      ks.insert(subband_of_bin(-m, dp));
    }
  }
  return SupportSet(std::vector<int>(ks.begin(), ks.end()), dp.N1, dp.N2);
}

}  // namespace amwc

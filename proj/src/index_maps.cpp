#include "amwc/index_maps.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace amwc {
namespace {

void require_coprime(const WindowContext& ctx) {
  if (!ctx.coprime())
    throw NonCoprimeError("q' has no inverse modulo p (gcd(p, q') = " +
                          std::to_string(std::gcd(ctx.p, ctx.q_prime)) + ")");
}

bool column_less(const CMatrix& D, Eigen::Index a, Eigen::Index b) {
  for (Eigen::Index r = 0; r < D.rows(); ++r) {
    const cdouble x = D(r, a), y = D(r, b);
    if (x.real() != y.real()) return x.real() < y.real();
    if (x.imag() != y.imag()) return x.imag() < y.imag();
  }
  return false;
}

}  // namespace

WindowContext make_context(int p, int q_prime) {
  if (p < 1 || q_prime < 1) throw std::invalid_argument("make_context: p and q' must be positive");
  WindowContext ctx;
  const AliasWindow win = canonical_window(p, q_prime, 1.0);
  ctx.R1 = win.R1;
  ctx.R2 = win.R2;
  ctx.p = p;
  ctx.q_prime = q_prime;
  ctx.q_inv = -1;
  for (int v = 0; v < p; ++v)
    if ((static_cast<std::int64_t>(v) * q_prime) % p == 1 % p) {
      ctx.q_inv = v;
      break;
    }
  return ctx;
}

WindowContext make_context(const DerivedParams& dp) {
  WindowContext ctx = make_context(dp.p, dp.q_prime);
  if (ctx.R1 != dp.R1 || ctx.R2 != dp.R2) throw std::logic_error("window mismatch between context and params");
  return ctx;
}

std::int64_t mu(std::int64_t r_prime, const WindowContext& ctx) {
  return floor_div((r_prime + ctx.R1) * ctx.q_prime, ctx.p);
}

std::int64_t rho(std::int64_t r_prime, const WindowContext& ctx) {
  return mod_floor((r_prime + ctx.R1) * ctx.q_prime, ctx.p);
}

std::int64_t rho_inv(std::int64_t v, const WindowContext& ctx) {
  require_coprime(ctx);
  return mod_floor(v * ctx.q_inv - ctx.R1, ctx.p);
}

std::int64_t picking_index(std::int64_t k, const WindowContext& ctx) {
  require_coprime(ctx);
  const std::int64_t r = mod_floor(ctx.q_inv * k - ctx.R1, ctx.p) + ctx.R1;
  const std::int64_t num = k - ctx.q_prime * r;
  if (num % ctx.p != 0) throw std::logic_error("picking_index: inexact division by p");
  return num / ctx.p;
}

std::int64_t gamma(std::int64_t k, const WindowContext& ctx) {
  return k - ctx.p * picking_index(k, ctx);
}

std::int64_t gamma_prime(std::int64_t k, std::int64_t u, const WindowContext& ctx) {
  return gamma(k + u, ctx) - u;
}

std::vector<Expansion> expansions_of(std::int64_t k, const WindowContext& ctx) {
  std::vector<Expansion> out;
  for (int r = ctx.R1; r <= ctx.R2; ++r) {
    const std::int64_t rest = k - static_cast<std::int64_t>(r) * ctx.q_prime;
    if (mod_floor(rest, ctx.p) == 0) out.push_back({r, rest / ctx.p});
  }
  return out;
}

std::map<std::int64_t, Expansion> brute_force_expansion(const WindowContext& ctx, std::int64_t k_first,
                                                        std::int64_t k_last) {
  std::map<std::int64_t, Expansion> out;
  for (std::int64_t k = k_first; k <= k_last; ++k) {
    const std::vector<Expansion> e = expansions_of(k, ctx);
    if (e.size() != 1)
      throw std::logic_error("brute_force_expansion: k = " + std::to_string(k) + " has " +
                             std::to_string(e.size()) + " expansions");
    out.emplace(k, e.front());
  }
  return out;
}

cdouble sensing_coeff(int i, std::int64_t k, const PRBank& bank, const WindowContext& ctx) {
  return bank.coeff(i, static_cast<int>(picking_index(k, ctx)));
}

std::optional<std::pair<Eigen::Index, Eigen::Index>> find_identical_columns(const CMatrix& D) {
  std::vector<Eigen::Index> order(D.cols());
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return column_less(D, a, b); });
  std::optional<std::pair<Eigen::Index, Eigen::Index>> best;
  for (std::size_t n = 1; n < order.size(); ++n) {
    const Eigen::Index a = order[n - 1], b = order[n];
    if (D.col(a) == D.col(b)) {
      const std::pair<Eigen::Index, Eigen::Index> pr{std::min(a, b), std::max(a, b)};
      if (!best || pr < *best) best = pr;
    }
  }
  return best;
}

bool has_identical_columns(int p, int q_prime, const PRBank& bank, const DerivedParams& dp) {
  if (dp.p != p || dp.q_prime != q_prime) throw std::invalid_argument("has_identical_columns: (p, q') differ from params");
  const WindowContext ctx = make_context(dp);
  require_coprime(ctx);
  CMatrix D(bank.channels() * q_prime, dp.N);
  for (int i = 0; i < bank.channels(); ++i)
    for (int u = 0; u < q_prime; ++u)
      for (int k = dp.N1; k <= dp.N2; ++k) D(i * q_prime + u, k - dp.N1) = sensing_coeff(i, k + u, bank, ctx);
  return find_identical_columns(D).has_value();
}

}  // namespace amwc

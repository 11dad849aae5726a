#ifndef AMWC_INDEX_MAPS_HPP
#define AMWC_INDEX_MAPS_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "amwc/config.hpp"
#include "amwc/pr_signals.hpp"
#include "amwc/types.hpp"

namespace amwc {

struct WindowContext {
  int R1 = 0;
  int R2 = 0;
  int p = 1;
  int q_prime = 1;
  int q_inv = 0;  // inverse of q' mod p; -1 when gcd(p, q') != 1

  bool coprime() const { return q_inv >= 0; }
};

WindowContext make_context(int p, int q_prime);
WindowContext make_context(const DerivedParams& dp);

/// Thrown by every map that needs (q')^{-1} mod p when it does not exist.
struct NonCoprimeError : std::domain_error {
  using std::domain_error::domain_error;
};

/// floor((r' + R1) q' / p)
std::int64_t mu(std::int64_t r_prime, const WindowContext& ctx);
/// ((r' + R1) q') mod p
std::int64_t rho(std::int64_t r_prime, const WindowContext& ctx);
/// (v q^{-1} - R1) mod p, in [0, p-1]
std::int64_t rho_inv(std::int64_t v, const WindowContext& ctx);

/// I(k) = (k - q'[((q^{-1} k - R1) mod p) + R1]) / p. The division is exact.
std::int64_t picking_index(std::int64_t k, const WindowContext& ctx);
/// k - p I(k), always r q' for some r in [R1, R2].
std::int64_t gamma(std::int64_t k, const WindowContext& ctx);
/// gamma(k + u) - u
std::int64_t gamma_prime(std::int64_t k, std::int64_t u, const WindowContext& ctx);

struct Expansion {
  int r = 0;
  std::int64_t l = 0;
  bool operator==(const Expansion&) const = default;
};

/// Every (r, l) with r in [R1, R2] and r q' + l p = k. Works for any (p, q').
std::vector<Expansion> expansions_of(std::int64_t k, const WindowContext& ctx);

/// k -> its unique (r, l) over [k_first, k_last]. Throws std::logic_error
/// when some k has zero or several expansions.
std::map<std::int64_t, Expansion> brute_force_expansion(const WindowContext& ctx, std::int64_t k_first,
                                                        std::int64_t k_last);

/// c_{i, I(k)}
cdouble sensing_coeff(int i, std::int64_t k, const PRBank& bank, const WindowContext& ctx);

/// First pair (a, b), a < b, of bitwise-equal columns.
std::optional<std::pair<Eigen::Index, Eigen::Index>> find_identical_columns(const CMatrix& D);

bool has_identical_columns(int p, int q_prime, const PRBank& bank, const DerivedParams& dp);

}  // namespace amwc

#endif  // AMWC_INDEX_MAPS_HPP

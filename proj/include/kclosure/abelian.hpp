#pragma once

/**
 * @file abelian.hpp
 * @brief Finite abelian groups given as direct products of cyclic groups.
 */

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace kclosure {

using PrimeSet = std::set<std::uint64_t>;

/// Z_{o_1} x ... x Z_{o_r}. Orders of 1 are dropped; empty = trivial group.
class AbelianSpec {
 public:
  AbelianSpec() = default;

  explicit AbelianSpec(std::vector<std::uint64_t> orders) {
    for (auto o : orders) {
      if (o == 0) throw InputError("cyclic factor order must be positive");
      if (o > static_cast<std::uint64_t>(INT64_MAX))
        throw InputError("cyclic factor order exceeds 2^63-1");
      if (o > 1) orders_.push_back(o);
    }
  }

  const std::vector<std::uint64_t> &orders() const noexcept { return orders_; }
  bool is_trivial() const noexcept { return orders_.empty(); }

  std::uint64_t order() const {
    std::uint64_t n = 1;
    for (auto o : orders_) n = detail::checked_mul(n, o, "abelian group order");
    return n;
  }

  bool operator==(const AbelianSpec &) const = default;

 private:
  std::vector<std::uint64_t> orders_;
};

/// d_1 | d_2 | ... | d_n with d_1 > 1.
struct InvariantFactors {
  std::vector<std::uint64_t> d;

  std::size_t count() const noexcept { return d.size(); }
  bool operator==(const InvariantFactors &) const = default;
};

/// Prime factorization by trial division, primes ascending.
inline std::map<std::uint64_t, unsigned> factorize(std::uint64_t m) {
  std::map<std::uint64_t, unsigned> out;
  for (std::uint64_t p = 2; p <= m / p; ++p)
    while (m % p == 0) {
      ++out[p];
      m /= p;
    }
  if (m > 1) ++out[m];
  return out;
}

inline PrimeSet prime_divisors(std::uint64_t m) {
  PrimeSet out;
  for (const auto &[p, e] : factorize(m)) out.insert(p);
  return out;
}

/// Largest divisor of m whose prime factors all lie in `primes`.
inline std::uint64_t pi_part(std::uint64_t m, const PrimeSet &primes) {
  if (m == 0) throw InputError("pi_part of zero");
  std::uint64_t out = 1;
  for (auto p : primes) {
    if (p < 2) continue;
    while (m % p == 0) {
      m /= p;
      out *= p;
    }
  }
  return out;
}

/// prime -> ascending list of the prime-power parts (> 1) of the orders.
inline std::map<std::uint64_t, std::vector<std::uint64_t>> primary_decomposition(
    const AbelianSpec &spec) {
  std::map<std::uint64_t, std::vector<std::uint64_t>> out;
  for (auto o : spec.orders())
    for (const auto &[p, e] : factorize(o)) {
      std::uint64_t q = 1;
      for (unsigned i = 0; i < e; ++i) q *= p;
      out[p].push_back(q);
    }
  for (auto &[p, list] : out) std::sort(list.begin(), list.end());
  return out;
}

inline InvariantFactors invariant_factors(const AbelianSpec &spec) {
  auto primary = primary_decomposition(spec);
  std::size_t n = 0;
  for (const auto &[p, list] : primary) n = std::max(n, list.size());
  // d_{n+1-j} is the product over primes of the j-th largest p-power
  std::vector<std::uint64_t> d(n, 1);
  for (const auto &[p, list] : primary) {
    std::size_t offset = n - list.size();
    for (std::size_t i = 0; i < list.size(); ++i)
      d[offset + i] = detail::checked_mul(d[offset + i], list[i], "invariant factor");
  }
  return InvariantFactors{std::move(d)};
}

/// n(G): number of invariant factors.
inline std::size_t n_of(const AbelianSpec &spec) {
  return invariant_factors(spec).count();
}

/// N(G): sum over primes of the number of invariant factors of G_p.
inline std::size_t capital_N(const AbelianSpec &spec) {
  std::size_t total = 0;
  for (const auto &[p, list] : primary_decomposition(spec)) total += list.size();
  return total;
}

/// Parses "2,4,3".
inline AbelianSpec parse_orders(const std::string &text) {
  std::vector<std::uint64_t> orders;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    std::size_t start = i;
    std::uint64_t v = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      if (v > static_cast<std::uint64_t>(INT64_MAX) / 10)
        throw ParseError("order too large", start);
      v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
      ++i;
    }
    if (i == start) throw ParseError("expected a positive integer", i);
    orders.push_back(v);
    while (i < text.size() && text[i] == ' ') ++i;
    if (i < text.size()) {
      if (text[i] != ',') throw ParseError("expected ','", i);
      ++i;
      if (i == text.size()) throw ParseError("expected a positive integer", i);
    }
  }
  return AbelianSpec(std::move(orders));
}

inline std::string to_string(const AbelianSpec &spec) {
  std::string out;
  for (auto o : spec.orders()) {
    if (!out.empty()) out += ',';
    out += std::to_string(o);
  }
  return out.empty() ? "1" : out;
}

}  // namespace kclosure

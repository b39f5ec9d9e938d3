#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "opn/factor.hpp"

namespace opn {

inline Natural sigma_prime_power(const Natural& p, unsigned k) {
  return Natural((pow(p, k + 1) - 1) / (p - 1));
}

inline Natural sigma(const Factorization& f) {
  Natural s = 1;
  for (const auto& pp : f.parts()) s *= sigma_prime_power(pp.prime, pp.exponent);
  return s;
}

inline Natural sigma(const FactorResult& f) { return sigma(f.factorization()); }

struct ClassicalValues {
  Natural d;
  Natural sigma;
  Natural phi;
  unsigned omega = 0;
  unsigned big_omega = 0;
};

inline ClassicalValues classical(const Factorization& f) {
  ClassicalValues v;
  v.d = 1;
  v.sigma = 1;
  v.phi = 1;
  for (const auto& pp : f.parts()) {
    v.d *= pp.exponent + 1;
    v.sigma *= sigma_prime_power(pp.prime, pp.exponent);
    v.phi *= pow(pp.prime, pp.exponent - 1) * (pp.prime - 1);
    v.omega += 1;
    v.big_omega += pp.exponent;
  }
  return v;
}

inline constexpr std::uint64_t kOracleLimit = 10'000'000;

// Brute force: adds every d <= n that divides n. Kept deliberately naive.
inline std::uint64_t divisor_sum_oracle(std::uint64_t n) {
  require(n >= 1 && n <= kOracleLimit, "divisor_sum_oracle limited to 1 <= n <= 10^7");
  std::uint64_t s = 0;
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (n % d == 0) s += d;
  }
  return s;
}

// sigma(n) for every n <= limit, by adding each d to its multiples.
inline std::vector<std::uint64_t> sigma_table(std::uint64_t limit) {
  std::vector<std::uint64_t> s(limit + 1, 0);
  for (std::uint64_t d = 1; d <= limit; ++d) {
    for (std::uint64_t m = d; m <= limit; m += d) s[m] += d;
  }
  return s;
}

inline std::optional<Natural> euclid_euler(std::uint64_t p) {
  require(p >= 2, "euclid_euler requires p >= 2");
  // If 2^p - 1 is prime then p is prime, so a composite p is rejected at once.
  if (!is_prime(p)) return std::nullopt;
  Natural mersenne = pow(Natural(2), p) - 1;
  if (!is_prime(mersenne)) return std::nullopt;
  return Natural(pow(Natural(2), p - 1) * mersenne);
}

struct PerfectEntry {
  Natural n;
  std::uint64_t p = 0;     // Euclid exponent
  Natural mersenne;        // 2^p - 1
};

// Even perfect numbers come from the Euclid form; the odd part of the range is
// swept separately (see congruence.hpp) and must come back empty.
inline std::vector<PerfectEntry> even_perfects_up_to(const Natural& limit) {
  std::vector<PerfectEntry> out;
  for (std::uint64_t p = 2;; ++p) {
    Natural smallest = pow(Natural(2), p - 1) * (pow(Natural(2), p) - 1);
    if (smallest > limit) break;
    if (auto n = euclid_euler(p)) out.push_back({*n, p, Natural(pow(Natural(2), p) - 1)});
  }
  return out;
}

inline bool van_der_pol_check(std::uint64_t n) {
  require(n >= 2 && n <= 10'000, "van_der_pol_check requires 2 <= n <= 10^4");
  auto s = sigma_table(n);
  const Natural nn = nat(n);
  Natural lhs_times_12 = nn * nn * (nn - 1) * nat(s[n]);
  Natural rhs = 0;
  for (std::uint64_t k = 1; k < n; ++k) {
    Natural kk = nat(k);
    rhs += (5 * kk * (nn - kk) - nn * nn) * nat(s[k]) * nat(s[n - k]);
  }
  return lhs_times_12 == 12 * rhs;
}

inline std::optional<std::pair<std::uint64_t, std::uint64_t>> sum_of_two_squares(std::uint64_t n) {
  require(n <= 1'000'000'000'000ULL, "sum_of_two_squares limited to n <= 10^12");
  for (std::uint64_t a = 0; 2 * a * a <= n; ++a) {
    std::uint64_t rest = n - a * a;
    auto b = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(rest)));
    while (b * b > rest) --b;
    while ((b + 1) * (b + 1) <= rest) ++b;
    if (b * b == rest) return std::pair{a, b};
  }
  return std::nullopt;
}

}  // namespace opn

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "opn/rational.hpp"

namespace opn {

inline std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

inline constexpr std::uint32_t kSmallPrimeLimit = 1'000'000;

inline const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> table = primes_up_to(kSmallPrimeLimit);
  return table;
}

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

// Bases 2..41 make Miller-Rabin exact for every n < 3.317e24 (Sorenson-Webster).
inline constexpr std::array<unsigned, 13> kDeterministicBases = {2,  3,  5,  7,  11, 13, 17,
                                                                 19, 23, 29, 31, 37, 41};
// Extra fixed bases applied above that threshold; the test is then probabilistic.
inline constexpr std::array<unsigned, 12> kExtraBases = {43, 47, 53, 59, 61, 67,
                                                          71, 73, 79, 83, 89, 97};

}  // namespace detail

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (unsigned a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline bool is_prime(const Natural& n) {
  if (sgn(n) <= 0) return false;
  if (fits_u64(n)) return is_prime(to_u64(n));
  for (unsigned p : detail::kDeterministicBases) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  Natural d = n - 1;
  mp_bitcnt_t s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  const Natural n_minus_1 = n - 1;
  auto witness = [&](unsigned base) {
    Natural x;
    Natural a(base);
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n_minus_1) return false;
    for (mp_bitcnt_t r = 1; r < s; ++r) {
      x = x * x % n;
      if (x == n_minus_1) return false;
    }
    return true;
  };
  for (unsigned a : detail::kDeterministicBases) {
    if (witness(a)) return false;
  }
  static const Natural threshold("3317044064679887385961981");
  if (n < threshold) return true;
  for (unsigned a : detail::kExtraBases) {
    if (witness(a)) return false;
  }
  return true;
}

inline Natural next_prime(const Natural& after) {
  Natural c = after < 2 ? Natural(2) : Natural(after + 1);
  if (c > 2 && mpz_even_p(c.get_mpz_t())) c += 1;
  while (!is_prime(c)) c += (c == 2 ? 1 : 2);
  return c;
}

// Largest prime strictly below `bound`.
inline Natural prev_prime(const Natural& bound) {
  require(bound > 2, "no prime below bound");
  Natural c = bound - 1;
  while (!is_prime(c)) c -= 1;
  return c;
}

}  // namespace opn

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "opn/primes.hpp"

namespace opn {

struct PrimePower {
  Natural prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// A complete factorization: distinct primes in increasing order, exponents >= 1.
class Factorization {
 public:
  Factorization() = default;

  explicit Factorization(std::vector<PrimePower> parts) : parts_(std::move(parts)) {
    std::sort(parts_.begin(), parts_.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      require(parts_[i].exponent >= 1, "factorization exponent must be positive");
      require(is_prime(parts_[i].prime), "factorization base is not prime: " + parts_[i].prime.get_str());
      require(i == 0 || parts_[i - 1].prime != parts_[i].prime, "repeated prime in factorization");
    }
  }

  const std::vector<PrimePower>& parts() const { return parts_; }
  std::size_t omega() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }

  Natural value() const {
    Natural v = 1;
    for (const auto& pp : parts_) v *= pow(pp.prime, pp.exponent);
    return v;
  }

  unsigned exponent_of(const Natural& p) const {
    for (const auto& pp : parts_) {
      if (pp.prime == p) return pp.exponent;
    }
    return 0;
  }

  // "2^5 * 3^3 * 5"; exponent 1 is left implicit, the empty product prints as "1".
  std::string str(const char* sep = " * ") const {
    if (parts_.empty()) return "1";
    std::string s;
    for (const auto& pp : parts_) {
      if (!s.empty()) s += sep;
      s += pp.prime.get_str();
      if (pp.exponent > 1) s += "^" + std::to_string(pp.exponent);
    }
    return s;
  }

  friend bool operator==(const Factorization&, const Factorization&) = default;

  // For parts already known to be sorted, distinct and prime.
  static Factorization trusted(std::vector<PrimePower> parts) {
    Factorization f;
    f.parts_ = std::move(parts);
    return f;
  }

 private:
  std::vector<PrimePower> parts_;
};

struct FactorBudget {
  std::uint32_t trial_limit = kSmallPrimeLimit;
  std::uint64_t rho_iterations = 2'000'000;
  std::uint64_t seed = 0x6f706e;
  std::size_t max_bits = 1u << 16;  // larger cofactors are reported unsplit untouched
};

// Result of a budgeted factorization. When the budget runs out, the composite
// cofactors that could not be split are listed in `unsplit`.
struct FactorResult {
  std::vector<PrimePower> primes;
  std::vector<Natural> unsplit;

  bool complete() const { return unsplit.empty(); }

  Factorization factorization() const {
    require(complete(), "factorization incomplete");
    return Factorization::trusted(primes);
  }
};

namespace detail {

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

// Brent's cycle-finding variant of Pollard rho. Returns a non-trivial factor or 0.
inline std::uint64_t rho_u64(std::uint64_t n, std::mt19937_64& rng, std::uint64_t& budget) {
  if (n % 2 == 0) return 2;
  while (budget > 0) {
    std::uint64_t c = rng() % (n - 1) + 1;
    std::uint64_t y = rng() % n, x = y, ys = y, q = 1, g = 1;
    const std::uint64_t m = 128;
    std::uint64_t r = 1;
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        std::uint64_t steps = std::min(m, r - k);
        for (std::uint64_t i = 0; i < steps; ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = gcd_u64(q, n);
        k += steps;
        budget = budget > steps ? budget - steps : 0;
      } while (k < r && g == 1 && budget > 0);
      r *= 2;
    } while (g == 1 && budget > 0);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd_u64(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
  }
  return 0;
}

inline Natural rho_big(const Natural& n, std::mt19937_64& rng, std::uint64_t& budget) {
  mpz_class x, y, ys, q, g, c, diff;
  mpz_srcptr N = n.get_mpz_t();
  auto f = [&](mpz_class& v) {
    mpz_mul(v.get_mpz_t(), v.get_mpz_t(), v.get_mpz_t());
    mpz_add(v.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), N);
  };
  auto absdiff = [&](const mpz_class& a, const mpz_class& b) {
    mpz_sub(diff.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
  };
  while (budget > 0) {
    c = nat(rng()) % (n - 1) + 1;
    y = nat(rng()) % n;
    x = y;
    ys = y;
    q = 1;
    g = 1;
    const std::uint64_t m = 128;
    std::uint64_t r = 1;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        std::uint64_t steps = std::min(m, r - k);
        for (std::uint64_t i = 0; i < steps; ++i) {
          f(y);
          absdiff(x, y);
          mpz_mul(q.get_mpz_t(), q.get_mpz_t(), diff.get_mpz_t());
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), N);
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), N);
        k += steps;
        budget = budget > steps ? budget - steps : 0;
      } while (k < r && g == 1 && budget > 0);
      r *= 2;
    } while (g == 1 && budget > 0);
    if (g == n) {
      do {
        f(ys);
        absdiff(x, ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), N);
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
  }
  return 0;
}

}  // namespace detail

inline FactorResult factor(const Natural& n, const FactorBudget& budget = {}) {
  require(sgn(n) > 0, "factor requires n >= 1");
  std::map<Natural, unsigned> found;
  FactorResult result;
  Natural rest = n;

  const auto& table = small_primes();
  for (std::uint32_t p : table) {
    if (p > budget.trial_limit) break;
    if (mpz_cmp_ui(rest.get_mpz_t(), static_cast<unsigned long>(p) * p) < 0) break;
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        ++e;
      }
      found[Natural(p)] += e;
    }
  }

  std::mt19937_64 rng(budget.seed);
  std::uint64_t remaining = budget.rho_iterations;
  std::vector<Natural> stack;
  if (rest > 1) stack.push_back(rest);
  while (!stack.empty()) {
    Natural m = stack.back();
    stack.pop_back();
    if (bit_length(m) > budget.max_bits) {
      result.unsplit.push_back(m);
      continue;
    }
    if (is_prime(m)) {
      found[m] += 1;
      continue;
    }
    // Rho is slow on prime powers, so peel perfect powers off first.
    Natural root;
    bool split = false;
    // Every prime factor left exceeds the trial limit, which caps the possible root degree.
    std::size_t max_root = bit_length(m) / std::max<std::size_t>(1, bit_length(Natural(budget.trial_limit))) + 1;
    for (unsigned k = 2; k <= max_root; ++k) {
      if (!is_prime(static_cast<std::uint64_t>(k))) continue;
      if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), k) != 0) {
        for (unsigned i = 0; i < k; ++i) stack.push_back(root);
        split = true;
        break;
      }
    }
    if (split) continue;
    Natural d = fits_u64(m) ? nat(detail::rho_u64(to_u64(m), rng, remaining))
                            : detail::rho_big(m, rng, remaining);
    if (sgn(d) == 0) {
      result.unsplit.push_back(m);
      continue;
    }
    stack.push_back(d);
    stack.push_back(Natural(m / d));
  }
  for (auto& [p, e] : found) result.primes.push_back({p, e});
  std::sort(result.unsplit.begin(), result.unsplit.end());
  return result;
}

// Convenience for callers whose inputs are small enough that failure is a bug.
inline Factorization factor_complete(const Natural& n, const FactorBudget& budget = {}) {
  FactorResult r = factor(n, budget);
  require(r.complete(), "could not fully factor " + n.get_str() + " within budget");
  return r.factorization();
}

namespace detail {

inline int mobius(unsigned n) {
  int mu = 1;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  return n > 1 ? -mu : mu;
}

// Phi_d(p) = prod over e | d of (p^e - 1)^mu(d/e).
inline Natural cyclotomic_value(const Natural& p, unsigned d) {
  Natural num = 1, den = 1;
  for (unsigned e = 1; e <= d; ++e) {
    if (d % e) continue;
    int mu = mobius(d / e);
    if (mu == 1) num *= pow(p, e) - 1;
    if (mu == -1) den *= pow(p, e) - 1;
  }
  return Natural(num / den);
}

inline void merge_into(std::map<Natural, unsigned>& acc, const FactorResult& r, std::vector<Natural>& unsplit) {
  for (const auto& pp : r.primes) acc[pp.prime] += pp.exponent;
  unsplit.insert(unsplit.end(), r.unsplit.begin(), r.unsplit.end());
}

}  // namespace detail

// sigma(p^k) = prod over d | k+1, d > 1 of Phi_d(p); each cyclotomic piece is
// factored on its own, which is far cheaper than attacking the product.
inline FactorResult factor_sigma_prime_power(const Natural& p, unsigned k, const FactorBudget& budget = {}) {
  std::map<Natural, unsigned> acc;
  FactorResult out;
  for (unsigned d = 2; d <= k + 1; ++d) {
    if ((k + 1) % d) continue;
    detail::merge_into(acc, factor(detail::cyclotomic_value(p, d), budget), out.unsplit);
  }
  for (auto& [q, e] : acc) out.primes.push_back({q, e});
  std::sort(out.unsplit.begin(), out.unsplit.end());
  return out;
}

// Native-width factorization by trial division, used by the scanning loops.
inline std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint32_t p : small_primes()) {
    if (static_cast<std::uint64_t>(p) * p > n) break;
    if (n % p == 0) {
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  }
  if (n > 1) {
    if (n > static_cast<std::uint64_t>(kSmallPrimeLimit) * kSmallPrimeLimit && !is_prime(n)) {
      FactorResult big = factor(nat(n));
      for (auto& pp : big.primes) out.emplace_back(to_u64(pp.prime), pp.exponent);
      std::sort(out.begin(), out.end());
    } else {
      out.emplace_back(n, 1);
    }
  }
  return out;
}

}  // namespace opn

#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "opn/arith_core.hpp"

namespace opn {

// Lower bounds on the three largest prime factors of an odd perfect number.
inline constexpr std::array<unsigned, 3> kLargestPrimeFloors = {101, 10007, 100000007};

// base^(num/den), kept symbolic.
struct ExpForm {
  Natural base;
  Natural num;
  Natural den = 1;

  std::string str() const {
    return base.get_str() + "^(" + num.get_str() + (den == 1 ? "" : "/" + den.get_str()) + ")";
  }
  friend bool operator==(const ExpForm&, const ExpForm&) = default;
};

// x < base^(num/den)  <=>  x^den < base^num. For base 2 this is a bit-length test,
// so the power of two is never materialized.
inline bool less_than(const Natural& x, const ExpForm& e) {
  require(sgn(e.den) > 0, "ExpForm denominator must be positive");
  require(e.den.fits_ulong_p(), "ExpForm denominator too large");
  Natural lhs = pow(x, e.den.get_ui());
  if (e.base == 2) {
    if (!e.num.fits_ulong_p()) return true;
    return bit_length(lhs) <= e.num.get_ui();
  }
  require(e.num.fits_ulong_p() && e.num < 4'000'000, "ExpForm comparison too large to evaluate");
  return lhs < pow(e.base, e.num.get_ui());
}

inline void require_increasing_primes(const std::vector<Natural>& ps) {
  for (std::size_t i = 0; i < ps.size(); ++i) {
    require(is_prime(ps[i]), "not a prime: " + ps[i].get_str());
    require(i == 0 || ps[i - 1] < ps[i], "primes must be strictly increasing");
  }
}

// prod p/(p-1): the supremum of I(N) when N's distinct primes are at least these floors.
inline Rational index_product_upper(const std::vector<Natural>& floors) {
  require_increasing_primes(floors);
  Natural num = 1, den = 1;
  for (const auto& p : floors) {
    num *= p;
    den *= p - 1;
  }
  return Rational(num, den);
}

struct ComponentFloor {
  Natural prime;
  unsigned beta = 0;
};

// prod (1 + 1/p + ... + 1/p^beta) = prod sigma(p^beta)/p^beta.
inline Rational truncated_index_lower(const std::vector<ComponentFloor>& components) {
  Natural num = 1, den = 1;
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto& c = components[i];
    require(is_prime(c.prime), "not a prime: " + c.prime.get_str());
    for (std::size_t j = 0; j < i; ++j) require(components[j].prime != c.prime, "duplicate prime " + c.prime.get_str());
    num *= sigma_prime_power(c.prime, c.beta);
    den *= pow(c.prime, c.beta);
  }
  return Rational(num, den);
}

// floor((prod (alpha_i + 1))^2 / 4); N is strictly larger.
inline Natural crude_lower_bound(const std::vector<unsigned>& alphas) {
  require(!alphas.empty(), "crude_lower_bound needs at least one exponent");
  Natural d = 1;
  for (unsigned a : alphas) {
    require(a >= 1, "exponents must be positive");
    d *= a + 1;
  }
  return Natural(d * d / 4);
}

// Largest prime strictly below (2t + 6)/3.
inline Natural grun_bound(unsigned t) {
  require(t >= 1, "grun_bound requires t >= 1");
  // p < (2t+6)/3  <=>  3p < 2t + 6  <=>  p <= ceil((2t+6)/3) - 1
  Natural limit = (2 * t + 6 + 2) / 3;  // ceil
  return prev_prime(limit);
}

inline Natural kishore_bound(unsigned i, unsigned t) {
  require(i >= 2 && i <= 6, "kishore_bound requires 2 <= i <= 6");
  require(i <= t, "kishore_bound requires i <= t");
  Natural bound = pow(Natural(2), 1ul << (i - 1)) * (t - i + 1);
  return prev_prime(bound);
}

struct FloorTest {
  std::vector<Natural> floors;
  Rational product;
  bool contradicted = false;  // product < 2
};

struct SmallPrimeRefinement {
  Natural q2_upper;
  FloorTest q2_rejected;  // first q2 candidate whose floor product drops below 2
  FloorTest q2_retained;  // the candidate just below it
  Natural q3_upper;
  FloorTest q3_rejected;
  FloorTest q3_retained;
};

namespace detail {

// `prefix`, then primes from `start` upward until `t - 3` entries, then the large floors.
inline FloorTest floor_test(std::vector<Natural> prefix, const Natural& start, unsigned t,
                            const std::vector<Natural>& large) {
  std::vector<Natural> floors = std::move(prefix);
  Natural p = start;
  while (floors.size() + large.size() < t) {
    floors.push_back(p);
    p = next_prime(p);
  }
  for (const auto& q : large) floors.push_back(q);
  FloorTest out{floors, index_product_upper(floors), false};
  out.contradicted = out.product < Rational(2);
  return out;
}

inline std::vector<Natural> default_large_floors() {
  return {Natural(kLargestPrimeFloors[0]), Natural(kLargestPrimeFloors[1]), Natural(kLargestPrimeFloors[2])};
}

}  // namespace detail

// Walks q2 (then q3) upward until the floor product first drops below 2.
inline SmallPrimeRefinement sigma_refine_small_primes(unsigned t, std::vector<Natural> large_floors = {}) {
  require(t == 9, "sigma_refine_small_primes supports t = 9 only");
  if (large_floors.empty()) large_floors = detail::default_large_floors();
  require(large_floors.size() == 3, "three large-prime floors expected");
  SmallPrimeRefinement out;
  Natural prev = 5;
  out.q2_retained = detail::floor_test({3}, prev, t, large_floors);
  for (Natural q = next_prime(prev);; q = next_prime(q)) {
    FloorTest ft = detail::floor_test({3}, q, t, large_floors);
    if (ft.contradicted) {
      out.q2_upper = prev;
      out.q2_rejected = ft;
      break;
    }
    prev = q;
    out.q2_retained = ft;
  }
  prev = 11;  // 3, 5, 7 cannot all divide N, so q3 >= 11
  out.q3_retained = detail::floor_test({3, 5}, prev, t, large_floors);
  for (Natural q = next_prime(prev);; q = next_prime(q)) {
    FloorTest ft = detail::floor_test({3, 5}, q, t, large_floors);
    if (ft.contradicted) {
      out.q3_upper = prev;
      out.q3_rejected = ft;
      break;
    }
    prev = q;
    out.q3_retained = ft;
  }
  return out;
}

// Consecutive primes from q1_floor, the top three positions replaced by the large
// floors. An override never drops below the prime that would otherwise sit there.
inline FloorTest omega_floor_contradiction(const Natural& q1_floor, unsigned t) {
  require(is_prime(q1_floor), "q1_floor must be prime");
  require(t >= 3, "omega_floor_contradiction requires t >= 3");
  std::vector<Natural> floors;
  Natural p = q1_floor;
  for (unsigned i = 0; i + 3 < t; ++i) {
    floors.push_back(p);
    p = next_prime(p);
  }
  for (unsigned big : kLargestPrimeFloors) {
    Natural q = floors.empty() || Natural(big) > floors.back() ? Natural(big) : next_prime(floors.back());
    floors.push_back(q);
  }
  FloorTest out{floors, index_product_upper(floors), false};
  out.contradicted = out.product < Rational(2);
  return out;
}

struct BoundsRow {
  unsigned position = 0;
  Natural lower;
  std::variant<Natural, ExpForm> upper;  // Natural: inclusive; ExpForm: strict
  std::string upper_source;
};

struct BoundsTable {
  unsigned t = 0;
  std::vector<BoundsRow> rows;
};

// q_i < 2^(4^t / (2(t - i) + 1)): each of the t - i larger primes has exponent >= 2
// except possibly one, and N < 2^(4^t).
inline ExpForm nielsen_position_bound(unsigned i, unsigned t) {
  return ExpForm{2, pow(Natural(4), t), Natural(2 * (t - i) + 1)};
}

// With omega(N) <= 11, 3 divides N.
inline constexpr unsigned kThreeDividesUpToOmega = 11;

// Published lower bounds for q4..q6 at t = 9 (reproduced as constants).
inline constexpr std::array<unsigned, 3> kNineFactorMiddleLowers = {13, 19, 23};

inline BoundsTable nine_factor_table() {
  const unsigned t = 9;
  SmallPrimeRefinement refine = sigma_refine_small_primes(t);
  BoundsTable table{t, {}};
  table.rows.push_back({1, 3, Natural(t <= kThreeDividesUpToOmega ? 3 : grun_bound(t)), "3 | N for t <= 11"});
  table.rows.push_back({2, 5, refine.q2_upper, "floor product"});
  table.rows.push_back({3, 11, refine.q3_upper, "floor product"});
  for (unsigned i = 4; i <= 6; ++i) {
    table.rows.push_back({i, kNineFactorMiddleLowers[i - 4], kishore_bound(i, t), "kishore"});
  }
  for (unsigned i = 7; i <= 9; ++i) {
    table.rows.push_back({i, kLargestPrimeFloors[i - 7], nielsen_position_bound(i, t), "N < 2^(4^t)"});
  }
  return table;
}

inline bool row_consistent(const BoundsRow& r) {
  if (const auto* n = std::get_if<Natural>(&r.upper)) return r.lower <= *n;
  return less_than(r.lower, std::get<ExpForm>(r.upper));
}

struct ReciprocalSum {
  Rational sum;
  bool within = false;
};

inline ReciprocalSum reciprocal_sum_check(const std::vector<Natural>& primes) {
  Rational s;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    require(is_prime(primes[i]), "not a prime: " + primes[i].get_str());
    for (std::size_t j = 0; j < i; ++j) require(primes[j] != primes[i], "primes must be distinct");
    s += Rational(1, primes[i]);
  }
  return {s, Rational(596, 1000) < s && s < Rational(694, 1000)};
}

struct SizeBounds {
  Natural lower;        // 10^300
  ExpForm upper;        // 2^(4^t)
  bool consistent = false;  // lower < upper, i.e. t is not ruled out by size alone
};

inline const Natural& kSizeLowerBound() {
  static const Natural v = pow(Natural(10), 300);
  return v;
}

inline SizeBounds size_bounds(unsigned t) {
  require(t >= 1, "size_bounds requires t >= 1");
  SizeBounds out{kSizeLowerBound(), ExpForm{2, pow(Natural(4), t), 1}, false};
  out.consistent = less_than(out.lower, out.upper);
  return out;
}

// Smallest t with 2^(4^t) > 10^300.
inline unsigned size_threshold() {
  unsigned t = 1;
  while (!size_bounds(t).consistent) ++t;
  return t;
}

}  // namespace opn

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "opn/arith_core.hpp"

namespace opn {

struct Congruence {
  Natural residue;
  Natural modulus;

  Congruence(Natural r, Natural m) : residue(std::move(r)), modulus(std::move(m)) {
    require(sgn(modulus) > 0, "congruence modulus must be at least 1");
    mpz_fdiv_r(residue.get_mpz_t(), residue.get_mpz_t(), modulus.get_mpz_t());
  }

  bool holds(const Natural& x) const { return Natural(x - residue) % modulus == 0; }
  std::string str() const { return residue.get_str() + " (mod " + modulus.get_str() + ")"; }
  friend bool operator==(const Congruence&, const Congruence&) = default;
};

inline bool touchard_filter(std::uint64_t n) {
  require(n % 2 == 1, "touchard_filter requires odd n");
  return n % 12 == 1 || n % 36 == 9;
}

inline bool roberts_filter(std::uint64_t n) {
  require(n % 2 == 1, "roberts_filter requires odd n");
  return n % 12 == 1 || n % 468 == 117 || n % 324 == 81;
}

// Solution class modulo the lcm, or nullopt when two congruences disagree
// modulo the gcd of their moduli.
inline std::optional<Congruence> crt_solve(const std::vector<Congruence>& cs) {
  require(!cs.empty(), "crt_solve needs at least one congruence");
  Natural a = cs.front().residue, n = cs.front().modulus;
  for (std::size_t i = 1; i < cs.size(); ++i) {
    const Natural& b = cs[i].residue;
    const Natural& m = cs[i].modulus;
    Natural g = gcd(n, m);
    Natural diff = b - a;
    if (diff % g != 0) return std::nullopt;
    Natural m_g = m / g;
    Natural inv;
    Natural n_g = n / g;
    if (m_g == 1) {
      inv = 0;
    } else {
      mpz_invert(inv.get_mpz_t(), n_g.get_mpz_t(), m_g.get_mpz_t());
    }
    Natural t = Natural(diff / g) * inv;
    mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), m_g.get_mpz_t());
    a = a + n * t;
    n = n * m_g;
    mpz_fdiv_r(a.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
  }
  return Congruence(a, n);
}

struct EulerDecomposition {
  Natural p;
  unsigned k = 0;
  Natural m;
};

inline std::optional<EulerDecomposition> euler_decompose(const Factorization& f) {
  Natural n = f.value();
  require(mpz_odd_p(n.get_mpz_t()), "euler_decompose requires odd n");
  const PrimePower* special = nullptr;
  Natural m = 1;
  for (const auto& pp : f.parts()) {
    if (pp.exponent % 2 == 1) {
      if (special) return std::nullopt;
      special = &pp;
    } else {
      m *= pow(pp.prime, pp.exponent / 2);
    }
  }
  if (!special || special->prime % 4 != 1 || special->exponent % 4 != 1) return std::nullopt;
  return EulerDecomposition{special->prime, special->exponent, m};
}

inline bool div105_reject(const Factorization& f) {
  return f.exponent_of(3) > 0 && f.exponent_of(5) > 0 && f.exponent_of(7) > 0;
}

// ---------------------------------------------------------------------------

struct SieveStage {
  std::string name;
  std::uint64_t count = 0;
};

struct SieveReport {
  std::uint64_t limit = 0;
  std::vector<SieveStage> stage_counts;
  std::vector<std::uint64_t> found;
};

namespace detail {

// Euler-form test on a native integer, giving up as soon as a second odd
// exponent (or a badly shaped one) shows up. Fills `parts` on success.
inline bool euler_form_u64(std::uint64_t n, std::vector<std::pair<std::uint64_t, unsigned>>& parts) {
  parts.clear();
  bool have_special = false;
  auto take = [&](std::uint64_t p, unsigned e) {
    if (e % 2 == 1) {
      if (have_special || p % 4 != 1 || e % 4 != 1) return false;
      have_special = true;
    }
    parts.emplace_back(p, e);
    return true;
  };
  for (std::uint32_t p : small_primes()) {
    std::uint64_t pp = p;
    if (pp * pp * pp > n) break;
    if (n % p) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (!take(p, e)) return false;
  }
  if (n == 1) return have_special;
  // Whatever is left has at most two prime factors, all above the cube root.
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  if (r * r == n) return take(r, 2) && have_special;
  if (is_prime(n)) return take(n, 1) && have_special;
  return false;
}

inline void sweep_odd(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t>& counts,
                      std::vector<std::uint64_t>& found) {
  std::vector<std::pair<std::uint64_t, unsigned>> parts;
  if (lo % 2 == 0) ++lo;
  for (std::uint64_t n = lo; n <= hi; n += 2) {
    ++counts[0];
    if (!touchard_filter(n)) continue;
    ++counts[1];
    if (!roberts_filter(n)) continue;
    ++counts[2];
    if (n % 105 == 0) continue;
    ++counts[3];
    if (!euler_form_u64(n, parts)) continue;
    ++counts[4];
    unsigned __int128 s = 1;
    for (auto [p, e] : parts) {
      unsigned __int128 term = 1, pk = 1;
      for (unsigned i = 0; i < e; ++i) {
        pk *= p;
        term += pk;
      }
      s *= term;
    }
    if (s == static_cast<unsigned __int128>(n) * 2) {
      ++counts[5];
      found.push_back(n);
    }
  }
}

inline SieveReport run_sieve(std::uint64_t limit, unsigned threads) {
  static const char* const kStages[] = {"odd", "touchard", "roberts", "105-free", "euler-form", "sigma-equality"};
  SieveReport report;
  report.limit = limit;
  threads = std::max(1u, threads);
  std::vector<std::vector<std::uint64_t>> counts(threads, std::vector<std::uint64_t>(6, 0));
  std::vector<std::vector<std::uint64_t>> found(threads);
  std::uint64_t chunk = limit / threads + 1;
  small_primes();  // build the shared table before workers start
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    std::uint64_t lo = std::max<std::uint64_t>(1, t * chunk);
    std::uint64_t hi = std::min(limit, (t + 1) * chunk - 1);
    if (lo > hi) continue;
    pool.emplace_back(sweep_odd, lo, hi, std::ref(counts[t]), std::ref(found[t]));
  }
  for (auto& th : pool) th.join();
  for (unsigned s = 0; s < 6; ++s) {
    std::uint64_t total = 0;
    for (unsigned t = 0; t < threads; ++t) total += counts[t][s];
    report.stage_counts.push_back({kStages[s], total});
  }
  for (auto& f : found) report.found.insert(report.found.end(), f.begin(), f.end());
  return report;
}

}  // namespace detail

inline SieveReport opn_sieve(std::uint64_t limit, unsigned threads = 1) {
  require(limit <= 100'000'000, "opn_sieve limited to 10^8");
  return detail::run_sieve(limit, threads);
}

struct PerfectScan {
  std::vector<PerfectEntry> perfects;  // increasing
  SieveReport odd_sweep;
};

// Even perfects come from Euclid's form; the odd part of the range is swept by the
// sieve and is required to come back empty.
inline PerfectScan perfect_scan(std::uint64_t limit, unsigned threads = 1) {
  require(limit <= 1'000'000'000, "perfect_scan limited to 10^9");
  PerfectScan out;
  out.perfects = even_perfects_up_to(nat(limit));
  out.odd_sweep = detail::run_sieve(limit, threads);
  if (!out.odd_sweep.found.empty()) {
    throw std::logic_error("odd perfect number found: " + std::to_string(out.odd_sweep.found.front()));
  }
  return out;
}

inline bool consecutive_perfect_check(std::uint64_t limit, unsigned threads = 1) {
  require(limit <= 100'000'000, "consecutive_perfect_check limited to 10^8");
  PerfectScan scan = perfect_scan(limit, threads);
  for (std::size_t i = 1; i < scan.perfects.size(); ++i) {
    if (scan.perfects[i].n == scan.perfects[i - 1].n + 1) return false;
  }
  return true;
}

struct EvenPerfectProperties {
  bool ends_in_6_or_8 = false;
  bool triangular = false;
  bool digital_root_one = false;  // vacuously true for 6
  bool binary_shape = false;      // p ones followed by p - 1 zeros
};

inline EvenPerfectProperties even_perfect_properties(const PerfectEntry& e) {
  EvenPerfectProperties out;
  Natural last = e.n % 10;
  out.ends_in_6_or_8 = last == 6 || last == 8;
  out.triangular = mpz_perfect_square_p(Natural(8 * e.n + 1).get_mpz_t()) != 0;
  out.digital_root_one = e.n == 6 || e.n % 9 == 1;
  std::string bits = e.n.get_str(2);
  out.binary_shape = bits == std::string(e.p, '1') + std::string(e.p - 1, '0');
  return out;
}

}  // namespace opn

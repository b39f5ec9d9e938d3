#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "opn/arith_core.hpp"

namespace opn {

inline Rational abundancy_index(const Factorization& f) { return Rational(sigma(f), f.value()); }

inline Rational abundancy_index(const Natural& n) {
  require(sgn(n) > 0, "abundancy index requires n >= 1");
  return abundancy_index(factor_complete(n));
}

enum class AbundancyClass { Deficient, Perfect, Abundant };

inline const char* to_string(AbundancyClass c) {
  switch (c) {
    case AbundancyClass::Deficient: return "deficient";
    case AbundancyClass::Perfect: return "perfect";
    case AbundancyClass::Abundant: return "abundant";
  }
  return "?";
}

inline AbundancyClass classify(const Factorization& f) {
  auto c = abundancy_index(f) <=> Rational(2);
  if (c < 0) return AbundancyClass::Deficient;
  if (c > 0) return AbundancyClass::Abundant;
  return AbundancyClass::Perfect;
}

inline Natural sigma_of(const Natural& n) { return sigma(factor_complete(n)); }

// n < m < sigma(n) rules out m/n as an index; `false` says nothing either way.
inline bool weiner_outlaw(const Natural& m, const Natural& n) {
  require(sgn(m) > 0 && sgn(n) > 0, "weiner_outlaw requires positive arguments");
  require(gcd(m, n) == 1, "weiner_outlaw requires gcd(m, n) = 1");
  return n < m && m < sigma_of(n);
}

inline Rational opn_equivalent_target(const Natural& p, const Natural& alpha) {
  require(is_prime(p), "opn_equivalent_target: p must be prime");
  require(p % 4 == 1, "opn_equivalent_target: p must be 1 mod 4");
  require(sgn(alpha) > 0 && alpha % 4 == 1, "opn_equivalent_target: alpha must be 1 mod 4");
  unsigned long a = alpha.get_ui();
  return Rational(2 * pow(p, a) * (p - 1), pow(p, a + 1) - 1);
}

namespace detail {

inline std::vector<Natural> divisors(const Factorization& f, std::size_t cap) {
  std::vector<Natural> out{1};
  for (const auto& pp : f.parts()) {
    std::size_t base = out.size();
    Natural pk = 1;
    for (unsigned e = 1; e <= pp.exponent; ++e) {
      pk *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) {
        out.push_back(out[i] * pk);
        if (out.size() >= cap) return out;
      }
    }
  }
  return out;
}

}  // namespace detail

inline constexpr std::size_t kDivisorEnumerationCap = 10'000;

inline bool stanton_holdener_outlaw(const Factorization& n_fact, const Natural& t) {
  require(sgn(t) > 0, "stanton_holdener_outlaw requires t >= 1");
  const Natural n = n_fact.value();
  const Natural s = sigma(n_fact);
  require(gcd(Natural(s + t), n) == 1, "(sigma(N) + t)/N must be in lowest terms");
  const Rational target(s + t, n);
  for (const auto& pp : n_fact.parts()) {
    Natural pk = pow(pp.prime, pp.exponent);
    Natural rest_sigma = s / sigma_prime_power(pp.prime, pp.exponent);
    if (!(pp.prime * t < rest_sigma)) continue;
    Natural sp = sigma_prime_power(pp.prime, pp.exponent);
    Rational ipk(sp, pk);
    for (const Natural& d : detail::divisors(factor_complete(sp), kDivisorEnumerationCap)) {
      if (d == 1) continue;
      bool first = ipk * abundancy_index(d) > target && gcd(d, t) == 1;
      bool second = gcd(d, Natural(n * t)) == 1;
      if (first || second) return true;
    }
  }
  return false;
}

inline bool qp_outlaw(const Natural& q, const Natural& p) {
  require(is_prime(q) && is_prime(p), "qp_outlaw requires primes");
  require(p > q && q > 2, "qp_outlaw requires p > q > 2");
  return p > q * q - q - 1;
}

// ---------------------------------------------------------------------------
// Solitary and friendly numbers.

enum class SolitaryKind { Solitary, Friendly, Unknown };

struct SolitaryStatus {
  SolitaryKind kind = SolitaryKind::Unknown;
  std::string criterion;
  Natural partner;
};

inline SolitaryStatus greening_solitary(const Natural& n) {
  require(sgn(n) > 0, "greening_solitary requires n >= 1");
  if (gcd(n, sigma_of(n)) == 1) return {SolitaryKind::Solitary, "greening", 0};
  return {};
}

struct FriendlyPair {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  Rational index;
};

inline std::vector<FriendlyPair> friendly_search(std::uint64_t limit) {
  require(limit <= 1'000'000, "friendly_search limited to 10^6");
  std::vector<FriendlyPair> out;
  if (limit < 2) return out;
  auto s = sigma_table(limit);
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<std::uint64_t>> classes;
  for (std::uint64_t n = 1; n <= limit; ++n) {
    std::uint64_t g = detail::gcd_u64(s[n], n);
    classes[{s[n] / g, n / g}].push_back(n);
  }
  for (const auto& [key, members] : classes) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        std::uint64_t a = members[i], b = members[j];
        if (static_cast<unsigned __int128>(s[a]) * b != static_cast<unsigned __int128>(s[b]) * a) {
          throw std::logic_error("friendly_search: index mismatch");
        }
        out.push_back({a, b, Rational(nat(key.first), nat(key.second))});
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const FriendlyPair& x, const FriendlyPair& y) { return std::pair(x.a, x.b) < std::pair(y.a, y.b); });
  return out;
}

// Greening first; failing that, look for a partner below `search_limit`.
inline SolitaryStatus solitary_status(const Natural& n, std::uint64_t search_limit) {
  SolitaryStatus g = greening_solitary(n);
  if (g.kind == SolitaryKind::Solitary) return g;
  require(search_limit <= 10'000'000, "partner search limited to 10^7");
  Rational target = abundancy_index(n);
  auto s = sigma_table(search_limit);
  for (std::uint64_t b = 1; b <= search_limit; ++b) {
    if (nat(b) == n) continue;
    if (Rational(nat(s[b]), nat(b)) == target) return {SolitaryKind::Friendly, "search", nat(b)};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Ludwick's reduction for I(x) = a/b.

struct LudwickConfig {
  unsigned max_depth = 8;
  unsigned exponent_cap = 40;
  std::uint64_t node_budget = 100'000;
  FactorBudget factor_budget{1u << 14, 1'000, 0x6f706e, 1024};
};

enum class LudwickOutcome { Expanded, Solved, Refuted, Abandoned };

inline const char* to_string(LudwickOutcome o) {
  switch (o) {
    case LudwickOutcome::Expanded: return "expanded";
    case LudwickOutcome::Solved: return "solved";
    case LudwickOutcome::Refuted: return "refuted";
    case LudwickOutcome::Abandoned: return "abandoned";
  }
  return "?";
}

struct LudwickNode {
  int parent = -1;
  Natural prime;        // 0 at the root
  unsigned exponent = 0;
  Rational target;      // required index of the remaining cofactor
  LudwickOutcome outcome = LudwickOutcome::Expanded;
  std::string reason;
  std::vector<int> children;
};

struct LudwickTrace {
  std::vector<LudwickNode> nodes;  // nodes[0] is the root
  unsigned weight_bound = 0;       // exponent-weight bound of the pass recorded here
  bool exhaustive = false;         // true if no branch was cut by a limit

  // Product of the chosen prime powers on the path to `id`.
  Natural path_value(int id) const {
    Natural n = 1;
    for (; id > 0; id = nodes[id].parent) n *= pow(nodes[id].prime, nodes[id].exponent);
    return n;
  }

  std::vector<int> leaves() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].outcome != LudwickOutcome::Expanded) out.push_back(static_cast<int>(i));
    }
    return out;
  }
};

// One reduction step: p^k was split off, leaving `target` for the cofactor.
struct LudwickStep {
  Natural prime;
  unsigned exponent = 0;
  Rational target;
};

struct LudwickResult {
  std::vector<Natural> solutions;  // increasing, each verified
  std::map<Natural, std::vector<LudwickStep>> paths;  // how each solution was reached
  LudwickTrace trace;
  std::uint64_t nodes_used = 0;
};

namespace detail {

class LudwickSearch {
 public:
  LudwickSearch(const Rational& goal, const LudwickConfig& cfg)
      : goal_(goal), cfg_(cfg), goal_den_factors_(factor(goal.den(), cfg.factor_budget)) {}

  LudwickResult run() {
    LudwickResult result;
    for (unsigned w = 1; w <= cfg_.max_depth * cfg_.exponent_cap + 64; ++w) {
      trace_ = LudwickTrace{};
      trace_.weight_bound = w;
      cut_by_weight_ = false;
      cut_other_ = false;
      trace_.nodes.push_back(LudwickNode{-1, 0, 0, goal_, LudwickOutcome::Expanded, "", {}});
      ++used_;
      std::vector<Natural> used_primes;
      visit(0, used_primes, 0, w);
      result.trace = trace_;
      if (out_of_budget_) break;
      if (!cut_by_weight_) {
        result.trace.exhaustive = !cut_other_;
        break;
      }
    }
    result.solutions.assign(solutions_.begin(), solutions_.end());
    result.paths = paths_;
    result.nodes_used = used_;
    return result;
  }

 private:
  struct SigmaEntry {
    FactorResult factors;
    bool thorough = false;  // false: only trial division has been tried
  };

  const FactorResult& sigma_factors(const std::pair<Natural, unsigned>& key, bool thorough) {
    auto it = sigma_cache_.find(key);
    if (it == sigma_cache_.end()) {
      FactorBudget quick = cfg_.factor_budget;
      quick.rho_iterations = 0;
      it = sigma_cache_.emplace(key, SigmaEntry{factor_sigma_prime_power(key.first, key.second, quick), false}).first;
    }
    SigmaEntry& e = it->second;
    if (thorough && !e.thorough) {
      if (!e.factors.complete()) e.factors = factor_sigma_prime_power(key.first, key.second, cfg_.factor_budget);
      e.thorough = true;
    }
    return e.factors;
  }

  // Every prime of a target's denominator divides the goal's denominator or some
  // sigma(p^k) on the path, so dividing those out factors it without fresh splitting.
  // On failure `rest` holds the unresolved cofactor, coprime to the parts found.
  std::optional<Factorization> factor_denominator(const Natural& den, bool thorough, Natural& rest,
                                                  std::vector<PrimePower>& parts) {
    rest = den;
    parts.clear();
    auto strip = [&](const FactorResult& f) {
      for (const auto& pp : f.primes) {
        unsigned e = 0;
        while (mpz_divisible_p(rest.get_mpz_t(), pp.prime.get_mpz_t())) {
          mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), pp.prime.get_mpz_t());
          ++e;
        }
        if (e) parts.push_back({pp.prime, e});
      }
    };
    strip(goal_den_factors_);
    for (const auto& key : sigma_path_) strip(sigma_factors(key, thorough));
    if (rest != 1) return std::nullopt;
    std::sort(parts.begin(), parts.end(), [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    return Factorization::trusted(parts);
  }

  void close(int id, LudwickOutcome o, std::string why) {
    trace_.nodes[id].outcome = o;
    trace_.nodes[id].reason = std::move(why);
  }

  int add_child(int parent, const Natural& p, unsigned k, const Rational& target) {
    if (used_ >= cfg_.node_budget) {
      out_of_budget_ = true;
      return -1;
    }
    ++used_;
    int id = static_cast<int>(trace_.nodes.size());
    trace_.nodes.push_back(LudwickNode{parent, p, k, target, LudwickOutcome::Expanded, "", {}});
    trace_.nodes[parent].children.push_back(id);
    return id;
  }

  // Tries exponents k >= c of p at node `id`; returns false once the budget is gone.
  bool branch(int id, const Natural& p, unsigned c, unsigned cost, std::vector<Natural>& used_primes,
              unsigned depth, unsigned weight_left) {
    const Rational target = trace_.nodes[id].target;
    for (unsigned k = std::max(c, 1u);; ++k) {
      if (k > cfg_.exponent_cap) {
        cut_other_ = true;
        break;
      }
      Natural pk = pow(p, k);
      Rational next = target * Rational(pk, sigma_prime_power(p, k));
      if (next < Rational(1)) break;  // the target only shrinks as k grows
      if (cost + k > weight_left) {
        cut_by_weight_ = true;
        break;
      }
      int child = add_child(id, p, k, next);
      if (child < 0) {
        close(id, LudwickOutcome::Abandoned, "budget");
        return false;
      }
      used_primes.push_back(p);
      sigma_path_.emplace_back(p, k);
      visit(child, used_primes, depth + 1, weight_left - cost - k);
      sigma_path_.pop_back();
      used_primes.pop_back();
      if (out_of_budget_) return false;
    }
    return true;
  }

  void visit(int id, std::vector<Natural>& used_primes, unsigned depth, unsigned weight_left) {
    const Rational target = trace_.nodes[id].target;
    if (target < Rational(1)) return close(id, LudwickOutcome::Refuted, "target below 1");
    if (target == Rational(1)) {
      Natural n = trace_.path_value(id);
      if (abundancy_index(n) != goal_) throw std::logic_error("ludwick: witness failed verification");
      if (solutions_.insert(n).second) {
        std::vector<LudwickStep> steps;
        for (int i = id; i > 0; i = trace_.nodes[i].parent) {
          steps.push_back({trace_.nodes[i].prime, trace_.nodes[i].exponent, trace_.nodes[i].target});
        }
        paths_[n] = {steps.rbegin(), steps.rend()};
      }
      return close(id, LudwickOutcome::Solved, "n = " + n.get_str());
    }
    const Natural& den = target.den();
    for (const Natural& q : used_primes) {
      if (mpz_divisible_p(den.get_mpz_t(), q.get_mpz_t())) {
        return close(id, LudwickOutcome::Refuted, "denominator divisible by excluded prime " + q.get_str());
      }
    }
    Natural rest;
    std::vector<PrimePower> known;
    std::optional<Factorization> split;
    for (bool thorough : {false, true}) {
      split = factor_denominator(den, thorough, rest, known);
      if (split) break;
      // sigma(rest) > rest, which is often enough for the numerator test.
      Natural lower = (rest + 1) * sigma(Factorization::trusted(known));
      if (target.num() < lower) return close(id, LudwickOutcome::Refuted, "numerator below sigma(denominator)");
    }
    if (!split) {
      cut_other_ = true;
      return close(id, LudwickOutcome::Abandoned, "denominator not fully factored");
    }
    const Factorization& df = *split;
    if (target.num() < sigma(df)) {
      return close(id, LudwickOutcome::Refuted, "numerator below sigma(denominator)");
    }
    if (depth >= cfg_.max_depth) {
      cut_other_ = true;
      return close(id, LudwickOutcome::Abandoned, "depth");
    }
    if (df.empty()) {
      // Integer target: m is free to start with any unused prime.
      unsigned rank = 0;
      for (std::uint32_t p : small_primes()) {
        Natural pn(p);
        if (std::find(used_primes.begin(), used_primes.end(), pn) != used_primes.end()) continue;
        ++rank;
        if (rank + 1 > weight_left) {
          cut_by_weight_ = true;
          break;
        }
        if (!branch(id, pn, 1, rank, used_primes, depth, weight_left)) return;
      }
      return;
    }
    const PrimePower* best = &df.parts().front();
    Natural best_value = pow(best->prime, best->exponent);
    for (const auto& pp : df.parts()) {
      Natural v = pow(pp.prime, pp.exponent);
      if (v > best_value) {
        best = &pp;
        best_value = v;
      }
    }
    branch(id, best->prime, best->exponent, 0, used_primes, depth, weight_left);
  }

  Rational goal_;
  LudwickConfig cfg_;
  LudwickTrace trace_;
  std::set<Natural> solutions_;
  std::map<Natural, std::vector<LudwickStep>> paths_;
  FactorResult goal_den_factors_;
  std::map<std::pair<Natural, unsigned>, SigmaEntry> sigma_cache_;
  std::vector<std::pair<Natural, unsigned>> sigma_path_;
  std::uint64_t used_ = 0;
  bool out_of_budget_ = false;
  bool cut_by_weight_ = false;
  bool cut_other_ = false;
};

}  // namespace detail

// Searches n with I(n) = a/b by repeatedly peeling the largest prime power off the
// target's denominator. Passes are re-run with a growing bound on the total exponent
// weight, so shallow solutions surface before any single branch eats the budget.
inline LudwickResult ludwick_solve(const Natural& a, const Natural& b, const LudwickConfig& cfg = {}) {
  require(sgn(a) > 0 && sgn(b) > 0, "ludwick_solve requires positive a, b");
  require(gcd(a, b) == 1, "ludwick_solve requires gcd(a, b) = 1");
  require(a > b, "ludwick_solve requires a/b > 1");
  return detail::LudwickSearch(Rational(a, b), cfg).run();
}

// ---------------------------------------------------------------------------

enum class IndexKind { Index, Outlaw, Unknown };

struct IndexStatus {
  IndexKind kind = IndexKind::Unknown;
  std::string criterion;  // outlaw criterion, or why the search stopped
  Natural witness;
};

inline IndexStatus classify_fraction(const Natural& a, const Natural& b, const LudwickConfig& cfg = {}) {
  require(sgn(a) > 0 && sgn(b) > 0, "classify_fraction requires positive a, b");
  require(gcd(a, b) == 1, "classify_fraction requires gcd(a, b) = 1");
  require(a > b, "classify_fraction requires a/b > 1");
  const Factorization bf = factor_complete(b);
  const Natural sb = sigma(bf);
  if (a == sb) return {IndexKind::Index, "sigma(b) = a", b};
  if (a < sb) return {IndexKind::Outlaw, "weiner", 0};
  // a > sigma(b): the only N with (sigma(N) + t)/N = a/b in lowest terms is N = b.
  if (bf.omega() == 2 && bf.parts()[0].exponent == 1 && bf.parts()[1].exponent == 1) {
    const Natural& q = bf.parts()[0].prime;
    const Natural& p = bf.parts()[1].prime;
    if (q > 2 && a == q * p + 2 * q + p && qp_outlaw(q, p)) return {IndexKind::Outlaw, "qp", 0};
  }
  if (stanton_holdener_outlaw(bf, Natural(a - sb))) return {IndexKind::Outlaw, "stanton-holdener", 0};
  LudwickResult r = ludwick_solve(a, b, cfg);
  if (!r.solutions.empty()) return {IndexKind::Index, "ludwick", r.solutions.front()};
  if (r.trace.exhaustive) return {IndexKind::Outlaw, "ludwick-exhaustive", 0};
  return {IndexKind::Unknown, "search budget exhausted", 0};
}

// Given I(witness) = a/b and a divisor D of b with I(p D) > a/b for every prime p | D,
// the cofactor r = witness / D has index (D / sigma(D)) * (a/b).
struct DerivedIndex {
  Rational index;
  Natural witness;
};

inline DerivedIndex czarnecki_holdener_rewrite(const Rational& ab, const Natural& witness, const Natural& d) {
  require(ab > Rational(1), "fraction must exceed 1");
  require(abundancy_index(witness) == ab, "witness does not have the stated index");
  require(sgn(d) > 0 && ab.den() % d == 0, "D must divide the denominator");
  Factorization df = factor_complete(d);
  for (const auto& pp : df.parts()) {
    require(abundancy_index(Natural(pp.prime * d)) > ab, "I(p D) > a/b fails for p = " + pp.prime.get_str());
  }
  Rational derived = Rational(d, sigma(df)) * ab;
  Natural r = witness / d;
  if (abundancy_index(r) != derived) throw std::logic_error("czarnecki_holdener_rewrite: derived witness mismatch");
  return {derived, r};
}

}  // namespace opn

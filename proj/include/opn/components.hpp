#pragma once

#include <string>
#include <vector>

#include "opn/arith_core.hpp"

namespace opn {

// The Euler-factor split N = p^k m^2 with p = k = 1 (mod 4) and gcd(p, m) = 1.
inline void require_euler_split(const Natural& p, unsigned k, const Natural& m) {
  require(is_prime(p), "p must be prime");
  require(p % 4 == 1, "p must be 1 (mod 4)");
  require(k % 4 == 1, "k must be 1 (mod 4)");
  require(sgn(m) > 0 && m % 2 == 1, "m must be a positive odd integer");
  require(gcd(p, m) == 1, "gcd(p, m) must be 1");
}

struct ComponentRatios {
  Rational rho1, rho2, rho3;
  Rational mu1, mu2, mu3, mu4;
};

inline ComponentRatios component_ratios(const Natural& p, unsigned k, const Natural& m) {
  require_euler_split(p, k, m);
  const Natural pk = pow(p, k), m2 = m * m;
  const Natural sp = sigma_prime_power(p, k);
  const Factorization mf = factor_complete(m);
  const Natural sm = sigma(mf);
  std::vector<PrimePower> sq;
  for (const auto& pp : mf.parts()) sq.push_back({pp.prime, 2 * pp.exponent});
  const Natural sm2 = sigma(Factorization::trusted(sq));
  return {Rational(sp, pk), Rational(sp, m2), Rational(sp, m),
          Rational(sm2, m2), Rational(sm2, pk), Rational(sm, m), Rational(sm, pk)};
}

struct EulerFactorBounds {
  Rational lower;        // (p+1)/p <= I(p^k)
  Rational upper;        // I(p^k) < p/(p-1)
  Rational square_lower; // 2(p-1)/p < I(m^2)
  Rational square_upper; // I(m^2) <= 2p/(p+1)
  bool separated = false;  // p/(p-1) < 2(p-1)/p
};

inline EulerFactorBounds euler_factor_bounds(const Natural& p) {
  require(p >= 5, "no Euler prime below 5");
  require(is_prime(p) && p % 4 == 1, "p must be a prime = 1 (mod 4)");
  EulerFactorBounds b{Rational(p + 1, p), Rational(p, p - 1), Rational(2 * (p - 1), p), Rational(2 * p, p + 1)};
  b.separated = b.upper < b.square_lower;
  return b;
}

// L(p) < X + Y <= U(p) for X = I(p^k), Y = I(m^2).
struct XYBounds {
  Rational L, U;
};

inline XYBounds xy_sum_bounds(const Natural& p) {
  require(is_prime(p) && p % 4 == 1, "p must be a prime = 1 (mod 4)");
  XYBounds b{Rational(3 * p * p - 4 * p + 2, p * (p - 1)), Rational(3 * p * p + 2 * p + 1, p * (p + 1))};
  require(b.L < b.U, "L(p) < U(p) failed");
  return b;
}

enum class TrichotomyCase { Rho3Below1, MiddleBand, Mu4BelowRho3, Inconsistent };

inline const char* to_string(TrichotomyCase c) {
  switch (c) {
    case TrichotomyCase::Rho3Below1: return "rho3<1";
    case TrichotomyCase::MiddleBand: return "1<rho3<mu4";
    case TrichotomyCase::Mu4BelowRho3: return "mu4<rho3";
    case TrichotomyCase::Inconsistent: return "inconsistent";
  }
  return "?";
}

struct Hypothesis {
  std::string name;
  bool held = false;
};

struct TrichotomyResult {
  TrichotomyCase which = TrichotomyCase::Inconsistent;
  std::string implied;          // the magnitude claim for this case
  bool implied_holds = false;   // checked directly on p^k and m
  std::vector<Hypothesis> hypotheses;  // facts about genuine OPN splits the case relies on

  bool hypotheses_hold() const {
    for (const auto& h : hypotheses) {
      if (!h.held) return false;
    }
    return true;
  }
  // The theorem's promise: when its hypotheses hold, so does the inequality.
  bool consistent() const { return which == TrichotomyCase::Inconsistent || !hypotheses_hold() || implied_holds; }
};

// Case analysis on rho3 = sigma(p^k)/m against 1 and mu4 = sigma(m)/p^k.
// The first case needs nothing beyond sigma(p^k) > p^k. The other two lean on
// inequalities every odd perfect number satisfies, and an arbitrary split need not:
//   m < p^k        needs I(p^k) < I(m)
//   p^k < sqrt2 m  needs I(p^k) I(m) < 2
inline TrichotomyResult trichotomy(const Natural& p, unsigned k, const Natural& m) {
  const ComponentRatios r = component_ratios(p, k, m);
  const Natural pk = pow(p, k);
  const Rational one(1);
  TrichotomyResult out;
  if (r.rho3 == one || r.rho3 == r.mu4) return out;
  if (r.rho3 < one) {
    out.which = TrichotomyCase::Rho3Below1;
    out.implied = "p^k < m";
    out.implied_holds = pk < m;
  } else if (r.rho3 < r.mu4) {
    out.which = TrichotomyCase::MiddleBand;
    out.implied = "4m/5 < p^k < sqrt(2) m";
    out.implied_holds = 4 * m < 5 * pk && pk * pk < 2 * m * m;
    out.hypotheses.push_back({"I(p^k) I(m) < 2", r.rho1 * r.mu3 < Rational(2)});
  } else {
    out.which = TrichotomyCase::Mu4BelowRho3;
    out.implied = "m < p^k";
    out.implied_holds = m < pk;
    out.hypotheses.push_back({"I(p^k) < I(m)", r.rho1 < r.mu3});
  }
  return out;
}

// 2 sqrt(10)/5 < I(p^k) I(m) < 2, compared after squaring the left side.
inline bool index_product_band(const Natural& p, unsigned k, const Natural& m) {
  const ComponentRatios r = component_ratios(p, k, m);
  const Rational x = r.rho1 * r.mu3;
  return x * x > Rational(8, 5) && x < Rational(2);
}

struct TwoThirdsVerdict {
  PrimePower component;
  Natural sigma;          // sigma(p^a)
  Rational bound;         // (2/3) N / p^a
  bool holds = false;
};

struct TwoThirdsReport {
  std::vector<TwoThirdsVerdict> verdicts;
  bool overall = false;
  unsigned r = 0;
  Rational corollary_lhs;  // N^(2 - r)
  Rational corollary_rhs;  // (1/3)(2/3)^(r - 1)
  bool corollary_holds = false;
};

inline TwoThirdsReport two_thirds_filter(const Factorization& f) {
  require(!f.empty(), "two_thirds_filter requires n > 1");
  const Natural n = f.value();
  require(n % 2 == 1, "two_thirds_filter requires odd n");
  TwoThirdsReport rep;
  rep.overall = true;
  for (const auto& pp : f.parts()) {
    Natural pa = pow(pp.prime, pp.exponent);
    TwoThirdsVerdict v{pp, sigma_prime_power(pp.prime, pp.exponent), Rational(2 * (n / pa), 3)};
    v.holds = Rational(v.sigma) <= v.bound;
    rep.overall = rep.overall && v.holds;
    rep.verdicts.push_back(std::move(v));
  }
  rep.r = static_cast<unsigned>(f.omega());
  rep.corollary_lhs = rep.r <= 2 ? Rational(pow(n, 2 - rep.r)) : Rational(Natural(1), pow(n, rep.r - 2));
  rep.corollary_rhs = Rational(pow(Natural(2), rep.r - 1), pow(Natural(3), rep.r));
  rep.corollary_holds = rep.corollary_lhs <= rep.corollary_rhs;
  return rep;
}

struct SurjectivityWitness {
  Rational X0, Y0;
  bool x_in_range = false;    // 1 < X0 < 5/4
  bool y_in_range = false;    // 8/5 < Y0 < 2
  bool sum_in_range = false;  // 57/20 < X0 + Y0 < 3
  bool not_prime_power_index = false;
};

// True when x is not sigma(r^s)/r^s for any prime power r^s. In lowest terms the
// denominator of sigma(r^s)/r^s is r^s itself, so only that one candidate needs checking.
inline bool not_prime_power_index(const Rational& x) {
  const Natural& d = x.den();
  if (d == 1) return true;
  const Factorization f = factor_complete(d);
  if (f.omega() != 1) return true;
  const auto& pp = f.parts().front();
  return Rational(sigma_prime_power(pp.prime, pp.exponent), d) != x;
}

inline SurjectivityWitness non_surjectivity_witness(const Natural& p, const Natural& q) {
  require(is_prime(p) && is_prime(q), "p and q must be prime");
  require(5 < p && p < q, "need 5 < p < q");
  SurjectivityWitness w;
  w.X0 = Rational((p + 1) * (q + 1), p * q);
  w.Y0 = Rational(2) / w.X0;
  w.x_in_range = Rational(1) < w.X0 && w.X0 < Rational(5, 4);
  w.y_in_range = Rational(8, 5) < w.Y0 && w.Y0 < Rational(2);
  Rational s = w.X0 + w.Y0;
  w.sum_in_range = Rational(57, 20) < s && s < Rational(3);
  w.not_prime_power_index = not_prime_power_index(w.X0);
  return w;
}

struct StructuralFact {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct StructuralReport {
  std::vector<StructuralFact> facts;
  bool disqualified = false;
};

// Necessary conditions on an Euler split; any failure rules the split out.
inline StructuralReport structural_no_gos(const Natural& p, unsigned k, const Natural& m) {
  const ComponentRatios r = component_ratios(p, k, m);
  const Natural pk = pow(p, k);
  StructuralReport rep;
  rep.facts.push_back({"p^k != m^2", pk != m * m, pk.get_str() + " vs " + Natural(m * m).get_str()});
  const Natural sp = sigma_prime_power(p, k);
  const Natural sm2 = (r.mu1 * Rational(m * m)).num();
  rep.facts.push_back({"sigma(p^k) != sigma(m^2)", sp != sm2,
                       "sigma(p^k) = " + Natural(sp % 4).get_str() + " (mod 4), sigma(m^2) = " +
                           Natural(sm2 % 4).get_str() + " (mod 4)"});
  const bool integral = r.mu2.den() == 1;
  rep.facts.push_back({"p^k | sigma(m^2)", integral, "mu2 = " + r.mu2.str()});
  if (integral) {
    rep.facts.push_back({"mu2 odd", r.mu2.num() % 2 == 1, "mu2 = " + r.mu2.num().get_str()});
    rep.facts.push_back({"mu2 >= 3", r.mu2.num() >= 3, "mu2 = " + r.mu2.num().get_str()});
  }
  for (const auto& f : rep.facts) rep.disqualified = rep.disqualified || !f.holds;
  return rep;
}

}  // namespace opn

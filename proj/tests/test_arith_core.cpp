#include <gtest/gtest.h>

#include <random>

#include "opn/arith_core.hpp"
#include "oracles.hpp"

using namespace opn;

namespace {

Factorization fac(std::uint64_t n) { return factor_complete(nat(n)); }

}  // namespace

TEST(Rational, CanonicalForm) {
  Rational r(Natural(4032), Natural(2145));
  EXPECT_EQ(r.str(), "1344/715");
  EXPECT_EQ(Rational(2).str(), "2/1");
  EXPECT_EQ(Rational::parse("91/36"), Rational(Natural(91), Natural(36)));
  EXPECT_EQ(Rational::parse("14/4").str(), "7/2");
  EXPECT_THROW(Rational(Natural(1), Natural(0)), PreconditionError);
}

TEST(Rational, DecimalRoundsHalfToEven) {
  EXPECT_EQ(Rational(Natural(1), Natural(8)).decimal(2), "0.12");
  EXPECT_EQ(Rational(Natural(3), Natural(8)).decimal(2), "0.38");
  EXPECT_EQ(Rational(Natural(15), Natural(8)).decimal(3), "1.875");
  EXPECT_EQ(Rational(Natural(2), Natural(3)).decimal(4), "0.6667");
}

TEST(Rational, IntegersAcceptUnderscores) {
  EXPECT_EQ(parse_integer("100_000_007"), Natural(100000007));
  EXPECT_THROW(parse_integer("12a"), PreconditionError);
}

TEST(Factor, WorkedExamples) {
  EXPECT_EQ(fac(36).parts(), (std::vector<PrimePower>{{2, 2}, {3, 2}}));
  EXPECT_EQ(fac(2145).parts(), (std::vector<PrimePower>{{3, 1}, {5, 1}, {11, 1}, {13, 1}}));
  EXPECT_TRUE(fac(1).empty());
}

TEST(Factor, ReassemblesAndMatchesTrialDivision) {
  for (std::uint64_t n = 1; n <= 1'000'000; ++n) {
    auto f = fac(n);
    ASSERT_EQ(f.value(), nat(n)) << n;
    if (n % 997 == 0) {
      auto ref = oracle::factor(n);
      ASSERT_EQ(f.omega(), ref.size()) << n;
      for (std::size_t i = 0; i < ref.size(); ++i) {
        EXPECT_EQ(f.parts()[i].prime, nat(ref[i].first));
        EXPECT_EQ(f.parts()[i].exponent, ref[i].second);
      }
    }
  }
}

TEST(Factor, SplitsLargeSemiprimes) {
  const Natural m61 = pow(Natural(2), 61) - 1;
  const Natural p = Natural("1000000000039"), q = Natural("10000000000000061");
  for (const auto& [a, b] : {std::pair{m61, Natural(2147483647)}, std::pair{p, q}}) {
    FactorResult r = factor(a * b);
    ASSERT_TRUE(r.complete());
    ASSERT_EQ(r.primes.size(), 2u);
    EXPECT_EQ(r.primes[0].prime, std::min(a, b));
    EXPECT_EQ(r.primes[1].prime, std::max(a, b));
  }
}

TEST(Factor, TinyBudgetLeavesCompositeFlagged) {
  const Natural n = Natural("1000000000039") * Natural("10000000000000061");
  FactorBudget tiny;
  tiny.trial_limit = 100;
  tiny.rho_iterations = 1;
  FactorResult r = factor(n, tiny);
  ASSERT_FALSE(r.complete());
  EXPECT_EQ(r.unsplit.front(), n);
  EXPECT_THROW(sigma(r), PreconditionError);
}

TEST(Primality, Examples) {
  EXPECT_FALSE(is_prime(Natural(2047)));
  EXPECT_TRUE(is_prime(Natural(1093)));
  EXPECT_FALSE(is_prime(Natural(1)));
}

TEST(Primality, AgreesWithTrialDivision) {
  for (std::uint64_t n = 0; n < 200'000; ++n) ASSERT_EQ(is_prime(nat(n)), oracle::is_prime(n)) << n;
}

TEST(Primality, StrongPseudoprimes) {
  // composites that fool many fixed bases
  for (const char* s : {"561", "3215031751", "2152302898747", "3474749660383", "341550071728321",
                        "3825123056546413051", "318665857834031151167461", "3317044064679887385961981"}) {
    EXPECT_FALSE(is_prime(Natural(s))) << s;
  }
  EXPECT_TRUE(is_prime(Natural("100000007")));
  EXPECT_TRUE(is_prime(pow(Natural(2), 127) - 1));
}

TEST(Sigma, Goldens) {
  EXPECT_EQ(sigma(fac(28)), 56);
  EXPECT_EQ(sigma(fac(36)), 91);
  EXPECT_EQ(sigma(fac(1024)), 2047);
  EXPECT_EQ(sigma(fac(2145)), 4032);
  EXPECT_EQ(sigma(fac(1)), 1);
  EXPECT_EQ(divisor_sum_oracle(6), 12u);
  EXPECT_EQ(divisor_sum_oracle(28), 56u);
  EXPECT_EQ(divisor_sum_oracle(1), 1u);
}

TEST(Classical, Goldens) {
  auto c28 = classical(fac(28));
  EXPECT_EQ(c28.d, 6);
  EXPECT_EQ(c28.phi, 12);
  auto c36 = classical(fac(36));
  EXPECT_EQ(c36.d, 9);
  EXPECT_EQ(c36.phi, 12);
  EXPECT_EQ(c36.omega, 2u);
  EXPECT_EQ(c36.big_omega, 4u);
  auto c1024 = classical(fac(1024));
  EXPECT_EQ(c1024.d, 11);
  EXPECT_EQ(c1024.phi, 512);
  EXPECT_EQ(c1024.omega, 1u);
  EXPECT_EQ(c1024.big_omega, 10u);
}

TEST(Classical, AgreesWithBruteForce) {
  for (std::uint64_t n = 1; n <= 3000; ++n) {
    auto c = classical(fac(n));
    ASSERT_EQ(c.sigma, nat(oracle::sigma(n))) << n;
    ASSERT_EQ(c.d, nat(oracle::num_divisors(n))) << n;
    ASSERT_EQ(c.phi, nat(oracle::phi(n))) << n;
  }
}

TEST(Sigma, Multiplicative) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> pick(1, 100'000);
  int done = 0;
  while (done < 2000) {
    std::uint64_t a = pick(rng), b = pick(rng);
    if (std::gcd(a, b) != 1) continue;
    auto ab = classical(fac(a * b)), ca = classical(fac(a)), cb = classical(fac(b));
    ASSERT_EQ(ab.sigma, ca.sigma * cb.sigma);
    ASSERT_EQ(ab.d, ca.d * cb.d);
    ASSERT_EQ(ab.phi, ca.phi * cb.phi);
    ++done;
  }
}

TEST(Sigma, Submultiplicative) {
  auto s = sigma_table(1'000'000);
  for (std::uint64_t a = 1; a <= 1000; ++a) {
    for (std::uint64_t b = 1; b <= 1000; ++b) {
      const std::uint64_t prod = s[a] * s[b];
      if (std::gcd(a, b) == 1) {
        ASSERT_EQ(s[a * b], prod);
      } else {
        ASSERT_LT(s[a * b], prod);
      }
    }
  }
}

TEST(Sigma, TableMatchesOracle) {
  auto s = sigma_table(20'000);
  for (std::uint64_t n = 1; n <= 20'000; ++n) ASSERT_EQ(s[n], oracle::sigma(n)) << n;
}

TEST(Sigma, OddSquaresHaveOddSigma) {
  for (std::uint64_t a = 1; a <= 2000; ++a) ASSERT_EQ(sigma(fac(a * a)) % 2, 1) << a;
}

TEST(Sigma, PrimePowerParity) {
  for (std::uint64_t p = 5; p < 1000; p += 4) {
    if (!oracle::is_prime(p)) continue;
    for (unsigned k : {1u, 5u, 9u}) EXPECT_EQ(sigma_prime_power(nat(p), k) % 4, 2) << p << "^" << k;
  }
}

TEST(SigmaPrimePower, CyclotomicSplitMatchesDirectFactoring) {
  for (std::uint64_t p : {3u, 5u, 7u, 13u, 547u, 1093u}) {
    for (unsigned k = 1; k <= 12; ++k) {
      FactorResult viaCyclo = factor_sigma_prime_power(nat(p), k);
      ASSERT_TRUE(viaCyclo.complete());
      EXPECT_EQ(viaCyclo.factorization().value(), sigma_prime_power(nat(p), k));
      EXPECT_EQ(viaCyclo.primes, factor_complete(sigma_prime_power(nat(p), k)).parts());
    }
  }
}

TEST(EuclidEuler, Examples) {
  EXPECT_EQ(euclid_euler(2), Natural(6));
  EXPECT_EQ(euclid_euler(5), Natural(496));
  EXPECT_EQ(euclid_euler(11), std::nullopt);
  EXPECT_EQ(euclid_euler(4), std::nullopt);
  EXPECT_EQ(euclid_euler(13), Natural(33550336));
}

TEST(EuclidEuler, EvenPerfectsAreGenuinelyPerfect) {
  auto list = even_perfects_up_to(Natural("1000000000000000000"));
  ASSERT_EQ(list.size(), 7u);
  for (const auto& e : list) {
    EXPECT_EQ(sigma(factor_complete(e.n)), 2 * e.n);
    EXPECT_EQ(e.mersenne, pow(Natural(2), e.p) - 1);
  }
}

TEST(VanDerPol, SmallCasesAndRange) {
  EXPECT_TRUE(van_der_pol_check(2));
  EXPECT_TRUE(van_der_pol_check(3));
  for (std::uint64_t n = 2; n <= 500; ++n) ASSERT_TRUE(van_der_pol_check(n)) << n;
  EXPECT_THROW(van_der_pol_check(1), PreconditionError);
}

TEST(SumOfTwoSquares, Examples) {
  EXPECT_EQ(sum_of_two_squares(5), (std::pair<std::uint64_t, std::uint64_t>{1, 2}));
  EXPECT_EQ(sum_of_two_squares(13), (std::pair<std::uint64_t, std::uint64_t>{2, 3}));
  EXPECT_EQ(sum_of_two_squares(3), std::nullopt);
  for (std::uint64_t n = 0; n < 5000; ++n) {
    auto r = sum_of_two_squares(n);
    bool exists = false;
    for (std::uint64_t a = 0; a * a <= n && !exists; ++a) {
      for (std::uint64_t b = a; a * a + b * b <= n; ++b) exists = exists || a * a + b * b == n;
    }
    ASSERT_EQ(r.has_value(), exists) << n;
    if (r) {
      EXPECT_LE(r->first, r->second);
      EXPECT_EQ(r->first * r->first + r->second * r->second, n);
    }
  }
}

TEST(Preconditions, AreRejected) {
  EXPECT_THROW(euclid_euler(1), PreconditionError);
  EXPECT_THROW(Factorization({{Natural(4), 1}}), PreconditionError);
  EXPECT_THROW(Factorization({{Natural(3), 0}}), PreconditionError);
}

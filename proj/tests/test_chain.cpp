#include <gtest/gtest.h>

#include <set>

#include "opn/chain_engine.hpp"
#include "oracles.hpp"

using namespace opn;

namespace {

std::vector<ChainExponent> exps(std::initializer_list<int> v) {
  std::vector<ChainExponent> out;
  for (int e : v) out.push_back(e < 0 ? ChainExponent{} : ChainExponent(static_cast<unsigned>(e)));
  return out;
}

ProofTree run(unsigned t, long B, unsigned threads = 1) {
  ChainConfig cfg;
  cfg.t = t;
  cfg.B = B;
  cfg.threads = threads;
  return run_chain(cfg);
}

// I(lambda) * prod over mu of q/(q-1), from scratch.
mpq_class index_inf_oracle(const ChainNode& n) {
  std::vector<std::pair<std::uint64_t, unsigned>> parts;
  for (const auto& pp : n.lambda) parts.emplace_back(pp.prime.get_ui(), pp.exponent);
  mpq_class x = oracle::truncated_product(parts);
  std::vector<std::uint64_t> mu;
  for (const auto& q : n.mu) mu.push_back(q.get_ui());
  x *= oracle::floor_product(mu);
  x.canonicalize();
  return x;
}

}  // namespace

TEST(Eulerian, Examples) {
  EXPECT_EQ(eulerian_exponents(Natural(13), Natural(1'000'000), true), exps({1, 2, 4, -1}));
  EXPECT_EQ(eulerian_exponents(Natural(3), Natural(1'000'000), false), exps({2, 4, 6, 8, 10, -1}));
  EXPECT_EQ(eulerian_exponents(Natural(5), Natural(30), true), exps({1, -1}));
  EXPECT_EQ(eulerian_exponents(Natural(13), Natural(1'000'000), false), exps({2, 4, -1}));
  EXPECT_THROW(eulerian_exponents(Natural(2), Natural(100), true), PreconditionError);
}

TEST(Eulerian, MatchesBruteEnumeration) {
  for (unsigned long p : {3ul, 5ul, 7ul, 13ul, 17ul, 101ul}) {
    for (unsigned long B : {9ul, 30ul, 1000ul, 1'000'000ul}) {
      for (bool open : {false, true}) {
        std::vector<ChainExponent> expect;
        for (unsigned a = 1; a < 64; ++a) {
          if (oracle::pow_z(p, a + 1) > B) break;
          if (a % 2 == 0 || (open && p % 4 == 1 && a % 4 == 1)) expect.emplace_back(a);
        }
        expect.emplace_back(std::nullopt);
        EXPECT_EQ(eulerian_exponents(Natural(p), Natural(B), open), expect) << p << " " << B;
      }
    }
  }
}

TEST(Detect, Examples) {
  ChainConfig cfg;
  cfg.t = 3;
  ChainState four;
  four.lambda = {{3, 2}, {5, 1}, {7, 2}, {11, 2}};
  four.special_fixed = true;
  EXPECT_EQ(detect_contradiction(four, cfg), ChainCode::M1);

  ChainState abundant;
  abundant.lambda = {{3, 2}, {5, 1}, {7, 2}};
  abundant.special_fixed = true;
  EXPECT_EQ(detect_contradiction(abundant, cfg), ChainCode::A);

  ChainState excess;
  excess.lambda = {{3, 2}};
  excess.occurrences[Natural(3)] = 3;
  EXPECT_EQ(detect_contradiction(excess, cfg), ChainCode::M2);

  ChainState twos;
  twos.lambda = {{3, 2}};
  twos.twos = 2;
  EXPECT_EQ(detect_contradiction(twos, cfg), ChainCode::M2);

  ChainState fine;
  fine.lambda = {{3, 2}, {5, 1}};
  fine.special_fixed = true;
  EXPECT_EQ(detect_contradiction(fine, cfg), std::nullopt);
  fine.lambda = {{3, 2}, {5, 1}, {11, 2}};
  EXPECT_EQ(detect_contradiction(fine, cfg), ChainCode::D);
}

TEST(LemmaX, Examples) {
  ChainConfig cfg;
  cfg.t = 3;
  ChainState s;
  s.lambda = {{3, 2}, {5, 1}};
  s.special_fixed = true;
  LemmaXInterval iv = lemma_x_interval(s, cfg);
  EXPECT_EQ(iv.low, Rational(Natural(13), Natural(2)));
  ASSERT_TRUE(iv.high);
  EXPECT_EQ(*iv.high, Rational(Natural(15), Natural(2)));
  // 7 is the only prime in [13/2, 15/2)
  EXPECT_EQ(oracle::primes_between(6, 7), std::vector<std::uint64_t>{7});

  // one more unknown prime widens the top by I/(2 - I)
  cfg.t = 4;
  LemmaXInterval wide = lemma_x_interval(s, cfg);
  const Rational I(Natural(26), Natural(15));
  EXPECT_EQ(*wide.high - *iv.high, I / (Rational(2) - I));
  EXPECT_EQ(wide.low, iv.low);

  cfg.t = 2;
  EXPECT_THROW(lemma_x_interval(s, cfg), PreconditionError);
}

TEST(LemmaX, UnboundedWhenInfiniteIndexReachesTwo) {
  ChainConfig cfg;
  cfg.t = 5;
  ChainState s;
  s.lambda = {{3, 4}};
  s.pending = {Natural(5), Natural(13)};
  // (121/81)(5/4)(13/12) > 2, while the smallest completion 3^4 5 13^2 stays below 2
  LemmaXInterval iv = lemma_x_interval(s, cfg);
  EXPECT_FALSE(iv.high);
  EXPECT_GT(iv.low, Rational(1));
}

TEST(RunChain, TwoPrimes) {
  ProofTree tree = run(2, 1'000'000);
  EXPECT_TRUE(tree.complete);
  EXPECT_TRUE(tree.all_contradicted());
  EXPECT_EQ(tree.count(ChainCode::Witness), 0u);
}

TEST(RunChain, ThreePrimes) {
  ProofTree tree = run(3, 10'000);
  EXPECT_TRUE(tree.complete);
  EXPECT_TRUE(tree.all_contradicted());
  EXPECT_EQ(tree.count(ChainCode::Witness), 0u);
  const std::set<ChainCode> allowed = {ChainCode::A, ChainCode::D, ChainCode::M1, ChainCode::M2,
                                       ChainCode::S, ChainCode::N, ChainCode::Pi};
  for (std::size_t id : tree.leaves()) {
    ASSERT_TRUE(tree.nodes[id].code);
    EXPECT_TRUE(allowed.count(*tree.nodes[id].code)) << to_string(*tree.nodes[id].code);
  }
}

TEST(RunChain, FourPrimesHasNoWitness) {
  ProofTree tree = run(4, 10'000);
  EXPECT_EQ(tree.count(ChainCode::Witness), 0u);
  for (std::size_t id : tree.leaves()) {
    const auto code = tree.nodes[id].code;
    ASSERT_TRUE(code);
    if (!is_contradiction(*code)) {
      EXPECT_TRUE(*code == ChainCode::BLimit || *code == ChainCode::Budget || *code == ChainCode::Unfactored);
      EXPECT_FALSE(tree.complete && tree.all_contradicted());
    }
  }
}

TEST(RunChain, Deterministic) {
  for (unsigned t : {2u, 3u, 4u}) {
    const std::string a = to_json(run(t, 10'000)).dump();
    EXPECT_EQ(a, to_json(run(t, 10'000)).dump());
    EXPECT_EQ(a, to_json(run(t, 10'000, 4)).dump());
  }
}

TEST(RunChain, NodeInvariants) {
  for (unsigned t : {2u, 3u, 4u, 5u}) {
    ProofTree tree = run(t, 10'000, 2);
    for (const auto& n : tree.nodes) {
      std::set<Natural> primes;
      for (const auto& pp : n.lambda) primes.insert(pp.prime);
      for (const auto& q : n.mu) primes.insert(q);
      ASSERT_EQ(primes.size(), n.k) << n.id;

      ASSERT_EQ(n.index_inf.raw(), index_inf_oracle(n)) << n.id;
      if (n.code == ChainCode::A) {
        EXPECT_GT(n.index_bar, Rational(2)) << n.id;
      }
      if (n.code == ChainCode::D) {
        EXPECT_LT(n.index_inf, Rational(2)) << n.id;
        EXPECT_EQ(n.k, t) << n.id;
      }
      if (n.code == ChainCode::M1) {
        EXPECT_GT(n.k, t) << n.id;
      }
      EXPECT_LE(n.index_bar, n.index_inf) << n.id;

      unsigned odd = 0;
      for (const auto& pp : n.lambda) {
        if (pp.exponent % 2 == 1) {
          ++odd;
          EXPECT_EQ(pp.prime % 4, 1);
          EXPECT_EQ(pp.exponent % 4, 1u);
        }
      }
      EXPECT_LE(odd, 1u) << n.id;
    }
  }
}

// An abundant or deficient verdict on fully known exponents agrees with the plain
// product of sigma(p^a)/p^a, computed without the engine.
TEST(RunChain, VerdictsAgreeWithDirectProducts) {
  for (unsigned t : {2u, 3u}) {
    ProofTree tree = run(t, 10'000);
    for (const auto& n : tree.nodes) {
      if (!n.code || !n.mu.empty()) continue;
      std::vector<std::pair<std::uint64_t, unsigned>> parts;
      for (const auto& pp : n.lambda) parts.emplace_back(pp.prime.get_ui(), pp.exponent);
      mpq_class I = oracle::truncated_product(parts);
      if (*n.code == ChainCode::A) {
        EXPECT_GT(I, 2) << n.id;
      }
      if (*n.code == ChainCode::D) {
        EXPECT_LT(I, 2) << n.id;
      }
    }
  }
}

TEST(RunChain, OpeningChainFromThreeToTheSixth) {
  ChainConfig cfg;
  cfg.t = 9;
  cfg.B = Natural("1000000000000");
  cfg.root_exponent = ChainExponent(6u);
  cfg.node_budget = 200;
  ProofTree tree = run_chain(cfg);
  ASSERT_EQ(tree.roots.size(), 1u);
  const std::string text = render_text(tree);
  const auto a = text.find("3^6 -> 1093\n");
  const auto b = text.find("\n  1093 -> 2 * 547\n");
  const auto c = text.find("\n    547^2 -> 3 * 163 * 613\n");
  ASSERT_EQ(a, 0u);
  ASSERT_NE(b, std::string::npos);
  ASSERT_NE(c, std::string::npos);
  EXPECT_LT(b, c);
}

TEST(Render, SingleNode) {
  ProofTree tree;
  ChainNode n;
  n.prime = 3;
  n.exponent = 2u;
  n.sigma_factors = {{13, 1}};
  tree.nodes.push_back(n);
  tree.roots = {0};
  tree.complete = false;
  const std::string text = render_text(tree);
  EXPECT_EQ(text.substr(0, text.find('\n')), "3^2 -> 13");
}

TEST(Render, Annotations) {
  ProofTree tree;
  ChainNode root;
  root.prime = 67;
  root.exponent = 2u;
  root.sigma_factors = {{3, 1}, {7, 2}, {31, 1}};
  root.code = ChainCode::M2;
  root.note = "7xs";
  tree.nodes.push_back(root);
  ChainNode over;
  over.id = 1;
  over.prime = 17;
  over.exponent = std::nullopt;
  over.code = ChainCode::A;
  tree.nodes.push_back(over);
  tree.roots = {0, 1};
  const std::string text = render_text(tree);
  EXPECT_NE(text.find("67^2 -> 3 * 7xs^2 * 31\n"), std::string::npos);
  EXPECT_NE(text.find("17^inf overabundant\n"), std::string::npos);
}

TEST(Render, JsonShape) {
  ProofTree tree = run(3, 10'000);
  auto j = nlohmann::json::parse(render_tree(tree, TreeFormat::Json));
  ASSERT_EQ(j["nodes"].size(), tree.nodes.size());
  for (const auto& n : j["nodes"]) {
    for (const char* key : {"id", "parent", "prime", "exponent", "sigma_factors", "code"}) {
      EXPECT_TRUE(n.contains(key)) << key;
    }
    if (!n["code"].is_null()) {
      EXPECT_TRUE(chain_code_from_string(n["code"].get<std::string>()));
    }
  }
  EXPECT_EQ(j["config"]["t"], 3);
}

TEST(Codes, RoundTrip) {
  for (int i = 0; i <= static_cast<int>(ChainCode::Witness); ++i) {
    auto c = static_cast<ChainCode>(i);
    EXPECT_EQ(chain_code_from_string(to_string(c)), c);
  }
  EXPECT_FALSE(chain_code_from_string("nope"));
  EXPECT_FALSE(is_contradiction(ChainCode::Budget));
  EXPECT_TRUE(is_contradiction(ChainCode::Pi));
}

TEST(Config, Validation) {
  ChainConfig cfg;
  cfg.t = 1;
  EXPECT_THROW(run_chain(cfg), PreconditionError);
  cfg.t = 3;
  cfg.B = 8;
  EXPECT_THROW(run_chain(cfg), PreconditionError);
}

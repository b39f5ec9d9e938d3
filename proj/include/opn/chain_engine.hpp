#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "opn/arith_core.hpp"

namespace opn {

// Exponent of an initial component; nullopt stands for "beyond B".
using ChainExponent = std::optional<unsigned>;

enum class ChainCode { A, D, M1, M2, N, P1, P2, P3, S, Pi, Unfactored, Budget, BLimit, Witness };

inline const char* to_string(ChainCode c) {
  switch (c) {
    case ChainCode::A: return "A";
    case ChainCode::D: return "D";
    case ChainCode::M1: return "M1";
    case ChainCode::M2: return "M2";
    case ChainCode::N: return "N";
    case ChainCode::P1: return "P1";
    case ChainCode::P2: return "P2";
    case ChainCode::P3: return "P3";
    case ChainCode::S: return "S";
    case ChainCode::Pi: return "Pi";
    case ChainCode::Unfactored: return "Unfactored";
    case ChainCode::Budget: return "Budget";
    case ChainCode::BLimit: return "BLimit";
    case ChainCode::Witness: return "Witness";
  }
  return "?";
}

inline std::optional<ChainCode> chain_code_from_string(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(ChainCode::Witness); ++i) {
    auto c = static_cast<ChainCode>(i);
    if (s == to_string(c)) return c;
  }
  return std::nullopt;
}

// Codes that prove the branch impossible, as opposed to leaves the engine gave up on.
inline bool is_contradiction(ChainCode c) {
  switch (c) {
    case ChainCode::Unfactored:
    case ChainCode::Budget:
    case ChainCode::BLimit:
    case ChainCode::Witness:
      return false;
    default:
      return true;
  }
}

// Large-prime floors used by the P checks: at least one prime factor above 10^8,
// two above 10^4 and three above 100.
inline constexpr std::uint64_t kP1Threshold = 100'000'000;
inline constexpr std::uint64_t kP2Threshold = 10'000;
inline constexpr std::uint64_t kP3Threshold = 100;

struct ChainConfig {
  unsigned t = 3;
  Natural B = 1'000'000;
  Natural root_prime = 3;
  std::optional<ChainExponent> root_exponent;  // restrict to a single root
  bool coprime_root = true;                    // include the root_prime^0 tree
  std::uint64_t node_budget = 1'000'000;       // per root
  std::size_t max_interval_primes = 100'000;
  bool large_prime_checks = false;
  unsigned threads = 1;
  FactorBudget factor_budget{};
};

// Even a >= 2 with p^(a+1) <= B, plus a = 1 (mod 4) when p = 1 (mod 4) and the
// special slot is open; always followed by the "beyond B" marker.
inline std::vector<ChainExponent> eulerian_exponents(const Natural& p, const Natural& B, bool special_open) {
  require(p > 2 && is_prime(p), "eulerian_exponents requires an odd prime");
  const bool may_be_special = special_open && p % 4 == 1;
  std::vector<ChainExponent> out;
  Natural power = p * p;  // p^(a+1) for a = 1
  for (unsigned a = 1; power <= B; ++a, power *= p) {
    if (a % 2 == 0 || (may_be_special && a % 4 == 1)) out.emplace_back(a);
  }
  out.emplace_back(std::nullopt);
  return out;
}

struct ChainNode {
  std::size_t id = 0;
  std::optional<std::size_t> parent;
  Natural prime;
  ChainExponent exponent;
  std::vector<PrimePower> sigma_factors;
  std::optional<ChainCode> code;
  std::string note;  // e.g. the prime in excess, or the Lemma X interval
  std::vector<std::size_t> children;

  // Path state after this component, kept so every verdict can be re-checked.
  std::vector<PrimePower> lambda;
  std::vector<Natural> mu;
  unsigned k = 0;
  Rational index_bar;  // I(lambda mu-bar)
  Rational index_inf;  // I(lambda mu^inf)
  std::optional<Natural> special_choice;  // mu prime given the odd exponent in mu-bar
  Natural floor = 0;
};

struct ProofTree {
  ChainConfig config;
  std::vector<ChainNode> nodes;  // preorder
  std::vector<std::size_t> roots;
  bool complete = true;

  std::vector<std::size_t> leaves() const {
    std::vector<std::size_t> out;
    for (const auto& n : nodes) {
      if (n.children.empty()) out.push_back(n.id);
    }
    return out;
  }

  std::size_t count(ChainCode c) const {
    return std::count_if(nodes.begin(), nodes.end(), [c](const ChainNode& n) { return n.code == c; });
  }

  bool all_contradicted() const {
    for (std::size_t id : leaves()) {
      if (!nodes[id].code || !is_contradiction(*nodes[id].code)) return false;
    }
    return true;
  }

  std::vector<std::size_t> path_to(std::size_t id) const {
    std::vector<std::size_t> out{id};
    while (nodes[out.back()].parent) out.push_back(*nodes[out.back()].parent);
    std::reverse(out.begin(), out.end());
    return out;
  }
};

// The part of N = lambda * mu * nu visible along one path.
struct ChainState {
  std::map<Natural, unsigned> lambda;       // initial primes with exact exponent
  std::set<Natural> mu_inf;                 // initial primes beyond B
  std::set<Natural> pending;                // consequent primes not yet initial
  std::map<Natural, unsigned> occurrences;  // times each odd prime arose as a consequent
  std::set<Natural> excluded;               // odd primes known not to divide N
  unsigned twos = 0;                        // total power of 2 contributed by sigma values
  bool special_fixed = false;
  Natural floor = 0;                        // every prime of nu exceeds this
  std::optional<Natural> smaller_than_floor;

  unsigned k() const { return static_cast<unsigned>(lambda.size() + mu_inf.size() + pending.size()); }

  bool known(const Natural& p) const { return lambda.count(p) || mu_inf.count(p) || pending.count(p); }

  std::vector<Natural> mu() const {
    std::vector<Natural> out(mu_inf.begin(), mu_inf.end());
    out.insert(out.end(), pending.begin(), pending.end());
    std::sort(out.begin(), out.end());
    return out;
  }
};

namespace detail {

inline Rational prime_power_index(const Natural& p, unsigned e) {
  return Rational(sigma_prime_power(p, e), pow(p, e));
}

struct MuBar {
  Rational index;
  std::optional<Natural> special;
};

inline MuBar lambda_mu_bar(const ChainState& s, const Natural& B) {
  Rational base(1);
  for (const auto& [p, a] : s.lambda) base *= prime_power_index(p, a);
  const bool special_open = !s.special_fixed;
  Rational best_ratio(1);  // smallest I(special)/I(even) seen so far
  std::optional<Natural> chosen;
  for (const Natural& q : s.mu()) {
    const auto occ_it = s.occurrences.find(q);
    unsigned lo = occ_it == s.occurrences.end() ? 1 : std::max(1u, occ_it->second);
    if (s.mu_inf.count(q)) {
      unsigned b0 = 0;
      for (Natural pw = q; pw <= B; pw *= q) ++b0;  // least b with q^(b+1) > B
      lo = std::max(lo, b0);
    }
    unsigned even = lo % 2 == 0 ? lo : lo + 1;
    Rational even_index = prime_power_index(q, even);
    base *= even_index;
    if (special_open && q % 4 == 1) {
      unsigned odd = lo;
      while (odd % 4 != 1) ++odd;
      Rational ratio = prime_power_index(q, odd) / even_index;
      if (ratio < best_ratio) {
        best_ratio = ratio;
        chosen = q;
      }
    }
  }
  return {base * best_ratio, chosen};
}

inline Rational lambda_mu_inf(const ChainState& s) {
  Rational r(1);
  for (const auto& [p, a] : s.lambda) r *= prime_power_index(p, a);
  for (const Natural& q : s.mu()) r *= Rational(q, q - 1);
  return r;
}

// Contradiction codes in fixed priority order. N is decided during expansion.
inline std::optional<ChainCode> detect(const ChainState& s, const ChainConfig& cfg, const Rational& bar,
                                       const Rational& inf, std::string& note) {
  if (s.twos > 1) {
    note = "2xs";
    return ChainCode::M2;
  }
  for (const auto& [q, m] : s.occurrences) {
    auto it = s.lambda.find(q);
    unsigned allowed = it != s.lambda.end() ? it->second : (s.excluded.count(q) ? 0 : m);
    if (m > allowed) {
      note = q.get_str() + "xs";
      return ChainCode::M2;
    }
  }
  const unsigned k = s.k(), t = cfg.t;
  if (k > t) return ChainCode::M1;
  if (bar > Rational(2)) return ChainCode::A;
  if (k == t && inf < Rational(2)) return ChainCode::D;
  const std::vector<Natural> mu = s.mu();
  if (cfg.large_prime_checks) {
    const unsigned w = t - k;
    auto above = [&](std::uint64_t bound) {
      unsigned c = w;
      for (const auto& [p, a] : s.lambda) c += p > nat(bound);
      for (const auto& q : mu) c += q > nat(bound);
      return c;
    };
    if (above(kP1Threshold) < 1) return ChainCode::P1;
    if (above(kP2Threshold) < 2) return ChainCode::P2;
    if (above(kP3Threshold) < 3) return ChainCode::P3;
  }
  if (s.smaller_than_floor) {
    note = s.smaller_than_floor->get_str() + " < " + s.floor.get_str();
    return ChainCode::S;
  }
  if (k == t && !s.special_fixed &&
      std::none_of(mu.begin(), mu.end(), [](const Natural& q) { return q % 4 == 1; })) {
    return ChainCode::Pi;
  }
  return std::nullopt;
}

class ChainSearch {
 public:
  ChainSearch(const ChainConfig& cfg, std::vector<ChainNode>& out) : cfg_(cfg), out_(out) {}

  void root(const ChainExponent& e) {
    ChainState s;
    s.excluded.insert(2);
    add_node(std::nullopt, s, cfg_.root_prime, e, false);
  }

  bool exhausted() const { return used_ >= cfg_.node_budget; }

 private:
  const ChainConfig& cfg_;
  std::vector<ChainNode>& out_;
  std::uint64_t used_ = 0;

  void add_node(std::optional<std::size_t> parent, ChainState s, const Natural& p, const ChainExponent& e,
                bool from_interval) {
    std::size_t id = out_.size();
    out_.emplace_back();
    out_[id].id = id;
    out_[id].parent = parent;
    out_[id].prime = p;
    out_[id].exponent = e;
    if (parent) out_[*parent].children.push_back(id);

    if (used_ >= cfg_.node_budget) {
      out_[id].code = ChainCode::Budget;
      snapshot(out_[id], s);
      return;
    }
    ++used_;

    std::optional<ChainCode> code = apply(out_[id], s, p, e, from_interval);
    snapshot(out_[id], s);
    if (!code) code = detail::detect(s, cfg_, out_[id].index_bar, out_[id].index_inf, out_[id].note);
    if (code) {
      out_[id].code = code;
      return;
    }
    expand(id, s);
  }

  // Folds the component p^e into the state; returns Unfactored if sigma(p^e) resisted.
  std::optional<ChainCode> apply(ChainNode& node, ChainState& s, const Natural& p, const ChainExponent& e,
                                 bool from_interval) {
    s.pending.erase(p);
    if (from_interval) s.floor = p;
    if (!e) {
      s.mu_inf.insert(p);
      return std::nullopt;
    }
    if (*e == 0) {
      s.excluded.insert(p);
      return std::nullopt;
    }
    s.lambda[p] = *e;
    if (*e % 2 == 1) s.special_fixed = true;
    FactorResult f = factor_sigma_prime_power(p, *e, cfg_.factor_budget);
    node.sigma_factors = f.primes;
    if (!f.complete()) {
      node.note = "unsplit " + f.unsplit.front().get_str();
      return ChainCode::Unfactored;
    }
    for (const auto& [q, m] : f.primes) {
      if (q == 2) {
        s.twos += m;
        continue;
      }
      if (!s.known(q) && !s.excluded.count(q)) {
        s.pending.insert(q);
        if (q < s.floor && !s.smaller_than_floor) s.smaller_than_floor = q;
      }
      s.occurrences[q] += m;
    }
    return std::nullopt;
  }

  void snapshot(ChainNode& node, const ChainState& s) {
    for (const auto& [p, a] : s.lambda) node.lambda.push_back({p, a});
    node.mu = s.mu();
    node.k = s.k();
    MuBar bar = lambda_mu_bar(s, cfg_.B);
    node.index_bar = bar.index;
    node.special_choice = bar.special;
    node.index_inf = lambda_mu_inf(s);
    node.floor = s.floor;
  }

  void expand(std::size_t id, const ChainState& s) {
    if (!s.pending.empty()) {
      const Natural q = *s.pending.begin();
      for (const auto& e : eulerian_exponents(q, cfg_.B, !s.special_fixed)) add_node(id, s, q, e, false);
      return;
    }
    const Rational two(2);
    const Rational bar = out_[id].index_bar, inf = out_[id].index_inf;
    if (s.k() == cfg_.t) {
      if (s.mu_inf.empty() && bar == two) {
        out_[id].code = ChainCode::Witness;
      } else {
        out_[id].code = ChainCode::BLimit;
      }
      return;
    }
    // Lemma X: bracket the smallest prime of nu.
    const unsigned w = cfg_.t - s.k();
    if (bar == two) {
      out_[id].note = "empty interval";
      out_[id].code = ChainCode::N;
      return;
    }
    if (inf >= two) {
      out_[id].note = "upper bound unavailable";
      out_[id].code = ChainCode::BLimit;
      return;
    }
    const Rational low = bar / (two - bar);
    const Rational high = (two + inf * Rational(w - 1)) / (two - inf);
    out_[id].note = "[" + low.str() + ", " + high.str() + ")";
    Natural start = low.num() / low.den();  // floor(low); primes below low are skipped below
    if (start < s.floor + 1) start = s.floor + 1;
    if (start < 3) start = 3;
    std::vector<Natural> candidates;
    for (Natural r = is_prime(start) ? start : next_prime(start); Rational(r) < high; r = next_prime(r)) {
      if (Rational(r) < low || s.known(r) || s.excluded.count(r)) continue;
      if (candidates.size() == cfg_.max_interval_primes) {
        out_[id].code = ChainCode::BLimit;
        return;
      }
      candidates.push_back(r);
    }
    if (candidates.empty()) {
      out_[id].code = ChainCode::N;
      return;
    }
    for (const Natural& r : candidates) {
      for (const auto& e : eulerian_exponents(r, cfg_.B, !s.special_fixed)) add_node(id, s, r, e, true);
    }
  }
};

inline std::vector<ChainExponent> root_exponents(const ChainConfig& cfg) {
  if (cfg.root_exponent) return {*cfg.root_exponent};
  std::vector<ChainExponent> out;
  if (cfg.coprime_root) out.emplace_back(0u);
  for (const auto& e : eulerian_exponents(cfg.root_prime, cfg.B, true)) out.push_back(e);
  return out;
}

}  // namespace detail

inline void validate(const ChainConfig& cfg) {
  require(cfg.t >= 2, "chain requires t >= 2");
  require(cfg.B >= 9, "chain requires B >= 9");
  require(cfg.root_prime > 2 && is_prime(cfg.root_prime), "root prime must be an odd prime");
  require(cfg.node_budget >= 1, "node budget must be positive");
  if (cfg.root_exponent && *cfg.root_exponent) {
    unsigned a = **cfg.root_exponent;
    bool eulerian = a == 0 || a % 2 == 0 || (a % 4 == 1 && cfg.root_prime % 4 == 1);
    require(eulerian, "root exponent is not Eulerian");
    require(pow(cfg.root_prime, a + 1) <= cfg.B, "root exponent exceeds B");
  }
}

// One tree per root exponent. Roots are independent, so they can be searched on
// separate threads; assembly is in root order, which keeps the output identical
// for every thread count.
inline ProofTree run_chain(const ChainConfig& cfg) {
  validate(cfg);
  const auto roots = detail::root_exponents(cfg);
  std::vector<std::vector<ChainNode>> parts(roots.size());
  std::vector<char> exhausted(roots.size(), 0);
  auto work = [&](std::size_t i) {
    detail::ChainSearch search(cfg, parts[i]);
    search.root(roots[i]);
    exhausted[i] = search.exhausted();
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(roots.size())));
  if (threads == 1) {
    for (std::size_t i = 0; i < roots.size(); ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < roots.size(); i += threads) work(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  ProofTree tree;
  tree.config = cfg;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::size_t offset = tree.nodes.size();
    tree.roots.push_back(offset);
    for (auto& n : parts[i]) {
      n.id += offset;
      if (n.parent) *n.parent += offset;
      for (auto& c : n.children) c += offset;
      tree.nodes.push_back(std::move(n));
    }
  }
  for (const auto& n : tree.nodes) {
    if (n.code && (*n.code == ChainCode::Budget || *n.code == ChainCode::Unfactored)) tree.complete = false;
  }
  return tree;
}

// ---------------------------------------------------------------------------
// Rendering

inline std::string exponent_str(const ChainExponent& e) { return e ? std::to_string(*e) : "inf"; }

inline std::string component_str(const Natural& p, const ChainExponent& e) {
  if (e && *e == 1) return p.get_str();
  return p.get_str() + "^" + exponent_str(e);
}

namespace detail {

inline std::string annotate(const ChainNode& n) {
  std::string factors;
  const std::string excess = n.code == ChainCode::M2 ? n.note : "";
  bool marked = false;
  for (const auto& pp : n.sigma_factors) {
    if (!factors.empty()) factors += " * ";
    factors += pp.prime.get_str();
    if (excess == pp.prime.get_str() + "xs") {
      factors += "xs";
      marked = true;
    }
    if (pp.exponent > 1) factors += "^" + std::to_string(pp.exponent);
  }
  std::string line = component_str(n.prime, n.exponent);
  if (n.exponent && *n.exponent > 0) line += " -> " + (factors.empty() ? std::string("1") : factors);
  if (!n.code) return line;
  switch (*n.code) {
    case ChainCode::A: return line + " overabundant";
    case ChainCode::M2: return marked ? line : line + " (" + excess + ")";
    case ChainCode::D: return line + " deficient";
    case ChainCode::M1: return line + " too many primes";
    case ChainCode::N: return line + " no new prime in " + n.note;
    case ChainCode::S: return line + " smaller prime " + n.note;
    case ChainCode::Pi: return line + " no special prime";
    case ChainCode::P1:
    case ChainCode::P2:
    case ChainCode::P3: return line + " " + to_string(*n.code);
    case ChainCode::Witness: return line + " PERFECT";
    case ChainCode::BLimit: return line + " B-limited";
    case ChainCode::Budget: return line + " budget";
    case ChainCode::Unfactored: return line + " unfactored";
  }
  return line;
}

}  // namespace detail

inline std::string tree_summary(const ProofTree& tree) {
  std::ostringstream os;
  if (tree.count(ChainCode::Witness)) {
    os << tree.count(ChainCode::Witness) << " perfect witness(es) found";
  } else if (tree.complete && tree.all_contradicted()) {
    os << "all branches contradicted";
  } else {
    os << "open leaves remain: " << tree.count(ChainCode::BLimit) << " B-limited, " << tree.count(ChainCode::Budget)
       << " budget, " << tree.count(ChainCode::Unfactored) << " unfactored";
  }
  os << " (" << tree.nodes.size() << " nodes)";
  return os.str();
}

inline std::string render_text(const ProofTree& tree) {
  std::string out;
  std::vector<unsigned> depth(tree.nodes.size(), 0);
  for (const auto& n : tree.nodes) {
    if (n.parent) depth[n.id] = depth[*n.parent] + 1;
    out += std::string(2 * depth[n.id], ' ') + detail::annotate(n) + "\n";
  }
  out += tree_summary(tree) + "\n";
  return out;
}

inline nlohmann::ordered_json to_json(const ChainConfig& c) {
  nlohmann::ordered_json j;
  j["t"] = c.t;
  j["B"] = c.B.get_str();
  j["root_prime"] = c.root_prime.get_str();
  j["root_exponent"] = c.root_exponent ? nlohmann::ordered_json(exponent_str(*c.root_exponent)) : nullptr;
  j["coprime_root"] = c.coprime_root;
  j["node_budget"] = c.node_budget;
  j["large_prime_checks"] = c.large_prime_checks;
  return j;
}

inline nlohmann::ordered_json to_json(const ProofTree& tree) {
  auto factors = [](const std::vector<PrimePower>& v) {
    auto a = nlohmann::ordered_json::array();
    for (const auto& pp : v) a.push_back({pp.prime.get_str(), pp.exponent});
    return a;
  };
  nlohmann::ordered_json j;
  j["config"] = to_json(tree.config);
  j["complete"] = tree.complete;
  j["summary"] = tree_summary(tree);
  auto nodes = nlohmann::ordered_json::array();
  for (const auto& n : tree.nodes) {
    nlohmann::ordered_json o;
    o["id"] = n.id;
    o["parent"] = n.parent ? nlohmann::ordered_json(*n.parent) : nullptr;
    o["prime"] = n.prime.get_str();
    o["exponent"] = n.exponent ? nlohmann::ordered_json(*n.exponent) : nlohmann::ordered_json("inf");
    o["sigma_factors"] = factors(n.sigma_factors);
    o["code"] = n.code ? nlohmann::ordered_json(to_string(*n.code)) : nullptr;
    o["note"] = n.note;
    o["lambda"] = factors(n.lambda);
    auto mu = nlohmann::ordered_json::array();
    for (const auto& q : n.mu) mu.push_back(q.get_str());
    o["mu"] = mu;
    o["k"] = n.k;
    o["index_bar"] = n.index_bar.str();
    o["index_inf"] = n.index_inf.str();
    o["special_choice"] = n.special_choice ? nlohmann::ordered_json(n.special_choice->get_str()) : nullptr;
    o["floor"] = n.floor.get_str();
    nodes.push_back(std::move(o));
  }
  j["nodes"] = std::move(nodes);
  return j;
}

enum class TreeFormat { Text, Json };

inline std::string render_tree(const ProofTree& tree, TreeFormat format) {
  if (format == TreeFormat::Json) return to_json(tree).dump(2) + "\n";
  return render_text(tree);
}

inline std::optional<ChainCode> detect_contradiction(const ChainState& s, const ChainConfig& cfg) {
  std::string note;
  return detail::detect(s, cfg, detail::lambda_mu_bar(s, cfg.B).index, detail::lambda_mu_inf(s), note);
}

// Lemma X bracket for the smallest prime not yet seen: [low, high), high absent when
// I(lambda mu^inf) >= 2.
struct LemmaXInterval {
  Rational low;
  std::optional<Rational> high;
};

inline LemmaXInterval lemma_x_interval(const ChainState& s, const ChainConfig& cfg) {
  const unsigned k = s.k();
  require(k < cfg.t, "lemma_x_interval requires w >= 1");
  const unsigned w = cfg.t - k;
  const Rational two(2);
  Rational bar = detail::lambda_mu_bar(s, cfg.B).index;
  Rational inf = detail::lambda_mu_inf(s);
  require(bar < two, "lemma_x_interval requires I(lambda mu-bar) < 2");
  LemmaXInterval out{bar / (two - bar), std::nullopt};
  if (inf < two) out.high = (two + inf * Rational(w - 1)) / (two - inf);
  return out;
}

}  // namespace opn

#pragma once

#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "opn/abundancy.hpp"
#include "opn/bounds.hpp"
#include "opn/chain_engine.hpp"
#include "opn/components.hpp"
#include "opn/congruence.hpp"

namespace opn::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitUsage = 64;

struct Options {
  std::string format = "text";
  int digits = -1;
  std::uint64_t budget = 0;  // 0: module default
  unsigned depth = 0;
  std::string B;
  unsigned threads = 1;
  std::uint64_t seed = 0x6f706e;
};

inline Json to_json(const Rational& r) { return r.str(); }

inline Json to_json(const Factorization& f) {
  Json a = Json::array();
  for (const auto& pp : f.parts()) a.push_back({pp.prime.get_str(), pp.exponent});
  return a;
}

inline Json to_json(const ExpForm& e) {
  return {{"base", e.base.get_str()}, {"exp_num", e.num.get_str()}, {"exp_den", e.den.get_str()}};
}

inline Json to_json(const BoundsTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json upper = std::holds_alternative<Natural>(r.upper) ? Json(std::get<Natural>(r.upper).get_str())
                                                          : to_json(std::get<ExpForm>(r.upper));
    rows.push_back({{"position", r.position}, {"lower", r.lower.get_str()}, {"upper", upper}, {"source", r.upper_source}});
  }
  return {{"t", t.t}, {"rows", rows}};
}

inline Json to_json(const FloorTest& f) {
  Json floors = Json::array();
  for (const auto& p : f.floors) floors.push_back(p.get_str());
  return {{"floors", floors}, {"product", f.product.str()}, {"contradicted", f.contradicted}};
}

class Runner {
 public:
  Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  bool json() const { return o_.format == "json"; }

  // Rational as "a/b", plus a rounded decimal when --digits was given.
  std::string frac(const Rational& r) const {
    if (o_.digits < 0) return r.str();
    return r.str() + " = " + r.decimal(static_cast<unsigned>(o_.digits));
  }

  void emit(const Json& j, const std::string& text) const {
    if (json()) {
      out_ << j.dump(2) << "\n";
    } else {
      out_ << text;
      if (!text.empty() && text.back() != '\n') out_ << "\n";
    }
  }

  FactorBudget factor_budget() const {
    FactorBudget b;
    b.seed = o_.seed;
    return b;
  }

  void sigma_cmd(const std::string& n) {
    Natural s = sigma(factor_complete(parse_integer(n), factor_budget()));
    emit({{"n", parse_integer(n).get_str()}, {"sigma", s.get_str()}}, s.get_str());
  }

  void classical_cmd(const std::string& n) {
    Natural v = parse_integer(n);
    require(sgn(v) > 0, "n must be positive");
    ClassicalValues c = classical(factor_complete(v, factor_budget()));
    Json j{{"n", v.get_str()},         {"d", c.d.get_str()},  {"sigma", c.sigma.get_str()},
           {"phi", c.phi.get_str()},   {"omega", c.omega},    {"big_omega", c.big_omega}};
    std::ostringstream os;
    os << "d = " << c.d << "\nsigma = " << c.sigma << "\nphi = " << c.phi << "\nomega = " << c.omega
       << "\nOmega = " << c.big_omega << "\n";
    emit(j, os.str());
  }

  void factor_cmd(const std::string& n) {
    Natural v = parse_integer(n);
    FactorResult r = factor(v, factor_budget());
    Json primes = Json::array();
    for (const auto& pp : r.primes) primes.push_back({pp.prime.get_str(), pp.exponent});
    Json unsplit = Json::array();
    for (const auto& u : r.unsplit) unsplit.push_back(u.get_str());
    std::string text = v.get_str() + " = " + Factorization::trusted(r.primes).str();
    for (const auto& u : r.unsplit) text += " * [" + u.get_str() + "]";
    emit({{"n", v.get_str()}, {"primes", primes}, {"unsplit", unsplit}, {"complete", r.complete()}}, text);
  }

  void abundancy_cmd(const std::string& n) {
    Factorization f = factor_complete(parse_integer(n), factor_budget());
    Rational idx = abundancy_index(f);
    emit({{"n", f.value().get_str()}, {"index", idx.str()}, {"class", to_string(classify(f))}},
         "I(" + f.value().get_str() + ") = " + frac(idx) + " (" + to_string(classify(f)) + ")");
  }

  LudwickConfig ludwick_config() const {
    LudwickConfig c;
    if (o_.budget) c.node_budget = o_.budget;
    if (o_.depth) c.max_depth = o_.depth;
    c.factor_budget.seed = o_.seed;
    return c;
  }

  void classify_fraction_cmd(const std::string& ab) {
    Rational r = Rational::parse(ab);
    IndexStatus s = classify_fraction(r.num(), r.den(), ludwick_config());
    const char* kind = s.kind == IndexKind::Index ? "index" : s.kind == IndexKind::Outlaw ? "outlaw" : "unknown";
    std::string text = r.str() + ": " + kind + " (" + s.criterion + ")";
    if (s.kind == IndexKind::Index) text += ", witness " + s.witness.get_str();
    emit({{"fraction", r.str()},
          {"kind", kind},
          {"criterion", s.criterion},
          {"witness", s.kind == IndexKind::Index ? Json(s.witness.get_str()) : Json(nullptr)}},
         text);
  }

  void solitary_cmd(const std::string& n, std::uint64_t limit) {
    SolitaryStatus s = solitary_status(parse_integer(n), limit);
    const char* kind = s.kind == SolitaryKind::Solitary  ? "solitary"
                       : s.kind == SolitaryKind::Friendly ? "friendly"
                                                          : "unknown";
    std::string text = parse_integer(n).get_str() + ": " + kind;
    if (!s.criterion.empty()) text += " (" + s.criterion + ")";
    if (s.kind == SolitaryKind::Friendly) text += ", partner " + s.partner.get_str();
    emit({{"n", parse_integer(n).get_str()},
          {"kind", kind},
          {"criterion", s.criterion},
          {"partner", s.kind == SolitaryKind::Friendly ? Json(s.partner.get_str()) : Json(nullptr)}},
         text);
  }

  void friendly_cmd(const std::string& limit) {
    auto pairs = friendly_search(to_u64(parse_integer(limit)));
    Json a = Json::array();
    std::string text;
    for (const auto& p : pairs) {
      a.push_back({{"a", p.a}, {"b", p.b}, {"index", p.index.str()}});
      text += std::to_string(p.a) + " " + std::to_string(p.b) + " " + p.index.str() + "\n";
    }
    if (pairs.empty()) text = "no friendly pairs\n";
    emit({{"limit", parse_integer(limit).get_str()}, {"pairs", a}}, text);
  }

  void solve_index_cmd(const std::string& ab, bool full_trace) {
    Rational r = Rational::parse(ab);
    LudwickResult res = ludwick_solve(r.num(), r.den(), ludwick_config());
    const auto& nodes = res.trace.nodes;
    auto describe = [&](int id) {
      std::vector<int> path;
      for (int i = id; i > 0; i = nodes[i].parent) path.push_back(i);
      std::string s = nodes[0].target.str();
      for (auto it = path.rbegin(); it != path.rend(); ++it) {
        const auto& n = nodes[*it];
        s += " -> " + n.prime.get_str() + (n.exponent > 1 ? "^" + std::to_string(n.exponent) : "") + ": " +
             n.target.str();
      }
      return s;
    };
    Json sols = Json::array();
    std::string text;
    for (const auto& n : res.solutions) {
      std::string path = r.str();
      Json steps = Json::array();
      for (const auto& st : res.paths.at(n)) {
        path += " -> " + st.prime.get_str() + (st.exponent > 1 ? "^" + std::to_string(st.exponent) : "") + ": " +
                st.target.str();
        steps.push_back({{"prime", st.prime.get_str()}, {"exponent", st.exponent}, {"target", st.target.str()}});
      }
      sols.push_back({{"n", n.get_str()}, {"trace", steps}});
      text += n.get_str() + " = " + factor_complete(n).str() + "\n  " + path + "\n";
    }
    if (res.solutions.empty()) text += "no solution found\n";
    Json closed = Json::array();
    if (full_trace) {
      text += "closed branches:\n";
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& n = nodes[i];
        if (n.outcome == LudwickOutcome::Expanded) continue;
        std::string line = describe(static_cast<int>(i)) + "  [" + to_string(n.outcome) +
                           (n.reason.empty() ? "" : ": " + n.reason) + "]";
        text += "  " + line + "\n";
        closed.push_back({{"outcome", to_string(n.outcome)}, {"reason", n.reason}, {"path", line}});
      }
    }
    text += "nodes " + std::to_string(res.nodes_used) + (res.trace.exhaustive ? ", exhaustive" : "") + "\n";
    emit({{"target", r.str()},
          {"solutions", sols},
          {"exhaustive", res.trace.exhaustive},
          {"nodes_used", res.nodes_used},
          {"closed", closed}},
         text);
  }

  void opn_target_cmd(const std::string& p, const std::string& alpha) {
    Rational t = opn_equivalent_target(parse_integer(p), parse_integer(alpha));
    emit({{"p", p}, {"alpha", alpha}, {"target", t.str()}}, frac(t));
  }

  void congruence_cmd(const std::string& which, const std::vector<std::string>& args) {
    if (which == "crt") {
      std::vector<Congruence> cs;
      for (const auto& a : args) {
        auto colon = a.find(':');
        require(colon != std::string::npos, "congruences are written residue:modulus");
        cs.emplace_back(parse_integer(a.substr(0, colon)), parse_integer(a.substr(colon + 1)));
      }
      auto r = crt_solve(cs);
      emit({{"solution", r ? Json{{"residue", r->residue.get_str()}, {"modulus", r->modulus.get_str()}} : Json(nullptr)}},
           r ? r->str() : "no solution");
      return;
    }
    require(args.size() == 1, which + " takes a single odd integer");
    std::uint64_t n = to_u64(parse_integer(args.front()));
    bool ok = which == "touchard" ? touchard_filter(n) : roberts_filter(n);
    emit({{"n", n}, {"filter", which}, {"passes", ok}}, std::to_string(n) + (ok ? " passes " : " fails ") + which);
  }

  void sieve_cmd(const std::string& limit) {
    SieveReport r = opn_sieve(to_u64(parse_integer(limit)), o_.threads);
    Json stages = Json::array();
    std::ostringstream os;
    for (const auto& s : r.stage_counts) {
      stages.push_back({{"stage", s.name}, {"count", s.count}});
      os << std::left << std::setw(16) << s.name << s.count << "\n";
    }
    if (r.found.empty()) os << "no odd perfect number <= " << r.limit << "\n";
    for (auto n : r.found) os << "found " << n << "\n";
    emit({{"limit", r.limit}, {"stages", stages}, {"found", r.found}}, os.str());
  }

  void bounds_cmd(const std::string& which, const std::vector<std::string>& args) {
    auto arg = [&](std::size_t i) {
      require(i < args.size(), "bounds " + which + ": missing argument");
      return parse_integer(args[i]);
    };
    auto small = [&](std::size_t i) {
      Natural v = arg(i);
      require(v.fits_uint_p(), "argument too large");
      return static_cast<unsigned>(v.get_ui());
    };
    if (which == "omega-table") {
      BoundsTable t = nine_factor_table();
      std::ostringstream os;
      for (const auto& r : t.rows) {
        std::string upper = std::holds_alternative<Natural>(r.upper)
                                ? "<= " + std::get<Natural>(r.upper).get_str()
                                : "<  " + std::get<ExpForm>(r.upper).str();
        os << "q" << r.position << "  " << std::right << std::setw(9) << r.lower.get_str() << " <= q" << r.position
           << " " << std::left << std::setw(16) << upper << "  " << r.upper_source << "\n";
      }
      emit(to_json(t), os.str());
    } else if (which == "floor-contradiction") {
      FloorTest f = omega_floor_contradiction(arg(0), small(1));
      emit(to_json(f), "product " + frac(f.product) + (f.contradicted ? " < 2: contradiction" : " >= 2: no contradiction"));
    } else if (which == "grun") {
      Natural g = grun_bound(small(0));
      emit({{"t", small(0)}, {"q1_max", g.get_str()}}, g.get_str());
    } else if (which == "kishore") {
      Natural k = kishore_bound(small(0), small(1));
      emit({{"i", small(0)}, {"t", small(1)}, {"q_max", k.get_str()}}, k.get_str());
    } else if (which == "size") {
      if (args.empty()) {
        unsigned t = size_threshold();
        emit({{"threshold", t}}, "omega(N) >= " + std::to_string(t));
        return;
      }
      SizeBounds s = size_bounds(small(0));
      emit({{"lower", s.lower.get_str()}, {"upper", to_json(s.upper)}, {"consistent", s.consistent}},
           "10^300 < N < " + s.upper.str() + (s.consistent ? "" : ": impossible"));
    } else if (which == "product") {
      std::vector<Natural> ps;
      for (std::size_t i = 0; i < args.size(); ++i) ps.push_back(arg(i));
      Rational r = index_product_upper(ps);
      emit({{"product", r.str()}, {"below_two", r < Rational(2)}}, frac(r));
    } else if (which == "truncated") {
      std::vector<ComponentFloor> cs;
      for (const auto& a : args) {
        auto caret = a.find('^');
        require(caret != std::string::npos, "components are written p^beta");
        cs.push_back({parse_integer(a.substr(0, caret)), static_cast<unsigned>(parse_integer(a.substr(caret + 1)).get_ui())});
      }
      Rational r = truncated_index_lower(cs);
      emit({{"product", r.str()}, {"above_two", r > Rational(2)}}, frac(r));
    } else {
      throw PreconditionError("unknown bounds query " + which);
    }
  }

  void chain_cmd(unsigned omega, const std::string& root_exponent, bool large_primes) {
    ChainConfig c;
    c.t = omega;
    if (!o_.B.empty()) c.B = parse_integer(o_.B);
    if (o_.budget) c.node_budget = o_.budget;
    c.threads = o_.threads;
    c.large_prime_checks = large_primes;
    c.factor_budget.seed = o_.seed;
    if (!root_exponent.empty()) {
      c.root_exponent = root_exponent == "inf" ? ChainExponent{} : ChainExponent(parse_integer(root_exponent).get_ui());
    }
    out_ << render_tree(run_chain(c), json() ? TreeFormat::Json : TreeFormat::Text);
  }

  void components_cmd(const std::string& which, const std::vector<std::string>& args) {
    auto arg = [&](std::size_t i) {
      require(i < args.size(), "components " + which + ": missing argument");
      return parse_integer(args[i]);
    };
    if (which == "ratios") {
      ComponentRatios r = component_ratios(arg(0), static_cast<unsigned>(arg(1).get_ui()), arg(2));
      Json j{{"rho1", r.rho1.str()}, {"rho2", r.rho2.str()}, {"rho3", r.rho3.str()}, {"mu1", r.mu1.str()},
             {"mu2", r.mu2.str()},   {"mu3", r.mu3.str()},   {"mu4", r.mu4.str()}};
      std::string text = "rho1 = " + frac(r.rho1) + "\nrho2 = " + frac(r.rho2) + "\nrho3 = " + frac(r.rho3) +
                         "\nmu1 = " + frac(r.mu1) + "\nmu2 = " + frac(r.mu2) + "\nmu3 = " + frac(r.mu3) +
                         "\nmu4 = " + frac(r.mu4) + "\n";
      emit(j, text);
    } else if (which == "trichotomy") {
      TrichotomyResult t = trichotomy(arg(0), static_cast<unsigned>(arg(1).get_ui()), arg(2));
      Json hyp = Json::array();
      std::string text = std::string(to_string(t.which));
      if (t.which != TrichotomyCase::Inconsistent) {
        text += ": " + t.implied + (t.implied_holds ? " holds" : " fails");
      }
      for (const auto& h : t.hypotheses) {
        hyp.push_back({{"name", h.name}, {"held", h.held}});
        text += "\n  hypothesis " + h.name + (h.held ? " held" : " not met");
      }
      emit({{"case", to_string(t.which)}, {"implied", t.implied}, {"implied_holds", t.implied_holds}, {"hypotheses", hyp}},
           text);
    } else if (which == "two-thirds") {
      Factorization f = factor_complete(arg(0));
      TwoThirdsReport r = two_thirds_filter(f);
      Json v = Json::array();
      std::string text;
      for (const auto& x : r.verdicts) {
        std::string comp = x.component.prime.get_str() + "^" + std::to_string(x.component.exponent);
        v.push_back({{"component", comp}, {"sigma", x.sigma.get_str()}, {"bound", x.bound.str()}, {"holds", x.holds}});
        text += comp + ": sigma " + x.sigma.get_str() + " vs " + frac(x.bound) + (x.holds ? " ok" : " fails") + "\n";
      }
      text += std::string(r.overall ? "passes" : "rejected") + "; corollary " + r.corollary_lhs.str() + " <= " +
              r.corollary_rhs.str() + (r.corollary_holds ? " holds" : " fails") + "\n";
      emit({{"verdicts", v},
            {"overall", r.overall},
            {"r", r.r},
            {"corollary_lhs", r.corollary_lhs.str()},
            {"corollary_rhs", r.corollary_rhs.str()},
            {"corollary_holds", r.corollary_holds}},
           text);
    } else if (which == "witness") {
      SurjectivityWitness w = non_surjectivity_witness(arg(0), arg(1));
      emit({{"X0", w.X0.str()},
            {"Y0", w.Y0.str()},
            {"x_in_range", w.x_in_range},
            {"y_in_range", w.y_in_range},
            {"sum_in_range", w.sum_in_range},
            {"not_prime_power_index", w.not_prime_power_index}},
           "X0 = " + frac(w.X0) + "\nY0 = " + frac(w.Y0) + "\nregion " +
               (w.x_in_range && w.y_in_range && w.sum_in_range ? "certified" : "NOT certified") +
               (w.not_prime_power_index ? ", X0 not a prime-power index" : "") + "\n");
    } else {
      throw PreconditionError("unknown components query " + which);
    }
  }

  void verify_cmd(const std::string& which, const std::string& arg) {
    std::uint64_t n = to_u64(parse_integer(arg));
    if (which == "van-der-pol") {
      bool ok = van_der_pol_check(n);
      emit({{"n", n}, {"holds", ok}}, std::string("van der Pol identity ") + (ok ? "holds" : "FAILS") + " at " + arg);
    } else if (which == "consecutive") {
      bool ok = consecutive_perfect_check(n, o_.threads);
      emit({{"limit", n}, {"no_consecutive", ok}},
           ok ? "no two consecutive perfect numbers <= " + std::to_string(n) : "consecutive perfect numbers found");
    } else if (which == "even-perfect-props") {
      Json a = Json::array();
      std::string text;
      for (const auto& e : even_perfects_up_to(nat(n))) {
        EvenPerfectProperties p = even_perfect_properties(e);
        a.push_back({{"n", e.n.get_str()},
                     {"ends_in_6_or_8", p.ends_in_6_or_8},
                     {"triangular", p.triangular},
                     {"digital_root_one", p.digital_root_one},
                     {"binary_shape", p.binary_shape}});
        text += e.n.get_str() + ": " + (p.ends_in_6_or_8 && p.triangular && p.digital_root_one && p.binary_shape
                                            ? "all properties hold"
                                            : "property FAILS") +
                "\n";
      }
      emit({{"limit", n}, {"perfects", a}}, text);
    } else {
      throw PreconditionError("unknown verify query " + which);
    }
  }

 private:
  const Options& o_;
  std::ostream& out_;
};

// Parses argv and runs one verb. Returns the process exit code.
inline int dispatch(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Exact-arithmetic toolkit for perfect numbers and abundancy indices", "opn"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file overriding the defaults");
  Options o;
  app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--digits", o.digits, "render decimals with this many digits");
  app.add_option("--budget", o.budget, "node budget for searches");
  app.add_option("--depth", o.depth, "depth limit for solve-index");
  app.add_option("--B", o.B, "exponent ceiling for chain");
  app.add_option("--threads", o.threads, "worker threads");
  app.add_option("--seed", o.seed, "seed for Pollard rho");

  Runner run(o, out);
  std::function<void()> action;
  std::string n1, n2, n3;
  std::vector<std::string> rest;
  std::uint64_t limit = 100'000;
  bool full_trace = false, large_primes = false;
  unsigned omega = 3;
  std::string root_exponent;

  auto verb = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  auto* c = verb("sigma", "sum of divisors");
  c->add_option("n", n1)->required();
  c->callback([&] { action = [&] { run.sigma_cmd(n1); }; });

  c = verb("classical", "d, sigma, phi, omega, Omega");
  c->add_option("n", n1)->required();
  c->callback([&] { action = [&] { run.classical_cmd(n1); }; });

  c = verb("factor", "prime factorization");
  c->add_option("n", n1)->required();
  c->callback([&] { action = [&] { run.factor_cmd(n1); }; });

  c = verb("abundancy", "abundancy index sigma(n)/n");
  c->add_option("n", n1)->required();
  c->callback([&] { action = [&] { run.abundancy_cmd(n1); }; });

  c = verb("classify-fraction", "is a/b an abundancy index?");
  c->add_option("fraction", n1)->required();
  c->callback([&] { action = [&] { run.classify_fraction_cmd(n1); }; });

  c = verb("solitary", "solitary or friendly");
  c->add_option("n", n1)->required();
  c->add_option("--limit", limit, "partner search limit");
  c->callback([&] { action = [&] { run.solitary_cmd(n1, limit); }; });

  c = verb("friendly", "friendly pairs up to a limit");
  c->add_option("limit", n1)->required();
  c->callback([&] { action = [&] { run.friendly_cmd(n1); }; });

  c = verb("solve-index", "solve I(n) = a/b");
  c->add_option("fraction", n1)->required();
  c->add_flag("--full-trace", full_trace, "print every closed branch");
  c->callback([&] { action = [&] { run.solve_index_cmd(n1, full_trace); }; });

  c = verb("opn-target", "index the m^2 part must reach for p^alpha");
  c->add_option("p", n1)->required();
  c->add_option("alpha", n2)->required();
  c->callback([&] { action = [&] { run.opn_target_cmd(n1, n2); }; });

  c = verb("congruence", "touchard | roberts | crt");
  c->add_option("query", n1)->required()->check(CLI::IsMember({"touchard", "roberts", "crt"}));
  c->add_option("args", rest)->required();
  c->callback([&] { action = [&] { run.congruence_cmd(n1, rest); }; });

  c = verb("sieve", "odd perfect number sieve");
  c->add_option("limit", n1)->required();
  c->callback([&] { action = [&] { run.sieve_cmd(n1); }; });

  c = verb("bounds", "omega-table | floor-contradiction | grun | kishore | size | product | truncated");
  c->add_option("query", n1)->required();
  c->add_option("args", rest);
  c->callback([&] { action = [&] { run.bounds_cmd(n1, rest); }; });

  c = verb("chain", "sigma-chain proof search");
  c->add_option("--omega", omega, "hypothesized number of distinct primes")->required();
  c->add_option("--root-exponent", root_exponent, "search a single root (0, even, or inf)");
  c->add_flag("--large-prime-checks", large_primes, "enable P1/P2/P3");
  c->callback([&] { action = [&] { run.chain_cmd(omega, root_exponent, large_primes); }; });

  c = verb("components", "ratios | trichotomy | two-thirds | witness");
  c->add_option("query", n1)->required()->check(CLI::IsMember({"ratios", "trichotomy", "two-thirds", "witness"}));
  c->add_option("args", rest)->required();
  c->callback([&] { action = [&] { run.components_cmd(n1, rest); }; });

  c = verb("verify", "van-der-pol | consecutive | even-perfect-props");
  c->add_option("query", n1)->required()->check(CLI::IsMember({"van-der-pol", "consecutive", "even-perfect-props"}));
  c->add_option("arg", n2)->required();
  c->callback([&] { action = [&] { run.verify_cmd(n1, n2); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }
  try {
    action();
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}

}  // namespace opn::cli

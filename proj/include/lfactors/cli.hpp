#pragma once

// Command dispatch for the lfactors tool.  run() never exits the process:
// 0 success, 1 a checked property failed, 2 bad input.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lfactors/io.hpp"
#include "lfactors/tate/bridge.hpp"
#include "lfactors/verify.hpp"

namespace lfactors::cli {

using io::json;

struct Options {
  std::string input;
  std::string format = "text";
  u64 seed = 1;
  int window = 20;
  std::vector<std::string> reps;
  std::string suite;
  u64 q = 0;
  u64 ell = 0;
  std::string chi = "0,0,0";
  std::string chi2 = "0,0,0";
  std::string world = "l-adic";
};

namespace cli_detail {

inline std::string read_input(const std::string& path) {
  if (path.empty()) throw DomainError("this command needs --input FILE (or - for stdin)");
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read '" + path + "'");
    ss << in.rdbuf();
  }
  return ss.str();
}

inline const GenericRep<ModScalar>& modl_rep(const io::Document& d, const std::string& name) {
  const auto& r = d.rep(name);
  if (r.index() != 0) throw DomainError("world mismatch: '" + name + "' is l-adic, this command needs a mod-l rep");
  return std::get<0>(r);
}

inline tate::Char0Spec parse_char(const std::string& text) {
  std::vector<i64> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoll(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw DomainError("character '" + text + "': expected E,J,S integers");
    }
  }
  if (v.size() != 3) throw DomainError("character '" + text + "': expected E,J,S integers");
  return {v[0], v[1], v[2]};
}

template <class Ring>
json oracle_json(const Ring& ring, const tate::TateLResult<Ring>& l, const tate::EpsilonResult<Ring>& eps) {
  json series = json::array();
  for (std::size_t i = 0; i < l.series.size(); ++i)
    series.push_back({{"phi", l.phi_names[i]},
                      {"numerator", tate::lpoly_render<Ring>(l.series[i].num)},
                      {"pole_order", l.series[i].e},
                      {"tail_start", l.series[i].tail_start}});
  json out;
  out["ok"] = l.ok && eps.ok;
  out["L"] = l.root ? "1/(1 - (" + Ring::encode(*l.root) + ")X)" : std::string("1");
  if (l.ok) {
    out["generator"] = {{"phi", l.phi_names[l.generator]},
                        {"quotient", tate::lpoly_render<Ring>(l.generator_quotient)}};
  } else {
    out["failure"] = l.failure;
  }
  out["series"] = series;
  json e{{"consistent", eps.consistent}, {"phis_used", eps.phis_used}};
  if (eps.ok) e["epsilon"] = "(" + Ring::encode(eps.c) + ")X^" + std::to_string(eps.k);
  if (!eps.failure.empty()) e["failure"] = eps.failure;
  if constexpr (Ring::char0) e["l_adic_unit"] = eps.unit;
  out["epsilon"] = e;
  (void)ring;
  return out;
}

inline json run_oracle(const Options& o) {
  if (o.q == 0 || o.ell == 0) throw DomainError("oracle tate needs --q and --ell");
  const auto a = parse_char(o.chi), b = parse_char(o.chi2);
  const auto kf = tate::ResidueField::make(o.q);
  const auto rl = tate::ModlRing::make(o.ell, o.q);
  const auto model = tate::oracle_model(rl);
  json out;
  out["q"] = o.q;
  out["ell"] = o.ell;
  out["window"] = o.window;
  if (o.world == "l-adic") {
    const auto r0 = tate::Char0Ring::make(o.q);
    const auto c1 = tate::to_char0(r0, a), c2 = tate::to_char0(r0, b);
    const auto l = tate::tate_L_via_ideal(r0, kf, c1, c2, o.window);
    const auto eps = tate::epsilon_extract(r0, kf, c1, c2, o.window, o.ell);
    out["world"] = "l-adic";
    out["oracle"] = oracle_json(r0, l, eps);
    const auto engine = L_cuspidal(tate::engine_symbol(model, rl, a), tate::engine_symbol(model, rl, b));
    EulerFactor<AdicUnit> oracle;
    if (l.root) oracle = EulerFactor<AdicUnit>({tate::to_adic_unit(rl, a.e + b.e, a.j + b.j)});
    out["engine"] = io::render_factor(engine);
    out["oracle_as_factor"] = io::render_factor(oracle);
    out["agree"] = engine == oracle;
  } else if (o.world == "mod-l") {
    const auto c1 = tate::to_modl(rl, a), c2 = tate::to_modl(rl, b);
    const auto l = tate::tate_L_via_ideal(rl, kf, c1, c2, o.window);
    const auto eps = tate::epsilon_extract(rl, kf, c1, c2, o.window);
    out["world"] = "mod-l";
    out["oracle"] = oracle_json(rl, l, eps);
    const auto engine = L_cuspidal(tate::engine_symbol(model, rl, c1), tate::engine_symbol(model, rl, c2));
    EulerFactor<ModScalar> oracle;
    if (l.root) oracle = EulerFactor<ModScalar>({*l.root});
    out["engine"] = io::render_factor(engine);
    out["oracle_as_factor"] = io::render_factor(oracle);
    out["agree"] = engine == oracle;
  } else {
    throw DomainError("unknown world '" + o.world + "'");
  }
  return out;
}

inline json verify_json(const verify::SuiteResult& r, u64 seed) {
  return {{"suite", r.name}, {"seed", seed},         {"passed", r.passed()},
          {"cases", r.cases}, {"failures", r.failures}, {"notes", r.notes}};
}

// Text rendering of a result document: one "key: value" line per scalar leaf.
inline void render_text(const json& j, std::ostream& out, const std::string& prefix = "") {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render_text(v, out, prefix.empty() ? k : prefix + "." + k);
  } else if (j.is_array()) {
    if (j.empty()) out << prefix << ": []\n";
    for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], out, prefix + "[" + std::to_string(i) + "]");
  } else if (j.is_string()) {
    out << prefix << ": " << j.get<std::string>() << "\n";
  } else {
    out << prefix << ": " << j.dump() << "\n";
  }
}

}  // namespace cli_detail

/// args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;
  Options o;
  CLI::App app{"Rankin-Selberg local factors over finite fields and l-adic units", "lfactors"};
  app.require_subcommand(1);
  app.add_option("--input", o.input, "input document (JSON), - for stdin");
  app.add_option("--format", o.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
  app.fallthrough();

  auto* lfactor = app.add_subcommand("lfactor", "L(REP1 x REP2)");
  auto* gamma = app.add_subcommand("gamma", "gamma class of REP1 x REP2");
  auto* split = app.add_subcommand("split-banal", "banal and totally non-banal parts of a mod-l rep");
  auto* lift = app.add_subcommand("lift", "standard lift and lift combinations of a mod-l rep");
  auto* gcd = app.add_subcommand("gcd-lifts", "gcd of reduced L-factors over all lifts");
  auto* reduce = app.add_subcommand("reduce", "compatibility of L and gamma with reduction mod l");
  auto* parse = app.add_subcommand("parse", "validate the input and print it back");
  for (auto* c : {lfactor, gamma, gcd, reduce}) c->add_option("reps", o.reps, "REP1 REP2")->expected(2)->required();
  for (auto* c : {split, lift}) c->add_option("reps", o.reps, "REP")->expected(1)->required();

  auto* oracle = app.add_subcommand("oracle", "independent GL1 zeta-integral oracle");
  oracle->require_subcommand(1);
  auto* tate_cmd = oracle->add_subcommand("tate", "L and epsilon of chi x chi2 by shell summation");
  tate_cmd->add_option("--q", o.q, "residue field size")->required();
  tate_cmd->add_option("--ell", o.ell, "coefficient characteristic")->required();
  tate_cmd->add_option("--chi", o.chi, "E,J,S for q^E zeta_N^J and tame part S");
  tate_cmd->add_option("--chi2", o.chi2, "E,J,S");
  tate_cmd->add_option("--world", o.world, "l-adic or mod-l")->check(CLI::IsMember({"l-adic", "mod-l"}));
  tate_cmd->add_option("--window", o.window, "precision window M")->check(CLI::Range(8, 200));

  auto* ver = app.add_subcommand("verify", "run a seeded property suite");
  std::vector<std::string> names{"all"};
  for (const auto& [n, f] : verify::suites()) names.push_back(n);
  ver->add_option("suite", o.suite, "suite name")->required()->check(CLI::IsMember(names));
  ver->add_option("--seed", o.seed, "generator seed");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  json result;
  int code = 0;
  try {
    if (*ver) {
      json list = json::array();
      for (const auto& [n, f] : verify::suites()) {
        if (o.suite != "all" && o.suite != n) continue;
        const auto r = f(o.seed);
        if (!r.passed()) code = 1;
        list.push_back(verify_json(r, o.seed));
      }
      result = o.suite == "all" ? json{{"suites", list}} : list.front();
    } else if (*tate_cmd) {
      result = run_oracle(o);
      if (!result["oracle"]["ok"].get<bool>() || !result["agree"].get<bool>()) code = 1;
    } else {
      const auto doc = io::parse_document(read_input(o.input));
      if (*parse) {
        result = io::render_document(doc);
      } else if (*lfactor || *gamma) {
        const auto& a = doc.rep(o.reps[0]);
        const auto& b = doc.rep(o.reps[1]);
        if (a.index() != b.index()) throw DomainError("world mismatch between '" + o.reps[0] + "' and '" + o.reps[1] + "'");
        std::visit(
            [&](const auto& pa) {
              using R = std::decay_t<decltype(pa)>;
              const auto& pb = std::get<R>(b);
              if (*lfactor) {
                result = io::render_factor(L_generic(pa, pb));
              } else {
                result = io::render_gamma(gamma_generic(pa, pb));
              }
            },
            a);
      } else if (*split) {
        const auto [b, t] = banal_split(modl_rep(doc, o.reps[0]));
        result = {{"banal", io::render_rep(b)}, {"non_banal", io::render_rep(t)}};
      } else if (*lift) {
        const auto& pi = modl_rep(doc, o.reps[0]);
        json family = json::array();
        for (const auto& t : lift_combinations(pi)) family.push_back(t.encode());
        result = {{"standard_lift", io::render_rep(standard_lift(pi))}, {"lifts", family}};
      } else if (*gcd) {
        result = io::render_gcd(gcd_over_lifts(modl_rep(doc, o.reps[0]), modl_rep(doc, o.reps[1])));
      } else if (*reduce) {
        const auto rep = check_compat1(modl_rep(doc, o.reps[0]), modl_rep(doc, o.reps[1]));
        result = io::render_compat(rep);
        if (!rep.ok()) code = 1;
      }
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    err << "internal check failed: " << e.what() << "\n";
    return 1;
  }

  if (o.format == "structured") {
    out << result.dump(2) << "\n";
  } else {
    render_text(result, out);
  }
  return code;
}

}  // namespace lfactors::cli

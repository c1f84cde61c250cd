#pragma once

// JSON input documents: context, lines, named cuspidals and named reps.
//
//   {"context": {"ell": 7, "q": 2}, "world": "mod-l",
//    "lines": [{"label": "gl1", "n": 1, "f": 1, "dual_label": "gl1"}],
//    "cuspidals": [{"name": "triv", "line": "gl1", "twist": "1"}],
//    "reps": {"pi": [{"cuspidal": "triv", "a": 0, "b": 1}]}}

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "lfactors/factors.hpp"

namespace lfactors::io {

using json = nlohmann::ordered_json;

enum class World { modl, adic };

inline std::string world_name(World w) { return w == World::modl ? "mod-l" : "l-adic"; }

inline World parse_world(const std::string& s) {
  if (s == "mod-l") return World::modl;
  if (s == "l-adic") return World::adic;
  throw DomainError("unknown world '" + s + "' (expected mod-l or l-adic)");
}

struct CuspidalDecl {
  std::string name;
  std::string line;
  std::string twist;
  std::optional<QmodZ> tag;
  std::optional<NonSupercuspidal> structure;
  World world = World::modl;
};

struct SegmentDecl {
  std::string cuspidal;
  i64 a = 0;
  i64 b = 0;
};

using AnyCuspidal = std::variant<CuspidalSymbol<ModScalar>, CuspidalSymbol<AdicUnit>>;
using AnyRep = std::variant<GenericRep<ModScalar>, GenericRep<AdicUnit>>;

inline World world_of(const AnyRep& r) { return r.index() == 0 ? World::modl : World::adic; }

class Document {
 public:
  PrimeContext ctx;
  World world = World::modl;
  std::vector<LineSpec> lines;
  std::vector<CuspidalDecl> cuspidals;
  std::map<std::string, std::vector<SegmentDecl>> reps;

  /// Builds the model and every declared object; throws DomainError on the first failure.
  void validate() {
    model_ = Model::make(ctx, lines);
    symbols_.clear();
    built_.clear();
    for (const auto& c : cuspidals) {
      if (symbols_.count(c.name)) throw DomainError("duplicate cuspidal '" + c.name + "'");
      if (!model_->lines().count(c.line)) throw DomainError("cuspidal '" + c.name + "': unknown line '" + c.line + "'");
      const auto& line = model_->line(c.line);
      if (c.structure) {
        const auto& st = line.structure;
        if (!st || st->r != c.structure->r || st->base_line != c.structure->base_line ||
            !(st->base_twist == c.structure->base_twist))
          throw DomainError("cuspidal '" + c.name + "': structure does not match line '" + c.line + "'");
      }
      try {
        if (c.world == World::modl) {
          if (c.tag) throw DomainError("inertial tags exist only in the l-adic world");
          symbols_.emplace(c.name, CuspidalSymbol<ModScalar>(model_, c.line, world_traits<ModScalar>::parse(ctx, c.twist)));
        } else {
          symbols_.emplace(c.name, CuspidalSymbol<AdicUnit>(model_, c.line, world_traits<AdicUnit>::parse(ctx, c.twist),
                                                             c.tag.value_or(QmodZ())));
        }
      } catch (const DomainError& e) {
        throw DomainError("cuspidal '" + c.name + "': " + e.what());
      }
    }
    for (const auto& [name, segs] : reps) built_.emplace(name, build_rep(name, segs));
  }

  const ModelPtr& model() const { return model_; }

  const AnyRep& rep(const std::string& name) const {
    auto it = built_.find(name);
    if (it == built_.end()) throw DomainError("unknown rep '" + name + "'");
    return it->second;
  }

 private:
  AnyRep build_rep(const std::string& name, const std::vector<SegmentDecl>& segs) const {
    std::optional<World> w;
    std::vector<Segment<ModScalar>> modl;
    std::vector<Segment<AdicUnit>> adic;
    for (const auto& s : segs) {
      auto it = symbols_.find(s.cuspidal);
      if (it == symbols_.end()) throw DomainError("rep '" + name + "': unknown cuspidal '" + s.cuspidal + "'");
      const World sw = it->second.index() == 0 ? World::modl : World::adic;
      if (w && *w != sw) throw DomainError("rep '" + name + "': world mismatch");
      w = sw;
      try {
        if (sw == World::modl) {
          modl.push_back(make_segment(std::get<0>(it->second), s.a, s.b));
        } else {
          adic.push_back(make_segment(std::get<1>(it->second), s.a, s.b));
        }
      } catch (const DomainError& e) {
        throw DomainError("rep '" + name + "': " + e.what());
      }
    }
    try {
      if (w.value_or(world) == World::modl) return make_generic(std::move(modl));
      return make_generic(std::move(adic));
    } catch (const DomainError& e) {
      throw DomainError("rep '" + name + "': " + e.what());
    }
  }

  ModelPtr model_;
  std::map<std::string, AnyCuspidal> symbols_;
  std::map<std::string, AnyRep> built_;
};

namespace io_detail {

template <class T>
T get(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw DomainError(where + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw DomainError(where + ": field '" + key + "' has the wrong type");
  }
}

inline NonSupercuspidal parse_structure(const json& j, u64 ell, const std::string& where) {
  NonSupercuspidal st;
  st.r = get<unsigned>(j, "r", where);
  st.base_line = get<std::string>(j, "base_line", where);
  st.base_twist = parse_mod_scalar(ell, j.contains("base_twist") ? get<std::string>(j, "base_twist", where) : "1");
  return st;
}

inline json render_structure(const NonSupercuspidal& st) {
  return json{{"r", st.r}, {"base_line", st.base_line}, {"base_twist", st.base_twist.encode()}};
}

}  // namespace io_detail

inline Document parse_document(const std::string& text) {
  using io_detail::get;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("malformed document: ") + e.what());
  }
  if (!j.is_object()) throw DomainError("document must be an object");
  Document d;
  const auto& c = j.contains("context") ? j.at("context") : json();
  d.ctx = PrimeContext::make(get<u64>(c, "ell", "context"), get<u64>(c, "q", "context"));
  if (j.contains("world")) d.world = parse_world(get<std::string>(j, "world", "document"));
  for (const auto& l : j.value("lines", json::array())) {
    LineSpec s;
    s.label = get<std::string>(l, "label", "line");
    const std::string where = "line '" + s.label + "'";
    s.n = get<unsigned>(l, "n", where);
    if (l.contains("f")) s.f = get<u64>(l, "f", where);
    s.dual_label = l.contains("dual_label") ? get<std::string>(l, "dual_label", where) : s.label;
    if (l.contains("dual_base_twist")) s.delta = AdicUnit::parse(d.ctx.ell, get<std::string>(l, "dual_base_twist", where));
    if (l.contains("dual_tag_map")) {
      const auto m = get<std::string>(l, "dual_tag_map", where);
      if (m == "negate") s.tag_map = TagMap::negate;
      else if (m == "identity") s.tag_map = TagMap::identity;
      else throw DomainError(where + ": unknown dual_tag_map '" + m + "'");
    }
    if (l.contains("structure")) s.structure = io_detail::parse_structure(l.at("structure"), d.ctx.ell, where);
    d.lines.push_back(std::move(s));
  }
  for (const auto& cj : j.value("cuspidals", json::array())) {
    CuspidalDecl cd;
    cd.name = get<std::string>(cj, "name", "cuspidal");
    const std::string where = "cuspidal '" + cd.name + "'";
    cd.line = get<std::string>(cj, "line", where);
    cd.twist = cj.contains("twist") ? get<std::string>(cj, "twist", where) : "1";
    cd.world = cj.contains("world") ? parse_world(get<std::string>(cj, "world", where)) : d.world;
    if (cd.world != d.world) throw DomainError(where + ": world mismatch");
    if (cj.contains("tag")) cd.tag = QmodZ::parse(get<std::string>(cj, "tag", where));
    if (cj.contains("structure")) cd.structure = io_detail::parse_structure(cj.at("structure"), d.ctx.ell, where);
    // store the canonical encoding so that rendering round-trips
    cd.twist = cd.world == World::modl ? world_traits<ModScalar>::encode(world_traits<ModScalar>::parse(d.ctx, cd.twist))
                                       : world_traits<AdicUnit>::encode(world_traits<AdicUnit>::parse(d.ctx, cd.twist));
    d.cuspidals.push_back(std::move(cd));
  }
  if (j.contains("reps")) {
    if (!j.at("reps").is_object()) throw DomainError("reps must be an object of named segment lists");
    for (const auto& [name, segs] : j.at("reps").items()) {
      std::vector<SegmentDecl> list;
      if (!segs.is_array()) throw DomainError("rep '" + name + "' must be a list of segments");
      for (const auto& s : segs) {
        const std::string where = "rep '" + name + "'";
        list.push_back({get<std::string>(s, "cuspidal", where), get<i64>(s, "a", where), get<i64>(s, "b", where)});
      }
      d.reps.emplace(name, std::move(list));
    }
  }
  d.validate();
  return d;
}

inline json render_document(const Document& d) {
  json j;
  j["context"] = {{"ell", d.ctx.ell}, {"q", d.ctx.q}};
  j["world"] = world_name(d.world);
  j["lines"] = json::array();
  for (const auto& s : d.lines) {
    json l{{"label", s.label}, {"n", s.n}};
    if (s.f) l["f"] = *s.f;
    l["dual_label"] = s.dual_label;
    l["dual_base_twist"] = s.delta.value_or(AdicUnit::one(d.ctx.ell)).encode();
    l["dual_tag_map"] = s.tag_map == TagMap::negate ? "negate" : "identity";
    if (s.structure) l["structure"] = io_detail::render_structure(*s.structure);
    j["lines"].push_back(std::move(l));
  }
  j["cuspidals"] = json::array();
  for (const auto& c : d.cuspidals) {
    json cj{{"name", c.name}, {"line", c.line}, {"twist", c.twist}, {"world", world_name(c.world)}};
    if (c.tag) cj["tag"] = c.tag->encode();
    if (c.structure) cj["structure"] = io_detail::render_structure(*c.structure);
    j["cuspidals"].push_back(std::move(cj));
  }
  j["reps"] = json::object();
  for (const auto& [name, segs] : d.reps) {
    json list = json::array();
    for (const auto& s : segs) list.push_back({{"cuspidal", s.cuspidal}, {"a", s.a}, {"b", s.b}});
    j["reps"][name] = std::move(list);
  }
  return j;
}

template <class S>
json render_factor(const EulerFactor<S>& e) {
  json roots = json::array();
  for (const auto& r : e.roots()) roots.push_back(world_traits<S>::encode(r));
  return {{"factor", ef_render(e)}, {"roots", roots}};
}

template <class S>
json render_gamma(const GammaClass<S>& g) {
  return {{"gamma", gamma_render(g)}, {"numerator", render_factor(g.num())}, {"denominator", render_factor(g.den())}};
}

template <class S>
json render_rep(const GenericRep<S>& pi) {
  json segs = json::array();
  for (const auto& s : pi.segments()) segs.push_back(s.encode());
  return {{"rep", pi.encode()}, {"segments", segs}};
}

inline json render_compat(const CompatReport& r) {
  return {{"divides", r.divides},
          {"gamma_equal_up_to_unit", r.gamma_equal_up_to_unit},
          {"l_mod", render_factor(r.l_mod)},
          {"l_lift_reduced", render_factor(r.l_lift_reduced)},
          {"gamma_mod", render_gamma(r.gamma_mod)},
          {"gamma_lift_reduced", render_gamma(r.gamma_lift_reduced)}};
}

inline json render_gcd(const GcdResult& g) {
  json cert = json::array();
  for (const auto& e : g.certificate)
    cert.push_back({{"lift", e.tau.encode()}, {"lift2", e.tau2.encode()}, {"reduced", render_factor(e.reduced)}});
  return {{"gcd", render_factor(g.gcd)}, {"pairs", g.pairs}, {"certificate", cert}};
}

}  // namespace lfactors::io

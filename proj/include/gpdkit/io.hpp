#ifndef GPDKIT_IO_HPP
#define GPDKIT_IO_HPP

// JSON readers and writers for the file formats used by the command-line
// tool. Every malformed document raises errc::parse_error naming the JSON
// path that failed.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gpdkit/crossed_module.hpp"
#include "gpdkit/cube.hpp"
#include "gpdkit/double_groupoid.hpp"
#include "gpdkit/error.hpp"
#include "gpdkit/groupoid.hpp"
#include "gpdkit/local_data.hpp"
#include "gpdkit/monodromy.hpp"
#include "gpdkit/presentation.hpp"
#include "gpdkit/topology.hpp"

namespace gpdkit::io {

using json = nlohmann::json;

inline constexpr int schema_version = 1;

inline json parse_text(const std::string& text, const std::string& where = "<input>") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw error(errc::parse_error, where + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error(errc::parse_error, path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json load(const std::string& path) { return parse_text(read_file(path), path); }

namespace detail {

[[noreturn]] inline void fail(const std::string& at, const std::string& what) {
  throw error(errc::parse_error, at + ": " + what);
}

inline const json& field(const json& j, const std::string& key, const std::string& at) {
  if (!j.is_object()) fail(at, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(at, "missing field '" + key + "'");
  return *it;
}

inline const json& array(const json& j, const std::string& at) {
  if (!j.is_array()) fail(at, "expected an array");
  return j;
}

inline std::string str(const json& j, const std::string& at) {
  if (!j.is_string()) fail(at, "expected a string");
  return j.get<std::string>();
}

inline std::size_t uint(const json& j, const std::string& at) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) fail(at, "expected a natural number");
  return j.get<std::size_t>();
}

inline std::vector<std::string> strings(const json& j, const std::string& at) {
  std::vector<std::string> out;
  std::size_t i = 0;
  for (const auto& e : array(j, at)) out.push_back(str(e, at + "/" + std::to_string(i++)));
  return out;
}

template <class Lookup>
auto resolve(Lookup&& lookup, const std::string& name, const std::string& at) {
  try {
    return lookup(name);
  } catch (const error&) {
    fail(at, "unknown id '" + name + "'");
  }
}

inline std::vector<std::vector<std::size_t>> table(const json& j, const std::string& at) {
  std::vector<std::vector<std::size_t>> out;
  std::size_t i = 0;
  for (const auto& row : array(j, at)) {
    const std::string rat = at + "/" + std::to_string(i++);
    std::vector<std::size_t> r;
    std::size_t k = 0;
    for (const auto& v : array(row, rat)) r.push_back(uint(v, rat + "/" + std::to_string(k++)));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Groupoids

/// {objects, arrows: [{id, src, tgt}], inv: [[g, g^-1]], comp: [[h, g, hg]]}.
/// Identities are the arrows named "id:<object>". Missing table entries are
/// kept as gaps so that validation can report them.
inline FiniteGroupoid groupoid_from_json(const json& j, const std::string& at = "") {
  using namespace detail;
  auto objects = strings(field(j, "objects", at), at + "/objects");
  std::map<std::string, Obj> oidx;
  for (Obj x = 0; x < objects.size(); ++x)
    if (!oidx.emplace(objects[x], x).second) fail(at + "/objects", "duplicate object " + objects[x]);
  std::vector<ArrowData> arrows;
  std::map<std::string, Arr> aidx;
  std::size_t i = 0;
  for (const auto& a : array(field(j, "arrows", at), at + "/arrows")) {
    const std::string aat = at + "/arrows/" + std::to_string(i++);
    auto id = str(field(a, "id", aat), aat + "/id");
    auto src = str(field(a, "src", aat), aat + "/src");
    auto tgt = str(field(a, "tgt", aat), aat + "/tgt");
    if (!oidx.count(src)) fail(aat + "/src", "unknown object '" + src + "'");
    if (!oidx.count(tgt)) fail(aat + "/tgt", "unknown object '" + tgt + "'");
    if (!aidx.emplace(id, arrows.size()).second) fail(aat + "/id", "duplicate arrow " + id);
    arrows.push_back({id, oidx[src], oidx[tgt]});
  }
  auto arrow = [&](const json& v, const std::string& vat) {
    auto name = str(v, vat);
    auto it = aidx.find(name);
    if (it == aidx.end()) fail(vat, "unknown arrow '" + name + "'");
    return it->second;
  };
  std::vector<Arr> id_of(objects.size(), none);
  for (Obj x = 0; x < objects.size(); ++x) {
    auto it = aidx.find(identity_name(objects[x]));
    if (it == aidx.end()) fail(at + "/arrows", "no identity arrow " + identity_name(objects[x]));
    id_of[x] = it->second;
  }
  const std::size_t m = arrows.size();
  std::vector<Arr> inv(m, none);
  i = 0;
  for (const auto& p : array(field(j, "inv", at), at + "/inv")) {
    const std::string pat = at + "/inv/" + std::to_string(i++);
    if (!p.is_array() || p.size() != 2) fail(pat, "expected [g, g^-1]");
    inv[arrow(p[0], pat + "/0")] = arrow(p[1], pat + "/1");
  }
  std::vector<Arr> comp(m * m, none);
  i = 0;
  for (const auto& t : array(field(j, "comp", at), at + "/comp")) {
    const std::string tat = at + "/comp/" + std::to_string(i++);
    if (!t.is_array() || t.size() != 3) fail(tat, "expected [h, g, hg]");
    comp[arrow(t[0], tat + "/0") * m + arrow(t[1], tat + "/1")] = arrow(t[2], tat + "/2");
  }
  return FiniteGroupoid(std::move(objects), std::move(arrows), std::move(id_of), std::move(inv), std::move(comp));
}

inline json to_json(const FiniteGroupoid& g) {
  json arrows = json::array(), inv = json::array(), comp = json::array();
  for (Arr a = 0; a < g.arrow_count(); ++a) {
    arrows.push_back({{"id", g.arrow_name(a)}, {"src", g.object_name(g.src(a))}, {"tgt", g.object_name(g.tgt(a))}});
    if (g.inv(a) != none) inv.push_back({g.arrow_name(a), g.arrow_name(g.inv(a))});
  }
  for (Arr h = 0; h < g.arrow_count(); ++h)
    for (Arr f = 0; f < g.arrow_count(); ++f)
      if (g.comp_raw(h, f) != none) comp.push_back({g.arrow_name(h), g.arrow_name(f), g.arrow_name(g.comp_raw(h, f))});
  return {{"objects", g.object_names()}, {"arrows", arrows}, {"inv", inv}, {"comp", comp}};
}

inline json to_json(const ValidationReport& r) {
  json v = json::array();
  for (const auto& x : r.violations) v.push_back({{"law", x.law}, {"witnesses", x.witnesses}});
  return {{"ok", r.ok()}, {"violations", v}};
}

// ---------------------------------------------------------------------------
// Topologies

/// {points, opens: [[...]]} or {points, minimal_opens: {point: [...]}}.
/// `expected` fixes the point names and their order.
inline FiniteTopology topology_from_json(const json& j, const std::vector<std::string>& expected,
                                         const std::string& at) {
  using namespace detail;
  auto points = strings(field(j, "points", at), at + "/points");
  std::vector<std::string> sorted_points = points, sorted_expected = expected;
  std::sort(sorted_points.begin(), sorted_points.end());
  std::sort(sorted_expected.begin(), sorted_expected.end());
  if (sorted_points != sorted_expected) fail(at + "/points", "points do not match the expected set");
  std::map<std::string, std::size_t> idx;
  for (std::size_t x = 0; x < expected.size(); ++x) idx[expected[x]] = x;
  const std::size_t n = expected.size();
  auto set_of = [&](const json& s, const std::string& sat) {
    PointSet out(n);
    std::size_t k = 0;
    for (const auto& p : array(s, sat)) {
      auto name = str(p, sat + "/" + std::to_string(k++));
      auto it = idx.find(name);
      if (it == idx.end()) fail(sat, "unknown point '" + name + "'");
      out.set(it->second);
    }
    return out;
  };
  try {
    if (j.contains("minimal_opens")) {
      const auto& mo = field(j, "minimal_opens", at);
      if (!mo.is_object()) fail(at + "/minimal_opens", "expected an object keyed by point");
      std::vector<PointSet> minimal(n, PointSet(n));
      std::vector<bool> seen(n, false);
      for (auto it = mo.begin(); it != mo.end(); ++it) {
        auto p = idx.find(it.key());
        if (p == idx.end()) fail(at + "/minimal_opens", "unknown point '" + it.key() + "'");
        minimal[p->second] = set_of(it.value(), at + "/minimal_opens/" + it.key());
        seen[p->second] = true;
      }
      for (std::size_t x = 0; x < n; ++x)
        if (!seen[x]) fail(at + "/minimal_opens", "no minimal open for " + expected[x]);
      return FiniteTopology::from_minimal_opens(expected, std::move(minimal));
    }
    std::vector<PointSet> opens;
    std::size_t k = 0;
    for (const auto& o : array(field(j, "opens", at), at + "/opens"))
      opens.push_back(set_of(o, at + "/opens/" + std::to_string(k++)));
    return FiniteTopology::from_opens(expected, opens);
  } catch (const error& e) {
    if (e.code() == errc::parse_error) throw;
    throw error(errc::parse_error, at + ": " + e.what());
  }
}

/// Minimal-open form; it determines the topology and stays small.
inline json to_json(const FiniteTopology& t) {
  json mo = json::object();
  for (std::size_t x = 0; x < t.size(); ++x) {
    json s = json::array();
    for (auto y : members(t.minimal_open(x))) s.push_back(t.name(y));
    mo[t.name(x)] = s;
  }
  return {{"points", t.names()}, {"minimal_opens", mo}};
}

// ---------------------------------------------------------------------------
// Local groupoid data

/// Groupoid fields plus {window: [arrow ids], topology_w, topology_objects}.
/// The window topology's points are arrow ids.
inline LocalGroupoidData local_data_from_json(const json& j) {
  using namespace detail;
  LocalGroupoidData d;
  d.groupoid = groupoid_from_json(j);
  const auto& g = d.groupoid;
  d.window = PointSet(g.arrow_count());
  std::size_t i = 0;
  for (const auto& a : array(field(j, "window", ""), "/window")) {
    const std::string wat = "/window/" + std::to_string(i++);
    auto name = str(a, wat);
    if (!g.has_arrow(name)) fail(wat, "unknown arrow '" + name + "'");
    d.window.set(g.arrow_index(name));
  }
  std::vector<std::string> wnames;
  for (auto a : members(d.window)) wnames.push_back(g.arrow_name(a));
  d.window_topology = topology_from_json(field(j, "topology_w", ""), wnames, "/topology_w");
  d.object_topology = topology_from_json(field(j, "topology_objects", ""), g.object_names(), "/topology_objects");
  return d;
}

inline json to_json(const LocalGroupoidData& d) {
  json j = to_json(d.groupoid);
  json w = json::array();
  for (auto a : members(d.window)) w.push_back(d.groupoid.arrow_name(a));
  j["window"] = w;
  j["topology_w"] = to_json(d.window_topology);
  j["topology_objects"] = to_json(d.object_topology);
  return j;
}

// ---------------------------------------------------------------------------
// Presentations

/// {start: object, letters: [[generator, "+"|"-"], ...]}. Letters are listed
/// as the word is written, so the first letter is applied last.
inline Word word_from_json(const ReflexiveGraph& g, const json& j, const std::string& at) {
  using namespace detail;
  Word w;
  w.start = resolve([&](const std::string& s) { return g.object_index(s); }, str(field(j, "start", at), at + "/start"),
                    at + "/start");
  std::size_t i = 0;
  for (const auto& l : array(field(j, "letters", at), at + "/letters")) {
    const std::string lat = at + "/letters/" + std::to_string(i++);
    if (!l.is_array() || l.size() != 2) fail(lat, "expected [generator, \"+\"|\"-\"]");
    auto e = resolve([&](const std::string& s) { return g.edge_index(s); }, str(l[0], lat + "/0"), lat + "/0");
    auto sign = str(l[1], lat + "/1");
    if (sign != "+" && sign != "-") fail(lat + "/1", "sign must be \"+\" or \"-\"");
    w.letters.push_back({e, sign == "-"});
  }
  if (!is_well_formed(g, w)) fail(at, "letters are not composable from the start object");
  return w;
}

inline json to_json(const ReflexiveGraph& g, const Word& w) {
  json letters = json::array();
  for (const auto& l : w.letters) letters.push_back({g.edge(l.edge).name, l.inverse ? "-" : "+"});
  return {{"start", g.object_name(w.start)}, {"letters", letters}};
}

/// {objects, generators: [{id, src, tgt}], relations: [[word, word], ...]}.
inline FpGroupoid presentation_from_json(const json& j, const std::string& at = "") {
  using namespace detail;
  auto objects = strings(field(j, "objects", at), at + "/objects");
  std::map<std::string, Obj> oidx;
  for (Obj x = 0; x < objects.size(); ++x) oidx[objects[x]] = x;
  std::vector<Edge> edges;
  std::size_t i = 0;
  for (const auto& e : array(field(j, "generators", at), at + "/generators")) {
    const std::string eat = at + "/generators/" + std::to_string(i++);
    auto id = str(field(e, "id", eat), eat + "/id");
    auto src = str(field(e, "src", eat), eat + "/src");
    auto tgt = str(field(e, "tgt", eat), eat + "/tgt");
    if (!oidx.count(src)) fail(eat + "/src", "unknown object '" + src + "'");
    if (!oidx.count(tgt)) fail(eat + "/tgt", "unknown object '" + tgt + "'");
    edges.push_back({id, oidx[src], oidx[tgt]});
  }
  FpGroupoid p;
  try {
    p.graph = ReflexiveGraph(objects, edges);
  } catch (const error& e) {
    fail(at + "/generators", e.what());
  }
  i = 0;
  if (j.contains("relations"))
    for (const auto& r : array(j["relations"], at + "/relations")) {
      const std::string rat = at + "/relations/" + std::to_string(i++);
      if (!r.is_array() || r.size() != 2) fail(rat, "expected [word, word]");
      auto l = word_from_json(p.graph, r[0], rat + "/0");
      auto rr = word_from_json(p.graph, r[1], rat + "/1");
      if (l.start != rr.start || word_end(p.graph, l) != word_end(p.graph, rr)) fail(rat, "sides have different endpoints");
      p.relations.push_back({l, rr});
    }
  return p;
}

inline json to_json(const FpGroupoid& p) {
  const auto& g = p.graph;
  json gens = json::array(), rels = json::array();
  for (auto e : g.generators())
    gens.push_back({{"id", g.edge(e).name}, {"src", g.object_name(g.edge(e).src)}, {"tgt", g.object_name(g.edge(e).tgt)}});
  for (const auto& [l, r] : p.relations) rels.push_back({to_json(g, l), to_json(g, r)});
  return {{"objects", g.object_names()}, {"generators", gens}, {"relations", rels}};
}

/// {objects: [[from, to]], generators: [[generator, word]]}. Unlisted
/// identity edges map to the empty word at the image object.
inline PresentationMorphism presentation_morphism_from_json(const json& j, const FpGroupoid& from, const FpGroupoid& to,
                                                            const std::string& at = "") {
  using namespace detail;
  const auto& fg = from.graph;
  const auto& tg = to.graph;
  PresentationMorphism f;
  f.obj_map.assign(fg.object_count(), none);
  std::size_t i = 0;
  for (const auto& p : array(field(j, "objects", at), at + "/objects")) {
    const std::string pat = at + "/objects/" + std::to_string(i++);
    if (!p.is_array() || p.size() != 2) fail(pat, "expected [from, to]");
    auto x = resolve([&](const std::string& s) { return fg.object_index(s); }, str(p[0], pat + "/0"), pat + "/0");
    auto y = resolve([&](const std::string& s) { return tg.object_index(s); }, str(p[1], pat + "/1"), pat + "/1");
    f.obj_map[x] = y;
  }
  for (Obj x = 0; x < fg.object_count(); ++x)
    if (f.obj_map[x] == none) fail(at + "/objects", "no image for object " + fg.object_name(x));
  f.edge_map.assign(fg.edge_count(), Word{});
  std::vector<bool> seen(fg.edge_count(), false);
  for (Obj x = 0; x < fg.object_count(); ++x) {
    f.edge_map[fg.identity_edge(x)] = Word{f.obj_map[x], {}};
    seen[fg.identity_edge(x)] = true;
  }
  i = 0;
  for (const auto& p : array(field(j, "generators", at), at + "/generators")) {
    const std::string pat = at + "/generators/" + std::to_string(i++);
    if (!p.is_array() || p.size() != 2) fail(pat, "expected [generator, word]");
    auto e = resolve([&](const std::string& s) { return fg.edge_index(s); }, str(p[0], pat + "/0"), pat + "/0");
    f.edge_map[e] = word_from_json(tg, p[1], pat + "/1");
    seen[e] = true;
  }
  for (std::size_t e = 0; e < fg.edge_count(); ++e)
    if (!seen[e]) fail(at + "/generators", "no image for generator " + fg.edge(e).name);
  return f;
}

// ---------------------------------------------------------------------------
// Local morphisms for the monodromy extension

struct LocalMorphismFile {
  FiniteGroupoid target;
  LocalMorphism map;
};

/// {target: groupoid, objects: [[x, y]], arrows: [[w, h]]}; arrows lists
/// every window arrow.
inline LocalMorphismFile local_morphism_from_json(const json& j, const LocalGroupoidData& d) {
  using namespace detail;
  LocalMorphismFile out;
  out.target = groupoid_from_json(field(j, "target", ""), "/target");
  const auto& g = d.groupoid;
  const auto& h = out.target;
  out.map.obj_map.assign(g.object_count(), none);
  out.map.arr_map.assign(g.arrow_count(), none);
  std::size_t i = 0;
  for (const auto& p : array(field(j, "objects", ""), "/objects")) {
    const std::string pat = "/objects/" + std::to_string(i++);
    if (!p.is_array() || p.size() != 2) fail(pat, "expected [from, to]");
    auto x = resolve([&](const std::string& s) { return g.object_index(s); }, str(p[0], pat + "/0"), pat + "/0");
    auto y = resolve([&](const std::string& s) { return h.object_index(s); }, str(p[1], pat + "/1"), pat + "/1");
    out.map.obj_map[x] = y;
  }
  i = 0;
  for (const auto& p : array(field(j, "arrows", ""), "/arrows")) {
    const std::string pat = "/arrows/" + std::to_string(i++);
    if (!p.is_array() || p.size() != 2) fail(pat, "expected [from, to]");
    auto a = resolve([&](const std::string& s) { return g.arrow_index(s); }, str(p[0], pat + "/0"), pat + "/0");
    auto b = resolve([&](const std::string& s) { return h.arrow_index(s); }, str(p[1], pat + "/1"), pat + "/1");
    out.map.arr_map[a] = b;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Crossed modules, square catalogues, cubes

/// {P: table, M: table, boundary: [...], action: [[...]]} with optional
/// P_names / M_names. action[p][m] is p acting on m.
inline CrossedModule xmod_from_json(const json& j) {
  using namespace detail;
  auto group = [&](const std::string& key) {
    auto t = table(field(j, key, ""), "/" + key);
    std::vector<std::string> names;
    if (j.contains(key + "_names")) names = strings(j[key + "_names"], "/" + key + "_names");
    else
      for (std::size_t i = 0; i < t.size(); ++i) names.push_back(key == "P" ? "p" + std::to_string(i) : "m" + std::to_string(i));
    if (names.size() != t.size()) fail("/" + key + "_names", "wrong number of names");
    try {
      return FiniteGroup::from_table(names, t);
    } catch (const error& e) {
      fail("/" + key, e.what());
    }
  };
  CrossedModule x{group("P"), group("M"), {}, {}};
  std::size_t i = 0;
  for (const auto& v : array(field(j, "boundary", ""), "/boundary")) x.boundary.push_back(uint(v, "/boundary/" + std::to_string(i++)));
  x.action = table(field(j, "action", ""), "/action");
  return x;
}

inline json to_json(const CrossedModule& x) {
  return {{"P", x.p.table()}, {"P_names", x.p.names()}, {"M", x.m.table()}, {"M_names", x.m.names()},
          {"boundary", x.boundary}, {"action", x.action}};
}

/// A double-groupoid input is either a crossed module or a groupoid whose
/// commuting squares are taken.
inline DoubleGroupoid double_from_json(const json& j) {
  if (j.is_object() && j.contains("P")) return xmod_to_double(xmod_from_json(j));
  return commuting_squares(groupoid_from_json(j));
}

inline json square_catalogue(const DoubleGroupoid& D) {
  const auto& g = D.edges();
  json out = json::array();
  for (Sq u = 0; u < D.size(); ++u) {
    const auto& s = D.square(u);
    out.push_back({{"index", u}, {"name", D.name(u)}, {"filler", D.fillers().name(s.m)}, {"top", g.arrow_name(s.a)},
                   {"right", g.arrow_name(s.b)}, {"left", g.arrow_name(s.c)}, {"bottom", g.arrow_name(s.d)}});
  }
  return out;
}

/// {S1: [u, v], S2: [u, v], S3: [u, v]}: catalogue indices of the faces
/// where that coordinate is 0 and 1.
inline Cube cube_from_json(const json& j, const DoubleGroupoid& D) {
  using namespace detail;
  Cube c;
  for (int dir = 1; dir <= 3; ++dir) {
    const std::string key = "S" + std::to_string(dir);
    const auto& pair = field(j, key, "");
    if (!pair.is_array() || pair.size() != 2) fail("/" + key, "expected two square indices");
    for (int eps = 0; eps < 2; ++eps) {
      auto u = uint(pair[static_cast<std::size_t>(eps)], "/" + key + "/" + std::to_string(eps));
      if (u >= D.size()) throw error(errc::not_a_cube, "square index " + std::to_string(u) + " is not in the catalogue");
      c.face(dir, eps) = u;
    }
  }
  return c;
}

inline json to_json(const Cube& c) {
  return {{"S1", {c.face(1, 0), c.face(1, 1)}}, {"S2", {c.face(2, 0), c.face(2, 1)}}, {"S3", {c.face(3, 0), c.face(3, 1)}}};
}

// ---------------------------------------------------------------------------
// DOT

/// Objects as nodes, non-identity arrows as edges labelled by their ids.
inline std::string to_dot(const FiniteGroupoid& g, const std::string& name = "G") {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
      if (ch == '"' || ch == '\\') out += '\\';
      out += ch;
    }
    return out + "\"";
  };
  std::string out = "digraph " + quote(name) + " {\n";
  for (const auto& o : g.object_names()) out += "  " + quote(o) + ";\n";
  for (Arr a = 0; a < g.arrow_count(); ++a)
    if (!g.is_identity(a))
      out += "  " + quote(g.object_name(g.src(a))) + " -> " + quote(g.object_name(g.tgt(a))) + " [label=" +
             quote(g.arrow_name(a)) + "];\n";
  return out + "}\n";
}

}  // namespace gpdkit::io

#endif  // GPDKIT_IO_HPP

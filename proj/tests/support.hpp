// Builders and fixed corpora shared by the test binaries.
#ifndef GPDKIT_TESTS_SUPPORT_HPP
#define GPDKIT_TESTS_SUPPORT_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gpdkit/colimits.hpp"
#include "gpdkit/groupoid.hpp"
#include "gpdkit/local_data.hpp"
#include "gpdkit/monodromy.hpp"
#include "gpdkit/presentation.hpp"

namespace gpdkit::testing {

/// "a b^-1 c^2" in written order (first token applied last). The start is
/// read off the rightmost letter; pass it explicitly for the empty word.
inline Word parse_word(const ReflexiveGraph& g, const std::string& text, Obj start = none) {
  std::istringstream in(text);
  std::string tok;
  std::vector<Letter> letters;
  while (in >> tok) {
    long long power = 1;
    auto hat = tok.find('^');
    std::string name = tok.substr(0, hat);
    if (hat != std::string::npos) power = std::stoll(tok.substr(hat + 1));
    const auto e = g.edge_index(name);
    for (long long i = 0; i < (power < 0 ? -power : power); ++i) letters.push_back({e, power < 0});
  }
  Word w{start, letters};
  if (!letters.empty()) w.start = letter_src(g, letters.back());
  if (w.start == none) throw error(errc::ill_formed_word, "empty word needs a start object");
  require_well_formed(g, w);
  return w;
}

inline FpGroupoid presentation(std::vector<std::string> objects, std::vector<Edge> edges,
                               const std::vector<std::pair<std::string, std::string>>& relations = {}) {
  FpGroupoid p{ReflexiveGraph(std::move(objects), std::move(edges)), {}};
  for (const auto& [l, r] : relations) {
    Word lw = parse_word(p.graph, l, 0);
    Word rw = parse_word(p.graph, r, lw.start);
    p.relations.push_back({lw, rw});
  }
  validate_presentation(p);
  return p;
}

/// Morphism given by object images and generator images (identities automatic).
inline PresentationMorphism morphism(const FpGroupoid& from, const FpGroupoid& to, std::vector<Obj> objects,
                                     const std::vector<std::string>& generator_images) {
  PresentationMorphism f{std::move(objects), {}};
  const auto& g = from.graph;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (g.is_identity(e)) {
      f.edge_map.push_back(Word{f.obj_map[g.edge(e).src], {}});
      continue;
    }
    const std::size_t k = e - g.object_count();
    f.edge_map.push_back(parse_word(to.graph, generator_images.at(k), f.obj_map[g.edge(e).src]));
  }
  require_presentation_morphism(from, to, f);
  return f;
}

inline FiniteGroupoid c2_swap() {
  return action_groupoid(FiniteGroup::cyclic(2), {"p", "q"}, [](std::size_t g, std::size_t x) { return g ? 1 - x : x; });
}

// ---------------------------------------------------------------------------
// Pushout corpus

struct PushoutInstance {
  std::string name;
  FpGroupoid a, b, c;
  PresentationMorphism f, g;
};

inline FpGroupoid discrete_two() { return presentation({"0", "1"}, {}); }
inline FpGroupoid point() { return presentation({"*"}, {}); }
inline FpGroupoid interval(const std::string& gen = "u") { return presentation({"0", "1"}, {{gen, 0, 1}}); }
inline FpGroupoid loop(const std::string& gen, int order = 0) {
  if (order == 0) return presentation({"*"}, {{gen, 0, 0}});
  return presentation({"*"}, {{gen, 0, 0}}, {{gen + "^" + std::to_string(order), ""}});
}

inline std::vector<PushoutInstance> pushout_corpus() {
  std::vector<PushoutInstance> out;
  auto add = [&](std::string name, FpGroupoid a, FpGroupoid b, FpGroupoid c, std::vector<Obj> fo,
                 std::vector<std::string> fg, std::vector<Obj> go, std::vector<std::string> gg) {
    auto f = morphism(a, b, std::move(fo), fg);
    auto g = morphism(a, c, std::move(go), gg);
    out.push_back({std::move(name), std::move(a), std::move(b), std::move(c), std::move(f), std::move(g)});
  };
  add("circle", discrete_two(), interval(), point(), {0, 1}, {}, {0, 0}, {});
  add("semicircles", discrete_two(), interval("u"), interval("v"), {0, 1}, {}, {0, 1}, {});
  add("wedge", point(), loop("a"), loop("b"), {0}, {}, {0}, {});
  add("identity-glue", interval(), interval(), interval(), {0, 1}, {"u"}, {0, 1}, {"u"});
  add("c2-free-c3", point(), loop("a", 2), loop("b", 3), {0}, {}, {0}, {});
  add("amalgam-squares", loop("c"), loop("a"), loop("b"), {0}, {"a^2"}, {0}, {"b^2"});
  add("path-of-two", point(), interval("u"), interval("v"), {1}, {}, {0}, {});
  add("kill-c2", loop("a", 2), loop("a", 2), point(), {0}, {"a"}, {0}, {""});
  add("interval-to-c2", discrete_two(), interval(), loop("b", 2), {0, 1}, {}, {0, 0}, {});
  add("point-into-interval", point(), point(), interval(), {0}, {}, {0}, {});
  add("flip-loop", loop("a"), loop("a"), loop("a"), {0}, {"a"}, {0}, {"a^-1"});
  add("c4-over-c2", loop("c", 2), loop("a", 4), loop("b", 2), {0}, {"a^2"}, {0}, {"b"});
  return out;
}

/// Finite targets with at most 12 arrows.
inline std::vector<std::pair<std::string, FiniteGroupoid>> target_family() {
  return {{"C2", one_object(FiniteGroup::cyclic(2))},
          {"C3", one_object(FiniteGroup::cyclic(3))},
          {"C4", one_object(FiniteGroup::cyclic(4))},
          {"S3", one_object(FiniteGroup::symmetric(3))},
          {"I", indiscrete(2)},
          {"I3", indiscrete(3)},
          {"C2-swap", c2_swap()},
          {"C2+C2", disjoint_union(one_object(FiniteGroup::cyclic(2)), one_object(FiniteGroup::cyclic(2)))}};
}

// ---------------------------------------------------------------------------
// LocalGroupoidData corpus (at most 24 arrows each)

inline PointSet arrows_named(const FiniteGroupoid& g, const std::vector<std::string>& names) {
  PointSet s(g.arrow_count());
  for (Obj x = 0; x < g.object_count(); ++x) s.set(g.id_of(x));
  for (const auto& n : names) s.set(g.arrow_index(n));
  return s;
}

inline PointSet identities_only(const FiniteGroupoid& g) { return arrows_named(g, {}); }

struct LocalInstance {
  std::string name;
  LocalGroupoidData data;
};

inline std::vector<LocalInstance> local_corpus() {
  std::vector<LocalInstance> out;
  auto full = [&](std::string n, const FiniteGroupoid& g) { out.push_back({std::move(n), discrete_full_window(g)}); };
  auto win = [&](std::string n, const FiniteGroupoid& g, const std::vector<std::string>& w) {
    out.push_back({std::move(n), discrete_window(g, arrows_named(g, w))});
  };
  const auto c2 = one_object(FiniteGroup::cyclic(2)), c3 = one_object(FiniteGroup::cyclic(3)),
             c4 = one_object(FiniteGroup::cyclic(4)), c5 = one_object(FiniteGroup::cyclic(5)),
             c6 = one_object(FiniteGroup::cyclic(6)), c8 = one_object(FiniteGroup::cyclic(8)),
             s3 = one_object(FiniteGroup::symmetric(3)), i2 = indiscrete(2), i3 = indiscrete(3),
             i4 = indiscrete(4), sw = c2_swap();
  full("C2 full", c2);
  full("C3 full", c3);
  full("C4 full", c4);
  full("S3 full", s3);
  full("I full", i2);
  full("I3 full", i3);
  full("I4 full", i4);
  full("C2-swap full", sw);
  win("C2 identities", c2, {});
  win("I3 identities", i3, {});
  win("C4 g", c4, {"g", "g^3"});
  win("C5 g", c5, {"g", "g^4"});
  win("C6 g", c6, {"g", "g^5"});
  win("C6 g^2", c6, {"g^2", "g^4"});
  win("C6 g g^3", c6, {"g", "g^5", "g^3"});
  win("C8 g", c8, {"g", "g^7"});
  win("C8 g^2", c8, {"g^2", "g^6"});
  win("I3 path", i3, {"0->1", "1->0", "1->2", "2->1"});
  win("I4 path", i4, {"0->1", "1->0", "1->2", "2->1", "2->3", "3->2"});
  win("C4 g^2", c4, {"g^2"});
  win("C2-swap swaps", sw, {"g@p", "g@q"});
  {
    const auto& names = FiniteGroup::symmetric(3).names();
    std::vector<std::string> transpositions;
    for (std::size_t a = 1; a < names.size(); ++a)
      if (FiniteGroup::symmetric(3).element_order(a) == 2) transpositions.push_back(names[a]);
    win("S3 transpositions", s3, transpositions);
  }
  return out;
}

/// Every local morphism W -> H, by backtracking over window arrows; a branch
/// is cut as soon as some u, v, uv in W are all assigned and f(uv) != f(u)f(v).
/// Calls visit for each; stops enumerating after `cap` morphisms.
inline std::size_t for_each_local_morphism(const LocalGroupoidData& d, const FiniteGroupoid& h,
                                           const std::function<void(const LocalMorphism&)>& visit,
                                           std::size_t cap = 200000) {
  const auto& g = d.groupoid;
  LocalMorphism f{std::vector<Obj>(g.object_count(), 0), std::vector<Arr>(g.arrow_count(), none)};
  const auto window = members(d.window);
  std::vector<std::size_t> pos(g.arrow_count(), none);
  for (std::size_t i = 0; i < window.size(); ++i) pos[window[i]] = i;
  // triples (u, v, uv) in W, filed under the position that completes them
  std::vector<std::vector<std::array<Arr, 3>>> ready(window.size());
  for (Arr u : window)
    for (Arr v : window) {
      if (g.tgt(v) != g.src(u)) continue;
      const Arr uv = g.compose(u, v);
      if (pos[uv] == none) continue;
      ready[std::max({pos[u], pos[v], pos[uv]})].push_back({u, v, uv});
    }
  auto consistent = [&](std::size_t i) {
    for (const auto& [u, v, uv] : ready[i]) {
      const Arr fu = f.arr_map[u], fv = f.arr_map[v];
      if (h.tgt(fv) != h.src(fu) || h.compose(fu, fv) != f.arr_map[uv]) return false;
    }
    return true;
  };
  std::size_t count = 0;
  std::function<void(Obj)> objects;
  std::function<void(std::size_t)> arrows = [&](std::size_t i) {
    if (count >= cap) return;
    if (i == window.size()) {
      if (is_local_morphism(d, h, f)) {
        ++count;
        visit(f);
      }
      return;
    }
    const Arr a = window[i];
    if (g.is_identity(a)) {
      f.arr_map[a] = h.id_of(f.obj_map[g.src(a)]);
      if (consistent(i)) arrows(i + 1);
      f.arr_map[a] = none;
      return;
    }
    for (Arr b : h.hom(f.obj_map[g.src(a)], f.obj_map[g.tgt(a)])) {
      f.arr_map[a] = b;
      if (consistent(i)) arrows(i + 1);
    }
    f.arr_map[a] = none;
  };
  objects = [&](Obj x) {
    if (x == g.object_count()) return arrows(0);
    for (Obj y = 0; y < h.object_count(); ++y) {
      f.obj_map[x] = y;
      objects(x + 1);
    }
  };
  objects(0);
  return count;
}

// ---------------------------------------------------------------------------
// Hand-rolled generators for property tests

/// A seeded source of small random structures.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin() { return below(2) == 1; }

  /// A finite group from a fixed menu.
  FiniteGroup group() {
    switch (below(5)) {
      case 0: return FiniteGroup::cyclic(1 + below(6));
      case 1: return FiniteGroup::symmetric(3);
      case 2: return FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
      case 3: return FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3));
      default: return FiniteGroup::cyclic(2);
    }
  }

  /// Transitive action groupoid of a random group or an indiscrete or
  /// disjoint-union groupoid; at most a few dozen arrows.
  FiniteGroupoid groupoid() {
    switch (below(5)) {
      case 0: return one_object(group());
      case 1: return indiscrete(1 + below(4));
      case 2: {
        const std::size_t n = 2 + below(2);
        return action_groupoid(FiniteGroup::cyclic(n), points(n), [n](std::size_t g, std::size_t x) { return (g + x) % n; });
      }
      case 3: return disjoint_union(one_object(FiniteGroup::cyclic(1 + below(3))), indiscrete(1 + below(3)));
      default: {
        const std::size_t n = 2 + below(4);
        std::vector<std::size_t> cls(n);
        for (auto& c : cls) c = below(2);
        return equivalence_relation(points(n), cls);
      }
    }
  }

  /// A random word over the generators of g of length at most max_len,
  /// composable, starting at `start`.
  Word word(const ReflexiveGraph& g, Obj start, std::size_t max_len) {
    Word w{start, {}};
    Obj at = start;
    const std::size_t len = below(max_len + 1);
    for (std::size_t i = 0; i < len; ++i) {
      std::vector<Letter> options;
      for (auto e : g.generators())
        for (bool inv : {false, true})
          if (letter_src(g, {e, inv}) == at) options.push_back({e, inv});
      if (options.empty()) break;
      Letter l = options[below(options.size())];
      w.letters.insert(w.letters.begin(), l);
      at = letter_tgt(g, l);
    }
    return w;
  }

  /// A reflexive graph with up to `objects` objects and `edges` generators.
  ReflexiveGraph graph(std::size_t objects, std::size_t edges) {
    const std::size_t n = 1 + below(objects);
    std::vector<Edge> es;
    const std::size_t m = below(edges + 1);
    for (std::size_t i = 0; i < m; ++i) es.push_back({"e" + std::to_string(i), below(n), below(n)});
    return ReflexiveGraph(points(n), es);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  static std::vector<std::string> points(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
    return out;
  }

  std::mt19937_64 rng_;
};

}  // namespace gpdkit::testing

#endif  // GPDKIT_TESTS_SUPPORT_HPP

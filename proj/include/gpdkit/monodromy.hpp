#ifndef GPDKIT_MONODROMY_HPP
#define GPDKIT_MONODROMY_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gpdkit/error.hpp"
#include "gpdkit/local_data.hpp"
#include "gpdkit/presentation.hpp"
#include "gpdkit/rewriting.hpp"

namespace gpdkit {

/// A map defined on the window W of G into a groupoid H. Entries for arrows
/// outside W are ignored and conventionally `none`.
struct LocalMorphism {
  std::vector<Obj> obj_map;
  std::vector<Arr> arr_map;
};

struct LocalMorphismCheck {
  bool local = true;
  std::vector<std::string> witness;
};

/// f preserves endpoints and identities, and f(uv) = f(u) f(v) whenever
/// u, v and uv all lie in W.
inline LocalMorphismCheck check_local_morphism(const LocalGroupoidData& d, const FiniteGroupoid& h,
                                               const LocalMorphism& f) {
  const auto& g = d.groupoid;
  if (f.obj_map.size() != g.object_count() || f.arr_map.size() != g.arrow_count())
    throw error(errc::partial_map, "map sizes do not match G");
  for (auto y : f.obj_map)
    if (y >= h.object_count()) throw error(errc::partial_map, "object image out of range");
  for (auto a : members(d.window))
    if (f.arr_map[a] >= h.arrow_count()) throw error(errc::partial_map, "undefined on " + g.arrow_name(a));
  for (auto a : members(d.window)) {
    const Arr fa = f.arr_map[a];
    if (h.src(fa) != f.obj_map[g.src(a)] || h.tgt(fa) != f.obj_map[g.tgt(a)]) return {false, {g.arrow_name(a)}};
  }
  for (Obj x = 0; x < g.object_count(); ++x)
    if (f.arr_map[g.id_of(x)] != h.id_of(f.obj_map[x])) return {false, {g.arrow_name(g.id_of(x))}};
  for (auto u : members(d.window))
    for (auto v : members(d.window)) {
      if (g.tgt(v) != g.src(u)) continue;
      const Arr uv = g.comp_raw(u, v);
      if (!d.window.test(uv)) continue;
      if (f.arr_map[uv] != h.comp_raw(f.arr_map[u], f.arr_map[v])) return {false, {g.arrow_name(u), g.arrow_name(v)}};
    }
  return {};
}

inline bool is_local_morphism(const LocalGroupoidData& d, const FiniteGroupoid& h, const LocalMorphism& f) {
  return check_local_morphism(d, h, f).local;
}

/// The monodromy groupoid M(G, W) as a presentation: generators are the
/// non-identity window arrows, relations [u][v] = [uv] whenever u, v and uv
/// all lie in W. `projection` sends [w] to w, `iprime` sends w to its
/// generator word (identities to empty words).
struct MonodromyResult {
  FpGroupoid presentation;
  FpToFinite projection;
  std::vector<std::optional<Word>> iprime;  // indexed by arrows of G
  std::vector<std::size_t> generator_of;    // arrow -> edge of the presentation, `none` if absent
  RewritingSystem rewriting;                // completed, hence confluent

  const Word& iprime_of(Arr a) const {
    if (a >= iprime.size() || !iprime[a]) throw error(errc::out_of_domain, "arrow outside the window");
    return *iprime[a];
  }
};

inline MonodromyResult monodromy(const LocalGroupoidData& d) {
  require_local_data(d);
  const auto& g = d.groupoid;
  std::vector<Edge> gens;
  std::vector<std::size_t> generator_of(g.arrow_count(), none);
  for (auto a : members(d.window)) {
    if (g.is_identity(a)) continue;
    generator_of[a] = g.object_count() + gens.size();
    gens.push_back({g.arrow_name(a), g.src(a), g.tgt(a)});
  }
  MonodromyResult out;
  out.presentation.graph = ReflexiveGraph(g.object_names(), gens);
  const auto& graph = out.presentation.graph;
  auto word_of = [&](Arr a) {
    return g.is_identity(a) ? Word{g.src(a), {}} : Word{g.src(a), {Letter{generator_of[a], false}}};
  };
  for (auto u : members(d.window))
    for (auto v : members(d.window)) {
      if (g.is_identity(u) || g.is_identity(v) || g.tgt(v) != g.src(u)) continue;
      const Arr uv = g.comp_raw(u, v);
      if (!d.window.test(uv)) continue;
      out.presentation.relations.push_back({concat(graph, word_of(u), word_of(v)), word_of(uv)});
    }
  out.projection.obj_map.resize(g.object_count());
  for (Obj x = 0; x < g.object_count(); ++x) out.projection.obj_map[x] = x;
  out.projection.edge_map.resize(graph.edge_count());
  for (Obj x = 0; x < g.object_count(); ++x) out.projection.edge_map[graph.identity_edge(x)] = g.id_of(x);
  for (auto a : members(d.window))
    if (!g.is_identity(a)) out.projection.edge_map[generator_of[a]] = a;
  out.iprime.resize(g.arrow_count());
  for (auto a : members(d.window)) out.iprime[a] = word_of(a);
  out.generator_of = std::move(generator_of);
  out.rewriting = confluent_system(out.presentation);
  return out;
}

/// The monodromy principle: a local morphism f: W -> H extends to the unique
/// morphism f' on M(G, W) with f' . iprime = f.
inline FpToFinite extend_local_morphism(const MonodromyResult& m, const LocalGroupoidData& d, const FiniteGroupoid& h,
                                        const LocalMorphism& f) {
  auto check = check_local_morphism(d, h, f);
  if (!check.local) {
    std::string w;
    for (const auto& s : check.witness) w += (w.empty() ? "" : ", ") + s;
    throw error(errc::not_local_morphism, "violated at " + w);
  }
  const auto& graph = m.presentation.graph;
  FpToFinite ext;
  ext.obj_map = f.obj_map;
  ext.edge_map.assign(graph.edge_count(), none);
  for (Obj x = 0; x < graph.object_count(); ++x) ext.edge_map[graph.identity_edge(x)] = h.id_of(f.obj_map[x]);
  for (auto a : members(d.window))
    if (m.generator_of[a] != none) ext.edge_map[m.generator_of[a]] = f.arr_map[a];
  auto report = fp_morphism_report(m.presentation, h, ext);
  if (!report.ok()) throw error(errc::not_local_morphism, "extension violates " + report.violations.front().law);
  return ext;
}

/// Finite model of M(G, W) when its normal-form language is finite.
inline FiniteGroupoid finite_monodromy(const MonodromyResult& m) { return finite_groupoid_of(m.rewriting); }

}  // namespace gpdkit

#endif  // GPDKIT_MONODROMY_HPP

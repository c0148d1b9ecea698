#ifndef GPDKIT_LOCAL_DATA_HPP
#define GPDKIT_LOCAL_DATA_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "gpdkit/error.hpp"
#include "gpdkit/groupoid.hpp"
#include "gpdkit/topology.hpp"

namespace gpdkit {

/// A groupoid G with a window W of arrows carrying a finite topology, and a
/// finite topology on the objects. Points of `window_topology` are the
/// window arrows in increasing arrow order; points of `object_topology` are
/// the objects of G.
struct LocalGroupoidData {
  FiniteGroupoid groupoid;
  PointSet window;
  FiniteTopology window_topology;
  FiniteTopology object_topology;

  std::vector<Arr> window_arrows() const { return members(window); }

  /// Position of arrow a among the window points; `none` outside W.
  std::size_t window_point(Arr a) const {
    if (a >= window.size() || !window.test(a)) return none;
    std::size_t k = 0;
    for (auto i = window.find_first(); i != a; i = window.find_next(i)) ++k;
    return k;
  }
};

/// Precomputed arrow <-> window-point translation.
class WindowIndex {
 public:
  explicit WindowIndex(const LocalGroupoidData& d) : to_point_(d.groupoid.arrow_count(), none) {
    for (auto a : members(d.window)) {
      to_point_[a] = to_arrow_.size();
      to_arrow_.push_back(a);
    }
  }
  std::size_t point(Arr a) const { return to_point_.at(a); }
  Arr arrow(std::size_t p) const { return to_arrow_.at(p); }
  bool contains(Arr a) const { return to_point_.at(a) != none; }
  std::size_t size() const { return to_arrow_.size(); }

  /// Minimal open neighbourhood of a window arrow, as a set of arrows.
  PointSet minimal_open_arrows(const LocalGroupoidData& d, Arr a) const {
    PointSet out(d.groupoid.arrow_count());
    for (auto p : members(d.window_topology.minimal_open(point(a)))) out.set(arrow(p));
    return out;
  }

 private:
  std::vector<std::size_t> to_point_;
  std::vector<Arr> to_arrow_;
};

/// Checks the invariants of the pair (G, W): G is a groupoid, W contains all
/// identities and is closed under inverses, the topologies have the right
/// points, the object topology is the one induced through the identities,
/// and source and target are continuous on W.
inline ValidationReport validate_local_data(const LocalGroupoidData& d) {
  ValidationReport r = validate_groupoid(d.groupoid);
  if (!r.ok()) return r;
  const auto& g = d.groupoid;
  if (d.window.size() != g.arrow_count()) {
    r.add("window-size", {});
    return r;
  }
  for (Obj x = 0; x < g.object_count(); ++x)
    if (!d.window.test(g.id_of(x))) r.add("window-identities", {g.object_name(x)});
  for (auto a : members(d.window))
    if (!d.window.test(g.inv(a))) r.add("window-inverses", {g.arrow_name(a)});
  WindowIndex wi(d);
  if (d.window_topology.size() != wi.size()) {
    r.add("window-topology-points", {});
    return r;
  }
  for (std::size_t p = 0; p < wi.size(); ++p)
    if (d.window_topology.name(p) != g.arrow_name(wi.arrow(p))) r.add("window-topology-names", {d.window_topology.name(p)});
  if (d.object_topology.size() != g.object_count()) {
    r.add("object-topology-points", {});
    return r;
  }
  for (Obj x = 0; x < g.object_count(); ++x)
    if (d.object_topology.name(x) != g.object_name(x)) r.add("object-topology-names", {d.object_topology.name(x)});
  if (!r.ok()) return r;
  for (Obj x = 0; x < g.object_count(); ++x) {
    PointSet induced(g.object_count());
    const auto& around = d.window_topology.minimal_open(wi.point(g.id_of(x)));
    for (Obj y = 0; y < g.object_count(); ++y)
      if (around.test(wi.point(g.id_of(y)))) induced.set(y);
    if (induced != d.object_topology.minimal_open(x)) r.add("object-topology-induced", {g.object_name(x)});
  }
  const PointSet all_w = d.window_topology.whole();
  if (!continuous_on(d.window_topology, all_w, d.object_topology, [&](std::size_t p) { return g.src(wi.arrow(p)); }))
    r.add("source-continuity", {});
  if (!continuous_on(d.window_topology, all_w, d.object_topology, [&](std::size_t p) { return g.tgt(wi.arrow(p)); }))
    r.add("target-continuity", {});
  return r;
}

inline void require_local_data(const LocalGroupoidData& d) {
  auto r = validate_local_data(d);
  if (!r.ok()) throw error(errc::invalid_local_data, r.violations.front().law);
}

/// Window = all arrows, both topologies discrete.
inline LocalGroupoidData discrete_full_window(const FiniteGroupoid& g) {
  PointSet w(g.arrow_count());
  w.set();
  return {g, w, FiniteTopology::discrete(g.arrow_names()), FiniteTopology::discrete(g.object_names())};
}

/// Discrete topologies on a given window.
inline LocalGroupoidData discrete_window(const FiniteGroupoid& g, const PointSet& window) {
  std::vector<std::string> names;
  for (auto a : members(window)) names.push_back(g.arrow_name(a));
  return {g, window, FiniteTopology::discrete(names), FiniteTopology::discrete(g.object_names())};
}

}  // namespace gpdkit

#endif  // GPDKIT_LOCAL_DATA_HPP

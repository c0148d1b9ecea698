#ifndef GPDKIT_GROUPOID_HPP
#define GPDKIT_GROUPOID_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "gpdkit/error.hpp"
#include "gpdkit/group.hpp"

namespace gpdkit {

using Obj = std::size_t;
using Arr = std::size_t;
inline constexpr std::size_t none = static_cast<std::size_t>(-1);

struct ArrowData {
  std::string name;
  Obj src;
  Obj tgt;
};

struct Violation {
  std::string law;
  std::vector<std::string> witnesses;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  void add(std::string law, std::vector<std::string> witnesses) {
    violations.push_back({std::move(law), std::move(witnesses)});
  }
  bool cites(const std::string& law) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.law == law; });
  }
};

/// A groupoid given by explicit tables. Composition follows the convention
/// that for g: x -> y and h: y -> z the composite is written hg: x -> z, so
/// `comp(h, g)` applies g first.
///
/// The tables are stored exactly as supplied; `validate_groupoid` reports
/// whether they satisfy the axioms.
class FiniteGroupoid {
 public:
  FiniteGroupoid() = default;

  FiniteGroupoid(std::vector<std::string> objects, std::vector<ArrowData> arrows, std::vector<Arr> id_of,
                 std::vector<Arr> inv, std::vector<Arr> comp)
      : objects_(std::move(objects)),
        arrows_(std::move(arrows)),
        id_of_(std::move(id_of)),
        inv_(std::move(inv)),
        comp_(std::move(comp)) {
    for (std::size_t i = 0; i < objects_.size(); ++i) object_index_.emplace(objects_[i], i);
    for (std::size_t i = 0; i < arrows_.size(); ++i) arrow_index_.emplace(arrows_[i].name, i);
  }

  /// Fills the composition table from `compose` on composable pairs and
  /// locates inverses by search.
  static FiniteGroupoid build(std::vector<std::string> objects, std::vector<ArrowData> arrows,
                              std::vector<Arr> id_of, const std::function<Arr(Arr, Arr)>& compose) {
    const std::size_t m = arrows.size();
    std::vector<Arr> comp(m * m, none);
    for (Arr h = 0; h < m; ++h)
      for (Arr g = 0; g < m; ++g)
        if (arrows[g].tgt == arrows[h].src) comp[h * m + g] = compose(h, g);
    std::vector<Arr> inv(m, none);
    for (Arr g = 0; g < m; ++g)
      for (Arr h = 0; h < m && inv[g] == none; ++h)
        if (arrows[h].src == arrows[g].tgt && arrows[h].tgt == arrows[g].src &&
            comp[h * m + g] == id_of[arrows[g].src] && comp[g * m + h] == id_of[arrows[g].tgt])
          inv[g] = h;
    return FiniteGroupoid(std::move(objects), std::move(arrows), std::move(id_of), std::move(inv), std::move(comp));
  }

  std::size_t object_count() const { return objects_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }
  const std::string& object_name(Obj x) const { return objects_.at(x); }
  const std::string& arrow_name(Arr a) const { return arrows_.at(a).name; }
  const std::vector<std::string>& object_names() const { return objects_; }
  std::vector<std::string> arrow_names() const {
    std::vector<std::string> out;
    for (const auto& a : arrows_) out.push_back(a.name);
    return out;
  }
  const std::vector<ArrowData>& arrows() const { return arrows_; }

  Obj src(Arr a) const { return arrows_[a].src; }
  Obj tgt(Arr a) const { return arrows_[a].tgt; }
  Arr id_of(Obj x) const { return id_of_[x]; }
  Arr inv(Arr a) const { return inv_[a]; }
  bool is_identity(Arr a) const { return src(a) == tgt(a) && id_of_[src(a)] == a; }

  /// Raw table lookup; `none` when the table has no entry.
  Arr comp_raw(Arr h, Arr g) const { return comp_[h * arrows_.size() + g]; }

  Arr compose(Arr h, Arr g) const {
    if (h >= arrow_count() || g >= arrow_count()) throw error(errc::unknown_arrow, "compose");
    if (tgt(g) != src(h) || comp_raw(h, g) == none)
      throw error(errc::not_composable, arrow_name(h) + " after " + arrow_name(g));
    return comp_raw(h, g);
  }

  Obj object_index(const std::string& name) const {
    auto it = object_index_.find(name);
    if (it == object_index_.end()) throw error(errc::unknown_object, name);
    return it->second;
  }

  Arr arrow_index(const std::string& name) const {
    auto it = arrow_index_.find(name);
    if (it == arrow_index_.end()) throw error(errc::unknown_arrow, name);
    return it->second;
  }

  bool has_object(const std::string& name) const { return object_index_.count(name) > 0; }
  bool has_arrow(const std::string& name) const { return arrow_index_.count(name) > 0; }

  /// Arrows with source x.
  std::vector<Arr> star(Obj x) const {
    std::vector<Arr> out;
    for (Arr a = 0; a < arrow_count(); ++a)
      if (src(a) == x) out.push_back(a);
    return out;
  }

  std::vector<Arr> hom(Obj x, Obj y) const {
    std::vector<Arr> out;
    for (Arr a = 0; a < arrow_count(); ++a)
      if (src(a) == x && tgt(a) == y) out.push_back(a);
    return out;
  }

  const std::vector<Arr>& id_table() const { return id_of_; }
  const std::vector<Arr>& inv_table() const { return inv_; }
  const std::vector<Arr>& comp_table() const { return comp_; }

  /// Copy with one inverse entry overwritten; used to build broken instances.
  FiniteGroupoid with_inverse(Arr a, Arr value) const {
    auto inv = inv_;
    inv.at(a) = value;
    return FiniteGroupoid(objects_, arrows_, id_of_, std::move(inv), comp_);
  }

 private:
  std::vector<std::string> objects_;
  std::vector<ArrowData> arrows_;
  std::vector<Arr> id_of_;
  std::vector<Arr> inv_;
  std::vector<Arr> comp_;
  std::map<std::string, Obj> object_index_;
  std::map<std::string, Arr> arrow_index_;
};

inline std::string identity_name(const std::string& object) { return "id:" + object; }

/// Lists every violated axiom with witnesses. Nothing is assumed about the
/// tables beyond their sizes.
inline ValidationReport validate_groupoid(const FiniteGroupoid& g) {
  ValidationReport r;
  const std::size_t n = g.object_count(), m = g.arrow_count();
  if (g.id_table().size() != n || g.inv_table().size() != m || g.comp_table().size() != m * m) {
    r.add("table-size", {});
    return r;
  }
  for (Arr a = 0; a < m; ++a)
    if (g.src(a) >= n || g.tgt(a) >= n) r.add("endpoint-range", {g.arrow_name(a)});
  for (Obj x = 0; x < n; ++x)
    if (g.id_of(x) >= m) r.add("identity-range", {g.object_name(x)});
  for (Arr a = 0; a < m; ++a)
    if (g.inv(a) >= m) r.add("inverse-range", {g.arrow_name(a)});
  for (Arr v : g.comp_table())
    if (v != none && v >= m) {
      r.add("composition-range", {});
      break;
    }
  if (!r.ok()) return r;

  for (Obj x = 0; x < n; ++x) {
    Arr e = g.id_of(x);
    if (g.src(e) != x || g.tgt(e) != x) r.add("identity-endpoints", {g.object_name(x), g.arrow_name(e)});
  }
  for (Arr h = 0; h < m; ++h)
    for (Arr k = 0; k < m; ++k) {
      const bool composable = g.tgt(k) == g.src(h);
      const Arr hk = g.comp_raw(h, k);
      if (composable != (hk != none)) {
        r.add("composition-domain", {g.arrow_name(h), g.arrow_name(k)});
        continue;
      }
      if (hk != none && (g.src(hk) != g.src(k) || g.tgt(hk) != g.tgt(h)))
        r.add("composite-endpoints", {g.arrow_name(h), g.arrow_name(k)});
    }
  if (!r.ok()) return r;

  for (Arr c = 0; c < m; ++c)
    for (Arr b = 0; b < m; ++b) {
      if (g.tgt(b) != g.src(c)) continue;
      const Arr cb = g.comp_raw(c, b);
      for (Arr a = 0; a < m; ++a) {
        if (g.tgt(a) != g.src(b)) continue;
        if (g.comp_raw(cb, a) != g.comp_raw(c, g.comp_raw(b, a)))
          r.add("associativity", {g.arrow_name(c), g.arrow_name(b), g.arrow_name(a)});
      }
    }
  for (Arr a = 0; a < m; ++a) {
    if (g.comp_raw(g.id_of(g.tgt(a)), a) != a) r.add("left-identity", {g.arrow_name(a)});
    if (g.comp_raw(a, g.id_of(g.src(a))) != a) r.add("right-identity", {g.arrow_name(a)});
    const Arr b = g.inv(a);
    if (g.src(b) != g.tgt(a) || g.tgt(b) != g.src(a) || g.comp_raw(b, a) != g.id_of(g.src(a)) ||
        g.comp_raw(a, b) != g.id_of(g.tgt(a)))
      r.add("inverse", {g.arrow_name(a), g.arrow_name(b)});
  }
  return r;
}

/// The group of arrows x -> x; element i of `group` is arrow `arrows[i]`.
struct VertexGroup {
  FiniteGroup group;
  std::vector<Arr> arrows;
};

inline VertexGroup vertex_group(const FiniteGroupoid& g, Obj x) {
  if (x >= g.object_count()) throw error(errc::unknown_object, std::to_string(x));
  VertexGroup vg;
  vg.arrows = g.hom(x, x);
  std::map<Arr, std::size_t> pos;
  for (std::size_t i = 0; i < vg.arrows.size(); ++i) pos[vg.arrows[i]] = i;
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> table(vg.arrows.size(), std::vector<std::size_t>(vg.arrows.size()));
  for (std::size_t i = 0; i < vg.arrows.size(); ++i) {
    names.push_back(g.arrow_name(vg.arrows[i]));
    for (std::size_t j = 0; j < vg.arrows.size(); ++j)
      table[i][j] = pos.at(g.compose(vg.arrows[i], vg.arrows[j]));
  }
  vg.group = FiniteGroup::from_table(std::move(names), std::move(table));
  return vg;
}

inline VertexGroup vertex_group(const FiniteGroupoid& g, const std::string& x) {
  return vertex_group(g, g.object_index(x));
}

/// Conjugation a -> k a k^-1 along k: x -> y, as a map between vertex groups.
inline std::vector<std::size_t> conjugation_map(const FiniteGroupoid& g, Arr k, const VertexGroup& at_src,
                                                const VertexGroup& at_tgt) {
  std::vector<std::size_t> f;
  for (Arr a : at_src.arrows) {
    Arr c = g.compose(g.compose(k, a), g.inv(k));
    f.push_back(static_cast<std::size_t>(std::find(at_tgt.arrows.begin(), at_tgt.arrows.end(), c) -
                                         at_tgt.arrows.begin()));
  }
  return f;
}

/// Partition of the objects into connected components, each block sorted and
/// blocks ordered by their least member.
inline std::vector<std::vector<Obj>> components(const FiniteGroupoid& g) {
  std::vector<Obj> parent(g.object_count());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<Obj(Obj)> find = [&](Obj x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (Arr a = 0; a < g.arrow_count(); ++a) {
    Obj s = find(g.src(a)), t = find(g.tgt(a));
    if (s != t) parent[std::max(s, t)] = std::min(s, t);
  }
  std::map<Obj, std::vector<Obj>> blocks;
  for (Obj x = 0; x < g.object_count(); ++x) blocks[find(x)].push_back(x);
  std::vector<std::vector<Obj>> out;
  for (auto& [root, block] : blocks) out.push_back(std::move(block));
  return out;
}

struct GroupoidMorphism {
  std::vector<Obj> obj_map;
  std::vector<Arr> arr_map;
};

inline ValidationReport morphism_report(const FiniteGroupoid& from, const FiniteGroupoid& to,
                                        const GroupoidMorphism& p) {
  ValidationReport r;
  if (p.obj_map.size() != from.object_count() || p.arr_map.size() != from.arrow_count()) {
    r.add("map-size", {});
    return r;
  }
  for (auto y : p.obj_map)
    if (y >= to.object_count()) {
      r.add("object-range", {});
      return r;
    }
  for (auto b : p.arr_map)
    if (b >= to.arrow_count()) {
      r.add("arrow-range", {});
      return r;
    }
  for (Arr a = 0; a < from.arrow_count(); ++a)
    if (to.src(p.arr_map[a]) != p.obj_map[from.src(a)] || to.tgt(p.arr_map[a]) != p.obj_map[from.tgt(a)])
      r.add("endpoints", {from.arrow_name(a)});
  for (Obj x = 0; x < from.object_count(); ++x)
    if (p.arr_map[from.id_of(x)] != to.id_of(p.obj_map[x])) r.add("identity", {from.object_name(x)});
  if (!r.ok()) return r;
  for (Arr h = 0; h < from.arrow_count(); ++h)
    for (Arr g = 0; g < from.arrow_count(); ++g) {
      if (from.tgt(g) != from.src(h)) continue;
      if (p.arr_map[from.comp_raw(h, g)] != to.comp_raw(p.arr_map[h], p.arr_map[g]))
        r.add("composition", {from.arrow_name(h), from.arrow_name(g)});
    }
  return r;
}

inline bool is_morphism(const FiniteGroupoid& from, const FiniteGroupoid& to, const GroupoidMorphism& p) {
  return morphism_report(from, to, p).ok();
}

inline bool is_isomorphism(const FiniteGroupoid& from, const FiniteGroupoid& to, const GroupoidMorphism& p) {
  if (from.object_count() != to.object_count() || from.arrow_count() != to.arrow_count()) return false;
  if (!is_morphism(from, to, p)) return false;
  std::vector<bool> ho(to.object_count()), ha(to.arrow_count());
  for (auto y : p.obj_map) ho[y] = true;
  for (auto b : p.arr_map) ha[b] = true;
  return std::all_of(ho.begin(), ho.end(), [](bool b) { return b; }) &&
         std::all_of(ha.begin(), ha.end(), [](bool b) { return b; });
}

/// A morphism is a covering iff it maps the star of every object
/// bijectively onto the star of the image object.
inline bool is_covering(const FiniteGroupoid& cover, const FiniteGroupoid& base, const GroupoidMorphism& p) {
  auto report = morphism_report(cover, base, p);
  if (!report.ok()) throw error(errc::invalid_morphism, report.violations.front().law);
  for (Obj x = 0; x < cover.object_count(); ++x) {
    auto upstairs = cover.star(x);
    auto downstairs = base.star(p.obj_map[x]);
    if (upstairs.size() != downstairs.size()) return false;
    std::vector<Arr> image;
    for (Arr a : upstairs) image.push_back(p.arr_map[a]);
    std::sort(image.begin(), image.end());
    if (std::adjacent_find(image.begin(), image.end()) != image.end()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Standard instances

/// Exactly one arrow between each ordered pair of objects 0..n-1.
inline FiniteGroupoid indiscrete(std::size_t n) {
  if (n == 0) throw error(errc::empty_not_allowed, "indiscrete groupoid needs at least one object");
  std::vector<std::string> objects;
  for (std::size_t i = 0; i < n; ++i) objects.push_back(std::to_string(i));
  std::vector<ArrowData> arrows;
  std::vector<Arr> id_of(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) id_of[i] = arrows.size();
      arrows.push_back({i == j ? identity_name(objects[i]) : objects[i] + "->" + objects[j], i, j});
    }
  // arrow i -> j sits at index i*n + j
  return FiniteGroupoid::build(objects, arrows, id_of, [&](Arr h, Arr g) {
    return arrows[g].src * n + arrows[h].tgt;
  });
}

/// The one-object groupoid with vertex group `group`; comp(h, g) = h*g.
inline FiniteGroupoid one_object(const FiniteGroup& group, const std::string& object = "*") {
  std::vector<ArrowData> arrows;
  for (std::size_t a = 0; a < group.order(); ++a)
    arrows.push_back({a == group.identity() ? identity_name(object) : group.name(a), 0, 0});
  return FiniteGroupoid::build({object}, arrows, {group.identity()},
                               [&](Arr h, Arr g) { return group.mul(h, g); });
}

/// Action groupoid of `group` acting on points 0..n-1 by `act(g, x)`;
/// arrow (g, x): x -> g.x sits at index g*n + x.
inline FiniteGroupoid action_groupoid(const FiniteGroup& group, std::vector<std::string> points,
                                      const std::function<std::size_t(std::size_t, std::size_t)>& act) {
  const std::size_t n = points.size();
  std::vector<ArrowData> arrows;
  std::vector<Arr> id_of(n);
  for (std::size_t g = 0; g < group.order(); ++g)
    for (std::size_t x = 0; x < n; ++x) {
      if (g == group.identity()) id_of[x] = arrows.size();
      arrows.push_back({g == group.identity() ? identity_name(points[x]) : group.name(g) + "@" + points[x], x,
                        act(g, x)});
    }
  return FiniteGroupoid::build(points, arrows, id_of, [&](Arr h, Arr g) {
    return group.mul(h / n, g / n) * n + g % n;
  });
}

/// Groupoid of the equivalence relation with classes given by `cls`:
/// one arrow x -> y whenever cls[x] == cls[y], named "x~y".
inline FiniteGroupoid equivalence_relation(std::vector<std::string> points, const std::vector<std::size_t>& cls) {
  const std::size_t n = points.size();
  std::vector<ArrowData> arrows;
  std::vector<Arr> id_of(n);
  std::map<std::pair<Obj, Obj>, Arr> index;
  for (Obj x = 0; x < n; ++x)
    for (Obj y = 0; y < n; ++y)
      if (cls[x] == cls[y]) {
        if (x == y) id_of[x] = arrows.size();
        index[{x, y}] = arrows.size();
        arrows.push_back({x == y ? identity_name(points[x]) : points[x] + "~" + points[y], x, y});
      }
  return FiniteGroupoid::build(points, arrows, id_of, [&](Arr h, Arr g) {
    return index.at({arrows[g].src, arrows[h].tgt});
  });
}

/// Disjoint union with objects and arrows prefixed "L." and "R.".
inline FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  std::vector<std::string> objects;
  std::vector<ArrowData> arrows;
  std::vector<Arr> id_of;
  const std::size_t na = a.object_count(), ma = a.arrow_count();
  auto rename = [](const std::string& prefix, const std::string& name) {
    if (name.rfind("id:", 0) == 0) return "id:" + prefix + name.substr(3);
    return prefix + name;
  };
  for (const auto& o : a.object_names()) objects.push_back("L." + o);
  for (const auto& o : b.object_names()) objects.push_back("R." + o);
  for (const auto& d : a.arrows()) arrows.push_back({rename("L.", d.name), d.src, d.tgt});
  for (const auto& d : b.arrows()) arrows.push_back({rename("R.", d.name), d.src + na, d.tgt + na});
  for (Obj x = 0; x < na; ++x) id_of.push_back(a.id_of(x));
  for (Obj x = 0; x < b.object_count(); ++x) id_of.push_back(b.id_of(x) + ma);
  return FiniteGroupoid::build(objects, arrows, id_of, [&](Arr h, Arr g) {
    if (h < ma) return a.comp_raw(h, g);
    return b.comp_raw(h - ma, g - ma) + ma;
  });
}

}  // namespace gpdkit

#endif  // GPDKIT_GROUPOID_HPP

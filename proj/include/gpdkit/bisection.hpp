#ifndef GPDKIT_BISECTION_HPP
#define GPDKIT_BISECTION_HPP

#include <algorithm>
#include <cstddef>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gpdkit/error.hpp"
#include "gpdkit/local_data.hpp"

namespace gpdkit {

/// A partial section of the source map: values[x] is s(x), or `none` off
/// the domain. Equality is extensional.
struct LocalBisection {
  std::vector<Arr> values;

  bool defined(Obj x) const { return x < values.size() && values[x] != none; }
  Arr at(Obj x) const {
    if (!defined(x)) throw error(errc::out_of_domain, "point outside the domain of the bisection");
    return values[x];
  }
  PointSet domain() const {
    PointSet d(values.size());
    for (Obj x = 0; x < values.size(); ++x)
      if (values[x] != none) d.set(x);
    return d;
  }
  bool empty() const {
    return std::all_of(values.begin(), values.end(), [](Arr a) { return a == none; });
  }

  friend bool operator==(const LocalBisection&, const LocalBisection&) = default;
  friend auto operator<=>(const LocalBisection&, const LocalBisection&) = default;
};

struct BisectionHash {
  std::size_t operator()(const LocalBisection& s) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Arr a : s.values) h = (h ^ (a + 0x9e3779b97f4a7c15ull)) * 1099511628211ull;
    return h;
  }
};

inline LocalBisection identity_bisection(const FiniteGroupoid& g, const PointSet& domain) {
  LocalBisection s{std::vector<Arr>(g.object_count(), none)};
  for (auto x : members(domain)) s.values[x] = g.id_of(x);
  return s;
}

inline LocalBisection identity_bisection(const FiniteGroupoid& g) {
  PointSet all(g.object_count());
  all.set();
  return identity_bisection(g, all);
}

inline LocalBisection restrict_to(const LocalBisection& s, const PointSet& u) {
  LocalBisection r{std::vector<Arr>(s.values.size(), none)};
  for (auto x : members(u)) r.values[x] = s.at(x);
  return r;
}

/// (s*t)(x) = s(beta t x) t(x) on {x in dom t : beta t x in dom s}.
inline LocalBisection compose_bisections(const FiniteGroupoid& g, const LocalBisection& s, const LocalBisection& t) {
  LocalBisection r{std::vector<Arr>(g.object_count(), none)};
  for (Obj x = 0; x < g.object_count(); ++x) {
    if (!t.defined(x)) continue;
    const Arr tx = t.values[x];
    const Obj y = g.tgt(tx);
    if (s.defined(y)) r.values[x] = g.comp_raw(s.values[y], tx);
  }
  return r;
}

/// s'(beta s x) = s(x)^-1, defined on the image of beta s.
inline LocalBisection relative_inverse(const FiniteGroupoid& g, const LocalBisection& s) {
  LocalBisection r{std::vector<Arr>(g.object_count(), none)};
  for (Obj x = 0; x < g.object_count(); ++x)
    if (s.defined(x)) r.values[g.tgt(s.values[x])] = g.inv(s.values[x]);
  return r;
}

/// L_s(g) = s(beta g) g.
inline Arr left_translate(const FiniteGroupoid& g, const LocalBisection& s, Arr a) {
  const Obj y = g.tgt(a);
  if (!s.defined(y)) throw error(errc::out_of_domain, "target of " + g.arrow_name(a) + " is outside the domain");
  return g.comp_raw(s.values[y], a);
}

/// Checks the bisection axioms: alpha s = id, open domain, and beta s a
/// homeomorphism of the domain onto an open set of objects.
inline bool is_bisection(const LocalGroupoidData& d, const LocalBisection& s) {
  const auto& g = d.groupoid;
  if (s.values.size() != g.object_count()) return false;
  for (Obj x = 0; x < g.object_count(); ++x)
    if (s.defined(x) && (s.values[x] >= g.arrow_count() || g.src(s.values[x]) != x)) return false;
  const PointSet dom = s.domain();
  if (!d.object_topology.is_open(dom)) return false;
  return is_open_embedding(d.object_topology, dom, d.object_topology,
                           [&](std::size_t x) { return g.tgt(s.values[x]); });
}

/// A bisection with values in W, continuous into the topology of W.
inline bool is_w_bisection(const LocalGroupoidData& d, const WindowIndex& wi, const LocalBisection& s) {
  if (!is_bisection(d, s)) return false;
  const PointSet dom = s.domain();
  for (auto x : members(dom))
    if (!wi.contains(s.values[x])) return false;
  return continuous_on(d.object_topology, dom, d.window_topology, [&](std::size_t x) { return wi.point(s.values[x]); });
}

/// All W-bisections with domain exactly `u` (an open set of objects), in
/// lexicographic order of their value vectors. `pin` optionally fixes the
/// value at one point.
inline std::vector<LocalBisection> w_bisections_on(const LocalGroupoidData& d, const WindowIndex& wi,
                                                   const PointSet& u, std::pair<Obj, Arr> pin = {none, none}) {
  const auto& g = d.groupoid;
  if (!d.object_topology.is_open(u)) throw error(errc::invalid_topology, "domain is not open");
  const auto pts = members(u);
  std::vector<std::vector<Arr>> choices(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i] == pin.first) {
      choices[i] = {pin.second};
      continue;
    }
    for (Arr a : g.star(pts[i]))
      if (wi.contains(a)) choices[i].push_back(a);
  }
  std::vector<LocalBisection> out;
  LocalBisection s{std::vector<Arr>(g.object_count(), none)};
  std::vector<bool> hit(g.object_count(), false);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == pts.size()) {
      if (is_w_bisection(d, wi, s)) out.push_back(s);
      return;
    }
    const Obj x = pts[i];
    for (Arr a : choices[i]) {
      const Obj y = g.tgt(a);
      if (hit[y]) continue;
      // continuity towards points already chosen inside U_x
      bool ok = true;
      const auto& around = d.window_topology.minimal_open(wi.point(a));
      for (std::size_t j = 0; j < i && ok; ++j)
        if (d.object_topology.minimal_open(x).test(pts[j]) && !around.test(wi.point(s.values[pts[j]]))) ok = false;
      if (!ok) continue;
      hit[y] = true;
      s.values[x] = a;
      rec(i + 1);
      s.values[x] = none;
      hit[y] = false;
    }
  };
  rec(0);
  return out;
}

/// Every W-bisection, over every open domain (the empty one included).
inline std::vector<LocalBisection> w_bisections(const LocalGroupoidData& d) {
  require_local_data(d);
  WindowIndex wi(d);
  std::vector<LocalBisection> out;
  for (const auto& u : d.object_topology.opens())
    for (auto& s : w_bisections_on(d, wi, u)) out.push_back(std::move(s));
  std::sort(out.begin(), out.end());
  return out;
}

/// True iff every w in W is the value at alpha(w) of some W-bisection.
/// Restricting a bisection to the minimal open of alpha(w) keeps it a
/// W-bisection, so only that domain is searched.
inline bool is_sectionable(const LocalGroupoidData& d) {
  require_local_data(d);
  WindowIndex wi(d);
  const auto& g = d.groupoid;
  for (auto w : members(d.window)) {
    const Obj x = g.src(w);
    if (w_bisections_on(d, wi, d.object_topology.minimal_open(x), {x, w}).empty()) return false;
  }
  return true;
}

/// The W-arrow that no W-bisection reaches, if any.
inline std::optional<Arr> unsectionable_arrow(const LocalGroupoidData& d) {
  WindowIndex wi(d);
  const auto& g = d.groupoid;
  for (auto w : members(d.window)) {
    const Obj x = g.src(w);
    if (w_bisections_on(d, wi, d.object_topology.minimal_open(x), {x, w}).empty()) return w;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Inverse semigroups of bisections

struct SemigroupReport {
  std::vector<std::string> failures;
  std::size_t idempotents = 0;
  bool ok() const { return failures.empty(); }
};

/// A finite set of bisections closed under * and relative inverse.
class InverseSemigroup {
 public:
  InverseSemigroup() = default;
  InverseSemigroup(const FiniteGroupoid& g, std::vector<LocalBisection> elements) : g_(&g), elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);
  }

  std::size_t size() const { return elements_.size(); }
  const std::vector<LocalBisection>& elements() const { return elements_; }
  const LocalBisection& element(std::size_t i) const { return elements_.at(i); }
  bool contains(const LocalBisection& s) const { return index_.count(s) > 0; }
  std::size_t index_of(const LocalBisection& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) throw error(errc::out_of_domain, "bisection is not in the semigroup");
    return it->second;
  }
  std::size_t product(std::size_t i, std::size_t j) const {
    return index_of(compose_bisections(*g_, elements_[i], elements_[j]));
  }
  std::size_t inverse(std::size_t i) const { return index_of(relative_inverse(*g_, elements_[i])); }

  bool is_idempotent(std::size_t i) const { return product(i, i) == i; }

  /// ss's = s, s'ss' = s' for every s, and idempotents commute.
  SemigroupReport axiom_report() const {
    SemigroupReport r;
    std::vector<std::size_t> idem;
    for (std::size_t i = 0; i < size(); ++i) {
      const std::size_t j = inverse(i);
      if (product(product(i, j), i) != i) r.failures.push_back("s s' s != s at element " + std::to_string(i));
      if (product(product(j, i), j) != j) r.failures.push_back("s' s s' != s' at element " + std::to_string(i));
      if (is_idempotent(i)) idem.push_back(i);
    }
    r.idempotents = idem.size();
    for (std::size_t a = 0; a < idem.size(); ++a)
      for (std::size_t b = a + 1; b < idem.size(); ++b)
        if (product(idem[a], idem[b]) != product(idem[b], idem[a]))
          r.failures.push_back("idempotents " + std::to_string(idem[a]) + ", " + std::to_string(idem[b]) +
                               " do not commute");
    return r;
  }

 private:
  const FiniteGroupoid* g_ = nullptr;
  std::vector<LocalBisection> elements_;
  std::unordered_map<LocalBisection, std::size_t, BisectionHash> index_;
};

/// Closure of `gens` and their relative inverses under *. Throws
/// NotFiniteOnInstance when more than `max_elements` elements appear.
inline InverseSemigroup generate_semigroup(const FiniteGroupoid& g, const std::vector<LocalBisection>& gens,
                                           std::size_t max_elements = 200000) {
  std::unordered_map<LocalBisection, std::size_t, BisectionHash> seen;
  std::vector<LocalBisection> elems;
  std::deque<std::size_t> queue;
  auto add = [&](LocalBisection s) {
    if (seen.count(s)) return;
    seen.emplace(s, elems.size());
    queue.push_back(elems.size());
    elems.push_back(std::move(s));
    if (elems.size() > max_elements)
      throw error(errc::not_finite_on_instance, "semigroup closure exceeds " + std::to_string(max_elements));
  };
  std::vector<LocalBisection> base;
  for (const auto& s : gens) {
    base.push_back(s);
    base.push_back(relative_inverse(g, s));
  }
  for (const auto& s : base) add(s);
  // every element is a product of base elements, so multiplying new
  // elements by the base on both sides reaches the closure
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (const auto& b : base) {
      add(compose_bisections(g, elems[i], b));
      add(compose_bisections(g, b, elems[i]));
    }
  }
  return InverseSemigroup(g, std::move(elems));
}

}  // namespace gpdkit

#endif  // GPDKIT_BISECTION_HPP

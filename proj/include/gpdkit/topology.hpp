#ifndef GPDKIT_TOPOLOGY_HPP
#define GPDKIT_TOPOLOGY_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "gpdkit/error.hpp"

namespace gpdkit {

using PointSet = boost::dynamic_bitset<>;

inline PointSet make_set(std::size_t n, std::initializer_list<std::size_t> members) {
  PointSet s(n);
  for (auto m : members) s.set(m);
  return s;
}

inline PointSet make_set(std::size_t n, std::span<const std::size_t> members) {
  PointSet s(n);
  for (auto m : members) s.set(m);
  return s;
}

inline std::vector<std::size_t> members(const PointSet& s) {
  std::vector<std::size_t> out;
  out.reserve(s.count());
  for (auto i = s.find_first(); i != PointSet::npos; i = s.find_next(i)) out.push_back(i);
  return out;
}

/// A topology on a finite set of named points.
///
/// A finite topology is determined by the minimal open neighbourhood U_x of
/// each point: a set is open iff it contains U_x for each of its points.
/// Both the input family (when one was given) and the minimal opens are kept.
class FiniteTopology {
 public:
  FiniteTopology() = default;

  /// Validates that `opens` contains the empty set and the whole space and is
  /// closed under binary unions and intersections.
  static FiniteTopology from_opens(std::vector<std::string> names, const std::vector<PointSet>& opens) {
    const std::size_t n = names.size();
    std::set<PointSet> family(opens.begin(), opens.end());
    for (const auto& o : family)
      if (o.size() != n) throw error(errc::invalid_topology, "open set has the wrong universe size");
    PointSet empty(n), whole(n);
    whole.set();
    if (!family.count(empty)) throw error(errc::invalid_topology, "empty set is not open");
    if (!family.count(whole)) throw error(errc::invalid_topology, "whole space is not open");
    for (const auto& a : family)
      for (const auto& b : family) {
        if (!family.count(a | b)) throw error(errc::invalid_topology, "not closed under union");
        if (!family.count(a & b)) throw error(errc::invalid_topology, "not closed under intersection");
      }
    std::vector<PointSet> minimal(n, whole);
    for (const auto& o : family)
      for (auto x : members(o)) minimal[x] &= o;
    FiniteTopology t(std::move(names), std::move(minimal));
    t.family_.assign(family.begin(), family.end());
    return t;
  }

  /// Builds the topology generated by `subbase`: U_x is the intersection of
  /// the subbase members containing x (the whole space if there are none).
  static FiniteTopology from_subbase(std::vector<std::string> names, const std::vector<PointSet>& subbase) {
    const std::size_t n = names.size();
    PointSet whole(n);
    whole.set();
    std::vector<PointSet> minimal(n, whole);
    for (const auto& s : subbase)
      for (auto x : members(s)) minimal[x] &= s;
    return FiniteTopology(std::move(names), std::move(minimal));
  }

  /// `minimal[x]` must contain x and be a union of minimal opens itself
  /// (y in U_x implies U_y inside U_x).
  static FiniteTopology from_minimal_opens(std::vector<std::string> names, std::vector<PointSet> minimal) {
    const std::size_t n = names.size();
    if (minimal.size() != n) throw error(errc::invalid_topology, "one minimal open per point required");
    for (std::size_t x = 0; x < n; ++x) {
      if (minimal[x].size() != n || !minimal[x].test(x))
        throw error(errc::invalid_topology, "minimal open of " + names[x] + " does not contain it");
      for (auto y : members(minimal[x]))
        if (!minimal[y].is_subset_of(minimal[x]))
          throw error(errc::invalid_topology, "minimal opens are not transitive at " + names[x]);
    }
    return FiniteTopology(std::move(names), std::move(minimal));
  }

  static FiniteTopology discrete(std::vector<std::string> names) {
    const std::size_t n = names.size();
    std::vector<PointSet> minimal(n, PointSet(n));
    for (std::size_t x = 0; x < n; ++x) minimal[x].set(x);
    return FiniteTopology(std::move(names), std::move(minimal));
  }

  static FiniteTopology indiscrete(std::vector<std::string> names) {
    const std::size_t n = names.size();
    PointSet whole(n);
    whole.set();
    return FiniteTopology(std::move(names), std::vector<PointSet>(n, whole));
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t x) const { return names_.at(x); }

  std::size_t index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw error(errc::unknown_point, name);
    return it->second;
  }

  const PointSet& minimal_open(std::size_t x) const {
    if (x >= size()) throw error(errc::unknown_point, std::to_string(x));
    return minimal_[x];
  }

  const PointSet& minimal_open(const std::string& name) const { return minimal_[index_of(name)]; }

  bool is_open(const PointSet& s) const {
    for (auto x : members(s))
      if (!minimal_[x].is_subset_of(s)) return false;
    return true;
  }

  PointSet whole() const {
    PointSet w(size());
    w.set();
    return w;
  }

  /// The open family given at construction, or the full family of unions of
  /// minimal opens otherwise. Exponential in the worst case.
  std::vector<PointSet> opens() const {
    if (!family_.empty()) return family_;
    std::set<PointSet> out;
    std::vector<PointSet> frontier{PointSet(size())};
    out.insert(frontier.front());
    while (!frontier.empty()) {
      PointSet cur = std::move(frontier.back());
      frontier.pop_back();
      for (std::size_t x = 0; x < size(); ++x) {
        if (cur.test(x)) continue;
        PointSet next = cur | minimal_[x];
        if (out.insert(next).second) frontier.push_back(std::move(next));
      }
    }
    return {out.begin(), out.end()};
  }

  /// Topology induced on `subset`, with points renumbered in increasing order.
  FiniteTopology subspace(const PointSet& subset) const {
    auto keep = members(subset);
    std::vector<std::string> names;
    std::vector<std::size_t> new_index(size(), static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < keep.size(); ++i) {
      new_index[keep[i]] = i;
      names.push_back(names_[keep[i]]);
    }
    std::vector<PointSet> minimal(keep.size(), PointSet(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i)
      for (auto y : members(minimal_[keep[i]] & subset)) minimal[i].set(new_index[y]);
    return FiniteTopology(std::move(names), std::move(minimal));
  }

  bool same_opens(const FiniteTopology& other) const { return minimal_ == other.minimal_; }

  friend bool operator==(const FiniteTopology& a, const FiniteTopology& b) {
    return a.names_ == b.names_ && a.minimal_ == b.minimal_;
  }

 private:
  FiniteTopology(std::vector<std::string> names, std::vector<PointSet> minimal)
      : names_(std::move(names)), minimal_(std::move(minimal)) {
    for (std::size_t i = 0; i < names_.size(); ++i) index_.emplace(names_[i], i);
  }

  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
  std::vector<PointSet> minimal_;
  std::vector<PointSet> family_;
};

/// Continuity of `f` restricted to the open set `domain` of `from`.
/// In finite spaces this reduces to f(U_x) inside U_{f(x)} for x in domain.
inline bool continuous_on(const FiniteTopology& from, const PointSet& domain, const FiniteTopology& to,
                          const std::function<std::size_t(std::size_t)>& f) {
  for (auto x : members(domain)) {
    const auto& target = to.minimal_open(f(x));
    for (auto y : members(from.minimal_open(x) & domain))
      if (!target.test(f(y))) return false;
  }
  return true;
}

/// True iff f maps the open set `domain` homeomorphically onto an open subset
/// of `to`; equivalently f is injective there and f(U_x) = U_{f(x)}.
inline bool is_open_embedding(const FiniteTopology& from, const PointSet& domain, const FiniteTopology& to,
                              const std::function<std::size_t(std::size_t)>& f) {
  PointSet image(to.size());
  for (auto x : members(domain)) {
    auto fx = f(x);
    if (image.test(fx)) return false;
    image.set(fx);
  }
  for (auto x : members(domain)) {
    PointSet img(to.size());
    for (auto y : members(from.minimal_open(x))) {
      if (!domain.test(y)) return false;
      img.set(f(y));
    }
    if (img != to.minimal_open(f(x))) return false;
  }
  return true;
}

}  // namespace gpdkit

#endif  // GPDKIT_TOPOLOGY_HPP

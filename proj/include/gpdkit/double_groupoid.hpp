#ifndef GPDKIT_DOUBLE_GROUPOID_HPP
#define GPDKIT_DOUBLE_GROUPOID_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gpdkit/crossed_module.hpp"
#include "gpdkit/error.hpp"
#include "gpdkit/group.hpp"
#include "gpdkit/groupoid.hpp"

namespace gpdkit {

/// Edges a (top), b (right), c (left), d (bottom), filler m. Arrows read
/// left to right and top to bottom: src a = src c, tgt a = src b,
/// tgt c = src d, tgt b = tgt d.
struct Square {
  std::size_t m = 0;
  Arr a = 0, b = 0, c = 0, d = 0;
  friend bool operator==(const Square&, const Square&) = default;
  friend auto operator<=>(const Square&, const Square&) = default;
};

using Sq = std::size_t;

struct LawReport {
  std::size_t checked = 0;
  std::size_t failure_count = 0;
  std::vector<std::string> failures;  // first few only
  bool ok() const { return failure_count == 0; }
  void fail(std::string s) {
    ++failure_count;
    if (failures.size() < 20) failures.push_back(std::move(s));
  }
  void merge(const LawReport& o) {
    checked += o.checked;
    failure_count += o.failure_count;
    for (const auto& f : o.failures)
      if (failures.size() < 20) failures.push_back(f);
  }
};

/// Edge-symmetric double groupoid with connections. Two models share the
/// code: commuting squares of a groupoid (trivial fillers, ab = cd) and the
/// crossed-module model (filler m with boundary(m) = d^-1 c^-1 a b).
///
/// Products of edges are written in path order: dp(x, y) is "x then y".
class DoubleGroupoid {
 public:
  DoubleGroupoid() = default;

  static DoubleGroupoid commuting(const FiniteGroupoid& g) {
    DoubleGroupoid D;
    D.edges_ = g;
    D.fillers_ = FiniteGroup::trivial();
    D.enumerate();
    return D;
  }

  static DoubleGroupoid from_xmod(const CrossedModule& x) {
    require_crossed_module(x);
    DoubleGroupoid D;
    const auto& P = x.p;
    std::vector<ArrowData> arrows;
    for (std::size_t i = 0; i < P.order(); ++i)
      arrows.push_back({i == P.identity() ? identity_name("*") : P.name(i), 0, 0});
    D.edges_ = FiniteGroupoid::build({"*"}, arrows, {P.identity()}, [&](Arr h, Arr g) { return P.mul(g, h); });
    D.fillers_ = x.m;
    D.xmod_ = x;
    D.enumerate();
    return D;
  }

  const FiniteGroupoid& edges() const { return edges_; }
  const FiniteGroup& fillers() const { return fillers_; }
  const std::optional<CrossedModule>& xmod() const { return xmod_; }
  std::size_t size() const { return squares_.size(); }
  const Square& square(Sq u) const { return squares_.at(u); }
  const std::vector<Square>& squares() const { return squares_; }

  Arr dp(Arr x, Arr y) const { return edges_.compose(y, x); }
  Arr einv(Arr x) const { return edges_.inv(x); }
  Arr eid(Obj o) const { return edges_.id_of(o); }

  /// p acting on a filler; p must be a loop.
  std::size_t act(Arr p, std::size_t m) const { return xmod_ ? xmod_->act(p, m) : m; }

  bool is_square(const Square& s) const {
    const auto& g = edges_;
    const std::size_t A = g.arrow_count();
    if (s.a >= A || s.b >= A || s.c >= A || s.d >= A || s.m >= fillers_.order()) return false;
    if (g.src(s.a) != g.src(s.c) || g.tgt(s.a) != g.src(s.b) || g.tgt(s.c) != g.src(s.d) || g.tgt(s.b) != g.tgt(s.d))
      return false;
    const Arr loop = dp(dp(dp(einv(s.d), einv(s.c)), s.a), s.b);
    if (xmod_) return xmod_->boundary[s.m] == loop;
    return loop == eid(g.tgt(s.b));
  }

  std::optional<Sq> find(const Square& s) const {
    auto it = index_.find(key(s));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  Sq index_of(const Square& s) const {
    auto f = find(s);
    if (!f) throw error(errc::not_composable, "not a square: " + describe(s));
    return *f;
  }

  const std::vector<Sq>& with_left(Arr e) const { return by_left_[e]; }
  const std::vector<Sq>& with_top(Arr e) const { return by_top_[e]; }

  bool composable2(Sq u, Sq v) const { return squares_[u].b == squares_[v].c; }
  bool composable1(Sq u, Sq w) const { return squares_[u].d == squares_[w].a; }

  /// u +2 v: v to the right of u.
  Sq compose2(Sq u, Sq v) const {
    if (!composable2(u, v))
      throw error(errc::not_composable, "right edge of " + name(u) + " is not the left edge of " + name(v));
    if (has_tables()) return static_cast<Sq>(comp2_[u * size() + v]);
    return raw2(u, v);
  }
  /// u +1 w: w below u.
  Sq compose1(Sq u, Sq w) const {
    if (!composable1(u, w))
      throw error(errc::not_composable, "bottom edge of " + name(u) + " is not the top edge of " + name(w));
    if (has_tables()) return static_cast<Sq>(comp1_[u * size() + w]);
    return raw1(u, w);
  }
  Sq compose(int dir, Sq u, Sq v) const {
    if (dir == 1) return compose1(u, v);
    if (dir == 2) return compose2(u, v);
    throw error(errc::not_composable, "direction must be 1 or 2");
  }

  Sq eps1(Arr e) const {
    const auto& g = edges_;
    return index_of({fillers_.identity(), e, eid(g.tgt(e)), eid(g.src(e)), e});
  }
  Sq eps2(Arr e) const {
    const auto& g = edges_;
    return index_of({fillers_.identity(), eid(g.src(e)), e, e, eid(g.tgt(e))});
  }
  Sq inv2(Sq u) const {
    const auto& s = squares_[u];
    const auto& M = fillers_;
    return index_of({M.inv(act(s.d, s.m)), einv(s.a), s.c, s.b, einv(s.d)});
  }
  Sq inv1(Sq u) const {
    const auto& s = squares_[u];
    const auto& M = fillers_;
    return index_of({M.inv(act(s.b, s.m)), s.d, einv(s.b), einv(s.c), s.a});
  }
  Sq inverse(int dir, Sq u) const { return dir == 1 ? inv1(u) : inv2(u); }
  Sq gamma_minus(Arr e) const {
    const Arr t = eid(edges_.tgt(e));
    return index_of({fillers_.identity(), e, t, e, t});
  }
  Sq gamma_plus(Arr e) const {
    const Arr s = eid(edges_.src(e));
    return index_of({fillers_.identity(), s, e, s, e});
  }
  /// The square with identity filler on this boundary, if any.
  std::optional<Sq> thin(Arr a, Arr b, Arr c, Arr d) const { return find({fillers_.identity(), a, b, c, d}); }

  std::string describe(const Square& s) const {
    const auto& g = edges_;
    auto nm = [&](Arr x) { return x < g.arrow_count() ? g.arrow_name(x) : std::string("?"); };
    std::string edges = nm(s.a) + "," + nm(s.b) + "," + nm(s.c) + "," + nm(s.d);
    if (!xmod_) return "(" + edges + ")";
    return "(" + (s.m < fillers_.order() ? fillers_.name(s.m) : std::string("?")) + "|" + edges + ")";
  }
  std::string name(Sq u) const { return describe(squares_.at(u)); }

 private:
  std::uint64_t key(const Square& s) const {
    const std::uint64_t A = edges_.arrow_count();
    return (((static_cast<std::uint64_t>(s.m) * A + s.a) * A + s.b) * A + s.c) * A + s.d;
  }

  bool has_tables() const { return !comp1_.empty(); }

  Sq raw2(Sq u, Sq v) const {
    const auto& s = squares_[u];
    const auto& t = squares_[v];
    const auto& M = fillers_;
    return index_of({M.mul(act(einv(t.d), s.m), t.m), dp(s.a, t.a), t.b, s.c, dp(s.d, t.d)});
  }
  Sq raw1(Sq u, Sq w) const {
    const auto& s = squares_[u];
    const auto& t = squares_[w];
    const auto& M = fillers_;
    return index_of({M.mul(t.m, act(einv(t.b), s.m)), s.a, dp(s.b, t.b), dp(s.c, t.c), t.d});
  }

  void enumerate() {
    const auto& g = edges_;
    const std::size_t A = g.arrow_count();
    for (std::size_t m = 0; m < fillers_.order(); ++m)
      for (Arr a = 0; a < A; ++a)
        for (Arr b : g.star(g.tgt(a)))
          for (Arr c : g.star(g.src(a)))
            for (Arr d : g.hom(g.tgt(c), g.tgt(b))) {
              Square s{m, a, b, c, d};
              if (is_square(s)) squares_.push_back(s);
            }
    std::sort(squares_.begin(), squares_.end());
    by_left_.assign(A, {});
    by_top_.assign(A, {});
    for (Sq i = 0; i < squares_.size(); ++i) {
      index_.emplace(key(squares_[i]), i);
      by_left_[squares_[i].c].push_back(i);
      by_top_[squares_[i].a].push_back(i);
    }
    const std::size_t N = squares_.size();
    if (N > 0 && N <= kTableLimit) {
      std::vector<std::int32_t> c1(N * N, -1), c2(N * N, -1);
      for (Sq u = 0; u < N; ++u) {
        for (Sq v : by_left_[squares_[u].b]) c2[u * N + v] = static_cast<std::int32_t>(raw2(u, v));
        for (Sq w : by_top_[squares_[u].d]) c1[u * N + w] = static_cast<std::int32_t>(raw1(u, w));
      }
      comp1_ = std::move(c1);
      comp2_ = std::move(c2);
    }
  }

  friend LawReport interchange_check(const DoubleGroupoid& D);

  static constexpr std::size_t kTableLimit = 4096;

  FiniteGroupoid edges_;
  FiniteGroup fillers_;
  std::optional<CrossedModule> xmod_;
  std::vector<Square> squares_;
  std::unordered_map<std::uint64_t, Sq> index_;
  std::vector<std::vector<Sq>> by_left_, by_top_;
  std::vector<std::int32_t> comp1_, comp2_;
};

inline DoubleGroupoid commuting_squares(const FiniteGroupoid& g) { return DoubleGroupoid::commuting(g); }
inline DoubleGroupoid xmod_to_double(const CrossedModule& x) { return DoubleGroupoid::from_xmod(x); }

/// Identities, inverses and associativity of +1 and +2.
inline LawReport groupoid_laws_check(const DoubleGroupoid& D) {
  LawReport r;
  for (Sq u = 0; u < D.size(); ++u) {
    const auto& s = D.square(u);
    auto expect = [&](bool ok, const std::string& law) {
      ++r.checked;
      if (!ok) r.fail(law + " at " + D.name(u));
    };
    expect(D.compose2(D.eps2(s.c), u) == u, "left identity +2");
    expect(D.compose2(u, D.eps2(s.b)) == u, "right identity +2");
    expect(D.compose1(D.eps1(s.a), u) == u, "top identity +1");
    expect(D.compose1(u, D.eps1(s.d)) == u, "bottom identity +1");
    expect(D.compose2(u, D.inv2(u)) == D.eps2(s.c), "right inverse +2");
    expect(D.compose2(D.inv2(u), u) == D.eps2(s.b), "left inverse +2");
    expect(D.compose1(u, D.inv1(u)) == D.eps1(s.a), "lower inverse +1");
    expect(D.compose1(D.inv1(u), u) == D.eps1(s.d), "upper inverse +1");
    for (Sq v : D.with_left(s.b)) {
      const Sq uv = D.compose2(u, v);
      for (Sq w : D.with_left(D.square(v).b)) {
        ++r.checked;
        if (D.compose2(uv, w) != D.compose2(u, D.compose2(v, w)))
          r.fail("associativity +2 at " + D.name(u) + ", " + D.name(v) + ", " + D.name(w));
      }
    }
    for (Sq v : D.with_top(s.d)) {
      const Sq uv = D.compose1(u, v);
      for (Sq w : D.with_top(D.square(v).d)) {
        ++r.checked;
        if (D.compose1(uv, w) != D.compose1(u, D.compose1(v, w)))
          r.fail("associativity +1 at " + D.name(u) + ", " + D.name(v) + ", " + D.name(w));
      }
    }
  }
  return r;
}

/// [X Y; Z V] = (X +2 Y) +1 (Z +2 V).
inline Sq block(const DoubleGroupoid& D, Sq x, Sq y, Sq z, Sq v) {
  return D.compose1(D.compose2(x, y), D.compose2(z, v));
}

/// Gamma-(ef) = [Gamma-(e) eps1(f); eps2(f) Gamma-(f)] and
/// Gamma+(ef) = [Gamma+(e) eps2(e); eps1(e) Gamma+(f)] for every path e, f.
inline LawReport transport_check(const DoubleGroupoid& D) {
  LawReport r;
  const auto& g = D.edges();
  for (Arr e = 0; e < g.arrow_count(); ++e)
    for (Arr f : g.star(g.tgt(e))) {
      const Arr ef = D.dp(e, f);
      const std::string at = g.arrow_name(e) + ", " + g.arrow_name(f);
      ++r.checked;
      if (D.gamma_minus(ef) != block(D, D.gamma_minus(e), D.eps1(f), D.eps2(f), D.gamma_minus(f)))
        r.fail("transport law for Gamma- at " + at);
      ++r.checked;
      if (D.gamma_plus(ef) != block(D, D.gamma_plus(e), D.eps2(e), D.eps1(e), D.gamma_plus(f)))
        r.fail("transport law for Gamma+ at " + at);
    }
  return r;
}

/// (u +2 v) +1 (w +2 z) = (u +1 w) +2 (v +1 z) over every composable block.
inline LawReport interchange_check(const DoubleGroupoid& D) {
  LawReport r;
  const std::size_t N = D.size();
  // squares indexed by (top, left) for the lower-right corner
  const std::size_t A = D.edges().arrow_count();
  std::vector<std::vector<Sq>> by_top_left(A * A);
  for (Sq z = 0; z < N; ++z) by_top_left[D.square(z).a * A + D.square(z).c].push_back(z);
  const bool tabled = D.has_tables();
  for (Sq u = 0; u < N; ++u) {
    const auto& su = D.square(u);
    for (Sq v : D.with_left(su.b)) {
      const Sq uv = D.compose2(u, v);
      const Arr dv = D.square(v).d;
      for (Sq w : D.with_top(su.d)) {
        const Sq uw = D.compose1(u, w);
        const auto& corner = by_top_left[dv * A + D.square(w).b];
        r.checked += corner.size();
        if (tabled) {
          const std::int32_t* c1 = D.comp1_.data();
          const std::int32_t* c2 = D.comp2_.data();
          const std::int32_t* row_uv = c1 + uv * N;
          const std::int32_t* row_uw = c2 + uw * N;
          const std::int32_t* row_w = c2 + w * N;
          const std::int32_t* row_v = c1 + v * N;
          for (Sq z : corner)
            if (row_uv[row_w[z]] != row_uw[row_v[z]])
              r.fail("interchange at " + D.name(u) + ", " + D.name(v) + ", " + D.name(w) + ", " + D.name(z));
        } else {
          for (Sq z : corner)
            if (D.compose1(uv, D.compose2(w, z)) != D.compose2(uw, D.compose1(v, z)))
              r.fail("interchange at " + D.name(u) + ", " + D.name(v) + ", " + D.name(w) + ", " + D.name(z));
        }
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Back to crossed modules

struct XmodFromDouble {
  CrossedModule xmod;
  std::vector<Sq> m_squares;  // M element i is square m_squares[i]
};

/// P = the edge group, M = squares (m; a, 1, 1, 1) under +2, boundary reads
/// the top edge, p acts by eps1(p) +2 u +2 eps1(p^-1).
inline XmodFromDouble double_to_xmod(const DoubleGroupoid& D) {
  const auto& g = D.edges();
  if (g.object_count() != 1) throw error(errc::not_special_double, "edge groupoid has more than one object");
  const Arr one = g.id_of(0);
  const std::size_t A = g.arrow_count();
  std::vector<std::string> pnames = g.arrow_names();
  std::vector<std::vector<std::size_t>> ptable(A, std::vector<std::size_t>(A));
  for (Arr x = 0; x < A; ++x)
    for (Arr y = 0; y < A; ++y) ptable[x][y] = D.dp(x, y);
  FiniteGroup P = FiniteGroup::from_table(pnames, ptable);

  std::vector<Sq> ms;
  for (Sq u = 0; u < D.size(); ++u) {
    const auto& s = D.square(u);
    if (s.b == one && s.c == one && s.d == one) ms.push_back(u);
  }
  if (ms.empty()) throw error(errc::not_special_double, "no squares with three identity edges");
  std::unordered_map<Sq, std::size_t> pos;
  for (std::size_t i = 0; i < ms.size(); ++i) pos.emplace(ms[i], i);
  auto position = [&](Sq u) {
    auto it = pos.find(u);
    if (it == pos.end()) throw error(errc::not_special_double, "M is not closed: " + D.name(u));
    return it->second;
  };
  std::vector<std::string> mnames;
  for (Sq u : ms) mnames.push_back(D.name(u));
  std::vector<std::vector<std::size_t>> mtable(ms.size(), std::vector<std::size_t>(ms.size()));
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = 0; j < ms.size(); ++j) mtable[i][j] = position(D.compose2(ms[i], ms[j]));
  FiniteGroup M;
  try {
    M = FiniteGroup::from_table(mnames, mtable);
  } catch (const error& e) {
    throw error(errc::not_special_double, std::string("squares do not form a group: ") + e.what());
  }
  std::vector<std::size_t> boundary;
  for (Sq u : ms) boundary.push_back(D.square(u).a);
  std::vector<std::vector<std::size_t>> action(A, std::vector<std::size_t>(ms.size()));
  for (Arr p = 0; p < A; ++p)
    for (std::size_t i = 0; i < ms.size(); ++i)
      action[p][i] = position(D.compose2(D.compose2(D.eps1(p), ms[i]), D.eps1(D.einv(p))));
  CrossedModule x{std::move(P), std::move(M), std::move(boundary), std::move(action)};
  auto rep = validate_crossed_module(x);
  if (!rep.ok()) throw error(errc::not_special_double, "recovered data fails " + rep.violations.front().law);
  return {std::move(x), std::move(ms)};
}

struct XmodIsomorphism {
  std::vector<std::size_t> on_p;
  std::vector<std::size_t> on_m;
};

/// Bijective homomorphisms on P and M commuting with boundaries and actions.
inline ValidationReport xmod_isomorphism_report(const CrossedModule& x, const CrossedModule& y,
                                                const XmodIsomorphism& f) {
  ValidationReport r;
  if (!is_isomorphism(x.p, y.p, f.on_p)) r.add("P-isomorphism", {"map on P is not an isomorphism"});
  if (!is_isomorphism(x.m, y.m, f.on_m)) r.add("M-isomorphism", {"map on M is not an isomorphism"});
  if (!r.ok()) return r;
  for (std::size_t m = 0; m < x.m.order(); ++m)
    if (f.on_p[x.boundary[m]] != y.boundary[f.on_m[m]]) r.add("boundary-square", {x.m.name(m)});
  for (std::size_t p = 0; p < x.p.order(); ++p)
    for (std::size_t m = 0; m < x.m.order(); ++m)
      if (f.on_m[x.act(p, m)] != y.act(f.on_p[p], f.on_m[m])) r.add("action-square", {x.p.name(p), x.m.name(m)});
  return r;
}

struct RoundTrip {
  CrossedModule recovered;
  XmodIsomorphism iso;
  ValidationReport report;
  bool ok() const { return report.ok(); }
};

/// double_to_xmod(xmod_to_double(X)) with the explicit isomorphism
/// p -> p, m -> (m; boundary m, 1, 1, 1).
inline RoundTrip xmod_round_trip(const CrossedModule& x) {
  const auto D = xmod_to_double(x);
  auto back = double_to_xmod(D);
  XmodIsomorphism iso;
  for (std::size_t p = 0; p < x.p.order(); ++p) iso.on_p.push_back(p);
  const Arr one = D.edges().id_of(0);
  for (std::size_t m = 0; m < x.m.order(); ++m) {
    const Sq u = D.index_of({m, x.boundary[m], one, one, one});
    auto it = std::find(back.m_squares.begin(), back.m_squares.end(), u);
    iso.on_m.push_back(static_cast<std::size_t>(it - back.m_squares.begin()));
  }
  auto report = xmod_isomorphism_report(x, back.xmod, iso);
  return {std::move(back.xmod), std::move(iso), std::move(report)};
}

}  // namespace gpdkit

#endif  // GPDKIT_DOUBLE_GROUPOID_HPP

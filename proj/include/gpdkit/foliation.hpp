#ifndef GPDKIT_FOLIATION_HPP
#define GPDKIT_FOLIATION_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "gpdkit/error.hpp"
#include "gpdkit/groupoid.hpp"
#include "gpdkit/local_data.hpp"

namespace gpdkit {

/// Finite model of a band foliated by circles: n cells, each with three
/// transversal points (i,-), (i,0), (i,+) stored at index 3i, 3i+1, 3i+2.
/// A leaf moves from cell i to cell i+1 keeping its transversal position,
/// except across the seam n-1 -> 0 where the Moebius band swaps - and +.
///
/// G is the same-leaf equivalence relation, W the arrows staying put or
/// moving one cell, T0 the cell topology (a cell is the minimal open of its
/// centre, the side points are open) and T_W the three sheets
/// {(p', step_k p') : p' in U_p} for k = -1, 0, 1.
class BandModel {
 public:
  BandModel(std::size_t n, bool twisted) : n_(n), twisted_(twisted) {
    if (n < 3) throw error(errc::too_small, "band models need at least 3 cells");
  }

  std::size_t cells() const { return n_; }
  std::size_t point_count() const { return 3 * n_; }
  static Obj point(std::size_t cell, int side) { return 3 * cell + static_cast<std::size_t>(side + 1); }
  std::size_t cell_of(Obj p) const { return p / 3; }
  int side_of(Obj p) const { return static_cast<int>(p % 3) - 1; }

  std::string name(Obj p) const {
    static const char* sides[] = {"-", "0", "+"};
    return "(" + std::to_string(cell_of(p)) + "," + sides[p % 3] + ")";
  }

  /// One cell forward (k = 1), backward (k = -1) or staying (k = 0).
  Obj step(Obj p, int k) const {
    std::size_t c = cell_of(p);
    int s = side_of(p);
    if (k == 1) {
      if (c + 1 == n_) return point(0, twisted_ ? -s : s);
      return point(c + 1, s);
    }
    if (k == -1) {
      if (c == 0) return point(n_ - 1, twisted_ ? -s : s);
      return point(c - 1, s);
    }
    return p;
  }

  PointSet minimal_open(Obj p) const {
    PointSet u(point_count());
    if (side_of(p) == 0)
      for (int s = -1; s <= 1; ++s) u.set(point(cell_of(p), s));
    else
      u.set(p);
    return u;
  }

  LocalGroupoidData build() const {
    const std::size_t m = point_count();
    std::vector<std::string> names;
    for (Obj p = 0; p < m; ++p) names.push_back(name(p));
    std::vector<std::size_t> leaf(m, none);
    std::size_t leaves = 0;
    for (Obj p = 0; p < m; ++p) {
      if (leaf[p] != none) continue;
      for (Obj q = p; leaf[q] == none; q = step(q, 1)) leaf[q] = leaves;
      ++leaves;
    }
    FiniteGroupoid g = equivalence_relation(names, leaf);
    auto arrow = [&](Obj x, Obj y) {
      return x == y ? g.arrow_index(identity_name(names[x])) : g.arrow_index(names[x] + "~" + names[y]);
    };
    PointSet window(g.arrow_count());
    for (Obj p = 0; p < m; ++p)
      for (int k = -1; k <= 1; ++k) window.set(arrow(p, step(p, k)));
    std::vector<Arr> pts = members(window);
    std::vector<std::size_t> pos(g.arrow_count(), none);
    for (std::size_t i = 0; i < pts.size(); ++i) pos[pts[i]] = i;
    std::vector<std::string> wnames;
    for (auto a : pts) wnames.push_back(g.arrow_name(a));
    std::vector<PointSet> wmin(pts.size(), PointSet(pts.size()));
    for (Obj p = 0; p < m; ++p)
      for (int k = -1; k <= 1; ++k) {
        auto& u = wmin[pos[arrow(p, step(p, k))]];
        for (auto q : members(minimal_open(p))) u.set(pos[arrow(q, step(q, k))]);
      }
    std::vector<PointSet> omin;
    for (Obj p = 0; p < m; ++p) omin.push_back(minimal_open(p));
    return LocalGroupoidData{g, window, FiniteTopology::from_minimal_opens(wnames, wmin),
                             FiniteTopology::from_minimal_opens(names, omin)};
  }

 private:
  std::size_t n_;
  bool twisted_;
};

inline LocalGroupoidData mobius_model(std::size_t n) { return BandModel(n, true).build(); }
inline LocalGroupoidData annulus_model(std::size_t n) { return BandModel(n, false).build(); }

}  // namespace gpdkit

#endif  // GPDKIT_FOLIATION_HPP

#ifndef GPDKIT_CUBE_HPP
#define GPDKIT_CUBE_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gpdkit/double_groupoid.hpp"
#include "gpdkit/error.hpp"

namespace gpdkit {

/// Six faces of a cube with vertices (i, j, k). Face (dir, eps) is the face
/// where coordinate dir (1 = i, 2 = j, 3 = k) equals eps. Rows and columns
/// of each face:
///   dir 3: rows i, columns j
///   dir 1: rows k, columns j
///   dir 2: rows i, columns k
/// so a face's top edge runs along its column direction at row 0.
struct Cube {
  std::array<Sq, 6> faces{};

  Sq face(int dir, int eps) const { return faces[static_cast<std::size_t>(2 * (dir - 1) + eps)]; }
  Sq& face(int dir, int eps) { return faces[static_cast<std::size_t>(2 * (dir - 1) + eps)]; }

  static Cube of(Sq s1_0, Sq s1_1, Sq s2_0, Sq s2_1, Sq s3_0, Sq s3_1) {
    return Cube{{s1_0, s1_1, s2_0, s2_1, s3_0, s3_1}};
  }
  friend bool operator==(const Cube&, const Cube&) = default;
};

/// The twelve edges, keyed by direction and the two remaining coordinates.
struct CubeEdges {
  std::array<Arr, 4> i{};  // along i, index 2*j + k
  std::array<Arr, 4> j{};  // along j, index 2*i + k
  std::array<Arr, 4> k{};  // along k, index 2*i + j
};

/// Reads the edges off the faces and checks each is shared consistently.
inline CubeEdges cube_edges(const DoubleGroupoid& D, const Cube& c) {
  for (auto f : c.faces)
    if (f >= D.size()) throw error(errc::not_a_cube, "face index out of range");
  constexpr Arr unset = none;
  CubeEdges e;
  e.i.fill(unset);
  e.j.fill(unset);
  e.k.fill(unset);
  auto put = [&](Arr& slot, Arr v, const char* what) {
    if (slot == unset) slot = v;
    else if (slot != v) throw error(errc::not_a_cube, std::string("faces disagree on the ") + what + " edge");
  };
  for (int eps = 0; eps < 2; ++eps) {
    const auto& s3 = D.square(c.face(3, eps));
    put(e.j[2 * 0 + eps], s3.a, "j");
    put(e.j[2 * 1 + eps], s3.d, "j");
    put(e.i[2 * 0 + eps], s3.c, "i");
    put(e.i[2 * 1 + eps], s3.b, "i");
    const auto& s1 = D.square(c.face(1, eps));
    put(e.j[2 * eps + 0], s1.a, "j");
    put(e.j[2 * eps + 1], s1.d, "j");
    put(e.k[2 * eps + 0], s1.c, "k");
    put(e.k[2 * eps + 1], s1.b, "k");
    const auto& s2 = D.square(c.face(2, eps));
    put(e.k[2 * 0 + eps], s2.a, "k");
    put(e.k[2 * 1 + eps], s2.d, "k");
    put(e.i[2 * eps + 0], s2.c, "i");
    put(e.i[2 * eps + 1], s2.b, "i");
  }
  return e;
}

inline void require_cube(const DoubleGroupoid& D, const Cube& c) { (void)cube_edges(D, c); }

/// The five faces other than S3^1 folded flat, corners filled by
/// connections:
///   Gamma+(x^-1) | -1 S1^0 | -1 Gamma-(y)
///   -2 S2^0      | S3^0    | S2^1
///   -2 Gamma-(z) | S1^1    | Gamma-(w)
/// rows composed by +2, then stacked by +1. x, y, z, w are the k-edges at
/// (i, j) = (0,0), (0,1), (1,0), (1,1).
inline Sq fold(const DoubleGroupoid& D, const Cube& c) {
  const auto e = cube_edges(D, c);
  const Arr x = e.k[0], y = e.k[1], z = e.k[2], w = e.k[3];
  const Sq r1 = D.compose2(D.compose2(D.gamma_plus(D.einv(x)), D.inv1(c.face(1, 0))), D.inv1(D.gamma_minus(y)));
  const Sq r2 = D.compose2(D.compose2(D.inv2(c.face(2, 0)), c.face(3, 0)), c.face(2, 1));
  const Sq r3 = D.compose2(D.compose2(D.inv2(D.gamma_minus(z)), c.face(1, 1)), D.gamma_minus(w));
  return D.compose1(D.compose1(r1, r2), r3);
}

inline bool is_commutative_cube(const DoubleGroupoid& D, const Cube& c) { return fold(D, c) == c.face(3, 1); }

/// Composite along direction dir: c2 is placed after c1, sharing
/// c1's eps = 1 face with c2's eps = 0 face.
inline Cube compose_cubes(const DoubleGroupoid& D, int dir, const Cube& c1, const Cube& c2) {
  require_cube(D, c1);
  require_cube(D, c2);
  if (dir < 1 || dir > 3) throw error(errc::not_composable, "cube direction must be 1, 2 or 3");
  if (c1.face(dir, 1) != c2.face(dir, 0)) throw error(errc::not_composable, "cubes do not share a face");
  Cube r;
  r.face(dir, 0) = c1.face(dir, 0);
  r.face(dir, 1) = c2.face(dir, 1);
  for (int eps = 0; eps < 2; ++eps) {
    switch (dir) {
      case 1:  // i runs down the rows of S3 and S2
        r.face(3, eps) = D.compose1(c1.face(3, eps), c2.face(3, eps));
        r.face(2, eps) = D.compose1(c1.face(2, eps), c2.face(2, eps));
        break;
      case 2:  // j runs along the columns of S3 and S1
        r.face(3, eps) = D.compose2(c1.face(3, eps), c2.face(3, eps));
        r.face(1, eps) = D.compose2(c1.face(1, eps), c2.face(1, eps));
        break;
      default:  // k: rows of S1, columns of S2
        r.face(1, eps) = D.compose1(c1.face(1, eps), c2.face(1, eps));
        r.face(2, eps) = D.compose2(c1.face(2, eps), c2.face(2, eps));
        break;
    }
  }
  require_cube(D, r);
  return r;
}

/// eps3(u): u as S3^0 and S3^1, sides degenerate.
inline Cube degenerate_cube(const DoubleGroupoid& D, Sq u) {
  const auto& s = D.square(u);
  return Cube::of(D.eps1(s.a), D.eps1(s.d), D.eps2(s.c), D.eps2(s.b), u, u);
}

/// Degenerate cube on the thin square with boundary (a, b, c, d).
/// Throws NotACube when that boundary carries no thin square.
inline Cube cube_from_square_edges(const DoubleGroupoid& D, Arr a, Arr b, Arr c, Arr d) {
  auto t = D.thin(a, b, c, d);
  if (!t) throw error(errc::not_a_cube, "no thin square on this boundary");
  return degenerate_cube(D, *t);
}

inline bool is_commutative_degenerate(const DoubleGroupoid& D, Arr a, Arr b, Arr c, Arr d) {
  auto t = D.thin(a, b, c, d);
  return t && is_commutative_cube(D, degenerate_cube(D, *t));
}

/// Every cube of D, faces chosen in the order S3^0, S1^0, S2^0, S1^1,
/// S2^1, S3^1 with edges matched as they are fixed.
inline void for_each_cube(const DoubleGroupoid& D, const std::function<void(const Cube&)>& visit) {
  Cube c;
  for (Sq t0 = 0; t0 < D.size(); ++t0) {
    const auto& T0 = D.square(t0);
    c.face(3, 0) = t0;
    for (Sq f0 : D.with_top(T0.a)) {
      const auto& F0 = D.square(f0);
      c.face(1, 0) = f0;
      for (Sq l0 : D.with_left(T0.c)) {
        const auto& L0 = D.square(l0);
        if (L0.a != F0.c) continue;  // k-edge at (0,0)
        c.face(2, 0) = l0;
        for (Sq f1 : D.with_top(T0.d)) {
          const auto& F1 = D.square(f1);
          if (F1.c != L0.d) continue;  // k-edge at (1,0)
          c.face(1, 1) = f1;
          for (Sq l1 : D.with_left(T0.b)) {
            const auto& L1 = D.square(l1);
            if (L1.a != F0.b || L1.d != F1.b) continue;
            c.face(2, 1) = l1;
            for (Sq t1 : D.with_top(F0.d)) {
              const auto& T1 = D.square(t1);
              if (T1.c != L0.b || T1.b != L1.b || T1.d != F1.d) continue;
              c.face(3, 1) = t1;
              visit(c);
            }
          }
        }
      }
    }
  }
}

struct CubeClosureReport {
  std::size_t cubes = 0;
  std::size_t commutative = 0;
  std::size_t pairs = 0;
  LawReport report;
  bool ok() const { return report.ok(); }
};

/// Checks that the composite of two commutative cubes is commutative.
/// Throws NotComposable if they do not share the face.
inline bool cube_composition_closure(const DoubleGroupoid& D, const Cube& c1, const Cube& c2, int dir) {
  return is_commutative_cube(D, compose_cubes(D, dir, c1, c2));
}

/// Every composable pair of commutative cubes in every direction.
inline CubeClosureReport cube_closure_exhaustive(const DoubleGroupoid& D) {
  CubeClosureReport r;
  std::vector<Cube> comm;
  for_each_cube(D, [&](const Cube& c) {
    ++r.cubes;
    if (is_commutative_cube(D, c)) comm.push_back(c);
  });
  r.commutative = comm.size();
  for (int dir = 1; dir <= 3; ++dir) {
    std::vector<std::vector<std::size_t>> starting(D.size());
    for (std::size_t i = 0; i < comm.size(); ++i) starting[comm[i].face(dir, 0)].push_back(i);
    for (const auto& c1 : comm)
      for (std::size_t j : starting[c1.face(dir, 1)]) {
        ++r.pairs;
        ++r.report.checked;
        if (!cube_composition_closure(D, c1, comm[j], dir))
          r.report.fail("direction " + std::to_string(dir) + " composite is not commutative");
      }
  }
  return r;
}

}  // namespace gpdkit

#endif  // GPDKIT_CUBE_HPP

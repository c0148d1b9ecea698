#ifndef GPDKIT_CROSSED_MODULE_HPP
#define GPDKIT_CROSSED_MODULE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "gpdkit/error.hpp"
#include "gpdkit/group.hpp"
#include "gpdkit/groupoid.hpp"

namespace gpdkit {

/// boundary: M -> P, action[p][m] = p acting on m.
struct CrossedModule {
  FiniteGroup p;
  FiniteGroup m;
  std::vector<std::size_t> boundary;
  std::vector<std::vector<std::size_t>> action;

  std::size_t act(std::size_t pe, std::size_t me) const { return action[pe][me]; }
};

/// Action axioms, boundary homomorphism, CM1 and CM2.
inline ValidationReport validate_crossed_module(const CrossedModule& x) {
  ValidationReport r;
  const auto& P = x.p;
  const auto& M = x.m;
  if (x.boundary.size() != M.order()) {
    r.add("boundary-shape", {"boundary has " + std::to_string(x.boundary.size()) + " entries"});
    return r;
  }
  for (auto v : x.boundary)
    if (v >= P.order()) {
      r.add("boundary-shape", {"boundary value out of range"});
      return r;
    }
  if (x.action.size() != P.order()) {
    r.add("action-shape", {"action has " + std::to_string(x.action.size()) + " rows"});
    return r;
  }
  for (const auto& row : x.action) {
    bool bad = row.size() != M.order();
    for (auto v : row) bad = bad || v >= M.order();
    if (bad) {
      r.add("action-shape", {"action row has the wrong shape"});
      return r;
    }
  }
  if (!is_homomorphism(M, P, x.boundary)) r.add("boundary-homomorphism", {"boundary is not a homomorphism"});
  for (std::size_t m = 0; m < M.order(); ++m)
    if (x.act(P.identity(), m) != m) r.add("action-identity", {M.name(m)});
  for (std::size_t p = 0; p < P.order(); ++p) {
    if (!is_isomorphism(M, M, x.action[p])) r.add("action-automorphism", {P.name(p)});
    for (std::size_t q = 0; q < P.order(); ++q)
      for (std::size_t m = 0; m < M.order(); ++m)
        if (x.act(P.mul(p, q), m) != x.act(p, x.act(q, m)))
          r.add("action-composition", {P.name(p), P.name(q), M.name(m)});
  }
  for (std::size_t p = 0; p < P.order(); ++p)
    for (std::size_t m = 0; m < M.order(); ++m)
      if (x.boundary[x.act(p, m)] != P.mul(P.mul(p, x.boundary[m]), P.inv(p)))
        r.add("CM1", {P.name(p), M.name(m)});
  for (std::size_t m = 0; m < M.order(); ++m)
    for (std::size_t n = 0; n < M.order(); ++n)
      if (x.act(x.boundary[m], n) != M.mul(M.mul(m, n), M.inv(m))) r.add("CM2", {M.name(m), M.name(n)});
  return r;
}

inline void require_crossed_module(const CrossedModule& x) {
  auto r = validate_crossed_module(x);
  if (!r.ok()) {
    const auto& v = r.violations.front();
    std::string w;
    for (const auto& s : v.witnesses) w += (w.empty() ? "" : ", ") + s;
    throw error(errc::not_a_crossed_module, v.law + " fails at " + w);
  }
}

inline std::vector<std::vector<std::size_t>> trivial_action(const FiniteGroup& p, const FiniteGroup& m) {
  std::vector<std::size_t> row(m.order());
  for (std::size_t i = 0; i < m.order(); ++i) row[i] = i;
  return std::vector<std::vector<std::size_t>>(p.order(), row);
}

/// 1 -> P.
inline CrossedModule trivial_xmod(const FiniteGroup& p = FiniteGroup::trivial()) {
  auto m = FiniteGroup::trivial();
  return {p, m, {p.identity()}, trivial_action(p, m)};
}

/// M -> P with trivial boundary and trivial action; needs M abelian.
inline CrossedModule trivial_boundary_xmod(const FiniteGroup& p, const FiniteGroup& m) {
  return {p, m, std::vector<std::size_t>(m.order(), p.identity()), trivial_action(p, m)};
}

/// G -> G, identity boundary, conjugation action.
inline CrossedModule inner_xmod(const FiniteGroup& g) {
  std::vector<std::size_t> id(g.order());
  for (std::size_t i = 0; i < g.order(); ++i) id[i] = i;
  std::vector<std::vector<std::size_t>> action(g.order(), std::vector<std::size_t>(g.order()));
  for (std::size_t p = 0; p < g.order(); ++p)
    for (std::size_t m = 0; m < g.order(); ++m) action[p][m] = g.mul(g.mul(p, m), g.inv(p));
  return {g, g, id, action};
}

/// C_n -> C_k reduction mod k (k divides n), trivial action.
inline CrossedModule cyclic_quotient_xmod(std::size_t n, std::size_t k) {
  if (k == 0 || n % k != 0) throw error(errc::not_a_crossed_module, "k must divide n");
  auto m = FiniteGroup::cyclic(n);
  auto p = FiniteGroup::cyclic(k);
  std::vector<std::size_t> b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = i % k;
  return {p, m, b, trivial_action(p, m)};
}

}  // namespace gpdkit

#endif  // GPDKIT_CROSSED_MODULE_HPP

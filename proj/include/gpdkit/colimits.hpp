#ifndef GPDKIT_COLIMITS_HPP
#define GPDKIT_COLIMITS_HPP

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gpdkit/error.hpp"
#include "gpdkit/presentation.hpp"
#include "gpdkit/rewriting.hpp"

namespace gpdkit {

/// A group presentation, stored as a one-object groupoid presentation whose
/// relations all have the form (relator, 1).
struct GroupPresentation {
  FpGroupoid presentation;

  static GroupPresentation make(const std::vector<std::string>& generators, const std::vector<Word>& relators,
                                const std::string& object = "*") {
    std::vector<Edge> edges;
    for (const auto& g : generators) edges.push_back({g, 0, 0});
    GroupPresentation out{FpGroupoid{ReflexiveGraph({object}, edges), {}}};
    for (const auto& r : relators) out.presentation.relations.push_back({r, Word{0, {}}});
    validate_presentation(out.presentation);
    return out;
  }

  const ReflexiveGraph& graph() const { return presentation.graph; }
  std::size_t generator_count() const { return presentation.graph.generator_count(); }

  std::vector<std::string> generator_names() const {
    std::vector<std::string> out;
    for (auto e : graph().generators()) out.push_back(graph().edge(e).name);
    return out;
  }

  std::vector<Word> relators() const {
    std::vector<Word> out;
    for (const auto& [l, r] : presentation.relations)
      out.push_back(reduce(graph(), concat(graph(), l, inverse_word(graph(), r))));
    return out;
  }

  /// Letter for generator number i (0-based, not counting the identity edge).
  Letter letter(std::size_t i, bool inverse = false) const { return {graph().object_count() + i, inverse}; }

  /// "<a, u | a^2, u a u^-1 a^-1>"
  std::string to_string() const {
    std::string out = "<";
    auto names = generator_names();
    for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + names[i];
    out += " | ";
    auto rels = relators();
    for (std::size_t i = 0; i < rels.size(); ++i) out += (i ? ", " : "") + word_string(graph(), rels[i]);
    return out + ">";
  }
};

/// Substitutes every letter of `w` by the image word of its edge, freely
/// reducing the result.
inline Word substitute(const ReflexiveGraph& from, const ReflexiveGraph& to, const Word& w, Obj start,
                       const std::function<Word(std::size_t)>& image) {
  Word out{start, {}};
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    Word piece = image(it->edge);
    if (it->inverse) piece = inverse_word(to, piece);
    out = concat(to, piece, out);
  }
  (void)from;
  return reduce(to, out);
}

/// Removes the listed generators by Tietze moves. Each one must occur
/// exactly once in some relator, which is then solved for it and deleted;
/// later relators are tried first. Relators that become trivial are
/// dropped, as are duplicates.
inline GroupPresentation eliminate_generators(const GroupPresentation& gp, const std::vector<std::size_t>& edges) {
  const auto& g = gp.graph();
  std::vector<Word> rels = gp.relators();
  std::map<std::size_t, Word> solved;  // edge -> word in the remaining letters
  for (auto x : edges) {
    bool done = false;
    for (std::size_t i = rels.size(); i-- > 0 && !done;) {
      const auto& r = rels[i].letters;
      std::size_t hits = 0, at = 0;
      for (std::size_t k = 0; k < r.size(); ++k)
        if (r[k].edge == x) ++hits, at = k;
      if (hits != 1) continue;
      // r = P x^e Q with P = r[0..at), Q = r(at..]; x = P^-1 Q^-1 or Q P
      Word p{0, {r.begin(), r.begin() + static_cast<std::ptrdiff_t>(at)}};
      Word q{0, {r.begin() + static_cast<std::ptrdiff_t>(at + 1), r.end()}};
      Word value = r[at].inverse ? concat(g, q, p) : concat(g, inverse_word(g, p), inverse_word(g, q));
      value = reduce(g, value);
      rels.erase(rels.begin() + static_cast<std::ptrdiff_t>(i));
      auto replace = [&](const Word& w) {
        return substitute(g, g, w, 0, [&](std::size_t e) { return e == x ? value : single_letter(g, e); });
      };
      for (auto& w : rels) w = replace(w);
      for (auto& [e, v] : solved) v = replace(v);
      solved[x] = value;
      done = true;
    }
    if (!done) throw error(errc::wrong_shape, "no relator solves for " + g.edge(x).name);
  }
  std::vector<std::string> names;
  std::map<std::size_t, std::size_t> renumber;
  for (auto e : g.generators())
    if (!solved.count(e)) {
      renumber[e] = g.object_count() + names.size();
      names.push_back(g.edge(e).name);
    }
  std::vector<Word> kept;
  std::set<Word> seen;
  for (const auto& w : rels) {
    if (w.empty()) continue;
    Word nw{0, {}};
    for (Letter l : w.letters) nw.letters.push_back({renumber.at(l.edge), l.inverse});
    if (seen.insert(nw).second) kept.push_back(nw);
  }
  return GroupPresentation::make(names, kept, g.object_name(0));
}

// ---------------------------------------------------------------------------
// Pushouts

struct PushoutResult {
  FpGroupoid apex;
  PresentationMorphism inj_left;   // B -> apex
  PresentationMorphism inj_right;  // C -> apex
  std::vector<std::string> transcript;
};

namespace detail {

/// Checks that f sends every relation of `from` to an equality of `to`,
/// using a completed rewriting system when completion finishes quickly.
inline void check_relations_preserved(const FpGroupoid& from, const FpGroupoid& to, const PresentationMorphism& f,
                                      const std::string& label, std::vector<std::string>& transcript) {
  if (from.relations.empty()) return;
  std::optional<RewritingSystem> rs;
  try {
    rs = confluent_system(to, 400);
  } catch (const error&) {
    transcript.push_back(label + ": relations assumed preserved (no normal form found)");
    return;
  }
  for (const auto& [l, r] : from.relations)
    if (rs->normal_form(apply(from, to, f, l)) != rs->normal_form(apply(from, to, f, r)))
      throw error(errc::invalid_presentation_morphism,
                  label + " does not preserve " + word_string(from.graph, l) + " = " + word_string(from.graph, r));
  transcript.push_back(label + ": relations preserved (checked by normal forms)");
}

}  // namespace detail

/// Pushout of B <- A -> C. Objects of the apex are the classes of B + C
/// under f(a) ~ g(a); generators are those of B followed by those of C,
/// prefixed "L." / "R." only when names collide; relations are those of B
/// and C plus f(e) = g(e) for each generator e of A.
inline PushoutResult pushout(const FpGroupoid& a, const FpGroupoid& b, const FpGroupoid& c,
                             const PresentationMorphism& f, const PresentationMorphism& g) {
  PushoutResult out;
  validate_presentation(a);
  validate_presentation(b);
  validate_presentation(c);
  require_presentation_morphism(a, b, f);
  require_presentation_morphism(a, c, g);
  detail::check_relations_preserved(a, b, f, "f", out.transcript);
  detail::check_relations_preserved(a, c, g, "g", out.transcript);

  const std::size_t nb = b.graph.object_count(), nc = c.graph.object_count();
  std::vector<std::size_t> parent(nb + nc);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (Obj x = 0; x < a.graph.object_count(); ++x) {
    auto p = find(f.obj_map[x]), q = find(nb + g.obj_map[x]);
    if (p != q) parent[std::max(p, q)] = std::min(p, q);
  }
  std::map<std::size_t, Obj> class_of_root;
  std::vector<Obj> class_of(nb + nc);
  std::vector<std::string> names;
  auto member_name = [&](std::size_t i) { return i < nb ? b.graph.object_name(i) : c.graph.object_name(i - nb); };
  for (std::size_t i = 0; i < nb + nc; ++i) {
    auto r = find(i);
    auto [it, fresh] = class_of_root.emplace(r, names.size());
    if (fresh) names.push_back(member_name(i));
    class_of[i] = it->second;
  }
  {
    std::map<std::string, std::size_t> uses;
    for (const auto& n : names) ++uses[n];
    for (std::size_t k = 0; k < names.size(); ++k) {
      if (uses[names[k]] < 2) continue;
      std::size_t first = 0;
      while (class_of[first] != k) ++first;
      names[k] = (first < nb ? "L." : "R.") + names[k];
    }
    std::set<std::string> taken;
    for (auto& n : names) {
      std::string base = n;
      for (std::size_t k = 2; !taken.insert(n).second; ++k) n = base + "#" + std::to_string(k);
    }
  }

  std::map<std::string, std::size_t> gen_uses;
  for (auto e : b.graph.generators()) ++gen_uses[b.graph.edge(e).name];
  for (auto e : c.graph.generators()) ++gen_uses[c.graph.edge(e).name];
  for (const auto& n : names) ++gen_uses[identity_name(n)];
  std::vector<Edge> gens;
  std::vector<std::size_t> left_edge(b.graph.edge_count()), right_edge(c.graph.edge_count());
  const std::size_t n_obj = names.size();
  for (auto e : b.graph.generators()) {
    const auto& ed = b.graph.edge(e);
    left_edge[e] = n_obj + gens.size();
    gens.push_back({(gen_uses[ed.name] > 1 ? "L." : "") + ed.name, class_of[ed.src], class_of[ed.tgt]});
  }
  for (auto e : c.graph.generators()) {
    const auto& ed = c.graph.edge(e);
    right_edge[e] = n_obj + gens.size();
    gens.push_back({(gen_uses[ed.name] > 1 ? "R." : "") + ed.name, class_of[nb + ed.src], class_of[nb + ed.tgt]});
  }
  out.apex.graph = ReflexiveGraph(names, gens);
  const auto& ag = out.apex.graph;

  auto injection = [&](const FpGroupoid& side, std::size_t offset, const std::vector<std::size_t>& edge_of) {
    PresentationMorphism m;
    for (Obj x = 0; x < side.graph.object_count(); ++x) m.obj_map.push_back(class_of[offset + x]);
    for (std::size_t e = 0; e < side.graph.edge_count(); ++e)
      m.edge_map.push_back(side.graph.is_identity(e) ? Word{m.obj_map[side.graph.edge(e).src], {}}
                                                     : single_letter(ag, edge_of[e]));
    return m;
  };
  out.inj_left = injection(b, 0, left_edge);
  out.inj_right = injection(c, nb, right_edge);

  for (const auto& [l, r] : b.relations)
    out.apex.relations.push_back({apply(b, out.apex, out.inj_left, l), apply(b, out.apex, out.inj_left, r)});
  for (const auto& [l, r] : c.relations)
    out.apex.relations.push_back({apply(c, out.apex, out.inj_right, l), apply(c, out.apex, out.inj_right, r)});
  for (auto e : a.graph.generators()) {
    Word lw = reduce(ag, apply(b, out.apex, out.inj_left, f.edge_map[e]));
    Word rw = reduce(ag, apply(c, out.apex, out.inj_right, g.edge_map[e]));
    if (lw != rw) out.apex.relations.push_back({lw, rw});
  }
  validate_presentation(out.apex);
  out.transcript.push_back("apex: " + std::to_string(ag.object_count()) + " objects, " +
                           std::to_string(ag.generator_count()) + " generators, " +
                           std::to_string(out.apex.relations.size()) + " relations");
  return out;
}

/// Whether f induces an isomorphism of the presented groupoids. Decided by
/// comparing normal forms, so it needs both presentations to complete to
/// finite confluent systems; std::nullopt when that fails.
inline std::optional<bool> induces_isomorphism(const FpGroupoid& from, const FpGroupoid& to,
                                               const PresentationMorphism& f, std::size_t max_rules = 200) {
  require_presentation_morphism(from, to, f);
  RewritingSystem rf, rt;
  try {
    rf = confluent_system(from, max_rules);
    rt = confluent_system(to, max_rules);
  } catch (const error&) {
    return std::nullopt;
  }
  NormalFormLanguage lf(rf), lt(rt);
  if (!lf.is_finite() || !lt.is_finite()) return std::nullopt;
  std::set<Obj> hit(f.obj_map.begin(), f.obj_map.end());
  if (hit.size() != from.graph.object_count() || hit.size() != to.graph.object_count()) return false;
  std::size_t count_to = 0;
  for (Obj y = 0; y < to.graph.object_count(); ++y) count_to += lt.enumerate(y, std::numeric_limits<std::size_t>::max()).size();
  std::set<Word> images;
  std::size_t count_from = 0;
  for (Obj x = 0; x < from.graph.object_count(); ++x)
    for (const auto& w : lf.enumerate(x, std::numeric_limits<std::size_t>::max())) {
      ++count_from;
      images.insert(Word{f.obj_map[x], rt.normal_form(apply(from, to, f, w).letters)});
    }
  return images.size() == count_from && count_from == count_to;
}

/// The pushout of fundamental groupoids of W -> U and W -> V on a base set.
inline PushoutResult van_kampen(const FpGroupoid& pi_w, const FpGroupoid& pi_u, const FpGroupoid& pi_v,
                                const PresentationMorphism& i, const PresentationMorphism& j) {
  auto r = pushout(pi_w, pi_u, pi_v, i, j);
  r.transcript.insert(r.transcript.begin(), "van Kampen: pi(X, X0) as pushout of pi(U, X0) <- pi(W, X0) -> pi(V, X0)");
  return r;
}

/// Spanning tree of the generating graph: for each object other than the
/// root, the generator used to reach it. Breadth first from `root`, trying
/// generators in index order.
inline std::vector<std::size_t> bfs_spanning_tree(const ReflexiveGraph& g, Obj root) {
  std::vector<bool> seen(g.object_count(), false);
  std::vector<std::size_t> tree;
  std::deque<Obj> queue{root};
  seen[root] = true;
  while (!queue.empty()) {
    Obj x = queue.front();
    queue.pop_front();
    for (auto e : g.generators()) {
      const auto& ed = g.edge(e);
      Obj other;
      if (ed.src == x)
        other = ed.tgt;
      else if (ed.tgt == x)
        other = ed.src;
      else
        continue;
      if (seen[other]) continue;
      seen[other] = true;
      tree.push_back(e);
      queue.push_back(other);
    }
  }
  if (tree.size() + 1 != g.object_count()) throw error(errc::not_connected, "generating graph is not connected");
  return tree;
}

struct VertexGroupPresentation {
  GroupPresentation group;
  std::vector<std::size_t> tree;       // edges of the presentation used as the tree
  std::vector<Word> generator_loops;   // loop word at the base object for each group generator
};

/// Retracts a connected presentation onto its vertex group at `base`. Tree
/// edges become trivial; every other generator e: y -> z becomes the loop
/// t(z)^-1 e t(y), t(y) being the tree path base -> y.
inline VertexGroupPresentation vertex_group_presentation(const FpGroupoid& p, Obj base,
                                                         std::optional<std::vector<std::size_t>> tree = {}) {
  validate_presentation(p);
  const auto& g = p.graph;
  if (base >= g.object_count()) throw error(errc::unknown_object, std::to_string(base));
  VertexGroupPresentation out;
  out.tree = tree ? *tree : bfs_spanning_tree(g, base);
  std::set<std::size_t> in_tree(out.tree.begin(), out.tree.end());
  if (in_tree.size() != out.tree.size() || out.tree.size() + 1 != g.object_count())
    throw error(errc::not_connected, "tree has the wrong number of edges");
  // paths from the base along tree edges
  std::vector<std::optional<Word>> path(g.object_count());
  path[base] = Word{base, {}};
  for (bool grew = true; grew;) {
    grew = false;
    for (auto e : out.tree) {
      if (g.is_identity(e)) throw error(errc::not_connected, "identity edge in tree");
      const auto& ed = g.edge(e);
      if (path[ed.src] && !path[ed.tgt]) {
        path[ed.tgt] = concat(g, single_letter(g, e), *path[ed.src]);
        grew = true;
      } else if (path[ed.tgt] && !path[ed.src]) {
        path[ed.src] = concat(g, single_letter(g, e, true), *path[ed.tgt]);
        grew = true;
      }
    }
  }
  for (Obj x = 0; x < g.object_count(); ++x)
    if (!path[x]) throw error(errc::not_connected, "tree does not reach " + g.object_name(x));

  std::vector<std::string> names;
  std::vector<std::size_t> group_letter(g.edge_count(), none);
  for (auto e : g.generators()) {
    if (in_tree.count(e)) continue;
    const auto& ed = g.edge(e);
    group_letter[e] = 1 + names.size();
    names.push_back(ed.name);
    out.generator_loops.push_back(
        reduce(g, concat(g, inverse_word(g, *path[ed.tgt]), concat(g, single_letter(g, e), *path[ed.src]))));
  }
  auto retract = [&](const Word& w) {
    Word r{0, {}};
    for (Letter l : w.letters)
      if (group_letter[l.edge] != none) r.letters.push_back({group_letter[l.edge], l.inverse});
    return r;
  };
  std::vector<Word> relators;
  std::set<Word> seen;
  for (const auto& [l, r] : p.relations) {
    Word rl = retract(l), rr = retract(r);
    Word rel{0, rl.letters};
    for (auto it = rr.letters.rbegin(); it != rr.letters.rend(); ++it) rel.letters.push_back(flip(*it));
    // free reduction on the one-object graph
    Word red{0, {}};
    for (Letter x : rel.letters) {
      if (!red.letters.empty() && red.letters.back() == flip(x))
        red.letters.pop_back();
      else
        red.letters.push_back(x);
    }
    if (!red.empty() && seen.insert(red).second) relators.push_back(red);
  }
  out.group = GroupPresentation::make(names, relators, g.object_name(base));
  return out;
}

// ---------------------------------------------------------------------------
// HNN presentations from a pushout

/// Edge group A embedded twice into the vertex group K by phi and psi. The
/// pushout of A + A -> A x I and A + A -> K (copy 0 by phi, copy 1 by psi)
/// has vertex group K*_A; eliminating the copies of A leaves
/// <K, u | rel K, u phi(a) u^-1 = psi(a)>.
struct HnnResult {
  PushoutResult pushout;
  GroupPresentation raw;  // vertex group before elimination
  GroupPresentation group;
};


inline HnnResult hnn_from_pushout(const FpGroupoid& k, const FpGroupoid& a, const PresentationMorphism& phi,
                                  const PresentationMorphism& psi) {
  if (k.graph.object_count() != 1 || a.graph.object_count() != 1)
    throw error(errc::wrong_shape, "vertex and edge groups must be one-object presentations");
  try {
    require_presentation_morphism(a, k, phi);
    require_presentation_morphism(a, k, psi);
  } catch (const error& e) {
    throw error(errc::wrong_shape, std::string("subgroup map: ") + e.what());
  }
  const auto& ga = a.graph;
  // source: two copies of A on objects 0 and 1
  std::vector<Edge> two;
  std::vector<Edge> cyl;
  for (Obj side = 0; side < 2; ++side)
    for (auto e : ga.generators()) {
      two.push_back({ga.edge(e).name + "_" + std::to_string(side), side, side});
      cyl.push_back({ga.edge(e).name + "_" + std::to_string(side), side, side});
    }
  const std::size_t na = ga.generator_count();
  cyl.push_back({"u", 0, 1});
  FpGroupoid src{ReflexiveGraph({"0", "1"}, two), {}};
  FpGroupoid cylinder{ReflexiveGraph({"0", "1"}, cyl), {}};
  auto copy_word = [&](const Word& w, Obj side, const ReflexiveGraph& target) {
    Word out{side, {}};
    for (Letter l : w.letters) out.letters.push_back({2 + side * na + (l.edge - 1), l.inverse});
    (void)target;
    return out;
  };
  for (Obj side = 0; side < 2; ++side)
    for (const auto& [l, r] : a.relations) {
      src.relations.push_back({copy_word(l, side, src.graph), copy_word(r, side, src.graph)});
      cylinder.relations.push_back({copy_word(l, side, cylinder.graph), copy_word(r, side, cylinder.graph)});
    }
  const std::size_t u_edge = 2 + 2 * na;
  for (std::size_t i = 0; i < na; ++i) {
    // u a_0 u^-1 = a_1
    Word lhs{1, {{u_edge, false}, {2 + i, false}, {u_edge, true}}};
    cylinder.relations.push_back({lhs, Word{1, {{2 + na + i, false}}}});
  }
  PresentationMorphism f, g;
  f.obj_map = {0, 1};
  g.obj_map = {0, 0};
  for (Obj side = 0; side < 2; ++side) {
    f.edge_map.push_back(Word{side, {}});
    g.edge_map.push_back(Word{0, {}});
  }
  for (Obj side = 0; side < 2; ++side)
    for (auto e : ga.generators()) {
      f.edge_map.push_back(Word{side, {{2 + side * na + (e - 1), false}}});
      g.edge_map.push_back((side == 0 ? phi : psi).edge_map[e]);
    }
  HnnResult out;
  out.pushout = pushout(src, cylinder, k, f, g);
  out.raw = vertex_group_presentation(out.pushout.apex, 0).group;
  // the copies of A are the first 2*na generators of the apex
  std::vector<std::size_t> copies;
  for (std::size_t i = 0; i < 2 * na; ++i) copies.push_back(1 + i);
  GroupPresentation eliminated = eliminate_generators(out.raw, copies);
  // what remains besides K's own relators are the conjugation relators; the
  // images of A's relators are consequences of K's and are dropped
  const auto& eg = eliminated.graph();
  std::map<std::string, std::size_t> final_index;  // eliminated edge name -> final edge
  std::vector<std::string> names;
  std::vector<std::size_t> k_edge_in_eliminated(k.graph.edge_count(), none);
  for (auto e : k.graph.generators()) {
    const std::string& name = k.graph.edge(e).name;
    std::string apex_name = eg.has_edge(name) ? name : "R." + name;
    k_edge_in_eliminated[e] = eg.edge_index(apex_name);
    final_index[apex_name] = 1 + names.size();
    names.push_back(name);
  }
  std::string stable;
  for (auto e : eg.generators())
    if (!final_index.count(eg.edge(e).name)) stable = eg.edge(e).name;
  final_index[stable] = 1 + names.size();
  names.push_back(stable);
  auto k_word = [&](const Word& kw) {
    Word w{0, {}};
    for (Letter l : kw.letters) w.letters.push_back({k_edge_in_eliminated[l.edge], l.inverse});
    return reduce(eg, w);
  };
  auto relator_of = [&](const Word& l, const Word& r) { return reduce(eg, concat(eg, k_word(l), inverse_word(eg, k_word(r)))); };
  std::set<Word> from_k, implied;
  std::vector<Word> ordered;
  for (const auto& [l, r] : k.relations) {
    Word w = relator_of(l, r);
    if (!w.empty() && from_k.insert(w).second) ordered.push_back(w);
  }
  for (const auto* m : {&phi, &psi})
    for (const auto& [l, r] : a.relations) implied.insert(relator_of(apply(a, k, *m, l), apply(a, k, *m, r)));
  for (const auto& w : eliminated.relators())
    if (!from_k.count(w) && !implied.count(w)) ordered.push_back(w);
  std::vector<Word> relators;
  for (const auto& w : ordered) {
    Word nw{0, {}};
    for (Letter l : w.letters) nw.letters.push_back({final_index.at(eg.edge(l.edge).name), l.inverse});
    relators.push_back(nw);
  }
  out.group = GroupPresentation::make(names, relators, eg.object_name(0));
  return out;
}

// ---------------------------------------------------------------------------
// Bounded universal-property check

struct UniversalPropertyCheck {
  std::size_t cocones = 0;
  std::size_t apex_morphisms = 0;
  bool every_cocone_mediated_once = true;
  std::vector<std::string> failures;
};

/// For the finite target h: every cocone (qB, qC) with qB f = qC g has
/// exactly one apex morphism m with m inj_left = qB and m inj_right = qC.
inline UniversalPropertyCheck check_universal_property(const FpGroupoid& a, const FpGroupoid& b, const FpGroupoid& c,
                                                       const PresentationMorphism& f, const PresentationMorphism& g,
                                                       const PushoutResult& po, const FiniteGroupoid& h) {
  using Key = std::pair<std::vector<Obj>, std::vector<Arr>>;
  auto key_of = [](const FpToFinite& m) { return Key{m.obj_map, m.edge_map}; };
  std::vector<FpToFinite> qb, qc;
  enumerate_fp_morphisms(b, h, [&](const FpToFinite& m) { return qb.push_back(m), true; });
  enumerate_fp_morphisms(c, h, [&](const FpToFinite& m) { return qc.push_back(m), true; });
  std::map<std::pair<Key, Key>, std::size_t> mediated;
  for (const auto& x : qb)
    for (const auto& y : qc) {
      bool ok = true;
      for (Obj o = 0; o < a.graph.object_count() && ok; ++o) ok = x.obj_map[f.obj_map[o]] == y.obj_map[g.obj_map[o]];
      for (auto e : a.graph.generators()) {
        if (!ok) break;
        ok = evaluate(b, h, x, f.edge_map[e]) == evaluate(c, h, y, g.edge_map[e]);
      }
      if (ok) mediated[{key_of(x), key_of(y)}] = 0;
    }
  UniversalPropertyCheck out;
  out.cocones = mediated.size();
  enumerate_fp_morphisms(po.apex, h, [&](const FpToFinite& m) {
    ++out.apex_morphisms;
    auto kb = key_of(precompose(b, po.apex, h, po.inj_left, m));
    auto kc = key_of(precompose(c, po.apex, h, po.inj_right, m));
    auto it = mediated.find({kb, kc});
    if (it == mediated.end())
      out.failures.push_back("apex morphism whose restriction is not a cocone");
    else
      ++it->second;
    return true;
  });
  for (const auto& [k, n] : mediated)
    if (n != 1) {
      out.failures.push_back("cocone mediated " + std::to_string(n) + " times");
      break;
    }
  out.every_cocone_mediated_once = out.failures.empty();
  return out;
}

}  // namespace gpdkit

#endif  // GPDKIT_COLIMITS_HPP

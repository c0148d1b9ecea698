#ifndef GPDKIT_HOLONOMY_HPP
#define GPDKIT_HOLONOMY_HPP

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gpdkit/bisection.hpp"
#include "gpdkit/error.hpp"
#include "gpdkit/local_data.hpp"
#include "gpdkit/monodromy.hpp"

namespace gpdkit {

/// [s]_x: the values of s on the minimal open neighbourhood U_x. In a finite
/// space two bisections have the same germ at x iff they agree on U_x.
struct Germ {
  Obj base = 0;
  LocalBisection values;  // defined exactly on U_base

  friend bool operator==(const Germ&, const Germ&) = default;
  friend auto operator<=>(const Germ&, const Germ&) = default;
};

inline Germ germ(const LocalGroupoidData& d, const LocalBisection& s, Obj x) {
  if (!s.defined(x)) throw error(errc::out_of_domain, "germ outside the domain");
  const auto& u = d.object_topology.minimal_open(x);
  for (auto z : members(u))
    if (!s.defined(z)) throw error(errc::out_of_domain, "domain is not a neighbourhood of the base point");
  return Germ{x, restrict_to(s, u)};
}

inline Arr germ_value(const Germ& g) { return g.values.values[g.base]; }

/// The germs of a generated inverse semigroup, as a finite groupoid.
///
/// Germs are closed under composition and inverse starting from the germs
/// of W-bisections on minimal opens. Every element of the semigroup
/// generated by the W-bisections is a product of such pieces, so this set
/// is exactly the set of germs of that semigroup, without enumerating the
/// semigroup itself.
class GermGroupoid {
 public:
  GermGroupoid() = default;

  GermGroupoid(const LocalGroupoidData& d, std::vector<Germ> germs) : data_(d), windex_(d) { finish(std::move(germs)); }

  const LocalGroupoidData& data() const { return data_; }
  const WindowIndex& window_index() const { return windex_; }
  const FiniteGroupoid& groupoid() const { return groupoid_; }
  std::size_t size() const { return germs_.size(); }
  const std::vector<Germ>& germs() const { return germs_; }
  const Germ& germ_at(std::size_t i) const { return germs_.at(i); }

  std::size_t index_of(const Germ& g) const {
    auto it = index_.find(g);
    if (it == index_.end()) throw error(errc::out_of_domain, "germ is not in the germ groupoid");
    return it->second;
  }
  bool contains(const Germ& g) const { return index_.count(g) > 0; }

  /// Germs of W-bisections at x, each with domain U_x.
  const std::vector<std::size_t>& w_germs_at(Obj x) const { return w_germs_.at(x); }
  /// W-germs at alpha(w) whose value there is w.
  std::vector<std::size_t> w_germs_through(Arr w) const {
    std::vector<std::size_t> out;
    for (auto i : w_germs_.at(data_.groupoid.src(w)))
      if (germ_value(germs_[i]) == w) out.push_back(i);
    return out;
  }

  /// eta . gamma on U_x: z -> eta(beta gamma z) gamma(z).
  static Germ product(const LocalGroupoidData& d, const Germ& eta, const Germ& gamma) {
    const auto& g = d.groupoid;
    if (g.tgt(germ_value(gamma)) != eta.base) throw error(errc::not_composable, "germs do not compose");
    Germ out{gamma.base, LocalBisection{std::vector<Arr>(g.object_count(), none)}};
    for (auto z : members(gamma.values.domain())) {
      const Arr gz = gamma.values.values[z];
      out.values.values[z] = g.comp_raw(eta.values.at(g.tgt(gz)), gz);
    }
    return out;
  }

  static Germ inverse(const LocalGroupoidData& d, const Germ& gamma) {
    const auto& g = d.groupoid;
    return Germ{g.tgt(germ_value(gamma)), relative_inverse(g, gamma.values)};
  }

  /// The germ at z of a representative of gamma, for z in U_base.
  static Germ restrict_at(const LocalGroupoidData& d, const Germ& gamma, Obj z) {
    return Germ{z, restrict_to(gamma.values, d.object_topology.minimal_open(z))};
  }

  std::string germ_name(const Germ& gm) const {
    std::string s = "[";
    bool first = true;
    for (auto z : members(gm.values.domain())) {
      if (!first) s += ",";
      first = false;
      s += data_.groupoid.arrow_name(gm.values.values[z]);
    }
    return s + "]_" + data_.groupoid.object_name(gm.base);
  }

 private:
  void finish(std::vector<Germ> germs) {
    const auto& g = data_.groupoid;
    std::sort(germs.begin(), germs.end());
    germs.erase(std::unique(germs.begin(), germs.end()), germs.end());
    germs_ = std::move(germs);
    for (std::size_t i = 0; i < germs_.size(); ++i) index_.emplace(germs_[i], i);
    w_germs_.assign(g.object_count(), {});
    for (Obj x = 0; x < g.object_count(); ++x)
      for (auto& s : w_bisections_on(data_, windex_, data_.object_topology.minimal_open(x))) {
        Germ gm{x, std::move(s)};
        auto it = index_.find(gm);
        if (it != index_.end()) w_germs_[x].push_back(it->second);
      }
    std::vector<ArrowData> arrows;
    std::vector<Arr> id_of(g.object_count(), none);
    for (std::size_t i = 0; i < germs_.size(); ++i) {
      const Arr v = germ_value(germs_[i]);
      arrows.push_back({germ_name(germs_[i]), germs_[i].base, g.tgt(v)});
      bool identity = true;
      for (auto z : members(germs_[i].values.domain()))
        if (germs_[i].values.values[z] != g.id_of(z)) identity = false;
      if (identity) id_of[germs_[i].base] = i;
    }
    for (Obj x = 0; x < g.object_count(); ++x)
      if (id_of[x] == none) throw error(errc::invalid_local_data, "identity germ missing at " + g.object_name(x));
    groupoid_ = FiniteGroupoid::build(g.object_names(), arrows, id_of, [&](Arr h, Arr k) {
      return index_of(product(data_, germs_[h], germs_[k]));
    });
  }

  LocalGroupoidData data_;
  WindowIndex windex_{LocalGroupoidData{}};
  std::vector<Germ> germs_;
  std::map<Germ, std::size_t> index_;
  std::vector<std::vector<std::size_t>> w_germs_;
  FiniteGroupoid groupoid_;
};

/// Germ closure of the W-germs under composition and inverse.
inline GermGroupoid germ_groupoid(const LocalGroupoidData& d, std::size_t max_germs = 200000) {
  require_local_data(d);
  WindowIndex wi(d);
  const auto& g = d.groupoid;
  std::map<Germ, bool> seen;
  std::vector<Germ> all;
  std::vector<std::vector<Germ>> gens_at(g.object_count());
  std::deque<Germ> queue;
  auto add = [&](Germ gm) {
    if (seen.emplace(gm, true).second) {
      queue.push_back(gm);
      all.push_back(std::move(gm));
      if (all.size() > max_germs) throw error(errc::not_finite_on_instance, "germ closure exceeds bound");
    }
  };
  for (Obj x = 0; x < g.object_count(); ++x)
    for (auto& s : w_bisections_on(d, wi, d.object_topology.minimal_open(x))) {
      Germ gm{x, std::move(s)};
      gens_at[x].push_back(gm);
      Germ inv = GermGroupoid::inverse(d, gm);
      gens_at[inv.base].push_back(inv);
    }
  for (const auto& gl : gens_at)
    for (const auto& gm : gl) add(gm);
  while (!queue.empty()) {
    Germ gm = queue.front();
    queue.pop_front();
    const Obj y = g.tgt(germ_value(gm));
    for (const auto& eta : gens_at[y]) add(GermGroupoid::product(d, eta, gm));
  }
  return GermGroupoid(d, std::move(all));
}

/// Germ groupoid read off an explicit semigroup: the germs of all its
/// elements at all points of their domains.
inline GermGroupoid germ_groupoid_from_semigroup(const LocalGroupoidData& d, const InverseSemigroup& s) {
  std::vector<Germ> all;
  for (const auto& e : s.elements())
    for (auto x : members(e.domain())) all.push_back(germ(d, e, x));
  return GermGroupoid(d, std::move(all));
}

// ---------------------------------------------------------------------------
// J0 and the holonomy groupoid

struct J0 {
  std::vector<bool> member;  // indexed by germ
  bool paper_literal = false;
  ValidationReport report;   // wide, subgroupoid, normal
  std::size_t count() const { return static_cast<std::size_t>(std::count(member.begin(), member.end(), true)); }
};

/// Locally W-valued: the germ restricted to U_x is a W-bisection.
inline bool locally_w_valued(const GermGroupoid& j, const Germ& gm) {
  return is_w_bisection(j.data(), j.window_index(), gm.values);
}

/// J0: germs fixing their base point that are locally W-valued. By default
/// the value at the base point must also be the identity; `paper_literal`
/// drops that condition.
inline J0 j0(const GermGroupoid& j, bool paper_literal = false) {
  const auto& g = j.data().groupoid;
  const auto& jg = j.groupoid();
  J0 out;
  out.paper_literal = paper_literal;
  out.member.assign(j.size(), false);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Germ& gm = j.germ_at(i);
    const Arr v = germ_value(gm);
    if (g.tgt(v) != gm.base) continue;
    if (!paper_literal && v != g.id_of(gm.base)) continue;
    out.member[i] = locally_w_valued(j, gm);
  }
  for (Obj x = 0; x < jg.object_count(); ++x)
    if (!out.member[jg.id_of(x)]) out.report.add("wide", {jg.object_name(x)});
  std::vector<std::vector<Arr>> at(jg.object_count());
  for (Arr a = 0; a < jg.arrow_count(); ++a)
    if (out.member[a]) at[jg.src(a)].push_back(a);
  for (const auto& loops : at)
    for (Arr a : loops) {
      if (!out.member[jg.inv(a)]) out.report.add("subgroupoid-inverse", {jg.arrow_name(a)});
      for (Arr b : loops)
        if (!out.member[jg.comp_raw(a, b)]) out.report.add("subgroupoid-composition", {jg.arrow_name(a), jg.arrow_name(b)});
    }
  for (Arr gam = 0; gam < jg.arrow_count(); ++gam)
    for (Arr del : at[jg.src(gam)]) {
      const Arr conj = jg.comp_raw(jg.comp_raw(gam, del), jg.inv(gam));
      if (!out.member[conj]) out.report.add("normal", {jg.arrow_name(gam), jg.arrow_name(del)});
    }
  return out;
}

struct HolonomyGroupoid {
  FiniteGroupoid groupoid;
  std::vector<std::size_t> class_of;        // germ -> arrow of Hol
  std::vector<std::size_t> representative;  // arrow of Hol -> germ
  std::vector<Arr> projection;              // arrow of Hol -> arrow of G (`none` if not constant)
  bool projection_well_defined = true;
  std::vector<std::string> projection_witness;
  std::vector<Arr> embedding;               // arrow of G in W -> arrow of Hol
  bool embedding_injective = true;
  bool paper_literal = false;
};

/// Coset groupoid J/J0. Throws WellDefinednessFailure when p is not constant
/// on a coset, unless J0 is the paper-literal one (then it is reported).
inline HolonomyGroupoid holonomy_groupoid(const GermGroupoid& j, const J0& j0set) {
  if (!j0set.report.ok()) throw error(errc::well_definedness_failure, "J0 is not a normal subgroupoid: " +
                                                                         j0set.report.violations.front().law);
  const auto& g = j.data().groupoid;
  const auto& jg = j.groupoid();
  HolonomyGroupoid h;
  h.paper_literal = j0set.paper_literal;
  std::vector<std::vector<Arr>> loops(jg.object_count());
  for (Arr a = 0; a < jg.arrow_count(); ++a)
    if (j0set.member[a]) loops[jg.src(a)].push_back(a);
  h.class_of.assign(jg.arrow_count(), none);
  std::vector<ArrowData> arrows;
  for (Arr a = 0; a < jg.arrow_count(); ++a) {
    if (h.class_of[a] != none) continue;
    const std::size_t c = h.representative.size();
    h.representative.push_back(a);
    for (Arr del : loops[jg.src(a)]) h.class_of[jg.comp_raw(a, del)] = c;
    arrows.push_back({"", jg.src(a), jg.tgt(a)});
  }
  // name each class after its representative, e.g. <v1,v2>_x
  for (std::size_t c = 0; c < arrows.size(); ++c) {
    const std::string& n = jg.arrow_name(h.representative[c]);
    auto close = n.rfind("]_");
    arrows[c].name = "<" + n.substr(1, close - 1) + ">" + n.substr(close + 1);
  }
  std::vector<Arr> id_of(jg.object_count());
  for (Obj x = 0; x < jg.object_count(); ++x) id_of[x] = h.class_of[jg.id_of(x)];
  h.groupoid = FiniteGroupoid::build(jg.object_names(), arrows, id_of, [&](Arr p, Arr q) {
    return h.class_of[jg.comp_raw(h.representative[p], h.representative[q])];
  });
  h.projection.assign(arrows.size(), none);
  for (Arr a = 0; a < jg.arrow_count(); ++a) {
    const std::size_t c = h.class_of[a];
    const Arr v = germ_value(j.germ_at(a));
    const Arr rep = germ_value(j.germ_at(h.representative[c]));
    if (v == rep) {
      h.projection[c] = rep;
    } else if (h.projection_well_defined) {
      h.projection_well_defined = false;
      h.projection_witness = {jg.arrow_name(h.representative[c]), jg.arrow_name(a)};
    }
  }
  if (!h.projection_well_defined) {
    for (std::size_t c = 0; c < arrows.size(); ++c) {
      const Arr rep = germ_value(j.germ_at(h.representative[c]));
      for (Arr a = 0; a < jg.arrow_count(); ++a)
        if (h.class_of[a] == c && germ_value(j.germ_at(a)) != rep) h.projection[c] = none;
    }
    if (!h.paper_literal)
      throw error(errc::well_definedness_failure,
                  "p differs on " + h.projection_witness[0] + " and " + h.projection_witness[1]);
  }
  h.embedding.assign(g.arrow_count(), none);
  std::map<std::size_t, Arr> hit;
  for (auto w : members(j.data().window)) {
    auto through = j.w_germs_through(w);
    if (through.empty()) throw error(errc::not_sectionable, "no W-bisection through " + g.arrow_name(w));
    h.embedding[w] = h.class_of[through.front()];
    if (!hit.emplace(h.embedding[w], w).second) h.embedding_injective = false;
  }
  return h;
}

/// sigma_s(w) = <s>_{beta w} <f>_{alpha w} for the germ s at beta(w) and the
/// first W-germ f through w.
inline std::size_t chart(const GermGroupoid& j, const HolonomyGroupoid& h, std::size_t s_germ, Arr w) {
  const auto& g = j.data().groupoid;
  if (j.germ_at(s_germ).base != g.tgt(w)) throw error(errc::out_of_domain, "beta(w) is not the germ's base point");
  auto through = j.w_germs_through(w);
  if (through.empty()) throw error(errc::not_sectionable, "no W-bisection through " + g.arrow_name(w));
  return h.class_of[j.groupoid().comp_raw(s_germ, through.front())];
}

/// Chart of a generated bisection s at w (requires beta(w) in dom s).
inline std::size_t chart(const GermGroupoid& j, const HolonomyGroupoid& h, const LocalBisection& s, Arr w) {
  const auto& g = j.data().groupoid;
  return chart(j, h, j.index_of(germ(j.data(), s, g.tgt(w))), w);
}

struct ChartIndependence {
  std::size_t triples = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// For every w in W, every germ s at beta(w) and every pair of W-germs f, f~
/// through w: <s f> = <s f~>. The chart depends on s only through its germ
/// at beta(w), so ranging over germs covers all generated bisections.
inline ChartIndependence chart_independence(const GermGroupoid& j, const HolonomyGroupoid& h) {
  const auto& g = j.data().groupoid;
  const auto& jg = j.groupoid();
  ChartIndependence out;
  for (auto w : members(j.data().window)) {
    auto through = j.w_germs_through(w);
    if (through.empty()) throw error(errc::not_sectionable, "no W-bisection through " + g.arrow_name(w));
    for (Arr s : jg.star(g.tgt(w))) {
      const std::size_t first = h.class_of[jg.comp_raw(s, through.front())];
      for (auto f : through) {
        ++out.triples;
        if (h.class_of[jg.comp_raw(s, f)] != first && out.failures.size() < 10)
          out.failures.push_back(jg.arrow_name(s) + " at " + g.arrow_name(w) + " via " + jg.arrow_name(f));
      }
    }
  }
  return out;
}

struct HolonomyTopology {
  FiniteTopology topology;  // points: arrows of Hol
  ValidationReport continuity;
};

/// Topology on Hol generated by the chart images sigma_s(V). The minimal open
/// of an arrow is the intersection of the images of U^W_w over all (s, w)
/// with sigma_s(w) equal to it.
inline HolonomyTopology holonomy_topology(const GermGroupoid& j, const HolonomyGroupoid& h,
                                          const FiniteTopology* arrow_topology = nullptr) {
  const auto& d = j.data();
  const auto& g = d.groupoid;
  const auto& jg = j.groupoid();
  const auto& wi = j.window_index();
  const auto& hg = h.groupoid;
  const std::size_t m = hg.arrow_count();
  PointSet all(m);
  all.set();
  std::vector<PointSet> minimal(m, all);
  std::vector<std::size_t> first_through(g.arrow_count(), none);
  for (auto w : members(d.window)) {
    auto t = j.w_germs_through(w);
    if (t.empty()) throw error(errc::not_sectionable, "no W-bisection through " + g.arrow_name(w));
    first_through[w] = t.front();
  }
  for (auto w : members(d.window)) {
    const auto around = members(d.window_topology.minimal_open(wi.point(w)));
    for (Arr s : jg.star(g.tgt(w))) {
      const Germ& sg = j.germ_at(s);
      PointSet image(m);
      for (auto p : around) {
        const Arr w2 = wi.arrow(p);
        Germ piece = GermGroupoid::restrict_at(d, sg, g.tgt(w2));
        image.set(h.class_of[jg.comp_raw(j.index_of(piece), first_through[w2])]);
      }
      const std::size_t at = h.class_of[jg.comp_raw(s, first_through[w])];
      minimal[at] &= image;
    }
  }
  std::vector<std::string> names;
  for (Arr a = 0; a < m; ++a) names.push_back(hg.arrow_name(a));
  HolonomyTopology out{FiniteTopology::from_minimal_opens(names, minimal), {}};
  const auto& t = out.topology;
  for (Arr a = 0; a < m; ++a) {
    for (auto b : members(t.minimal_open(a)))
      if (!t.minimal_open(hg.inv(a)).test(hg.inv(b))) {
        out.continuity.add("inverse", {hg.arrow_name(a)});
        break;
      }
  }
  for (Arr a = 0; a < m; ++a)
    for (Arr b = 0; b < m; ++b) {
      if (hg.tgt(b) != hg.src(a)) continue;
      const auto& target = t.minimal_open(hg.comp_raw(a, b));
      bool ok = true;
      for (auto a2 : members(t.minimal_open(a))) {
        for (auto b2 : members(t.minimal_open(b)))
          if (hg.tgt(b2) == hg.src(a2) && !target.test(hg.comp_raw(a2, b2))) {
            ok = false;
            break;
          }
        if (!ok) break;
      }
      if (!ok) out.continuity.add("composition", {hg.arrow_name(a), hg.arrow_name(b)});
    }
  if (arrow_topology && h.projection_well_defined) {
    for (Arr a = 0; a < m; ++a)
      for (auto b : members(t.minimal_open(a)))
        if (!arrow_topology->minimal_open(h.projection[a]).test(h.projection[b])) {
          out.continuity.add("projection", {hg.arrow_name(a)});
          break;
        }
  }
  return out;
}

/// One-call summary of the pipeline on D.
struct HolonomySummary {
  std::size_t germ_count = 0;
  std::size_t j0_count = 0;
  std::size_t hol_arrows = 0;
  std::map<std::string, std::size_t> vertex_groups;  // object -> order
  bool embedding_injective = true;
  bool projection_well_defined = true;
};

inline HolonomySummary summarize(const GermGroupoid& j, const J0& z, const HolonomyGroupoid& h) {
  HolonomySummary s;
  s.germ_count = j.size();
  s.j0_count = z.count();
  s.hol_arrows = h.groupoid.arrow_count();
  for (Obj x = 0; x < h.groupoid.object_count(); ++x)
    s.vertex_groups[h.groupoid.object_name(x)] = h.groupoid.hom(x, x).size();
  s.embedding_injective = h.embedding_injective;
  s.projection_well_defined = h.projection_well_defined;
  return s;
}

// ---------------------------------------------------------------------------
// The monodromy pair

/// (M(G, W), W') with W' = iprime(W) and the topologies carried along
/// iprime. Throws NotFiniteOnInstance when M is infinite.
inline LocalGroupoidData monodromy_pair(const LocalGroupoidData& d) {
  auto m = monodromy(d);
  FiniteGroupoid fm = finite_monodromy(m);
  const auto& g = d.groupoid;
  const auto& graph = m.presentation.graph;
  WindowIndex wi(d);
  PointSet window(fm.arrow_count());
  std::vector<Arr> image(g.arrow_count(), none);
  for (auto w : members(d.window)) {
    Word nf = m.rewriting.normal_form(m.iprime_of(w));
    const Arr a = nf.empty() ? fm.id_of(nf.start) : fm.arrow_index(word_string(graph, nf));
    image[w] = a;
    window.set(a);
  }
  // window points of the result are in increasing arrow order of M
  std::vector<Arr> pts = members(window);
  std::map<Arr, std::size_t> pos;
  for (std::size_t i = 0; i < pts.size(); ++i) pos[pts[i]] = i;
  std::vector<std::string> names;
  for (auto a : pts) names.push_back(fm.arrow_name(a));
  std::vector<PointSet> minimal(pts.size(), PointSet(pts.size()));
  for (auto w : members(d.window))
    for (auto p : members(d.window_topology.minimal_open(wi.point(w)))) minimal[pos[image[w]]].set(pos[image[wi.arrow(p)]]);
  return LocalGroupoidData{fm, window, FiniteTopology::from_minimal_opens(names, minimal), d.object_topology};
}

}  // namespace gpdkit

#endif  // GPDKIT_HOLONOMY_HPP

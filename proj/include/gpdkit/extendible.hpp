#ifndef GPDKIT_EXTENDIBLE_HPP
#define GPDKIT_EXTENDIBLE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "gpdkit/bisection.hpp"
#include "gpdkit/holonomy.hpp"
#include "gpdkit/local_data.hpp"

namespace gpdkit {

/// Outcome of the extendibility test. `topology` is the topology on the
/// arrows of G generated by the translates L_s(V) and the opens of W; on
/// failure `law` names the first broken requirement and `witness` the arrows
/// where it breaks.
struct ExtendibilityResult {
  bool extendible = false;
  FiniteTopology topology;
  std::string law;
  std::vector<std::string> witness;
};

/// Requirements on a topology of G extending that of W: W open, the induced
/// topology on W equal to T_W, inverse, composition, source and target
/// continuous.
inline ExtendibilityResult judge_arrow_topology(const LocalGroupoidData& d, const std::vector<PointSet>& minimal) {
  const auto& g = d.groupoid;
  WindowIndex wi(d);
  ExtendibilityResult r;
  r.topology = FiniteTopology::from_minimal_opens(g.arrow_names(), minimal);
  auto fail = [&](std::string law, std::vector<std::string> witness) {
    r.extendible = false;
    r.law = std::move(law);
    r.witness = std::move(witness);
    return r;
  };
  for (auto w : members(d.window))
    if (!minimal[w].is_subset_of(d.window)) {
      Arr outside = members(minimal[w] - d.window).front();
      return fail("window-open", {g.arrow_name(w), g.arrow_name(outside)});
    }
  for (auto w : members(d.window)) {
    PointSet own = wi.minimal_open_arrows(d, w);
    PointSet induced = minimal[w] & d.window;
    if (induced != own) {
      Arr diff = members(induced ^ own).front();
      return fail("window-topology-agrees", {g.arrow_name(w), g.arrow_name(diff)});
    }
  }
  for (Arr a = 0; a < g.arrow_count(); ++a)
    for (auto b : members(minimal[a]))
      if (!minimal[g.inv(a)].test(g.inv(b))) return fail("inverse-continuous", {g.arrow_name(a), g.arrow_name(b)});
  for (Arr a = 0; a < g.arrow_count(); ++a)
    for (auto b : members(minimal[a])) {
      if (!d.object_topology.minimal_open(g.src(a)).test(g.src(b)))
        return fail("source-continuous", {g.arrow_name(a), g.arrow_name(b)});
      if (!d.object_topology.minimal_open(g.tgt(a)).test(g.tgt(b)))
        return fail("target-continuous", {g.arrow_name(a), g.arrow_name(b)});
    }
  for (Arr h = 0; h < g.arrow_count(); ++h)
    for (Arr k = 0; k < g.arrow_count(); ++k) {
      if (g.tgt(k) != g.src(h)) continue;
      const auto& target = minimal[g.comp_raw(h, k)];
      for (auto h2 : members(minimal[h]))
        for (auto k2 : members(minimal[k]))
          if (g.tgt(k2) == g.src(h2) && !target.test(g.comp_raw(h2, k2)))
            return fail("composition-continuous",
                        {g.arrow_name(h), g.arrow_name(k), g.arrow_name(h2), g.arrow_name(k2)});
    }
  r.extendible = true;
  return r;
}

/// Extendibility through germs: the subbase set L_s(U^W_g) depends on s only
/// through its germ at beta(g), so intersecting over germs of J gives the
/// same minimal opens as intersecting over the whole generated semigroup.
inline ExtendibilityResult check_extendible(const LocalGroupoidData& d, const GermGroupoid& j) {
  const auto& g = d.groupoid;
  const auto& jg = j.groupoid();
  WindowIndex wi(d);
  PointSet all(g.arrow_count());
  all.set();
  std::vector<PointSet> minimal(g.arrow_count(), all);
  for (auto w : members(d.window)) minimal[w] &= wi.minimal_open_arrows(d, w);
  for (auto w : members(d.window)) {
    const auto around = members(wi.minimal_open_arrows(d, w));
    for (Arr s : jg.star(g.tgt(w))) {
      const Germ& sg = j.germ_at(s);
      PointSet image(g.arrow_count());
      for (auto h : around) image.set(g.comp_raw(sg.values.at(g.tgt(h)), h));
      minimal[g.comp_raw(germ_value(sg), w)] &= image;
    }
  }
  return judge_arrow_topology(d, minimal);
}

inline ExtendibilityResult check_extendible(const LocalGroupoidData& d) { return check_extendible(d, germ_groupoid(d)); }

/// The same test from an explicit semigroup (small instances only).
inline ExtendibilityResult check_extendible_semigroup(const LocalGroupoidData& d, const InverseSemigroup& s) {
  const auto& g = d.groupoid;
  WindowIndex wi(d);
  PointSet all(g.arrow_count());
  all.set();
  std::vector<PointSet> minimal(g.arrow_count(), all);
  for (auto w : members(d.window)) minimal[w] &= wi.minimal_open_arrows(d, w);
  for (const auto& e : s.elements())
    for (auto w : members(d.window)) {
      if (!e.defined(g.tgt(w))) continue;
      PointSet image(g.arrow_count());
      for (auto h : members(wi.minimal_open_arrows(d, w)))
        if (e.defined(g.tgt(h))) image.set(left_translate(g, e, h));
      minimal[left_translate(g, e, w)] &= image;
    }
  return judge_arrow_topology(d, minimal);
}

}  // namespace gpdkit

#endif  // GPDKIT_EXTENDIBLE_HPP

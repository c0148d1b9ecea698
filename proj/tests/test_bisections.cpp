#include <gtest/gtest.h>

#include "gpdkit/bisection.hpp"
#include "gpdkit/extendible.hpp"
#include "gpdkit/foliation.hpp"
#include "support.hpp"

using namespace gpdkit;
using namespace gpdkit::testing;

namespace {

errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return errc::parse_error;
}

LocalBisection partial(const FiniteGroupoid& g, std::vector<std::pair<std::string, std::string>> values) {
  LocalBisection s{std::vector<Arr>(g.object_count(), none)};
  for (const auto& [x, a] : values) s.values[g.object_index(x)] = g.arrow_index(a);
  return s;
}

// every value vector over every open set, no pruning
std::size_t brute_force_count(const LocalGroupoidData& d) {
  WindowIndex wi(d);
  const auto& g = d.groupoid;
  std::size_t count = 0;
  for (const auto& u : d.object_topology.opens()) {
    auto pts = members(u);
    LocalBisection s{std::vector<Arr>(g.object_count(), none)};
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == pts.size()) {
        count += is_w_bisection(d, wi, s);
        return;
      }
      for (Arr a : g.star(pts[i])) {
        s.values[pts[i]] = a;
        rec(i + 1);
      }
      s.values[pts[i]] = none;
    };
    rec(0);
  }
  return count;
}

std::vector<LocalBisection> centre_generators(const LocalGroupoidData& d) {
  WindowIndex wi(d);
  std::vector<LocalBisection> gens;
  for (Obj x = 1; x < d.groupoid.object_count(); x += 3)
    for (auto& s : w_bisections_on(d, wi, d.object_topology.minimal_open(x))) gens.push_back(std::move(s));
  return gens;
}

}  // namespace

TEST(Bisection, SwapAlgebra) {
  auto g = c2_swap();
  auto swap = partial(g, {{"p", "g@p"}, {"q", "g@q"}});
  EXPECT_EQ(compose_bisections(g, swap, swap), identity_bisection(g));
  EXPECT_EQ(relative_inverse(g, swap), swap);
  EXPECT_EQ(left_translate(g, swap, g.arrow_index("id:p")), g.arrow_index("g@p"));
  EXPECT_EQ(left_translate(g, swap, g.arrow_index("g@q")), g.arrow_index("id:q"));

  auto half = partial(g, {{"p", "g@p"}});
  EXPECT_EQ(relative_inverse(g, half), partial(g, {{"q", "g@q"}}));
  EXPECT_TRUE(compose_bisections(g, half, half).empty());
  EXPECT_EQ(compose_bisections(g, relative_inverse(g, half), half), partial(g, {{"p", "id:p"}}));
  // L_half needs beta(a) = p
  EXPECT_EQ(code_of([&] { left_translate(g, half, g.arrow_index("id:q")); }), errc::out_of_domain);
  EXPECT_EQ(code_of([&] { half.at(g.object_index("q")); }), errc::out_of_domain);
}

TEST(Bisection, SwapWindowEnumeration) {
  auto d = discrete_full_window(c2_swap());
  // empty, 2 on {p}, 2 on {q}, identity and swap on {p, q}
  EXPECT_EQ(w_bisections(d).size(), 7u);
  EXPECT_TRUE(is_sectionable(d));
  WindowIndex wi(d);
  auto pinned = w_bisections_on(d, wi, make_set(2, {0, 1}), {0, d.groupoid.arrow_index("g@p")});
  ASSERT_EQ(pinned.size(), 1u);
  EXPECT_EQ(pinned[0], partial(d.groupoid, {{"p", "g@p"}, {"q", "g@q"}}));
}

TEST(Bisection, WindowLimitsValues) {
  auto g = c2_swap();
  auto d = discrete_window(g, identities_only(g));
  EXPECT_EQ(w_bisections(d).size(), 4u);
  EXPECT_TRUE(is_sectionable(d));
  WindowIndex wi(d);
  EXPECT_FALSE(is_w_bisection(d, wi, partial(g, {{"p", "g@p"}, {"q", "g@q"}})));
  EXPECT_TRUE(is_bisection(d, partial(g, {{"p", "g@p"}, {"q", "g@q"}})));
  // both values land on p
  EXPECT_FALSE(is_bisection(d, partial(g, {{"p", "id:p"}, {"q", "g@q"}})));
}

TEST(Bisection, BandDomainsMustBeOpen) {
  auto d = annulus_model(3);
  WindowIndex wi(d);
  const auto& g = d.groupoid;
  // a centre point alone is not open
  auto centre = BandModel::point(0, 0);
  LocalBisection s{std::vector<Arr>(g.object_count(), none)};
  s.values[centre] = g.id_of(centre);
  EXPECT_FALSE(is_bisection(d, s));
  EXPECT_EQ(code_of([&] { w_bisections_on(d, wi, make_set(g.object_count(), {centre})); }), errc::invalid_topology);
  EXPECT_TRUE(is_w_bisection(d, wi, identity_bisection(g, d.object_topology.minimal_open(centre))));
}

TEST(Bisection, BandEnumerationMatchesBruteForce) {
  EXPECT_EQ(w_bisections(annulus_model(3)).size(), 1675u);
  EXPECT_EQ(w_bisections(mobius_model(3)).size(), 1611u);
  EXPECT_EQ(brute_force_count(annulus_model(3)), 1675u);
  EXPECT_EQ(brute_force_count(mobius_model(3)), 1611u);
  EXPECT_TRUE(is_sectionable(annulus_model(3)));
  EXPECT_TRUE(is_sectionable(mobius_model(4)));
}

TEST(Bisection, UnsectionableWindow) {
  // the Sierpinski space on {p, q} with q in every neighbourhood of p: a
  // bisection through g@p is defined at q too and swaps the points, but
  // {p} is not open
  auto g = c2_swap();
  LocalGroupoidData d{g, arrows_named(g, {"id:p", "id:q", "g@p", "g@q"}),
                      FiniteTopology::from_minimal_opens({"id:p", "id:q", "g@p", "g@q"},
                                                         {make_set(4, {0, 1}), make_set(4, {1}), make_set(4, {2}), make_set(4, {3})}),
                      FiniteTopology::from_opens({"p", "q"}, {make_set(2, {}), make_set(2, {1}), make_set(2, {0, 1})})};
  ASSERT_TRUE(validate_local_data(d).ok());
  EXPECT_FALSE(is_sectionable(d));
  EXPECT_EQ(unsectionable_arrow(d), g.arrow_index("g@p"));
}

TEST(Semigroup, SwapHalves) {
  auto g = c2_swap();
  auto s = generate_semigroup(g, {partial(g, {{"p", "g@p"}})});
  // s, s', the two partial identities and the empty bisection
  EXPECT_EQ(s.size(), 5u);
  auto report = s.axiom_report();
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.idempotents, 3u);
  EXPECT_TRUE(s.contains(LocalBisection{{none, none}}));
  EXPECT_EQ(code_of([&] { s.index_of(identity_bisection(g)); }), errc::out_of_domain);
}

TEST(Semigroup, ClosureBound) {
  auto d = annulus_model(3);
  EXPECT_EQ(code_of([&] { generate_semigroup(d.groupoid, w_bisections(d), 100); }), errc::not_finite_on_instance);
}

TEST(Semigroup, BandModels) {
  struct Row {
    const char* name;
    LocalGroupoidData d;
    std::size_t size, idempotents;
    bool extendible;
  };
  std::vector<Row> rows{{"annulus3", annulus_model(3), 10, 4, true},
                        {"annulus4", annulus_model(4), 17, 5, true},
                        {"mobius3", mobius_model(3), 19, 4, false},
                        {"mobius4", mobius_model(4), 33, 5, false}};
  for (const auto& r : rows) {
    auto s = generate_semigroup(r.d.groupoid, centre_generators(r.d));
    EXPECT_EQ(s.size(), r.size) << r.name;
    auto report = s.axiom_report();
    EXPECT_TRUE(report.ok()) << r.name;
    EXPECT_EQ(report.idempotents, r.idempotents) << r.name;
    auto ext = check_extendible_semigroup(r.d, s);
    EXPECT_EQ(ext.extendible, r.extendible) << r.name;
    EXPECT_EQ(ext.extendible, check_extendible(r.d).extendible) << r.name;
  }
}

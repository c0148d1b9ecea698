#include <gtest/gtest.h>

#include <map>

#include "gpdkit/colimits.hpp"
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

const PushoutInstance& instance(const std::string& name) {
  static const auto corpus = pushout_corpus();
  for (const auto& in : corpus)
    if (in.name == name) return in;
  throw std::runtime_error("no instance " + name);
}

PushoutResult po(const PushoutInstance& in) { return pushout(in.a, in.b, in.c, in.f, in.g); }

std::string group_at(const PushoutResult& r, Obj x) { return vertex_group_presentation(r.apex, x).group.to_string(); }

std::string verdict(std::optional<bool> v) { return v ? (*v ? "iso" : "not") : "undecided"; }

std::size_t order_of(const GroupPresentation& gp) { return finite_groupoid_of(confluent_system(gp.presentation)).arrow_count(); }

}  // namespace

TEST(Pushout, VertexGroups) {
  const std::map<std::string, std::vector<std::string>> expected{
      {"circle", {"<u | >"}},
      {"semicircles", {"<v | >", "<v | >"}},
      {"wedge", {"<a, b | >"}},
      {"identity-glue", {"<R.u | R.u^-1>", "<R.u | R.u^-1>"}},
      {"c2-free-c3", {"<a, b | a^2, b^3>"}},
      {"amalgam-squares", {"<a, b | a^2 b^-2>"}},
      {"path-of-two", {"< | >", "< | >", "< | >"}},
      {"kill-c2", {"<a | a^2, a>"}},
      {"interval-to-c2", {"<u, b | b^2>"}},
      {"point-into-interval", {"< | >", "< | >"}},
      {"flip-loop", {"<L.a, R.a | L.a R.a>"}},
      {"c4-over-c2", {"<a, b | a^4, b^2, a^2 b^-1>"}},
  };
  for (const auto& in : pushout_corpus()) {
    auto r = po(in);
    const auto& want = expected.at(in.name);
    ASSERT_EQ(r.apex.graph.object_count(), want.size()) << in.name;
    for (Obj x = 0; x < want.size(); ++x) EXPECT_EQ(group_at(r, x), want[x]) << in.name << " @" << x;
  }
}

TEST(Pushout, ObjectNamesTakeTheFirstMember) {
  auto r = po(instance("path-of-two"));
  EXPECT_EQ(r.apex.graph.object_names(), (std::vector<std::string>{"0", "L.1", "R.1"}));
  EXPECT_EQ(r.inj_left.obj_map, (std::vector<Obj>{0, 1}));
  EXPECT_EQ(r.inj_right.obj_map, (std::vector<Obj>{1, 2}));
}

TEST(Pushout, InjectionsAreIsomorphisms) {
  const std::map<std::string, std::pair<std::string, std::string>> expected{
      {"identity-glue", {"iso", "iso"}},   {"path-of-two", {"not", "not"}}, {"kill-c2", {"not", "iso"}},
      {"point-into-interval", {"not", "iso"}}, {"c4-over-c2", {"iso", "not"}}, {"circle", {"undecided", "undecided"}},
      {"flip-loop", {"undecided", "undecided"}},
  };
  for (const auto& [name, want] : expected) {
    const auto& in = instance(name);
    auto r = po(in);
    EXPECT_EQ(verdict(induces_isomorphism(in.b, r.apex, r.inj_left)), want.first) << name;
    EXPECT_EQ(verdict(induces_isomorphism(in.c, r.apex, r.inj_right)), want.second) << name;
  }
}

TEST(Pushout, FiniteApexOrders) {
  EXPECT_EQ(order_of(vertex_group_presentation(po(instance("c4-over-c2")).apex, 0).group), 4u);
  EXPECT_EQ(order_of(vertex_group_presentation(po(instance("kill-c2")).apex, 0).group), 1u);
  EXPECT_EQ(order_of(vertex_group_presentation(po(instance("identity-glue")).apex, 1).group), 1u);
}

TEST(Pushout, UniversalPropertyCounts) {
  // cocone counts per target: C2 C3 C4 S3 I I3 C2-swap C2+C2
  const std::map<std::string, std::vector<std::size_t>> expected{
      {"circle", {2, 3, 4, 6, 2, 3, 2, 4}},
      {"semicircles", {4, 9, 16, 36, 4, 9, 4, 8}},
      {"wedge", {4, 9, 16, 36, 2, 3, 2, 8}},
      {"identity-glue", {2, 3, 4, 6, 4, 9, 4, 4}},
      {"c2-free-c3", {2, 3, 2, 12, 2, 3, 2, 4}},
  };
  const auto targets = target_family();
  for (const auto& [name, counts] : expected) {
    const auto& in = instance(name);
    auto r = po(in);
    for (std::size_t t = 0; t < targets.size(); ++t) {
      auto u = check_universal_property(in.a, in.b, in.c, in.f, in.g, r, targets[t].second);
      EXPECT_EQ(u.cocones, counts[t]) << name << " -> " << targets[t].first;
      EXPECT_EQ(u.apex_morphisms, counts[t]) << name << " -> " << targets[t].first;
      EXPECT_TRUE(u.every_cocone_mediated_once) << name << " -> " << targets[t].first;
    }
  }
}

TEST(Pushout, RejectsBadInput) {
  auto c2 = loop("a", 2);
  auto z = loop("b");
  // a^2 = 1 is not sent to a relation of the free loop
  auto f = morphism(c2, z, {0}, {"b"});
  auto id = morphism(c2, c2, {0}, {"a"});
  EXPECT_EQ(code_of([&] { pushout(c2, z, c2, f, id); }), errc::invalid_presentation_morphism);
  auto wrong_size = id;
  wrong_size.obj_map.push_back(0);
  EXPECT_EQ(code_of([&] { pushout(c2, c2, c2, wrong_size, id); }), errc::invalid_presentation_morphism);
}

TEST(VertexGroup, NeedsConnectedGraph) {
  EXPECT_EQ(code_of([] { vertex_group_presentation(discrete_two(), 0); }), errc::not_connected);
  EXPECT_EQ(code_of([] { vertex_group_presentation(interval(), 5); }), errc::unknown_object);
}

TEST(VertexGroup, TreeChoiceChangesOnlyNames) {
  auto tri = presentation({"0", "1", "2"}, {{"x", 0, 1}, {"y", 1, 2}, {"z", 0, 2}});
  const auto& g = tri.graph;
  auto a = vertex_group_presentation(tri, 0, std::vector<std::size_t>{g.edge_index("x"), g.edge_index("y")});
  auto b = vertex_group_presentation(tri, 0, std::vector<std::size_t>{g.edge_index("x"), g.edge_index("z")});
  EXPECT_EQ(a.group.to_string(), "<z | >");
  EXPECT_EQ(b.group.to_string(), "<y | >");
  EXPECT_EQ(code_of([&] { vertex_group_presentation(tri, 0, std::vector<std::size_t>{g.edge_index("x")}); }),
            errc::not_connected);

  // with x y = z the loop dies whichever tree is used
  auto filled = presentation({"0", "1", "2"}, {{"x", 0, 1}, {"y", 1, 2}, {"z", 0, 2}}, {{"y x", "z"}});
  for (auto tree : {std::vector<std::string>{"x", "y"}, std::vector<std::string>{"x", "z"}, std::vector<std::string>{"y", "z"}}) {
    std::vector<std::size_t> t;
    for (const auto& n : tree) t.push_back(filled.graph.edge_index(n));
    EXPECT_EQ(order_of(vertex_group_presentation(filled, 0, t).group), 1u);
  }
}

TEST(VertexGroup, SwappingSidesSwapsFactors) {
  const auto& in = instance("c2-free-c3");
  auto r = pushout(in.a, in.c, in.b, in.g, in.f);
  EXPECT_EQ(group_at(r, 0), "<b, a | b^3, a^2>");
}

TEST(Hnn, FromPushout) {
  auto k = loop("a");
  auto a = loop("c");
  auto bs = hnn_from_pushout(k, a, morphism(a, k, {0}, {"a"}), morphism(a, k, {0}, {"a^2"}));
  EXPECT_EQ(bs.group.to_string(), "<a, u | u a u^-1 a^-2>");
  EXPECT_EQ(bs.raw.to_string(), "<c_0, c_1, u, a | u c_0 u^-1 c_1^-1, c_0 a^-1, c_1 a^-2>");

  auto k2 = presentation({"*"}, {{"a", 0, 0}, {"b", 0, 0}});
  EXPECT_EQ(hnn_from_pushout(k2, a, morphism(a, k2, {0}, {"a"}), morphism(a, k2, {0}, {"b"})).group.to_string(),
            "<a, b, u | u a u^-1 b^-1>");

  auto c4 = loop("a", 4);
  auto c2 = loop("c", 2);
  EXPECT_EQ(hnn_from_pushout(c4, c2, morphism(c2, c4, {0}, {"a^2"}), morphism(c2, c4, {0}, {"a^2"})).group.to_string(),
            "<a, u | a^4, u a^2 u^-1 a^-2>");

  EXPECT_EQ(code_of([&] { hnn_from_pushout(interval(), a, morphism(a, k, {0}, {"a"}), morphism(a, k, {0}, {"a"})); }),
            errc::wrong_shape);
}

TEST(VanKampen, CircleFromTwoArcs) {
  // W = two points, U and V arcs joining them
  auto two = discrete_two();
  auto u = interval("u"), v = interval("v");
  auto r = van_kampen(two, u, v, morphism(two, u, {0, 1}, {}), morphism(two, v, {0, 1}, {}));
  EXPECT_EQ(group_at(r, 0), "<v | >");
  EXPECT_FALSE(r.transcript.empty());
}

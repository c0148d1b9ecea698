// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails or runs over its time budget.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gpdkit/bisection.hpp"
#include "gpdkit/colimits.hpp"
#include "gpdkit/crossed_module.hpp"
#include "gpdkit/cube.hpp"
#include "gpdkit/double_groupoid.hpp"
#include "gpdkit/extendible.hpp"
#include "gpdkit/foliation.hpp"
#include "gpdkit/holonomy.hpp"
#include "gpdkit/io.hpp"
#include "gpdkit/monodromy.hpp"
#include "support.hpp"

using namespace gpdkit;
using namespace gpdkit::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

int failures = 0;

void run(int number, const std::string& title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.pass && s > budget_s) {
    o.pass = false;
    o.detail = "over budget";
  }
  failures += !o.pass;
  std::printf("%s %d %s [%.2fs / %.0fs] %s\n", o.pass ? "PASS" : "FAIL", number, title.c_str(), s, budget_s,
              o.detail.c_str());
  std::fflush(stdout);
}

// ---------------------------------------------------------------------------
// Criterion 5 oracle. Works from the raw tables only: arrow endpoints,
// composition, inverses, the window and the two topologies by their
// minimal opens. Germs are value vectors on U_x; J0 and cosets are counted
// directly.

struct Oracle {
  std::size_t n_obj = 0, n_arr = 0;
  std::vector<Obj> src, tgt;
  std::vector<Arr> inv, id;
  std::vector<std::vector<Arr>> comp;  // comp[h][g] = h g, or none
  std::vector<bool> in_w;
  std::vector<std::vector<Obj>> u;           // minimal open of each object
  std::vector<std::set<Arr>> w_min;          // minimal open of each window arrow

  explicit Oracle(const io::json& j) {
    // rebuild everything from the serialised form so that no pipeline
    // structure is shared beyond the file format
    std::map<std::string, Obj> oi;
    for (const auto& o : j["objects"]) oi[o.get<std::string>()] = n_obj++;
    std::map<std::string, Arr> ai;
    for (const auto& a : j["arrows"]) {
      ai[a["id"].get<std::string>()] = n_arr++;
      src.push_back(oi.at(a["src"].get<std::string>()));
      tgt.push_back(oi.at(a["tgt"].get<std::string>()));
    }
    inv.assign(n_arr, none);
    for (const auto& p : j["inv"]) inv[ai.at(p[0].get<std::string>())] = ai.at(p[1].get<std::string>());
    comp.assign(n_arr, std::vector<Arr>(n_arr, none));
    for (const auto& t : j["comp"])
      comp[ai.at(t[0].get<std::string>())][ai.at(t[1].get<std::string>())] = ai.at(t[2].get<std::string>());
    id.assign(n_obj, none);
    for (const auto& [name, x] : oi) id[x] = ai.at("id:" + name);
    in_w.assign(n_arr, false);
    for (const auto& a : j["window"]) in_w[ai.at(a.get<std::string>())] = true;
    u = minimal_opens(j["topology_objects"], oi);
    auto wm = minimal_opens(j["topology_w"], ai);
    w_min.resize(n_arr);
    for (Arr a = 0; a < n_arr; ++a)
      if (in_w[a]) w_min[a] = std::set<Arr>(wm[a].begin(), wm[a].end());
  }

  // the intersection of the listed opens containing each point
  static std::vector<std::vector<std::size_t>> minimal_opens(const io::json& t, const std::map<std::string, std::size_t>& idx) {
    std::size_t n = 0;
    for (const auto& [k, v] : idx) n = std::max(n, v + 1);
    std::vector<std::set<std::size_t>> meet(n);
    std::vector<bool> started(n, false);
    const auto& opens = t.contains("opens") ? t["opens"] : t["minimal_opens"];
    for (const auto& o : opens) {
      std::set<std::size_t> s;
      for (const auto& p : o) s.insert(idx.at(p.get<std::string>()));
      for (auto x : s) {
        if (!started[x]) meet[x] = s, started[x] = true;
        else {
          std::set<std::size_t> r;
          std::set_intersection(meet[x].begin(), meet[x].end(), s.begin(), s.end(), std::inserter(r, r.begin()));
          meet[x] = r;
        }
      }
    }
    std::vector<std::vector<std::size_t>> out(n);
    for (std::size_t x = 0; x < n; ++x) out[x].assign(meet[x].begin(), meet[x].end());
    return out;
  }

  bool subset_of_u(Obj z, const std::set<Obj>& s) const {
    for (Obj y : u[z])
      if (!s.count(y)) return false;
    return true;
  }

  using Values = std::map<Obj, Arr>;  // a germ at x: values on U_x

  // W-bisection on U_x: W-valued, source section, continuous into the
  // window topology, target map an open embedding
  bool w_section(const Values& s) const {
    std::set<Obj> image;
    for (const auto& [y, a] : s) {
      if (!in_w[a] || src[a] != y) return false;
      if (!image.insert(tgt[a]).second) return false;
    }
    for (const auto& [y, a] : s) {
      std::set<Obj> img_y;
      for (Obj z : u[y]) {
        auto it = s.find(z);
        if (it == s.end()) return false;
        if (!w_min[a].count(it->second)) return false;            // s continuous
        img_y.insert(tgt[it->second]);
      }
      for (Obj z : img_y)
        if (!subset_of_u(z, img_y)) return false;                  // beta s open
      for (Obj z : img_y)
        if (!std::count(u[tgt[a]].begin(), u[tgt[a]].end(), z)) return false;  // beta s continuous
    }
    return true;
  }

  struct G {
    Obj base;
    Values v;
    friend auto operator<=>(const G&, const G&) = default;
  };

  std::vector<G> w_germs_at(Obj x) const {
    std::vector<G> out;
    Values s;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == u[x].size()) {
        if (w_section(s)) out.push_back({x, s});
        return;
      }
      const Obj y = u[x][i];
      for (Arr a = 0; a < n_arr; ++a)
        if (in_w[a] && src[a] == y) {
          s[y] = a;
          rec(i + 1);
        }
      s.erase(y);
    };
    rec(0);
    return out;
  }

  Obj end(const G& g) const { return tgt[g.v.at(g.base)]; }

  // h after g, at g's base; h is a germ at end(g)
  G product(const G& h, const G& g) const {
    G out{g.base, {}};
    for (const auto& [y, a] : g.v) out.v[y] = comp[h.v.at(tgt[a])][a];
    return out;
  }

  // inverse germ at end(g), restricted to U there
  G inverse(const G& g) const {
    std::map<Obj, Arr> back;
    for (const auto& [y, a] : g.v) back[tgt[a]] = inv[a];
    G out{end(g), {}};
    for (Obj z : u[out.base]) out.v[z] = back.at(z);
    return out;
  }

  // order of the vertex group of J/J0 at x
  std::size_t holonomy_order(Obj x) const {
    std::vector<G> gens;
    for (Obj y = 0; y < n_obj; ++y)
      for (auto& s : w_germs_at(y)) {
        gens.push_back(s);
        gens.push_back(inverse(s));
      }
    std::set<G> seen;
    std::vector<G> queue;
    for (const auto& g : gens)
      if (seen.insert(g).second) queue.push_back(g);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const G g = queue[i];
      for (const auto& h : gens)
        if (h.base == end(g)) {
          auto p = product(h, g);
          if (seen.insert(p).second) queue.push_back(p);
        }
    }
    std::vector<G> loops, normal;
    for (const auto& g : seen) {
      if (g.base != x || end(g) != x) continue;
      loops.push_back(g);
      if (g.v.at(x) == id[x] && w_section(g.v)) normal.push_back(g);
    }
    std::set<std::set<G>> cosets;
    for (const auto& g : loops) {
      std::set<G> c;
      for (const auto& d : normal) c.insert(product(g, d));
      cosets.insert(c);
    }
    return cosets.size();
  }
};

io::json fixture(const std::string& rel) { return io::load(std::string(GPDKIT_FIXTURES) + "/" + rel); }

struct FilePushout {
  FpGroupoid a, b, c;
  PresentationMorphism f, g;
};

FilePushout pushout_fixture(const std::string& dir) {
  FilePushout p;
  p.a = io::presentation_from_json(fixture("pushout/" + dir + "/A.json"));
  p.b = io::presentation_from_json(fixture("pushout/" + dir + "/B.json"));
  p.c = io::presentation_from_json(fixture("pushout/" + dir + "/C.json"));
  p.f = io::presentation_morphism_from_json(fixture("pushout/" + dir + "/f.json"), p.a, p.b);
  p.g = io::presentation_morphism_from_json(fixture("pushout/" + dir + "/g.json"), p.a, p.c);
  return p;
}

std::string join_counts(const std::vector<std::size_t>& v) {
  std::ostringstream o;
  for (std::size_t i = 0; i < v.size(); ++i) o << (i ? "," : "") << v[i];
  return o.str();
}

}  // namespace

int main() {
  run(1, "circle pushout has vertex group Z", 1, [] {
    Outcome o;
    auto circle = pushout_fixture("circle");
    auto r = pushout(circle.a, circle.b, circle.c, circle.f, circle.g);
    o.check(r.apex.graph.object_count() == 1, "apex has more than one object");
    auto vg = vertex_group_presentation(r.apex, 0).group;
    o.check(vg.to_string() == "<u | >", "presentation " + vg.to_string());
    const auto& g = vg.presentation.graph;
    auto rs = confluent_system(vg.presentation);
    std::set<Word> seen;
    for (int n = -8; n <= 8; ++n) {
      Word w{0, {}};
      for (int k = 0; k < std::abs(n); ++k) w.letters.push_back({g.generators().front(), n < 0});
      auto red = reduce(g, w);
      o.check(red == w, "u^" + std::to_string(n) + " is not reduced");
      o.check(Word{0, rs.normal_form(red.letters)} == red, "u^" + std::to_string(n) + " rewrites");
      seen.insert(red);
    }
    o.check(seen.size() == 17, "u^n not pairwise distinct");
    o.detail = o.pass ? "<u | >, 17 distinct words" : o.detail;
    return o;
  });

  run(2, "pushout universal property", 10, [] {
    Outcome o;
    const auto corpus = pushout_corpus();
    const auto targets = target_family();
    std::size_t cases = 0;
    for (const auto& t : targets) o.check(t.second.arrow_count() <= 12, "target " + t.first + " too large");
    for (const auto& in : corpus) {
      auto r = pushout(in.a, in.b, in.c, in.f, in.g);
      for (const auto& [name, h] : targets) {
        auto u = check_universal_property(in.a, in.b, in.c, in.f, in.g, r, h);
        ++cases;
        o.check(u.every_cocone_mediated_once && u.cocones == u.apex_morphisms,
                in.name + " -> " + name + (u.failures.empty() ? "" : ": " + u.failures.front()));
      }
    }
    for (const char* dir : {"circle", "semicircles", "wedge", "identity_glue"}) {
      auto in = pushout_fixture(dir);
      auto r = pushout(in.a, in.b, in.c, in.f, in.g);
      for (const auto& [name, h] : targets) {
        auto u = check_universal_property(in.a, in.b, in.c, in.f, in.g, r, h);
        ++cases;
        o.check(u.every_cocone_mediated_once && u.cocones == u.apex_morphisms, std::string(dir) + " file -> " + name);
      }
    }
    o.check(corpus.size() >= 10, "corpus too small");
    if (o.pass)
      o.detail = std::to_string(corpus.size()) + " instances + 4 fixture files, " + std::to_string(targets.size()) +
                 " targets, " + std::to_string(cases) + " cases";
    return o;
  });

  run(3, "monodromy principle", 30, [] {
    Outcome o;
    const auto corpus = local_corpus();
    const auto targets = target_family();
    std::size_t local_total = 0;
    for (const auto& inst : corpus) {
      const auto& d = inst.data;
      const auto& g = d.groupoid;
      o.check(g.arrow_count() <= 24, inst.name + " too large");
      auto m = monodromy(d);
      for (auto w : members(d.window))
        o.check(evaluate(m.presentation, g, m.projection, m.iprime_of(w)) == w, inst.name + ": p iprime != inclusion");
      for (const auto& [tname, h] : targets) {
        using Key = std::pair<std::vector<Obj>, std::vector<Arr>>;
        std::set<Key> locals, restricted;
        std::size_t extensions = 0;
        for_each_local_morphism(d, h, [&](const LocalMorphism& f) {
          locals.insert({f.obj_map, f.arr_map});
          auto ext = extend_local_morphism(m, d, h, f);
          for (auto w : members(d.window))
            o.check(evaluate(m.presentation, h, ext, m.iprime_of(w)) == f.arr_map[w], inst.name + ": f' iprime != f");
        });
        enumerate_fp_morphisms(m.presentation, h, [&](const FpToFinite& phi) {
          ++extensions;
          std::vector<Arr> arr(g.arrow_count(), none);
          for (auto w : members(d.window)) arr[w] = evaluate(m.presentation, h, phi, m.iprime_of(w));
          restricted.insert({phi.obj_map, arr});
          return true;
        });
        // restriction along iprime is a bijection onto the local morphisms
        o.check(extensions == locals.size() && restricted == locals, inst.name + " -> " + tname);
        local_total += locals.size();
      }
    }
    o.check(corpus.size() >= 20, "corpus too small");
    if (o.pass)
      o.detail = std::to_string(corpus.size()) + " instances, " + std::to_string(local_total) + " local morphisms";
    return o;
  });

  run(4, "inverse-semigroup laws", 60, [] {
    Outcome o;
    constexpr std::size_t cap = 10000;
    std::size_t checked = 0, largest = 0;
    std::vector<std::string> skipped;
    auto test = [&](const std::string& name, const FiniteGroupoid& g, const std::vector<LocalBisection>& gens) {
      try {
        auto s = generate_semigroup(g, gens, cap);
        auto r = s.axiom_report();
        o.check(r.ok(), name + ": " + (r.failures.empty() ? "" : r.failures.front()));
        ++checked;
        largest = std::max(largest, s.size());
      } catch (const error& e) {
        if (e.code() != errc::not_finite_on_instance) throw;
        skipped.push_back(name);
      }
    };
    for (const auto& inst : local_corpus()) test(inst.name, inst.data.groupoid, w_bisections(inst.data));
    for (std::size_t n : {3, 4, 5})
      for (bool twisted : {false, true}) {
        auto d = twisted ? mobius_model(n) : annulus_model(n);
        const std::string name = (twisted ? "mobius" : "annulus") + std::to_string(n);
        WindowIndex wi(d);
        std::vector<LocalBisection> centre;
        for (std::size_t c = 0; c < n; ++c)
          for (auto& s : w_bisections_on(d, wi, d.object_topology.minimal_open(BandModel::point(c, 0))))
            centre.push_back(std::move(s));
        test(name + " centre", d.groupoid, centre);
        test(name + " all", d.groupoid, w_bisections(d));
      }
    if (o.pass) {
      o.detail = std::to_string(checked) + " semigroups, largest " + std::to_string(largest);
      if (!skipped.empty()) {
        o.detail += "; over 10^4 elements, not in scope:";
        for (const auto& s : skipped) o.detail += " " + s;
      }
    }
    return o;
  });

  run(5, "holonomy separates Mobius from annulus", 30, [] {
    Outcome o;
    std::vector<std::size_t> orders;
    for (std::size_t n : {3, 4, 5})
      for (bool twisted : {true, false}) {
        const std::string name = (twisted ? "mobius" : "annulus") + std::to_string(n);
        const auto file = n == 3 ? fixture("local/" + name + ".json") : io::json();
        auto d = n == 3 ? io::local_data_from_json(file) : twisted ? mobius_model(n) : annulus_model(n);
        auto j = germ_groupoid(d);
        auto z = j0(j);
        auto h = holonomy_groupoid(j, z);
        auto s = summarize(j, z, h);
        const BandModel band(n, twisted);
        const Obj centre = BandModel::point(0, 0);
        if (twisted) {
          o.check(s.vertex_groups.at(band.name(centre)) == 2, name + ": centre group not of order 2");
        } else {
          for (const auto& [x, ord] : s.vertex_groups) o.check(ord == 1, name + ": nontrivial group at " + x);
        }
        o.check(check_extendible(d).extendible != twisted, name + ": wrong extendibility verdict");
        // oracle, from the serialised tables
        Oracle orc(n == 3 ? file : io::to_json(d));
        for (Obj x = 0; x < d.groupoid.object_count(); ++x) {
          const std::size_t want = orc.holonomy_order(x);
          o.check(want == s.vertex_groups.at(band.name(x)), name + ": oracle disagrees at " + band.name(x));
          if (x == centre) orders.push_back(want);
        }
      }
    if (o.pass) o.detail = "centre orders (mobius, annulus) n=3,4,5: " + join_counts(orders);
    return o;
  });

  run(6, "chart independence", 30, [] {
    Outcome o;
    std::size_t triples = 0;
    for (std::size_t n : {3, 4, 5})
      for (bool twisted : {true, false}) {
        auto d = twisted ? mobius_model(n) : annulus_model(n);
        auto j = germ_groupoid(d);
        auto h = holonomy_groupoid(j, j0(j));
        auto ci = chart_independence(j, h);
        o.check(ci.ok(), (twisted ? "mobius" : "annulus") + std::to_string(n) + ": " +
                             (ci.failures.empty() ? "" : ci.failures.front()));
        triples += ci.triples;
      }
    if (o.pass) o.detail = std::to_string(triples) + " (s, w, f) triples";
    return o;
  });

  run(7, "double-groupoid laws and crossed-module round trips", 60, [] {
    Outcome o;
    const auto C2 = FiniteGroup::cyclic(2);
    const std::vector<std::pair<std::string, DoubleGroupoid>> doubles{
        {"box C2", commuting_squares(one_object(C2))},
        {"box I", commuting_squares(indiscrete(2))},
        {"trivial", io::double_from_json(fixture("double/trivial_xmod.json"))},
        {"C2 -> C2", io::double_from_json(fixture("double/c2_trivial_xmod.json"))},
        {"inner S3", io::double_from_json(fixture("double/inner_s3.json"))}};
    for (const auto& [name, D] : doubles) {
      o.check(groupoid_laws_check(D).ok(), name + ": groupoid laws");
      o.check(transport_check(D).ok(), name + ": transport");
      o.check(interchange_check(D).ok(), name + ": interchange");
    }
    for (const char* f : {"trivial_xmod", "c2_trivial_xmod", "inner_s3"}) {
      auto x = io::xmod_from_json(fixture(std::string("double/") + f + ".json"));
      auto rt = xmod_round_trip(x);
      o.check(rt.ok(), "round trip");
      o.check(xmod_isomorphism_report(x, rt.recovered, rt.iso).ok(), "round-trip map is not an isomorphism");
      o.check(rt.iso.on_p.size() == x.p.order() && rt.iso.on_m.size() == x.m.order(), "round-trip map incomplete");
    }
    if (o.pass) o.detail = "5 doubles, 3 round trips";
    return o;
  });

  run(8, "commutative cubes", 120, [] {
    Outcome o;
    const auto C2 = FiniteGroup::cyclic(2);
    std::size_t pairs = 0, boundaries = 0;
    const auto xd = io::double_from_json(fixture("double/c2_trivial_xmod.json"));
    o.check(is_commutative_cube(xd, io::cube_from_json(fixture("double/degenerate_cube.json"), xd)), "degenerate fixture");
    o.check(!is_commutative_cube(xd, io::cube_from_json(fixture("double/noncommutative_cube.json"), xd)),
            "non-commutative fixture");
    for (const auto& D : {xd, commuting_squares(one_object(C2))}) {
      auto r = cube_closure_exhaustive(D);
      o.check(r.ok(), "closure fails");
      pairs += r.pairs;
      const auto& g = D.edges();
      for (Arr a = 0; a < g.arrow_count(); ++a)
        for (Arr b : g.star(g.tgt(a)))
          for (Arr c : g.star(g.src(a)))
            for (Arr d : g.star(g.tgt(c))) {
              if (g.tgt(d) != g.tgt(b)) continue;
              ++boundaries;
              o.check(is_commutative_degenerate(D, a, b, c, d) == (D.dp(a, b) == D.dp(c, d)), "degenerate cube criterion");
            }
    }
    if (o.pass) o.detail = std::to_string(pairs) + " composable pairs, " + std::to_string(boundaries) + " boundaries";
    return o;
  });

  run(9, "covering morphisms", 1, [] {
    Outcome o;
    auto cover = io::groupoid_from_json(fixture("groupoids/c2_swap.json"));
    auto base = io::groupoid_from_json(fixture("groupoids/c2.json"));
    // arrow (g, x) sits at index 2g + x
    GroupoidMorphism p{{0, 0}, {0, 0, 1, 1}};
    o.check(is_morphism(cover, base, p), "projection is not a morphism");
    o.check(is_covering(cover, base, p), "2-fold cover rejected");
    std::size_t lifts_checked = 0;
    for (Obj x = 0; x < cover.object_count(); ++x)
      for (Arr b : base.star(p.obj_map[x])) {
        std::size_t lifts = 0;
        for (Arr a : cover.star(x)) lifts += p.arr_map[a] == b;
        o.check(lifts == 1, "lifting not unique");
        ++lifts_checked;
      }
    auto point = one_object(FiniteGroup::trivial());
    GroupoidMorphism collapse{{0, 0}, {0, 0, 0, 0}};
    o.check(is_morphism(cover, point, collapse), "collapse is not a morphism");
    o.check(!is_covering(cover, point, collapse), "collapse accepted");
    auto interval = io::groupoid_from_json(fixture("groupoids/interval.json"));
    o.check(!is_covering(interval, point, collapse), "interval collapse accepted");
    if (o.pass) o.detail = std::to_string(lifts_checked) + " lifts";
    return o;
  });

  return failures == 0 ? 0 : 1;
}

// Regenerates the computed fixtures under fixtures/. The pushout and
// presentation fixtures are hand-written and left alone.
#include <fstream>
#include <iostream>
#include <string>

#include "gpdkit/cube.hpp"
#include "gpdkit/foliation.hpp"
#include "gpdkit/io.hpp"

using namespace gpdkit;
using io::json;

namespace {

std::string root;

void put(const std::string& path, const json& j) { std::ofstream(root + path) << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures FIXTURE_DIR\n";
    return 2;
  }
  root = std::string(argv[1]) + "/";
  const auto C2 = FiniteGroup::cyclic(2);
  const auto S3 = FiniteGroup::symmetric(3);
  const auto I = indiscrete(2);

  put("groupoids/interval.json", io::to_json(I));
  auto swap = action_groupoid(C2, {"p", "q"}, [](std::size_t g, std::size_t x) { return g ? 1 - x : x; });
  put("groupoids/c2_swap.json", io::to_json(swap));
  put("groupoids/c2.json", io::to_json(one_object(C2)));
  auto broken = io::to_json(I);
  for (auto& p : broken["inv"])
    if (p[0] == "0->1") p[1] = "0->1";
  put("groupoids/broken_inverse.json", broken);
  const std::string text = io::to_json(I).dump(2);
  std::ofstream(root + "groupoids/truncated.json") << text.substr(0, text.size() / 2);

  put("local/full_window.json", io::to_json(discrete_full_window(swap)));
  put("local/c2_group_full.json", io::to_json(discrete_full_window(one_object(C2))));
  auto c4 = one_object(FiniteGroup::cyclic(4));
  PointSet w(4);
  w.set(0), w.set(1), w.set(3);
  put("local/c4_window.json", io::to_json(discrete_window(c4, w)));
  auto pair = [](const char* a, const char* b) { return json::array({a, b}); };
  put("local/c8_extend.json", json{{"target", io::to_json(one_object(FiniteGroup::cyclic(8)))},
                                   {"objects", json::array({pair("*", "*")})},
                                   {"arrows", json::array({pair("id:*", "id:*"), pair("g", "g"), pair("g^3", "g^7")})}});
  put("local/mobius3.json", io::to_json(mobius_model(3)));
  put("local/annulus3.json", io::to_json(annulus_model(3)));

  put("double/trivial_xmod.json", io::to_json(trivial_xmod()));
  put("double/c2_trivial_xmod.json", io::to_json(trivial_boundary_xmod(C2, C2)));
  put("double/inner_s3.json", io::to_json(inner_xmod(S3)));
  put("double/c4_c2.json", io::to_json(cyclic_quotient_xmod(4, 2)));
  auto bad = io::to_json(inner_xmod(S3));
  bad["action"] = trivial_action(S3, S3);
  put("double/bad_xmod.json", bad);

  // cubes index the square catalogue of the C2 -> C2 crossed module
  auto D = xmod_to_double(trivial_boundary_xmod(C2, C2));
  const Arr one = 0, g = 1;
  auto deg = cube_from_square_edges(D, g, g, g, g);
  put("double/degenerate_cube.json", io::to_json(deg));
  Cube flipped = deg;
  auto top = D.square(flipped.face(3, 1));
  top.m = 1 - top.m;
  flipped.face(3, 1) = D.index_of(top);
  put("double/noncommutative_cube.json", io::to_json(flipped));
  Cube bent = deg;
  bent.face(1, 0) = D.eps1(one);
  put("double/malformed_cube.json", io::to_json(bent));
  return 0;
}

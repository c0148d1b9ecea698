// gpdkit: command-line front end.
//
// Exit codes: 0 success, 1 semantic failure, 2 parse failure, 3 diagnostic
// finding (a check ran and reported a negative result that is not an error
// of the tool, e.g. a non-extendible pair).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "gpdkit/colimits.hpp"
#include "gpdkit/cube.hpp"
#include "gpdkit/double_groupoid.hpp"
#include "gpdkit/extendible.hpp"
#include "gpdkit/foliation.hpp"
#include "gpdkit/holonomy.hpp"
#include "gpdkit/io.hpp"
#include "gpdkit/monodromy.hpp"
#include "gpdkit/rewriting.hpp"

namespace {

using gpdkit::io::json;
using namespace gpdkit;

constexpr const char* kVersion = "0.3.0";

enum exit_code { ok = 0, semantic = 1, parse = 2, diagnostic = 3 };

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return out.str();
}

struct Run {
  std::string command;
  std::vector<std::string> inputs;
  bool timing = true;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  json load(const std::string& path) {
    inputs.push_back(path);
    return io::load(path);
  }

  int emit(const json& results, int code) const {
    json in = json::array();
    for (const auto& p : inputs) in.push_back({{"path", p}, {"sha256", sha256_hex(io::read_file(p))}});
    json manifest = {{"schema_version", io::schema_version},
                     {"command", command},
                     {"tool_version", kVersion},
                     {"inputs", in},
                     {"results", results},
                     {"exit_code", code}};
    if (timing)
      manifest["timing"] = {
          {"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
    std::cout << manifest.dump(2) << "\n";
    return code;
  }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw error(errc::parse_error, path + ": cannot write");
  out << text;
}


// --- validate -------------------------------------------------------------

int cmd_validate(Run& run, const std::string& path) {
  auto j = run.load(path);
  json results;
  ValidationReport report;
  if (j.is_object() && j.contains("window")) {
    results["schema"] = "local-groupoid-data";
    report = validate_local_data(io::local_data_from_json(j));
  } else if (j.is_object() && j.contains("generators")) {
    results["schema"] = "presentation";
    auto p = io::presentation_from_json(j);
    validate_presentation(p);
  } else if (j.is_object() && j.contains("P")) {
    results["schema"] = "crossed-module";
    report = validate_crossed_module(io::xmod_from_json(j));
  } else {
    results["schema"] = "groupoid";
    report = validate_groupoid(io::groupoid_from_json(j));
  }
  results["report"] = io::to_json(report);
  return run.emit(results, report.ok() ? ok : semantic);
}

// --- pushout / vertex group -------------------------------------------------

json group_json(const GroupPresentation& gp) {
  json rel = json::array();
  for (const auto& r : gp.relators()) rel.push_back(word_string(gp.graph(), r));
  return {{"generators", gp.generator_names()}, {"relators", rel}, {"text", gp.to_string()}};
}

int cmd_pushout(Run& run, const std::vector<std::string>& files, const std::string& vertex) {
  auto a = io::presentation_from_json(run.load(files[0]));
  auto b = io::presentation_from_json(run.load(files[1]));
  auto c = io::presentation_from_json(run.load(files[2]));
  auto f = io::presentation_morphism_from_json(run.load(files[3]), a, b);
  auto g = io::presentation_morphism_from_json(run.load(files[4]), a, c);
  auto po = pushout(a, b, c, f, g);
  auto iso_json = [](std::optional<bool> v) -> json {
    if (!v) return "undecided";
    return *v;
  };
  json results = {{"apex", io::to_json(po.apex)},
                  {"transcript", po.transcript},
                  {"inj_left_isomorphism", iso_json(induces_isomorphism(b, po.apex, po.inj_left))},
                  {"inj_right_isomorphism", iso_json(induces_isomorphism(c, po.apex, po.inj_right))}};
  if (!vertex.empty()) {
    auto vg = vertex_group_presentation(po.apex, po.apex.graph.object_index(vertex));
    results["vertex_group"] = group_json(vg.group);
  }
  return run.emit(results, ok);
}

int cmd_vertex_group(Run& run, const std::string& path, const std::string& object) {
  auto p = io::presentation_from_json(run.load(path));
  const Obj base = object.empty() ? 0 : p.graph.object_index(object);
  auto vg = vertex_group_presentation(p, base);
  json tree = json::array();
  for (auto e : vg.tree) tree.push_back(p.graph.edge(e).name);
  json loops = json::array();
  for (const auto& w : vg.generator_loops) loops.push_back(word_string(p.graph, w));
  return run.emit({{"object", p.graph.object_name(base)}, {"group", group_json(vg.group)}, {"tree", tree},
                   {"generator_loops", loops}},
                  ok);
}

// --- monodromy ------------------------------------------------------------

int cmd_monodromy(Run& run, const std::string& path, const std::string& extend) {
  auto d = io::local_data_from_json(run.load(path));
  auto m = monodromy(d);
  const auto& graph = m.presentation.graph;
  const auto& g = d.groupoid;
  json p_map = json::object(), iprime = json::object();
  for (auto e : graph.generators()) p_map[graph.edge(e).name] = g.arrow_name(m.projection.edge_map[e]);
  for (auto a : members(d.window)) iprime[g.arrow_name(a)] = word_string(graph, m.iprime_of(a));
  NormalFormLanguage lang(m.rewriting);
  json results = {{"presentation", io::to_json(m.presentation)},
                  {"projection", p_map},
                  {"iprime", iprime},
                  {"rules", m.rewriting.rules().size()},
                  {"infinite", !lang.is_finite()}};
  if (lang.is_finite()) {
    auto fm = finite_monodromy(m);
    results["arrow_count"] = fm.arrow_count();
    // p is a morphism, so equal finite sizes and p onto make it an isomorphism
    std::vector<bool> hit(g.arrow_count(), false);
    for (Obj x = 0; x < g.object_count(); ++x) hit[g.id_of(x)] = true;
    for (auto e : graph.generators()) hit[m.projection.edge_map[e]] = true;
    const bool onto = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
    results["isomorphic_to_G"] = onto && fm.arrow_count() == g.arrow_count();
  }
  if (!extend.empty()) {
    auto lm = io::local_morphism_from_json(run.load(extend), d);
    auto ext = extend_local_morphism(m, d, lm.target, lm.map);
    json table = json::object();
    for (auto e : graph.generators()) table[graph.edge(e).name] = lm.target.arrow_name(ext.edge_map[e]);
    results["extension"] = table;
  }
  return run.emit(results, ok);
}

// --- holonomy / extendibility ---------------------------------------------

bool projection_is_isomorphism(const LocalGroupoidData& d, const HolonomyGroupoid& h) {
  const auto& g = d.groupoid;
  if (!h.projection_well_defined || h.groupoid.arrow_count() != g.arrow_count()) return false;
  std::vector<bool> hit(g.arrow_count(), false);
  for (auto a : h.projection) {
    if (a == none || hit[a]) return false;
    hit[a] = true;
  }
  return true;
}

int cmd_holonomy(Run& run, const std::string& path, bool literal, const std::string& dot) {
  auto d = io::local_data_from_json(run.load(path));
  auto j = germ_groupoid(d);
  auto z = j0(j, literal);
  auto h = holonomy_groupoid(j, z);
  auto s = summarize(j, z, h);
  std::size_t nontrivial = 0, largest = 0;
  for (const auto& [x, order] : s.vertex_groups) nontrivial += order > 1, largest = std::max(largest, order);
  json per_component = json::array();  // one entry per leaf/component, by least object
  for (const auto& block : components(h.groupoid)) per_component.push_back(h.groupoid.hom(block[0], block[0]).size());
  json results = {{"germ_count", s.germ_count},
                  {"j0_count", s.j0_count},
                  {"hol_arrows", s.hol_arrows},
                  {"vertex_groups", s.vertex_groups},
                  {"nontrivial_vertex_groups", nontrivial},
                  {"max_vertex_group", largest},
                  {"component_vertex_groups", per_component},
                  {"embedding_injective", s.embedding_injective},
                  {"projection_well_defined", s.projection_well_defined},
                  {"hol_isomorphic_to_G", projection_is_isomorphism(d, h)},
                  {"paper_literal_j0", literal}};
  if (!dot.empty()) write_text(dot, io::to_dot(h.groupoid, "Hol"));
  if (!h.projection_well_defined) {
    results["witness"] = h.projection_witness;
    return run.emit(results, diagnostic);
  }
  return run.emit(results, ok);
}

int cmd_extendible(Run& run, const std::string& path) {
  auto d = io::local_data_from_json(run.load(path));
  auto r = check_extendible(d);
  json results = {{"extendible", r.extendible}, {"law", r.law}, {"witness", r.witness}};
  if (r.extendible) results["topology"] = io::to_json(r.topology);
  return run.emit(results, r.extendible ? ok : diagnostic);
}

// --- double groupoids and cubes ---------------------------------------------

json law_json(const LawReport& r) {
  return {{"ok", r.ok()}, {"checked", r.checked}, {"failure_count", r.failure_count}, {"failures", r.failures}};
}

int cmd_double(Run& run, const std::string& path, const std::vector<std::string>& checks, const std::string& cube,
               bool catalogue) {
  auto j = run.load(path);
  auto D = io::double_from_json(j);
  json results = {{"squares", D.size()}, {"model", D.xmod() ? "crossed-module" : "commuting-squares"}};
  bool all = true;
  json reports = json::object();
  for (const auto& c : checks) {
    if (c == "transport") {
      auto r = transport_check(D);
      all = all && r.ok();
      reports[c] = law_json(r);
    } else if (c == "interchange") {
      auto r = interchange_check(D);
      all = all && r.ok();
      reports[c] = law_json(r);
    } else if (c == "laws") {
      auto r = groupoid_laws_check(D);
      all = all && r.ok();
      reports[c] = law_json(r);
    } else if (c == "roundtrip") {
      if (!D.xmod()) {
        auto back = double_to_xmod(D);
        reports[c] = {{"ok", true}, {"recovered", io::to_json(back.xmod)}};
      } else {
        auto rt = xmod_round_trip(*D.xmod());
        all = all && rt.ok();
        reports[c] = {{"ok", rt.ok()},
                      {"recovered", io::to_json(rt.recovered)},
                      {"isomorphism", {{"P", rt.iso.on_p}, {"M", rt.iso.on_m}}},
                      {"report", io::to_json(rt.report)}};
      }
    } else {
      throw error(errc::parse_error, "unknown check '" + c + "'");
    }
  }
  results["checks"] = reports;
  if (catalogue) results["catalogue"] = io::square_catalogue(D);
  if (!cube.empty()) {
    auto c = io::cube_from_json(run.load(cube), D);
    results["commutative"] = is_commutative_cube(D, c);
  }
  return run.emit(results, all ? ok : semantic);
}

int cmd_cube(Run& run, const std::string& path, const std::string& cube) {
  auto D = io::double_from_json(run.load(path));
  auto c = io::cube_from_json(run.load(cube), D);
  const Sq folded = fold(D, c);
  const bool comm = folded == c.face(3, 1);
  return run.emit({{"commutative", comm}, {"fold", D.name(folded)}, {"S3_1", D.name(c.face(3, 1))}}, ok);
}

int cmd_band(Run& run, std::size_t n, bool twisted) {
  run.timing = false;
  auto d = twisted ? mobius_model(n) : annulus_model(n);
  std::cout << io::to_json(d).dump(2) << "\n";
  return ok;
}

int to_exit(const error& e) {
  std::cerr << "gpdkit: " << e.what() << "\n";
  return e.code() == errc::parse_error ? parse : semantic;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite groupoids, presentations, holonomy and double groupoids"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  bool no_timing = false;
  app.add_flag("--no-timing", no_timing, "omit the timing field (byte-stable output)");

  std::string file, file2, object, extend, dot, cube;
  std::vector<std::string> files, checks;
  bool literal = false, catalogue = false;
  std::size_t segments = 3;

  auto* validate = app.add_subcommand("validate", "validate a groupoid, presentation, local data or crossed module");
  validate->add_option("file", file)->required();

  auto* po = app.add_subcommand("pushout", "pushout of B <- A -> C");
  po->add_option("files", files, "A B C F G (presentations, then morphisms A->B and A->C)")->required()->expected(5);
  po->add_option("--vertex-group", object, "also print the vertex group at this object");

  auto* vg = app.add_subcommand("vertex-group", "vertex group presentation of a connected presentation");
  vg->add_option("file", file)->required();
  vg->add_option("--object", object);

  auto* mono = app.add_subcommand("monodromy", "presentation of the monodromy groupoid");
  mono->add_option("file", file)->required();
  mono->add_option("--extend", extend, "local morphism file to extend");

  auto* hol = app.add_subcommand("holonomy", "holonomy groupoid summary");
  hol->add_option("file", file)->required();
  hol->add_flag("--paper-literal-j0", literal, "drop the identity-value condition from J0");
  hol->add_option("--emit-dot", dot, "write the holonomy groupoid as DOT");

  auto* ext = app.add_subcommand("extendible", "extendibility of (G, W)");
  ext->add_option("file", file)->required();

  auto* dbl = app.add_subcommand("double", "double groupoid checks");
  dbl->add_option("file", file, "crossed module or groupoid")->required();
  dbl->add_option("--check", checks, "transport, interchange, laws, roundtrip");
  dbl->add_option("--cube", cube, "cube file to judge");
  dbl->add_flag("--catalogue", catalogue, "print the square catalogue");

  auto* cb = app.add_subcommand("cube", "commutativity of a cube");
  cb->add_option("file", file, "crossed module or groupoid")->required();
  cb->add_option("cube", file2)->required();

  auto* mob = app.add_subcommand("mobius", "emit the Mobius band model");
  mob->add_option("--segments", segments)->check(CLI::PositiveNumber);
  auto* ann = app.add_subcommand("annulus", "emit the annulus model");
  ann->add_option("--segments", segments)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : parse;
  }

  Run run;
  run.command = app.get_subcommands().front()->get_name();
  run.timing = !no_timing;
  try {
    if (*validate) return cmd_validate(run, file);
    if (*po) return cmd_pushout(run, files, object);
    if (*vg) return cmd_vertex_group(run, file, object);
    if (*mono) return cmd_monodromy(run, file, extend);
    if (*hol) return cmd_holonomy(run, file, literal, dot);
    if (*ext) return cmd_extendible(run, file);
    if (*dbl) return cmd_double(run, file, checks, cube, catalogue);
    if (*cb) return cmd_cube(run, file, file2);
    if (*mob) return cmd_band(run, segments, true);
    if (*ann) return cmd_band(run, segments, false);
  } catch (const error& e) {
    return to_exit(e);
  } catch (const io::json::exception& e) {
    std::cerr << "gpdkit: " << e.what() << "\n";
    return parse;
  }
  return semantic;
}

#ifndef GPDKIT_PRESENTATION_HPP
#define GPDKIT_PRESENTATION_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gpdkit/error.hpp"
#include "gpdkit/groupoid.hpp"

namespace gpdkit {

struct Edge {
  std::string name;
  Obj src;
  Obj tgt;
};

/// A directed graph with one distinguished identity loop per object.
class ReflexiveGraph {
 public:
  ReflexiveGraph() = default;

  /// Identity edges "id:<object>" are created first, one per object, followed
  /// by the given generators in order.
  ReflexiveGraph(std::vector<std::string> objects, const std::vector<Edge>& generators)
      : objects_(std::move(objects)) {
    for (Obj x = 0; x < objects_.size(); ++x) {
      identity_of_.push_back(edges_.size());
      edges_.push_back({identity_name(objects_[x]), x, x});
    }
    for (const auto& e : generators) {
      if (e.src >= objects_.size() || e.tgt >= objects_.size())
        throw error(errc::unknown_object, "edge " + e.name + " has an endpoint outside the graph");
      edges_.push_back(e);
    }
    for (std::size_t i = 0; i < objects_.size(); ++i) object_index_.emplace(objects_[i], i);
    for (std::size_t i = 0; i < edges_.size(); ++i)
      if (!edge_index_.emplace(edges_[i].name, i).second)
        throw error(errc::ill_formed_word, "duplicate edge name " + edges_[i].name);
  }

  std::size_t object_count() const { return objects_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::string>& object_names() const { return objects_; }
  const std::string& object_name(Obj x) const { return objects_.at(x); }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t identity_edge(Obj x) const { return identity_of_.at(x); }
  bool is_identity(std::size_t e) const { return e < objects_.size(); }

  /// Indices of the non-identity edges.
  std::vector<std::size_t> generators() const {
    std::vector<std::size_t> out;
    for (std::size_t e = objects_.size(); e < edges_.size(); ++e) out.push_back(e);
    return out;
  }
  std::size_t generator_count() const { return edges_.size() - objects_.size(); }

  Obj object_index(const std::string& name) const {
    auto it = object_index_.find(name);
    if (it == object_index_.end()) throw error(errc::unknown_object, name);
    return it->second;
  }
  std::size_t edge_index(const std::string& name) const {
    auto it = edge_index_.find(name);
    if (it == edge_index_.end()) throw error(errc::ill_formed_word, "unknown generator " + name);
    return it->second;
  }
  bool has_edge(const std::string& name) const { return edge_index_.count(name) > 0; }

 private:
  std::vector<std::string> objects_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> identity_of_;
  std::map<std::string, Obj> object_index_;
  std::map<std::string, std::size_t> edge_index_;
};

struct Letter {
  std::size_t edge;
  bool inverse = false;

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

inline Letter flip(Letter l) { return {l.edge, !l.inverse}; }

/// A composable string of letters. The word denotes
/// letters[0] . letters[1] . ... . letters[k-1], so the last letter is
/// applied first and starts at `start`. The empty word denotes the identity
/// at `start`.
struct Word {
  Obj start = 0;
  std::vector<Letter> letters;

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;
};

inline Obj letter_src(const ReflexiveGraph& g, Letter l) {
  return l.inverse ? g.edge(l.edge).tgt : g.edge(l.edge).src;
}
inline Obj letter_tgt(const ReflexiveGraph& g, Letter l) {
  return l.inverse ? g.edge(l.edge).src : g.edge(l.edge).tgt;
}

inline Obj word_end(const ReflexiveGraph& g, const Word& w) {
  return w.letters.empty() ? w.start : letter_tgt(g, w.letters.front());
}

inline bool is_well_formed(const ReflexiveGraph& g, const Word& w) {
  if (w.start >= g.object_count()) return false;
  Obj at = w.start;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    if (it->edge >= g.edge_count() || g.is_identity(it->edge)) return false;
    if (letter_src(g, *it) != at) return false;
    at = letter_tgt(g, *it);
  }
  return true;
}

inline void require_well_formed(const ReflexiveGraph& g, const Word& w) {
  if (!is_well_formed(g, w)) throw error(errc::ill_formed_word, "letters are not composable from the start object");
}

inline Word single_letter(const ReflexiveGraph& g, std::size_t edge, bool inverse = false) {
  if (g.is_identity(edge)) return Word{g.edge(edge).src, {}};
  Letter l{edge, inverse};
  return Word{letter_src(g, l), {l}};
}

/// h after g: requires end(g) == start(h).
inline Word concat(const ReflexiveGraph& g, const Word& h, const Word& first) {
  if (word_end(g, first) != h.start) throw error(errc::not_composable, "word endpoints do not match");
  Word out{first.start, h.letters};
  out.letters.insert(out.letters.end(), first.letters.begin(), first.letters.end());
  return out;
}

inline Word inverse_word(const ReflexiveGraph& g, const Word& w) {
  Word out{word_end(g, w), {}};
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) out.letters.push_back(flip(*it));
  return out;
}

/// Free reduction: cancels adjacent x x^-1 pairs until none remain. The
/// result is the unique reduced word of the free groupoid class.
inline Word reduce(const ReflexiveGraph& g, const Word& w) {
  require_well_formed(g, w);
  Word out{w.start, {}};
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    // out.letters is built back to front; its last element is the latest letter
    if (!out.letters.empty() && out.letters.back() == flip(*it))
      out.letters.pop_back();
    else
      out.letters.push_back(*it);
  }
  std::reverse(out.letters.begin(), out.letters.end());
  return out;
}

inline bool is_reduced(const Word& w) {
  for (std::size_t i = 0; i + 1 < w.letters.size(); ++i)
    if (w.letters[i] == flip(w.letters[i + 1])) return false;
  return true;
}

inline std::string letter_string(const ReflexiveGraph& g, Letter l) {
  return g.edge(l.edge).name + (l.inverse ? "^-1" : "");
}

/// Space separated letters with runs compressed as powers; "1" when empty.
inline std::string word_string(const ReflexiveGraph& g, const Word& w) {
  if (w.letters.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.letters.size();) {
    std::size_t j = i;
    while (j < w.letters.size() && w.letters[j] == w.letters[i]) ++j;
    const long long run = static_cast<long long>(j - i);
    if (!out.empty()) out += ' ';
    out += g.edge(w.letters[i].edge).name;
    const long long exponent = w.letters[i].inverse ? -run : run;
    if (exponent != 1) out += "^" + std::to_string(exponent);
    i = j;
  }
  return out;
}

/// A groupoid presentation: generators are the non-identity edges of the
/// graph; each relation is a pair of words with equal endpoints.
struct FpGroupoid {
  ReflexiveGraph graph;
  std::vector<std::pair<Word, Word>> relations;

  bool is_free() const { return relations.empty(); }
};

inline void validate_presentation(const FpGroupoid& p) {
  for (const auto& [l, r] : p.relations) {
    require_well_formed(p.graph, l);
    require_well_formed(p.graph, r);
    if (l.start != r.start || word_end(p.graph, l) != word_end(p.graph, r))
      throw error(errc::ill_formed_word, "relation sides have different endpoints");
  }
}

inline FpGroupoid free_groupoid(const ReflexiveGraph& g) { return FpGroupoid{g, {}}; }

/// All reduced words x -> y of length at most `max_length`, ordered by length
/// and then letter by letter (positive before inverse, by edge index).
inline std::vector<Word> words_up_to(const FpGroupoid& p, Obj x, Obj y, std::size_t max_length) {
  if (!p.is_free()) throw error(errc::not_free, "bounded enumeration needs a presentation without relations");
  if (x >= p.graph.object_count() || y >= p.graph.object_count()) throw error(errc::unknown_object, "words_up_to");
  std::vector<Letter> alphabet;
  for (auto e : p.graph.generators()) {
    alphabet.push_back({e, false});
    alphabet.push_back({e, true});
  }
  std::sort(alphabet.begin(), alphabet.end(), [](Letter a, Letter b) {
    return std::make_pair(a.inverse, a.edge) < std::make_pair(b.inverse, b.edge);
  });
  std::vector<Word> out;
  // layer holds reduced words from x of the current length, stored with the
  // letters in application order (first applied first) for easy extension
  std::vector<std::vector<Letter>> layer{{}};
  for (std::size_t len = 0;; ++len) {
    std::vector<Word> found;
    for (const auto& applied : layer) {
      Obj end = applied.empty() ? x : letter_tgt(p.graph, applied.back());
      if (end == y) found.push_back(Word{x, {applied.rbegin(), applied.rend()}});
    }
    std::sort(found.begin(), found.end(), [&](const Word& a, const Word& b) {
      auto key = [](Letter l) { return std::make_pair(l.inverse, l.edge); };
      return std::lexicographical_compare(a.letters.begin(), a.letters.end(), b.letters.begin(), b.letters.end(),
                                          [&](Letter u, Letter v) { return key(u) < key(v); });
    });
    out.insert(out.end(), found.begin(), found.end());
    if (len == max_length) break;
    std::vector<std::vector<Letter>> next;
    for (const auto& applied : layer) {
      Obj end = applied.empty() ? x : letter_tgt(p.graph, applied.back());
      for (Letter l : alphabet) {
        if (letter_src(p.graph, l) != end) continue;
        if (!applied.empty() && applied.back() == flip(l)) continue;
        auto w = applied;
        w.push_back(l);
        next.push_back(std::move(w));
      }
    }
    layer = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Morphisms out of presentations

/// A morphism from a presentation to a finite groupoid, given on objects and
/// on every edge (identity edges must go to identities).
struct FpToFinite {
  std::vector<Obj> obj_map;
  std::vector<Arr> edge_map;
};

inline Arr evaluate([[maybe_unused]] const FpGroupoid& p, const FiniteGroupoid& h, const FpToFinite& m, const Word& w) {
  Arr value = h.id_of(m.obj_map.at(w.start));
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    Arr a = m.edge_map.at(it->edge);
    if (it->inverse) a = h.inv(a);
    value = h.compose(a, value);
  }
  return value;
}

inline ValidationReport fp_morphism_report(const FpGroupoid& p, const FiniteGroupoid& h, const FpToFinite& m) {
  ValidationReport r;
  if (m.obj_map.size() != p.graph.object_count() || m.edge_map.size() != p.graph.edge_count()) {
    r.add("map-size", {});
    return r;
  }
  for (std::size_t e = 0; e < p.graph.edge_count(); ++e) {
    const auto& ed = p.graph.edge(e);
    const Arr a = m.edge_map[e];
    if (a >= h.arrow_count() || h.src(a) != m.obj_map[ed.src] || h.tgt(a) != m.obj_map[ed.tgt])
      r.add("endpoints", {ed.name});
    else if (p.graph.is_identity(e) && a != h.id_of(m.obj_map[ed.src]))
      r.add("identity", {ed.name});
  }
  if (!r.ok()) return r;
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    const auto& [l, rr] = p.relations[i];
    if (evaluate(p, h, m, l) != evaluate(p, h, m, rr))
      r.add("relation", {word_string(p.graph, l), word_string(p.graph, rr)});
  }
  return r;
}

/// Calls `visit` on every morphism p -> h, found by backtracking over object
/// maps and generator images; relations are checked as soon as all their
/// letters are assigned. `visit` returns false to stop the search.
inline void enumerate_fp_morphisms(const FpGroupoid& p, const FiniteGroupoid& h,
                                   const std::function<bool(const FpToFinite&)>& visit) {
  const auto& g = p.graph;
  FpToFinite m{std::vector<Obj>(g.object_count(), none), std::vector<Arr>(g.edge_count(), none)};
  const auto gens = g.generators();
  // relation i becomes checkable after generator position ready_at[i]
  std::vector<std::vector<std::size_t>> checks(gens.size() + 1);
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    std::size_t last = 0;
    for (const Word* w : {&p.relations[i].first, &p.relations[i].second})
      for (Letter l : w->letters) {
        auto pos = static_cast<std::size_t>(std::find(gens.begin(), gens.end(), l.edge) - gens.begin());
        last = std::max(last, pos + 1);
      }
    checks[last].push_back(i);
  }
  bool stop = false;
  auto relations_hold = [&](std::size_t level) {
    for (auto i : checks[level])
      if (evaluate(p, h, m, p.relations[i].first) != evaluate(p, h, m, p.relations[i].second)) return false;
    return true;
  };
  std::function<void(std::size_t)> assign_gen = [&](std::size_t k) {
    if (stop) return;
    if (k == gens.size()) {
      if (!visit(m)) stop = true;
      return;
    }
    const auto& e = g.edge(gens[k]);
    for (Arr a : h.hom(m.obj_map[e.src], m.obj_map[e.tgt])) {
      m.edge_map[gens[k]] = a;
      if (relations_hold(k + 1)) assign_gen(k + 1);
      if (stop) return;
    }
    m.edge_map[gens[k]] = none;
  };
  std::function<void(Obj)> assign_obj = [&](Obj x) {
    if (stop) return;
    if (x == g.object_count()) {
      for (Obj y = 0; y < g.object_count(); ++y) m.edge_map[g.identity_edge(y)] = h.id_of(m.obj_map[y]);
      if (relations_hold(0)) assign_gen(0);
      return;
    }
    for (Obj y = 0; y < h.object_count(); ++y) {
      m.obj_map[x] = y;
      assign_obj(x + 1);
      if (stop) return;
    }
  };
  assign_obj(0);
}

/// A morphism between presentations: objects to objects, each edge to a word
/// of the target (identity edges to empty words).
struct PresentationMorphism {
  std::vector<Obj> obj_map;
  std::vector<Word> edge_map;
};

inline Word apply(const FpGroupoid& from, const FpGroupoid& to, const PresentationMorphism& f, const Word& w) {
  Word out{f.obj_map.at(w.start), {}};
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    Word piece = f.edge_map.at(it->edge);
    if (it->inverse) piece = inverse_word(to.graph, piece);
    out = concat(to.graph, piece, out);
  }
  (void)from;
  return out;
}

/// Endpoint and well-formedness checks for a presentation morphism; the
/// relation check needs a normal form and lives with the rewriting code.
inline void require_presentation_morphism(const FpGroupoid& from, const FpGroupoid& to,
                                          const PresentationMorphism& f) {
  if (f.obj_map.size() != from.graph.object_count() || f.edge_map.size() != from.graph.edge_count())
    throw error(errc::invalid_presentation_morphism, "map sizes do not match the source presentation");
  for (auto y : f.obj_map)
    if (y >= to.graph.object_count()) throw error(errc::invalid_presentation_morphism, "object out of range");
  for (std::size_t e = 0; e < from.graph.edge_count(); ++e) {
    const auto& ed = from.graph.edge(e);
    const Word& w = f.edge_map[e];
    if (!is_well_formed(to.graph, w))
      throw error(errc::invalid_presentation_morphism, "image of " + ed.name + " is not a word of the target");
    if (w.start != f.obj_map[ed.src] || word_end(to.graph, w) != f.obj_map[ed.tgt])
      throw error(errc::invalid_presentation_morphism, "image of " + ed.name + " has the wrong endpoints");
    if (from.graph.is_identity(e) && !w.empty())
      throw error(errc::invalid_presentation_morphism, "identity edge " + ed.name + " must map to an empty word");
  }
}

/// FpToFinite obtained by precomposing with a presentation morphism.
inline FpToFinite precompose(const FpGroupoid& from, const FpGroupoid& to, const FiniteGroupoid& h,
                             const PresentationMorphism& f, const FpToFinite& m) {
  FpToFinite out;
  for (Obj x = 0; x < from.graph.object_count(); ++x) out.obj_map.push_back(m.obj_map.at(f.obj_map[x]));
  for (std::size_t e = 0; e < from.graph.edge_count(); ++e) out.edge_map.push_back(evaluate(to, h, m, f.edge_map[e]));
  return out;
}

}  // namespace gpdkit

#endif  // GPDKIT_PRESENTATION_HPP

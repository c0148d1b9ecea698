#ifndef GPDKIT_REWRITING_HPP
#define GPDKIT_REWRITING_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gpdkit/error.hpp"
#include "gpdkit/presentation.hpp"

namespace gpdkit {

/// String rewriting over the letters of a presentation, oriented by the
/// shortlex order (length, then letters with every positive letter below
/// every inverse letter, each group ordered by edge index).
///
/// The initial rules are free cancellation x x^-1 -> 1 and one rule per
/// relation. `is_confluent` checks all critical pairs; `complete` runs
/// bounded Knuth-Bendix completion. Normal forms decide equality only once
/// the system is confluent.
class RewritingSystem {
 public:
  using Str = std::vector<Letter>;

  struct Rule {
    Str lhs;
    Str rhs;
    friend bool operator<(const Rule& a, const Rule& b) { return std::tie(a.lhs, a.rhs) < std::tie(b.lhs, b.rhs); }
  };

  struct CriticalPair {
    Str overlap;
    Str left;
    Str right;
  };

  RewritingSystem() = default;

  explicit RewritingSystem(const FpGroupoid& p) : graph_(p.graph) {
    validate_presentation(p);
    for (auto e : graph_.generators()) {
      for (bool inv : {false, true}) {
        Letter x{e, inv};
        add_oriented({x, flip(x)}, {});
      }
    }
    for (const auto& [l, r] : p.relations) {
      Str a = normal_form(l.letters), b = normal_form(r.letters);
      if (a != b) add_oriented(a, b);
    }
    interreduce();
  }

  const ReflexiveGraph& graph() const { return graph_; }
  const std::vector<Rule>& rules() const { return rules_; }

  static bool less(const Str& a, const Str& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    auto key = [](Letter l) { return std::make_pair(l.inverse, l.edge); };
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return key(a[i]) < key(b[i]);
    return false;
  }

  /// Left to right with a stack: the output is kept irreducible, so a new
  /// redex can only be a suffix of it.
  Str normal_form(const Str& s) const {
    Str out;
    Str in(s.rbegin(), s.rend());
    while (!in.empty()) {
      out.push_back(in.back());
      in.pop_back();
      std::size_t node = 0;
      for (std::size_t j = out.size(); j-- > 0;) {
        auto it = trie_[node].next.find(out[j]);
        if (it == trie_[node].next.end()) break;
        node = it->second;
        if (trie_[node].rule == none) continue;
        const Rule& r = rules_[trie_[node].rule];
        out.resize(j);
        in.insert(in.end(), r.rhs.rbegin(), r.rhs.rend());
        break;
      }
    }
    return out;
  }

  Word normal_form(const Word& w) const {
    require_well_formed(graph_, w);
    return Word{w.start, normal_form(w.letters)};
  }

  bool is_irreducible(const Str& s) const {
    for (std::size_t i = 0; i < s.size(); ++i) {
      auto it = by_first_.find(s[i]);
      if (it == by_first_.end()) continue;
      for (auto ri : it->second) {
        const Rule& r = rules_[ri];
        if (i + r.lhs.size() <= s.size() && std::equal(r.lhs.begin(), r.lhs.end(), s.begin() + i)) return false;
      }
    }
    return true;
  }

  std::vector<CriticalPair> critical_pairs() const {
    std::vector<CriticalPair> out;
    for (const auto& r1 : rules_)
      for (const auto& r2 : rules_) overlaps(r1, r2, out);
    return out;
  }

  /// The first critical pair whose sides have different normal forms.
  std::optional<CriticalPair> unjoinable_pair() const {
    for (auto& cp : critical_pairs())
      if (normal_form(cp.left) != normal_form(cp.right)) return cp;
    return std::nullopt;
  }

  bool is_confluent() const { return !unjoinable_pair(); }

  /// Knuth-Bendix completion; returns false when the rule bound is hit
  /// before the system becomes confluent. Pairs of rules already examined
  /// are not examined again; a rule whose right side changed counts as new.
  bool complete(std::size_t max_rules = 4000) {
    std::map<Rule, std::size_t> id;
    std::set<std::pair<std::size_t, std::size_t>> examined;
    while (true) {
      bool added = false;
      const std::vector<Rule> snapshot = rules_;
      std::vector<std::size_t> ids;
      for (const auto& r : snapshot) ids.push_back(id.try_emplace(r, id.size()).first->second);
      std::vector<CriticalPair> pairs;
      for (std::size_t i = 0; i < snapshot.size(); ++i)
        for (std::size_t j = 0; j < snapshot.size(); ++j)
          if (examined.insert({ids[i], ids[j]}).second) overlaps(snapshot[i], snapshot[j], pairs);
      for (auto& cp : pairs) {
        Str a = normal_form(cp.left), b = normal_form(cp.right);
        if (a == b) continue;
        add_oriented(a, b);
        added = true;
        if (rules_.size() > max_rules) return false;
      }
      if (!added) return true;
      interreduce();
    }
  }

 private:
  static void overlaps(const Rule& r1, const Rule& r2, std::vector<CriticalPair>& out) {
    // proper overlaps: a suffix of r1.lhs equals a prefix of r2.lhs
    for (std::size_t k = 1; k < r1.lhs.size() && k < r2.lhs.size(); ++k) {
      if (!std::equal(r1.lhs.end() - static_cast<std::ptrdiff_t>(k), r1.lhs.end(), r2.lhs.begin())) continue;
      Str overlap = r1.lhs;
      overlap.insert(overlap.end(), r2.lhs.begin() + static_cast<std::ptrdiff_t>(k), r2.lhs.end());
      Str a = r1.rhs;
      a.insert(a.end(), r2.lhs.begin() + static_cast<std::ptrdiff_t>(k), r2.lhs.end());
      Str b(r1.lhs.begin(), r1.lhs.end() - static_cast<std::ptrdiff_t>(k));
      b.insert(b.end(), r2.rhs.begin(), r2.rhs.end());
      out.push_back({std::move(overlap), std::move(a), std::move(b)});
    }
    // inclusion: r2.lhs occurs inside r1.lhs
    if (&r1 == &r2 || (r1.lhs == r2.lhs && r1.rhs == r2.rhs) || r2.lhs.size() > r1.lhs.size()) return;
    for (std::size_t i = 0; i + r2.lhs.size() <= r1.lhs.size(); ++i) {
      if (!std::equal(r2.lhs.begin(), r2.lhs.end(), r1.lhs.begin() + static_cast<std::ptrdiff_t>(i))) continue;
      Str b(r1.lhs.begin(), r1.lhs.begin() + static_cast<std::ptrdiff_t>(i));
      b.insert(b.end(), r2.rhs.begin(), r2.rhs.end());
      b.insert(b.end(), r1.lhs.begin() + static_cast<std::ptrdiff_t>(i + r2.lhs.size()), r1.lhs.end());
      out.push_back({r1.lhs, r1.rhs, std::move(b)});
    }
  }

  void add_oriented(Str a, Str b) {
    if (less(a, b)) std::swap(a, b);
    for (const auto& r : rules_)
      if (r.lhs == a && r.rhs == b) return;
    rules_.push_back({std::move(a), std::move(b)});
    reindex();
  }

  void reindex() {
    by_first_.clear();
    trie_.assign(1, {});
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      by_first_[rules_[i].lhs.front()].push_back(i);
      std::size_t node = 0;
      for (auto l = rules_[i].lhs.rbegin(); l != rules_[i].lhs.rend(); ++l) {
        auto [it, fresh] = trie_[node].next.try_emplace(*l, trie_.size());
        if (fresh) trie_.emplace_back();
        node = it->second;
      }
      if (trie_[node].rule == none) trie_[node].rule = i;
    }
  }

  /// Removes rules whose left side is reducible by another rule and
  /// normalises right sides; removed rules are re-added through their
  /// normal forms.
  void interreduce() {
    for (bool changed = true; changed;) {
      changed = false;
      std::vector<char> dead(rules_.size(), 0);
      std::vector<Rule> removed;
      for (std::size_t i = 0; i < rules_.size(); ++i)
        if (reducible_by_other(rules_[i].lhs, i, dead)) {
          dead[i] = 1;
          removed.push_back(rules_[i]);
        }
      std::vector<Rule> kept;
      for (std::size_t i = 0; i < rules_.size(); ++i)
        if (!dead[i]) kept.push_back(std::move(rules_[i]));
      rules_ = std::move(kept);
      reindex();
      for (auto& r : rules_) r.rhs = normal_form(r.rhs);
      for (const auto& r : removed) {
        Str a = normal_form(r.lhs), b = normal_form(r.rhs);
        if (a == b) continue;
        add_oriented(a, b);
        changed = true;
      }
    }
    std::sort(rules_.begin(), rules_.end(), [](const Rule& a, const Rule& b) {
      if (a.lhs != b.lhs) return less(a.lhs, b.lhs);
      return less(a.rhs, b.rhs);
    });
    reindex();
  }

  bool reducible_by_other(const Str& s, std::size_t self, const std::vector<char>& dead) const {
    for (std::size_t i = 0; i < s.size(); ++i) {
      auto it = by_first_.find(s[i]);
      if (it == by_first_.end()) continue;
      for (auto ri : it->second) {
        if (ri == self || dead[ri]) continue;
        const Rule& r = rules_[ri];
        if (i + r.lhs.size() <= s.size() && std::equal(r.lhs.begin(), r.lhs.end(), s.begin() + i)) return true;
      }
    }
    return false;
  }

  ReflexiveGraph graph_;
  std::vector<Rule> rules_;
  std::map<Letter, std::vector<std::size_t>> by_first_;
  // left sides read backwards, for matching suffixes in normal_form
  struct TrieNode {
    std::map<Letter, std::size_t> next;
    std::size_t rule = none;
  };
  std::vector<TrieNode> trie_{1};
};

/// Builds the rewriting system of `p` and completes it; throws NotConfluent
/// when completion does not finish within the rule bound.
inline RewritingSystem confluent_system(const FpGroupoid& p, std::size_t max_rules = 4000) {
  RewritingSystem rs(p);
  if (!rs.is_confluent() && !rs.complete(max_rules))
    throw error(errc::not_confluent, "completion exceeded " + std::to_string(max_rules) + " rules");
  return rs;
}

/// Irreducible words are closed under taking factors, so they are the paths
/// of an automaton whose state is the leftmost (m-1) letters of the word,
/// m being the longest left side. Words grow on the left, i.e. by
/// post-composition.
class NormalFormLanguage {
 public:
  explicit NormalFormLanguage(const RewritingSystem& rs) : rs_(&rs) {
    for (const auto& r : rs.rules()) window_ = std::max(window_, r.lhs.size());
    if (window_ > 0) --window_;
    const auto& g = rs.graph();
    for (auto e : g.generators()) {
      alphabet_.push_back({e, false});
      alphabet_.push_back({e, true});
    }
    std::sort(alphabet_.begin(), alphabet_.end(), [](Letter a, Letter b) {
      return std::make_pair(a.inverse, a.edge) < std::make_pair(b.inverse, b.edge);
    });
  }

  /// Extensions x.w of the irreducible word w that stay irreducible.
  std::vector<Letter> extensions(Obj end, const RewritingSystem::Str& w) const {
    std::vector<Letter> out;
    const auto& g = rs_->graph();
    for (Letter x : alphabet_) {
      if (letter_src(g, x) != end) continue;
      RewritingSystem::Str s{x};
      s.insert(s.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(std::min(w.size(), window_)));
      if (prefix_reducible(s)) continue;
      out.push_back(x);
    }
    return out;
  }

  /// True iff only finitely many irreducible words start at each object.
  bool is_finite() const {
    const auto& g = rs_->graph();
    std::map<std::pair<Obj, RewritingSystem::Str>, int> colour;  // 1 on stack, 2 done
    bool cycle = false;
    std::function<void(Obj, const RewritingSystem::Str&)> dfs = [&](Obj end, const RewritingSystem::Str& state) {
      if (cycle) return;
      auto key = std::make_pair(end, state);
      colour[key] = 1;
      for (Letter x : extensions(end, state)) {
        RewritingSystem::Str next{x};
        next.insert(next.end(), state.begin(), state.end());
        if (next.size() > window_) next.resize(window_);
        auto nkey = std::make_pair(letter_tgt(g, x), next);
        auto it = colour.find(nkey);
        if (it == colour.end())
          dfs(nkey.first, nkey.second);
        else if (it->second == 1)
          cycle = true;
        if (cycle) return;
      }
      colour[key] = 2;
    };
    for (Obj x = 0; x < g.object_count() && !cycle; ++x) dfs(x, {});
    return !cycle;
  }

  /// All irreducible words starting at `start`, at most `max_length` long.
  std::vector<Word> enumerate(Obj start, std::size_t max_length) const {
    const auto& g = rs_->graph();
    std::vector<Word> out;
    std::vector<Word> layer{Word{start, {}}};
    for (std::size_t len = 0; !layer.empty(); ++len) {
      out.insert(out.end(), layer.begin(), layer.end());
      if (len == max_length) break;
      std::vector<Word> next;
      for (const auto& w : layer)
        for (Letter x : extensions(word_end(g, w), w.letters)) {
          Word n{w.start, {x}};
          n.letters.insert(n.letters.end(), w.letters.begin(), w.letters.end());
          next.push_back(std::move(n));
        }
      layer = std::move(next);
    }
    return out;
  }

 private:
  bool prefix_reducible(const RewritingSystem::Str& s) const {
    for (const auto& r : rs_->rules())
      if (r.lhs.size() <= s.size() && std::equal(r.lhs.begin(), r.lhs.end(), s.begin())) return true;
    return false;
  }

  const RewritingSystem* rs_;
  std::size_t window_ = 0;
  std::vector<Letter> alphabet_;
};

/// Finite groupoid whose arrows are the normal forms of a confluent system.
/// Throws NotFiniteOnInstance when the normal-form language is infinite.
inline FiniteGroupoid finite_groupoid_of(const RewritingSystem& rs) {
  NormalFormLanguage lang(rs);
  if (!lang.is_finite()) throw error(errc::not_finite_on_instance, "the presented groupoid is infinite");
  const auto& g = rs.graph();
  std::vector<Word> words;
  for (Obj x = 0; x < g.object_count(); ++x)
    for (auto& w : lang.enumerate(x, std::numeric_limits<std::size_t>::max())) words.push_back(std::move(w));
  std::map<Word, Arr> index;
  std::vector<ArrowData> arrows;
  std::vector<Arr> id_of(g.object_count());
  for (const auto& w : words) {
    index[w] = arrows.size();
    if (w.empty()) {
      id_of[w.start] = arrows.size();
      arrows.push_back({identity_name(g.object_name(w.start)), w.start, w.start});
    } else {
      arrows.push_back({word_string(g, w), w.start, word_end(g, w)});
    }
  }
  return FiniteGroupoid::build(g.object_names(), arrows, id_of, [&](Arr h, Arr f) {
    return index.at(rs.normal_form(concat(g, words[h], words[f])));
  });
}

}  // namespace gpdkit

#endif  // GPDKIT_REWRITING_HPP

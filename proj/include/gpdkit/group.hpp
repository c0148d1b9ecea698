#ifndef GPDKIT_GROUP_HPP
#define GPDKIT_GROUP_HPP

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "gpdkit/error.hpp"

namespace gpdkit {

/// A finite group given by its multiplication table. Element 0 need not be
/// the identity; it is located when the table is validated.
class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(trivial()) {}

  static FiniteGroup from_table(std::vector<std::string> names, std::vector<std::vector<std::size_t>> table) {
    const std::size_t n = names.size();
    if (n == 0) throw error(errc::invalid_group, "a group has at least one element");
    if (table.size() != n) throw error(errc::invalid_group, "table has the wrong number of rows");
    for (const auto& row : table) {
      if (row.size() != n) throw error(errc::invalid_group, "table has a row of the wrong length");
      for (auto v : row)
        if (v >= n) throw error(errc::invalid_group, "table entry out of range");
    }
    std::optional<std::size_t> identity;
    for (std::size_t e = 0; e < n && !identity; ++e) {
      bool ok = true;
      for (std::size_t a = 0; a < n && ok; ++a) ok = table[e][a] == a && table[a][e] == a;
      if (ok) identity = e;
    }
    if (!identity) throw error(errc::invalid_group, "no identity element");
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (table[table[a][b]][c] != table[a][table[b][c]])
            throw error(errc::invalid_group, "associativity fails at (" + names[a] + "," + names[b] + "," + names[c] + ")");
    std::vector<std::size_t> inverse(n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (table[a][b] == *identity && table[b][a] == *identity) inverse[a] = b;
    for (std::size_t a = 0; a < n; ++a)
      if (inverse[a] == n) throw error(errc::invalid_group, "no inverse for " + names[a]);
    FiniteGroup g;
    g.names_ = std::move(names);
    g.table_ = std::move(table);
    g.identity_ = *identity;
    g.inverse_ = std::move(inverse);
    return g;
  }

  static FiniteGroup trivial() {
    FiniteGroup g(0);
    g.names_ = {"1"};
    g.table_ = {{0}};
    g.identity_ = 0;
    g.inverse_ = {0};
    return g;
  }

  /// Elements "1", "g", "g^2", ... with g^k at index k.
  static FiniteGroup cyclic(std::size_t n) {
    if (n == 0) throw error(errc::invalid_group, "cyclic group of order 0");
    std::vector<std::string> names;
    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
    for (std::size_t k = 0; k < n; ++k) {
      names.push_back(k == 0 ? "1" : k == 1 ? "g" : "g^" + std::to_string(k));
      for (std::size_t j = 0; j < n; ++j) table[k][j] = (k + j) % n;
    }
    return from_table(std::move(names), std::move(table));
  }

  /// Permutations of {0..n-1} in lexicographic order, the identity first.
  /// Product p*q is "apply q, then p".
  static FiniteGroup symmetric(std::size_t n) {
    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    auto index_of = [&](const std::vector<std::size_t>& q) {
      return static_cast<std::size_t>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
    };
    std::vector<std::string> names;
    std::vector<std::vector<std::size_t>> table(perms.size(), std::vector<std::size_t>(perms.size()));
    for (std::size_t a = 0; a < perms.size(); ++a) {
      std::string nm = "[";
      for (std::size_t i = 0; i < n; ++i) nm += (i ? " " : "") + std::to_string(perms[a][i]);
      names.push_back(nm + "]");
      for (std::size_t b = 0; b < perms.size(); ++b) {
        std::vector<std::size_t> r(n);
        for (std::size_t i = 0; i < n; ++i) r[i] = perms[a][perms[b][i]];
        table[a][b] = index_of(r);
      }
    }
    return from_table(std::move(names), std::move(table));
  }

  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    const std::size_t n = a.order() * b.order();
    std::vector<std::string> names(n);
    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
      names[i] = "(" + a.name(i / b.order()) + "," + b.name(i % b.order()) + ")";
      for (std::size_t j = 0; j < n; ++j)
        table[i][j] = a.mul(i / b.order(), j / b.order()) * b.order() + b.mul(i % b.order(), j % b.order());
    }
    return from_table(std::move(names), std::move(table));
  }

  std::size_t order() const { return names_.size(); }
  std::size_t identity() const { return identity_; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inv(std::size_t a) const { return inverse_[a]; }
  const std::string& name(std::size_t a) const { return names_.at(a); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }

  std::size_t power(std::size_t a, long long k) const {
    std::size_t base = k < 0 ? inv(a) : a;
    std::size_t r = identity_;
    for (long long i = 0; i < (k < 0 ? -k : k); ++i) r = mul(r, base);
    return r;
  }

  std::size_t element_order(std::size_t a) const {
    std::size_t k = 1;
    for (std::size_t x = a; x != identity_; x = mul(x, a)) ++k;
    return k;
  }

  bool is_abelian() const {
    for (std::size_t a = 0; a < order(); ++a)
      for (std::size_t b = 0; b < order(); ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  /// Greedy generating set: add the smallest element outside the subgroup
  /// generated so far.
  std::vector<std::size_t> generators() const {
    std::vector<std::size_t> gens;
    std::vector<bool> in(order(), false);
    in[identity_] = true;
    for (std::size_t a = 0; a < order(); ++a) {
      if (in[a]) continue;
      gens.push_back(a);
      in = closure(gens);
    }
    return gens;
  }

  std::vector<bool> closure(const std::vector<std::size_t>& gens) const {
    std::vector<bool> in(order(), false);
    std::queue<std::size_t> todo;
    in[identity_] = true;
    todo.push(identity_);
    while (!todo.empty()) {
      auto x = todo.front();
      todo.pop();
      for (auto g : gens)
        for (auto y : {mul(x, g), mul(x, inv(g))})
          if (!in[y]) {
            in[y] = true;
            todo.push(y);
          }
    }
    return in;
  }

 private:
  explicit FiniteGroup(int) {}

  std::vector<std::string> names_;
  std::vector<std::vector<std::size_t>> table_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> inverse_;
};

inline bool is_homomorphism(const FiniteGroup& a, const FiniteGroup& b, const std::vector<std::size_t>& f) {
  if (f.size() != a.order()) return false;
  for (auto v : f)
    if (v >= b.order()) return false;
  for (std::size_t x = 0; x < a.order(); ++x)
    for (std::size_t y = 0; y < a.order(); ++y)
      if (f[a.mul(x, y)] != b.mul(f[x], f[y])) return false;
  return true;
}

inline bool is_isomorphism(const FiniteGroup& a, const FiniteGroup& b, const std::vector<std::size_t>& f) {
  if (a.order() != b.order() || !is_homomorphism(a, b, f)) return false;
  std::vector<bool> hit(b.order(), false);
  for (auto v : f) hit[v] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool h) { return h; });
}

/// Backtracking search over images of a generating set; small groups only.
inline std::optional<std::vector<std::size_t>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order()) return std::nullopt;
  const auto gens = a.generators();
  std::vector<std::size_t> images(gens.size());
  std::optional<std::vector<std::size_t>> found;

  auto extend = [&]() -> std::optional<std::vector<std::size_t>> {
    const std::size_t none = b.order();
    std::vector<std::size_t> f(a.order(), none);
    f[a.identity()] = b.identity();
    std::queue<std::size_t> todo;
    todo.push(a.identity());
    while (!todo.empty()) {
      auto x = todo.front();
      todo.pop();
      for (std::size_t i = 0; i < gens.size(); ++i) {
        auto y = a.mul(x, gens[i]);
        auto fy = b.mul(f[x], images[i]);
        if (f[y] == none) {
          f[y] = fy;
          todo.push(y);
        } else if (f[y] != fy) {
          return std::nullopt;
        }
      }
    }
    if (!is_isomorphism(a, b, f)) return std::nullopt;
    return f;
  };

  auto search = [&](auto&& self, std::size_t i) -> void {
    if (found) return;
    if (i == gens.size()) {
      found = extend();
      return;
    }
    for (std::size_t c = 0; c < b.order() && !found; ++c) {
      if (b.element_order(c) != a.element_order(gens[i])) continue;
      images[i] = c;
      self(self, i + 1);
    }
  };
  search(search, 0);
  return found;
}

}  // namespace gpdkit

#endif  // GPDKIT_GROUP_HPP

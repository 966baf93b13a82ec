#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qncert/element.hpp"
#include "qncert/errors.hpp"

namespace qncert {

/// Deterministic core edge-labeled graph canonically representing a finitely
/// generated subgroup of a free group (a folded Stallings automaton).
///
/// Vertices are numbered in breadth-first order from the base vertex 0,
/// exploring edges in letter-token order, so two subgroups are equal exactly
/// when their transition tables are equal. Tokens encode darts: token
/// 2*(i-1) is generator i read forward, 2*(i-1)+1 is generator i read
/// backward.
class FoldedAutomaton {
public:
  FoldedAutomaton() = default;

  static FoldedAutomaton from_generators(int rank,
                                         std::span<const FreeWord> gens) {
    Builder b(rank);
    for (const auto& w : gens) b.add_loop(w.letters);
    b.fold();
    FoldedAutomaton fa = b.extract_core();
    return fa;
  }

  int rank() const { return rank_; }
  int vertex_count() const { return static_cast<int>(next_.size()); }
  static constexpr int kBase = 0;

  /// Transition along one dart; -1 when the edge is absent.
  int step(int v, int token) const { return next_[v][token]; }

  int step_letter(int v, std::int32_t letter) const {
    return next_[v][letter_token(letter)];
  }

  /// Follows `w` from the base as far as possible. Returns the vertex
  /// reached and the index of the first unread letter (== w.size() when the
  /// whole word was read).
  std::pair<int, std::size_t> walk(const std::vector<std::int32_t>& w) const {
    int v = kBase;
    std::size_t i = 0;
    for (; i < w.size(); ++i) {
      const int nv = step_letter(v, w[i]);
      if (nv < 0) break;
      v = nv;
    }
    return {v, i};
  }

  /// Exact subgroup membership: the whole word must be readable from the
  /// base and must end at the base.
  bool accepts(const std::vector<std::int32_t>& w) const {
    auto [v, i] = walk(w);
    return i == w.size() && v == kBase;
  }

  /// True when every vertex carries every dart label; for a core automaton
  /// this happens exactly when the subgroup has finite index, which then
  /// equals the vertex count.
  bool is_complete() const {
    for (const auto& row : next_)
      for (int t : row)
        if (t < 0) return false;
    return true;
  }

  /// Distance from `v` to the base (the automaton is connected).
  int distance_to_base(int v) const { return dist_[v]; }

  /// Letters of the token-order-least geodesic word from `v` to the base.
  std::vector<std::int32_t> least_geodesic_to_base(int v) const {
    std::vector<std::int32_t> out;
    while (v != kBase) {
      for (int t = 0; t < 2 * rank_; ++t) {
        const int nv = next_[v][t];
        if (nv >= 0 && dist_[nv] == dist_[v] - 1) {
          out.push_back(token_letter(t));
          v = nv;
          break;
        }
      }
    }
    return out;
  }

  /// Fiber product restricted to the base component and cored: accepts the
  /// intersection of the two subgroups. Both automata must share the rank.
  static FoldedAutomaton fiber_product(const FoldedAutomaton& a,
                                       const FoldedAutomaton& b) {
    if (a.rank_ != b.rank_)
      throw BackendMismatchError("fiber product over different free ranks");
    const int r = a.rank_;
    std::map<std::pair<int, int>, int> index;
    std::vector<std::pair<int, int>> order;
    index[{kBase, kBase}] = 0;
    order.push_back({kBase, kBase});
    std::vector<std::vector<int>> next;
    next.push_back(std::vector<int>(2 * r, -1));
    for (std::size_t qi = 0; qi < order.size(); ++qi) {
      const auto [u1, u2] = order[qi];
      for (int t = 0; t < 2 * r; ++t) {
        const int v1 = a.next_[u1][t];
        const int v2 = b.next_[u2][t];
        if (v1 < 0 || v2 < 0) continue;
        auto it = index.find({v1, v2});
        int vi;
        if (it == index.end()) {
          vi = static_cast<int>(order.size());
          index[{v1, v2}] = vi;
          order.push_back({v1, v2});
          next.push_back(std::vector<int>(2 * r, -1));
        } else {
          vi = it->second;
        }
        next[qi][t] = vi;
      }
    }
    FoldedAutomaton out;
    out.rank_ = r;
    out.next_ = std::move(next);
    out.core_and_canonicalize();
    return out;
  }

  /// A free basis of the accepted subgroup, one word per edge outside the
  /// breadth-first spanning tree, in canonical dart order.
  std::vector<FreeWord> basis() const {
    const auto tree = spanning_tree();
    std::vector<FreeWord> out;
    for (int u = 0; u < vertex_count(); ++u) {
      for (int t = 0; t < 2 * rank_; t += 2) {  // positive darts only
        const int v = next_[u][t];
        if (v < 0 || tree.is_tree_dart(u, t)) continue;
        std::vector<std::int32_t> w = tree.path_from_base(u);
        w.push_back(token_letter(t));
        std::vector<std::int32_t> back = tree.path_from_base(v);
        for (auto it = back.rbegin(); it != back.rend(); ++it) w.push_back(-*it);
        out.push_back(FreeWord{free_reduce(w)});
      }
    }
    return out;
  }

  /// Rewrites a word of the subgroup in the basis() letters, returning a
  /// reduced word over a free group of rank basis().size(). The word must
  /// be accepted.
  FreeWord rewrite_in_basis(const std::vector<std::int32_t>& w) const {
    const auto tree = spanning_tree();
    std::vector<std::int32_t> out;
    int v = kBase;
    for (std::int32_t l : w) {
      const int t = letter_token(l);
      const int nv = next_[v][t];
      if (nv < 0) throw PreconditionError("word leaves the automaton during rewriting");
      if (!tree.is_tree_dart(v, t)) {
        // orient the edge by its positive dart
        if (t % 2 == 0)
          out.push_back(tree.basis_index(v, t) + 1);
        else
          out.push_back(-(tree.basis_index(nv, t ^ 1) + 1));
      }
      v = nv;
    }
    if (v != kBase)
      throw PreconditionError("word does not return to the base during rewriting");
    return FreeWord{free_reduce(out)};
  }

  friend bool operator==(const FoldedAutomaton& a, const FoldedAutomaton& b) {
    return a.rank_ == b.rank_ && a.next_ == b.next_;
  }

private:
  static std::int32_t token_letter(int token) {
    const int idx = token / 2 + 1;
    return token % 2 == 0 ? idx : -idx;
  }

  struct Builder {
    int rank;
    // adjacency as dart lists: adj[v] = list of (letter, target)
    std::vector<std::vector<std::pair<std::int32_t, int>>> adj;
    std::vector<int> parent;  // union-find

    explicit Builder(int r) : rank(r) {
      adj.emplace_back();  // base
      parent.push_back(0);
    }

    int find(int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    }

    int new_vertex() {
      adj.emplace_back();
      parent.push_back(static_cast<int>(parent.size()));
      return static_cast<int>(adj.size()) - 1;
    }

    void add_edge(int u, std::int32_t l, int v) {
      adj[u].push_back({l, v});
      adj[v].push_back({-l, u});
    }

    void add_loop(const std::vector<std::int32_t>& w) {
      if (w.empty()) return;
      int prev = 0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        const int nxt = (i + 1 == w.size()) ? 0 : new_vertex();
        add_edge(prev, w[i], nxt);
        prev = nxt;
      }
    }

    // Repeatedly merge targets of same-labeled darts until deterministic.
    void fold() {
      bool changed = true;
      while (changed) {
        changed = false;
        for (int v = 0; v < static_cast<int>(adj.size()) && !changed; ++v) {
          if (find(v) != v) continue;
          std::map<std::int32_t, int> first;
          for (auto& [l, t] : adj[v]) {
            const int tt = find(t);
            auto it = first.find(l);
            if (it == first.end()) {
              first[l] = tt;
            } else if (it->second != tt) {
              merge(it->second, tt);
              changed = true;
              break;
            }
          }
        }
      }
    }

    void merge(int a, int b) {
      a = find(a);
      b = find(b);
      if (a == b) return;
      // keep the base (vertex 0) as its own representative
      if (b == find(0)) std::swap(a, b);
      parent[b] = a;
      auto moved = std::move(adj[b]);
      adj[b].clear();
      for (auto& d : moved) adj[a].push_back(d);
    }

    FoldedAutomaton extract_core() {
      // collapse to union-find roots with deduplicated darts
      std::map<std::pair<int, std::int32_t>, int> darts;
      for (int v = 0; v < static_cast<int>(adj.size()); ++v) {
        if (find(v) != v) continue;
        for (auto& [l, t] : adj[v]) darts[{v, l}] = find(t);
      }
      // iteratively prune non-base vertices of dart-degree <= 1
      std::map<int, int> degree;
      for (auto& [key, t] : darts) degree[key.first]++;
      bool pruned = true;
      while (pruned) {
        pruned = false;
        for (auto it = degree.begin(); it != degree.end(); ++it) {
          const int v = it->first;
          if (v == find(0) || it->second > 1) continue;
          // remove v and its single dart (plus the reverse dart)
          for (auto dit = darts.begin(); dit != darts.end();) {
            if (dit->first.first == v) {
              const int u = dit->second;
              const std::int32_t l = dit->first.second;
              darts.erase({u, -l});
              if (--degree[u] == 0 && u != find(0)) degree.erase(u);
              dit = darts.erase(dit);
            } else {
              ++dit;
            }
          }
          degree.erase(v);
          pruned = true;
          break;
        }
      }
      // build table over surviving vertices
      FoldedAutomaton fa;
      fa.rank_ = rank;
      std::map<int, int> id;
      const int base = find(0);
      id[base] = 0;
      fa.next_.push_back(std::vector<int>(2 * rank, -1));
      std::vector<int> order{base};
      for (std::size_t qi = 0; qi < order.size(); ++qi) {
        const int v = order[qi];
        for (int t = 0; t < 2 * rank; ++t) {
          auto it = darts.find({v, token_letter(t)});
          if (it == darts.end()) continue;
          const int w = it->second;
          if (!id.count(w)) {
            id[w] = static_cast<int>(order.size());
            order.push_back(w);
            fa.next_.push_back(std::vector<int>(2 * rank, -1));
          }
          fa.next_[qi][t] = id[w];
        }
      }
      fa.compute_distances();
      return fa;
    }
  };

  /// Re-prunes and renumbers this automaton in canonical BFS order.
  void core_and_canonicalize() {
    const int n = vertex_count();
    std::vector<int> degree(n, 0);
    for (int v = 0; v < n; ++v)
      for (int t = 0; t < 2 * rank_; ++t)
        if (next_[v][t] >= 0) degree[v]++;
    std::vector<bool> dead(n, false);
    bool pruned = true;
    while (pruned) {
      pruned = false;
      for (int v = 1; v < n; ++v) {
        if (dead[v] || degree[v] > 1) continue;
        dead[v] = true;
        for (int t = 0; t < 2 * rank_; ++t) {
          const int u = next_[v][t];
          if (u < 0) continue;
          next_[v][t] = -1;
          next_[u][t ^ 1] = -1;
          degree[u]--;
          degree[v]--;
        }
        pruned = true;
      }
    }
    // canonical renumbering by BFS in token order
    std::vector<int> id(n, -1);
    std::vector<int> order;
    id[kBase] = 0;
    order.push_back(kBase);
    std::vector<std::vector<int>> renum;
    renum.push_back(std::vector<int>(2 * rank_, -1));
    for (std::size_t qi = 0; qi < order.size(); ++qi) {
      const int v = order[qi];
      for (int t = 0; t < 2 * rank_; ++t) {
        const int w = next_[v][t];
        if (w < 0 || dead[w]) continue;
        if (id[w] < 0) {
          id[w] = static_cast<int>(order.size());
          order.push_back(w);
          renum.push_back(std::vector<int>(2 * rank_, -1));
        }
        renum[id[v]][t] = id[w];
      }
    }
    next_ = std::move(renum);
    compute_distances();
  }

  void compute_distances() {
    dist_.assign(vertex_count(), -1);
    dist_[kBase] = 0;
    std::vector<int> q{kBase};
    for (std::size_t qi = 0; qi < q.size(); ++qi) {
      const int v = q[qi];
      for (int t = 0; t < 2 * rank_; ++t) {
        const int w = next_[v][t];
        if (w >= 0 && dist_[w] < 0) {
          dist_[w] = dist_[v] + 1;
          q.push_back(w);
        }
      }
    }
  }

  struct SpanningTree {
    const FoldedAutomaton* fa;
    std::vector<int> parent;        // parent vertex, -1 at base
    std::vector<std::int32_t> via;  // letter read from parent to vertex
    std::map<std::pair<int, int>, int> nontree_basis;  // positive dart -> index

    bool is_tree_dart(int u, int t) const {
      const int v = fa->next_[u][t];
      if (v < 0) return false;
      return (parent[v] == u && letter_token(via[v]) == t) ||
             (parent[u] == v && letter_token(-via[u]) == t);
    }

    int basis_index(int u, int t) const {
      auto it = nontree_basis.find({u, t});
      if (it == nontree_basis.end())
        throw Error("internal: dart has no basis index");
      return it->second;
    }

    std::vector<std::int32_t> path_from_base(int v) const {
      std::vector<std::int32_t> rev;
      while (parent[v] >= 0) {
        rev.push_back(via[v]);
        v = parent[v];
      }
      return {rev.rbegin(), rev.rend()};
    }
  };

  SpanningTree spanning_tree() const {
    SpanningTree st;
    st.fa = this;
    st.parent.assign(vertex_count(), -1);
    st.via.assign(vertex_count(), 0);
    std::vector<bool> seen(vertex_count(), false);
    seen[kBase] = true;
    std::vector<int> q{kBase};
    for (std::size_t qi = 0; qi < q.size(); ++qi) {
      const int v = q[qi];
      for (int t = 0; t < 2 * rank_; ++t) {
        const int w = next_[v][t];
        if (w < 0 || seen[w]) continue;
        seen[w] = true;
        st.parent[w] = v;
        st.via[w] = token_letter(t);
        q.push_back(w);
      }
    }
    int idx = 0;
    for (int u = 0; u < vertex_count(); ++u)
      for (int t = 0; t < 2 * rank_; t += 2)
        if (next_[u][t] >= 0 && !st.is_tree_dart(u, t))
          st.nontree_basis[{u, t}] = idx++;
    return st;
  }

  int rank_ = 0;
  std::vector<std::vector<int>> next_;
  std::vector<int> dist_;
};

}  // namespace qncert

#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcs/arith.hpp"
#include "pcs/chain.hpp"
#include "pcs/errors.hpp"
#include "pcs/homology.hpp"
#include "pcs/precubical.hpp"

namespace pcs {

/// A cellular directed path: a start vertex and edges chained head to
/// tail. Empty edge list = the constant path at start.
struct EdgePath {
  const PrecubicalSet* base = nullptr;
  CubeId start{0, 0};
  std::vector<CubeId> edges;

  bool operator==(const EdgePath& o) const {
    return start == o.start && edges == o.edges;
  }
};

inline CubeId path_end(const EdgePath& p) {
  if (p.edges.empty()) return p.start;
  return p.base->face(p.edges.back(), Sign::Plus, 1);
}

/// Checks the chaining invariant; returns the first offending position
/// (0 = start vertex vs first edge) or nullopt when well formed.
inline std::optional<std::size_t> path_defect(const EdgePath& p) {
  if (!p.base || !p.base->contains(p.start) || p.start.dim != 0) return 0;
  CubeId at = p.start;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (!p.base->contains(p.edges[i]) || p.edges[i].dim != 1) return i;
    if (p.base->face(p.edges[i], Sign::Minus, 1) != at) return i;
    at = p.base->face(p.edges[i], Sign::Plus, 1);
  }
  return std::nullopt;
}

inline void require_path(const EdgePath& p, const char* who) {
  if (auto defect = path_defect(p))
    throw DomainError(std::string(who) + ": edge path breaks at position " +
                      std::to_string(*defect));
}

inline bool is_loop(const EdgePath& p) { return path_end(p) == p.start; }

inline EdgePath concatenate(const EdgePath& a, const EdgePath& b) {
  require_path(a, "concatenate");
  require_path(b, "concatenate");
  if (a.base != b.base) throw DomainError("concatenate: paths live on different instances");
  if (path_end(a) != b.start) throw DomainError("concatenate: endpoint mismatch");
  EdgePath out = a;
  out.edges.insert(out.edges.end(), b.edges.begin(), b.edges.end());
  return out;
}

// ---------------------------------------------------------------------------
// Reachability

/// Reflexive-transitive closure of the directed edge relation on
/// vertices, stored densely.
struct VertexPreorder {
  int vertex_count = 0;
  std::vector<char> table;  // row-major [u * n + v]

  bool reaches(int u, int v) const { return table[static_cast<std::size_t>(u) * vertex_count + v] != 0; }

  std::vector<std::pair<int, int>> pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < vertex_count; ++u)
      for (int v = 0; v < vertex_count; ++v)
        if (reaches(u, v)) out.push_back({u, v});
    return out;
  }
};

inline VertexPreorder reachability(const PrecubicalSet& x) {
  int n = x.count(0);
  VertexPreorder r;
  r.vertex_count = n;
  r.table.assign(static_cast<std::size_t>(n) * n, 0);

  std::vector<std::vector<int>> out_edges(n);
  for (int e = 0; e < x.count(1); ++e) {
    CubeId edge{1, e};
    out_edges[x.face(edge, Sign::Minus, 1).index].push_back(
        x.face(edge, Sign::Plus, 1).index);
  }
  for (int s = 0; s < n; ++s) {
    std::vector<int> stack = {s};
    r.table[static_cast<std::size_t>(s) * n + s] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : out_edges[u]) {
        char& cell = r.table[static_cast<std::size_t>(s) * n + v];
        if (!cell) {
          cell = 1;
          stack.push_back(v);
        }
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Corner chains

/// Staircase from corner `from` up to corner `to` inside the standard
/// cube (pass standard_cube(n)): flips one coordinate 0→1 at a time,
/// lowest axis first. Length = Hamming distance.
inline EdgePath corner_chain(const PrecubicalSet& cube_model, std::span<const int> from,
                             std::span<const int> to) {
  std::size_t n = from.size();
  if (to.size() != n) throw DomainError("corner_chain: corner lengths differ");
  for (std::size_t i = 0; i < n; ++i) {
    if ((from[i] != 0 && from[i] != 1) || (to[i] != 0 && to[i] != 1))
      throw DomainError("corner_chain: corners must be 0/1 vectors");
    if (from[i] > to[i])
      throw DomainError("corner_chain: corners not ordered at axis " + std::to_string(i + 1));
  }

  auto cell = [&](const std::string& word) {
    auto c = cube_model.find(word.empty() ? "pt" : word);
    if (!c)
      throw DomainError("corner_chain: instance is not the standard cube (missing cell '" +
                        word + "')");
    return *c;
  };

  std::string word(n, '0');
  for (std::size_t i = 0; i < n; ++i) word[i] = from[i] ? '1' : '0';

  EdgePath path;
  path.base = &cube_model;
  path.start = cell(word);
  for (std::size_t i = 0; i < n; ++i) {
    if (from[i] == 0 && to[i] == 1) {
      std::string edge_word = word;
      edge_word[i] = 'x';
      path.edges.push_back(cell(edge_word));
      word[i] = '1';
    }
  }
  return path;
}

// ---------------------------------------------------------------------------
// Loop invariants

/// c(γ): edge traversal counts. Always a nonnegative cycle.
inline Chain cycle_chain(const EdgePath& gamma) {
  require_path(gamma, "cycle_chain");
  if (!is_loop(gamma)) throw PreconditionError("cycle_chain: path is not a loop");
  Chain c(1);
  for (CubeId e : gamma.edges) c.add(e, 1);
  return c;
}

/// Traversal count on the one-vertex, one-edge circle instance.
inline long long degree(const PrecubicalSet& x, const EdgePath& gamma) {
  bool is_circle = x.count(0) == 1 && x.count(1) == 1 && x.total_cells() == 2;
  if (!is_circle)
    throw DomainError("degree: base instance must be the one-vertex, one-edge circle");
  require_path(gamma, "degree");
  if (!is_loop(gamma)) throw PreconditionError("degree: path is not a loop");
  return static_cast<long long>(gamma.edges.size());
}

// ---------------------------------------------------------------------------
// Directed cycle detection

struct DirectedCycleWitness {
  bool found = false;
  EdgePath cycle;  // shortest; empty when !found
};

/// Shortest nonempty directed edge loop, if any: breadth-first from
/// every vertex, closing on the first edge back into the source. Ties
/// break toward lower vertex index, then the BFS edge order.
inline DirectedCycleWitness has_directed_cycle(const PrecubicalSet& x) {
  int n = x.count(0);
  std::vector<std::vector<std::pair<int, int>>> out_edges(n);  // (edge, head)
  for (int e = 0; e < x.count(1); ++e) {
    CubeId edge{1, e};
    out_edges[x.face(edge, Sign::Minus, 1).index].push_back(
        {e, x.face(edge, Sign::Plus, 1).index});
  }

  DirectedCycleWitness best;
  std::size_t best_len = 0;
  for (int s = 0; s < n; ++s) {
    std::vector<int> dist(n, -1), prev_edge(n, -1), prev_vertex(n, -1);
    std::vector<int> queue = {s};
    dist[s] = 0;
    int closing_edge = -1, closing_tail = -1;
    for (std::size_t qi = 0; qi < queue.size() && closing_edge < 0; ++qi) {
      int u = queue[qi];
      if (best.found && static_cast<std::size_t>(dist[u]) + 1 >= best_len) break;
      for (auto [e, v] : out_edges[u]) {
        if (v == s) {
          closing_edge = e;
          closing_tail = u;
          break;
        }
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          prev_edge[v] = e;
          prev_vertex[v] = u;
          queue.push_back(v);
        }
      }
    }
    if (closing_edge < 0) continue;
    std::vector<CubeId> edges = {CubeId{1, closing_edge}};
    for (int v = closing_tail; v != s; v = prev_vertex[v])
      edges.push_back(CubeId{1, prev_edge[v]});
    std::reverse(edges.begin(), edges.end());
    if (!best.found || edges.size() < best_len) {
      best.found = true;
      best_len = edges.size();
      best.cycle = EdgePath{&x, CubeId{0, s}, std::move(edges)};
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Essential loops

struct IsEssentialResult {
  bool essential = false;
  Chain certificate{1};  // c(γ); for essential loops, not in im ∂₂
};

/// A directed loop is essential exactly when it is nonempty; the
/// homology class of c(γ) certifies this, and its vanishing for a
/// nonempty loop would mean a bug in the chain machinery.
inline IsEssentialResult is_essential(const PrecubicalSet& x, const EdgePath& gamma) {
  require_path(gamma, "is_essential");
  if (!is_loop(gamma)) throw PreconditionError("is_essential: path is not a loop");
  IsEssentialResult r;
  r.certificate = cycle_chain(gamma);
  r.essential = !gamma.edges.empty();
  if (r.essential && is_nullhomologous(x, r.certificate))
    throw Error("is_essential: nonzero nonnegative cycle reported nullhomologous; "
                "this contradicts the directed homology lemma and means the chain "
                "machinery is broken");
  return r;
}

}  // namespace pcs

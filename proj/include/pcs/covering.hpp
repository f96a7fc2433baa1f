#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pcs/errors.hpp"
#include "pcs/paths.hpp"
#include "pcs/precubical.hpp"

namespace pcs {

// ---------------------------------------------------------------------------
// Walks: edge paths that may traverse edges against their direction.

/// Step encoding: edge_index * 2 for a forward traversal, + 1 for a
/// backward one. Integer order on steps = lexicographic on
/// (edge index, direction) with forward first, which is exactly the
/// tie-break order canonical forms use.
struct Walk {
  int start_vertex = 0;  // vertex roster index
  std::vector<int> steps;

  bool operator==(const Walk&) const = default;
};

inline int step_forward(int edge) { return edge * 2; }
inline int step_backward(int edge) { return edge * 2 + 1; }
inline int step_edge(int step) { return step / 2; }
inline bool step_is_forward(int step) { return (step & 1) == 0; }
inline int step_inverse(int step) { return step ^ 1; }

/// End vertex of the walk; throws when a step does not chain.
inline int walk_end(const PrecubicalSet& x, const Walk& w) {
  if (w.start_vertex < 0 || w.start_vertex >= x.count(0))
    throw DomainError("walk: start vertex out of range");
  int at = w.start_vertex;
  for (std::size_t i = 0; i < w.steps.size(); ++i) {
    int s = w.steps[i];
    if (s < 0 || step_edge(s) >= x.count(1))
      throw DomainError("walk: step " + std::to_string(i + 1) + " names no edge");
    CubeId edge{1, step_edge(s)};
    int tail = x.face(edge, Sign::Minus, 1).index;
    int head = x.face(edge, Sign::Plus, 1).index;
    if (step_is_forward(s)) {
      if (tail != at)
        throw DomainError("walk: step " + std::to_string(i + 1) + " does not chain");
      at = head;
    } else {
      if (head != at)
        throw DomainError("walk: step " + std::to_string(i + 1) + " does not chain");
      at = tail;
    }
  }
  return at;
}

inline Walk walk_of_path(const EdgePath& p) {
  require_path(p, "walk_of_path");
  Walk w;
  w.start_vertex = p.start.index;
  for (CubeId e : p.edges) w.steps.push_back(step_forward(e.index));
  return w;
}

// ---------------------------------------------------------------------------
// Square relations

/// The two monotone boundary paths of a square: left = bottom then
/// right edge, right = left then top edge, both running from the (0,0)
/// corner to the (1,1) corner.
struct SquareRelation {
  CubeId square;
  EdgePath left;   // d_{-2}θ then d_{+1}θ
  EdgePath right;  // d_{-1}θ then d_{+2}θ
};

inline std::vector<SquareRelation> square_relations(const PrecubicalSet& x) {
  std::vector<SquareRelation> rels;
  for (int q = 0; q < x.count(2); ++q) {
    CubeId theta{2, q};
    static constexpr int kLow[2] = {0, 0};
    static constexpr int kHigh[2] = {1, 1};
    CubeId lo = corner(x, theta, kLow);
    CubeId hi = corner(x, theta, kHigh);

    SquareRelation r;
    r.square = theta;
    r.left = EdgePath{&x, lo, {x.face(theta, Sign::Minus, 2), x.face(theta, Sign::Plus, 1)}};
    r.right = EdgePath{&x, lo, {x.face(theta, Sign::Minus, 1), x.face(theta, Sign::Plus, 2)}};
    for (const EdgePath* side : {&r.left, &r.right}) {
      require_path(*side, "square_relations");
      if (path_end(*side) != hi)
        throw Error("square_relations: boundary path misses the far corner of '" +
                    x.name(theta) + "'");
    }
    rels.push_back(std::move(r));
  }
  return rels;
}

// ---------------------------------------------------------------------------
// Budgeted word-problem normalization

/// Outcome of normalize(): either the canonical representative of the
/// walk's equivalence class, or UNKNOWN when the class was not
/// exhausted within budget. UNKNOWN is never silently merged away.
struct NormalizeOutcome {
  bool known = false;
  Walk canonical;  // meaningful only when known; freely reduced
  unsigned long long rewrites_used = 0;
};

namespace covering_detail {

using RuleMap = std::map<std::pair<int, int>, std::vector<std::pair<int, int>>>;

/// Eight directed two-step rewrites per square: the four corner-to-
/// corner fragment identities of its boundary, each in both directions.
inline RuleMap swap_rules(const std::vector<SquareRelation>& rels) {
  RuleMap rules;
  std::set<std::tuple<int, int, int, int>> dedupe;
  auto add = [&](std::pair<int, int> from, std::pair<int, int> to) {
    if (dedupe.insert({from.first, from.second, to.first, to.second}).second)
      rules[from].push_back(to);
  };
  for (const SquareRelation& r : rels) {
    int b = step_forward(r.left.edges[0].index);   // bottom
    int rt = step_forward(r.left.edges[1].index);  // right
    int l = step_forward(r.right.edges[0].index);  // left
    int t = step_forward(r.right.edges[1].index);  // top
    auto inv = step_inverse;
    std::pair<std::pair<int, int>, std::pair<int, int>> identities[4] = {
        {{b, rt}, {l, t}},                      // (0,0) -> (1,1)
        {{inv(rt), inv(b)}, {inv(t), inv(l)}},  // (1,1) -> (0,0)
        {{inv(b), l}, {rt, inv(t)}},            // (1,0) -> (0,1)
        {{inv(l), b}, {t, inv(rt)}},            // (0,1) -> (1,0)
    };
    for (const auto& [u, v] : identities) {
      add(u, v);
      add(v, u);
    }
  }
  return rules;
}

inline bool shortlex_less(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace covering_detail

/// Breadth-first saturation of the walk's class under free reduction
/// and square-relation swaps; canonical form = shortlex-least member
/// (shortest, then lexicographic over (edge, direction) steps). Pure
/// lexicographic order would not be class-invariant: a longer word can
/// compare below the reduced form of its own class. Each generated
/// neighbor counts one rewrite against the budget; exceeding it yields
/// UNKNOWN. Closure is finite, since swaps preserve length and
/// reductions shorten.
inline NormalizeOutcome normalize(const PrecubicalSet& x,
                                  const std::vector<SquareRelation>& relations, const Walk& w,
                                  unsigned long long budget) {
  if (budget == 0) throw DomainError("normalize: budget must be positive");
  walk_end(x, w);  // validates chaining

  covering_detail::RuleMap rules = covering_detail::swap_rules(relations);
  NormalizeOutcome out;

  std::set<std::vector<int>> seen;
  std::deque<std::vector<int>> queue;
  seen.insert(w.steps);
  queue.push_back(w.steps);

  auto emit = [&](std::vector<int>&& cand) {
    ++out.rewrites_used;
    if (out.rewrites_used > budget) return false;
    if (seen.insert(cand).second) queue.push_back(std::move(cand));
    return true;
  };

  while (!queue.empty()) {
    std::vector<int> cur = std::move(queue.front());
    queue.pop_front();
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      if (cur[i + 1] == step_inverse(cur[i])) {
        std::vector<int> cand;
        cand.reserve(cur.size() - 2);
        cand.insert(cand.end(), cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(i));
        cand.insert(cand.end(), cur.begin() + static_cast<std::ptrdiff_t>(i) + 2, cur.end());
        if (!emit(std::move(cand))) return out;
      }
      auto it = rules.find({cur[i], cur[i + 1]});
      if (it == rules.end()) continue;
      for (auto [s, t] : it->second) {
        std::vector<int> cand = cur;
        cand[i] = s;
        cand[i + 1] = t;
        if (!emit(std::move(cand))) return out;
      }
    }
  }

  out.known = true;
  out.canonical.start_vertex = w.start_vertex;
  out.canonical.steps = *seen.begin();
  for (const std::vector<int>& member : seen)
    if (covering_detail::shortlex_less(member, out.canonical.steps))
      out.canonical.steps = member;
  for (std::size_t i = 0; i + 1 < out.canonical.steps.size(); ++i)
    if (out.canonical.steps[i + 1] == step_inverse(out.canonical.steps[i]))
      throw Error("normalize: canonical form is not reduced; closure logic is broken");
  return out;
}

// ---------------------------------------------------------------------------
// Cover balls

struct CoverNode {
  Walk canonical;  // class representative; root has the empty walk
  int vertex = 0;  // end vertex in the base
  int layer = 0;   // = |canonical.steps| = breadth-first distance
};

struct BudgetReport {
  unsigned long long normalize_calls = 0;
  unsigned long long total_rewrites = 0;
  unsigned long long max_rewrites = 0;
  unsigned long long unknown_count = 0;
};

/// Radius-bounded window of the universal cover of the 2-skeleton:
/// nodes are walk classes from the basepoint (at most `radius` steps),
/// darts are lifted base edges. `certified` means every normalization
/// finished within budget, so node identities are exact.
struct CoverBall {
  const PrecubicalSet* base = nullptr;
  int basepoint = 0;
  int radius = 0;
  unsigned long long budget = 0;
  std::vector<CoverNode> nodes;          // node id = index, 0 = root
  std::vector<std::map<int, int>> darts;  // darts[node][base edge] = node
  BudgetReport budget_report;
  bool certified = false;

  bool is_frontier(int node) const { return nodes[node].layer == radius; }

  int nodes_at_layer(int layer) const {
    int n = 0;
    for (const CoverNode& node : nodes) n += node.layer == layer ? 1 : 0;
    return n;
  }

  std::size_t dart_count() const {
    std::size_t n = 0;
    for (const auto& m : darts) n += m.size();
    return n;
  }
};

inline CoverBall build_cover_ball(const PrecubicalSet& x, CubeId basepoint, int radius,
                                  unsigned long long budget) {
  if (basepoint.dim != 0 || !x.contains(basepoint))
    throw DomainError("build_cover_ball: basepoint must be a vertex of the instance");
  if (radius < 0) throw DomainError("build_cover_ball: negative radius");
  if (budget == 0) throw DomainError("build_cover_ball: budget must be positive");

  int n0 = x.count(0);
  int n1 = x.count(1);
  std::vector<int> tail(n1), head(n1);
  std::vector<std::vector<int>> out_edges(n0), in_edges(n0);
  for (int e = 0; e < n1; ++e) {
    CubeId edge{1, e};
    tail[e] = x.face(edge, Sign::Minus, 1).index;
    head[e] = x.face(edge, Sign::Plus, 1).index;
    out_edges[tail[e]].push_back(e);
    in_edges[head[e]].push_back(e);
  }

  {  // the cover of a disconnected space would silently miss components
    std::vector<char> seen(n0, 0);
    std::vector<int> stack = {basepoint.index};
    seen[basepoint.index] = 1;
    int reached = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int e : out_edges[v])
        if (!seen[head[e]]) seen[head[e]] = 1, ++reached, stack.push_back(head[e]);
      for (int e : in_edges[v])
        if (!seen[tail[e]]) seen[tail[e]] = 1, ++reached, stack.push_back(tail[e]);
    }
    if (reached != n0)
      throw DomainError("build_cover_ball: 1-skeleton is disconnected (" +
                        std::to_string(reached) + " of " + std::to_string(n0) +
                        " vertices reachable from the basepoint)");
  }

  std::vector<SquareRelation> relations = square_relations(x);
  CoverBall ball;
  ball.base = &x;
  ball.basepoint = basepoint.index;
  ball.radius = radius;
  ball.budget = budget;

  auto normalize_tracked = [&](const Walk& w) {
    NormalizeOutcome o = normalize(x, relations, w, budget);
    ++ball.budget_report.normalize_calls;
    ball.budget_report.total_rewrites += o.rewrites_used;
    ball.budget_report.max_rewrites = std::max(ball.budget_report.max_rewrites, o.rewrites_used);
    if (!o.known) ++ball.budget_report.unknown_count;
    return o;
  };

  std::map<std::vector<int>, int> node_of;  // canonical steps -> node id
  ball.nodes.push_back(CoverNode{Walk{basepoint.index, {}}, basepoint.index, 0});
  node_of.emplace(std::vector<int>{}, 0);

  // Node discovery, breadth-first; extensions only from layers < radius.
  for (std::size_t qi = 0; qi < ball.nodes.size(); ++qi) {
    // nodes are only appended, so indexing stays valid
    CoverNode node = ball.nodes[qi];
    if (node.layer >= radius) continue;
    std::vector<int> extensions;
    for (int e : out_edges[node.vertex]) extensions.push_back(step_forward(e));
    for (int e : in_edges[node.vertex]) extensions.push_back(step_backward(e));
    for (int step : extensions) {
      Walk extended = node.canonical;
      extended.steps.push_back(step);
      NormalizeOutcome o = normalize_tracked(extended);
      if (!o.known) continue;  // recorded; ball will not certify
      if (node_of.count(o.canonical.steps)) continue;
      int layer = static_cast<int>(o.canonical.steps.size());
      if (ball.budget_report.unknown_count == 0 && layer != node.layer + 1)
        throw Error("build_cover_ball: canonical length " + std::to_string(layer) +
                    " at breadth-first distance " + std::to_string(node.layer + 1) +
                    "; class graph bookkeeping is broken");
      node_of.emplace(o.canonical.steps, static_cast<int>(ball.nodes.size()));
      ball.nodes.push_back(CoverNode{o.canonical, walk_end(x, o.canonical), layer});
    }
  }

  // Dart pass: one lift per (node, outgoing base edge) that lands in
  // the ball.
  ball.darts.assign(ball.nodes.size(), {});
  for (std::size_t n = 0; n < ball.nodes.size(); ++n) {
    for (int e : out_edges[ball.nodes[n].vertex]) {
      Walk extended = ball.nodes[n].canonical;
      extended.steps.push_back(step_forward(e));
      NormalizeOutcome o = normalize_tracked(extended);
      if (!o.known) continue;
      auto it = node_of.find(o.canonical.steps);
      if (it == node_of.end()) continue;  // lift leaves the window
      ball.darts[n].emplace(e, it->second);
    }
  }

  ball.certified = ball.budget_report.unknown_count == 0;

  if (ball.certified) {
    // Covering-style local bijection away from the frontier.
    std::vector<std::map<int, int>> in_count(ball.nodes.size());
    for (std::size_t n = 0; n < ball.nodes.size(); ++n)
      for (auto [e, target] : ball.darts[n]) ++in_count[target][e];
    for (std::size_t n = 0; n < ball.nodes.size(); ++n) {
      if (ball.is_frontier(static_cast<int>(n))) continue;
      for (int e : out_edges[ball.nodes[n].vertex])
        if (!ball.darts[n].count(e))
          throw Error("build_cover_ball: missing lift of an edge at an interior node");
      for (int e : in_edges[ball.nodes[n].vertex])
        if (in_count[n][e] != 1)
          throw Error("build_cover_ball: interior node has " + std::to_string(in_count[n][e]) +
                      " lifts of an incoming edge; unique lifting failed");
    }
  }
  return ball;
}

// ---------------------------------------------------------------------------
// Path lifting

struct LiftResult {
  std::vector<int> nodes;  // visited cover nodes, length = |edges| + 1
  int end_node = 0;
};

/// Unique lift of a base edge path starting at a given cover node.
inline LiftResult lift_path(const CoverBall& ball, const EdgePath& gamma, int start_node) {
  require_path(gamma, "lift_path");
  if (start_node < 0 || start_node >= static_cast<int>(ball.nodes.size()))
    throw DomainError("lift_path: start node out of range");
  if (ball.nodes[start_node].vertex != gamma.start.index)
    throw DomainError("lift_path: path starts at vertex '" +
                      ball.base->name(gamma.start) + "', node sits over '" +
                      ball.base->name(CubeId{0, ball.nodes[start_node].vertex}) + "'");
  LiftResult lift;
  lift.nodes.push_back(start_node);
  int at = start_node;
  for (std::size_t i = 0; i < gamma.edges.size(); ++i) {
    auto it = ball.darts[at].find(gamma.edges[i].index);
    if (it == ball.darts[at].end())
      throw SearchLimitError("lift_path: lift leaves the ball window at step " +
                             std::to_string(i + 1) + " of " +
                             std::to_string(gamma.edges.size()) +
                             "; enlarge the radius");
    at = it->second;
    lift.nodes.push_back(at);
  }
  lift.end_node = at;
  return lift;
}

// ---------------------------------------------------------------------------
// Antisymmetry verification

struct AntisymmetryVerdict {
  bool pass = false;
  std::vector<int> cycle_nodes;  // closed dart cycle when !pass
  EdgePath projected_cycle;      // its projection to the base
  bool cross_check_essential = false;
};

/// PASS iff the dart digraph is acyclic. A FAIL would contradict the
/// covering-space antisymmetry theorem, so the witness cycle's
/// projection is immediately cross-checked as an essential base loop:
/// cross_check_essential = true marks the contradiction.
inline AntisymmetryVerdict check_antisymmetry(const CoverBall& ball) {
  if (!ball.certified)
    throw PreconditionError(
        "check_antisymmetry: ball is not certified (" +
        std::to_string(ball.budget_report.unknown_count) +
        " normalizations exceeded budget); raise the budget and rebuild");

  int n = static_cast<int>(ball.nodes.size());
  std::vector<int> state(n, 0);  // 0 fresh, 1 on stack, 2 done
  std::vector<int> via_edge(n, -1), via_node(n, -1);

  AntisymmetryVerdict verdict;
  for (int root = 0; root < n; ++root) {
    if (state[root] != 0) continue;
    // iterative DFS; explicit stack of (node, dart iterator)
    std::vector<std::pair<int, std::map<int, int>::const_iterator>> stack;
    state[root] = 1;
    stack.push_back({root, ball.darts[root].begin()});
    while (!stack.empty()) {
      auto& [node, it] = stack.back();
      if (it == ball.darts[node].end()) {
        state[node] = 2;
        stack.pop_back();
        continue;
      }
      auto [edge, target] = *it;
      ++it;
      if (state[target] == 0) {
        state[target] = 1;
        via_node[target] = node;
        via_edge[target] = edge;
        stack.push_back({target, ball.darts[target].begin()});
      } else if (state[target] == 1) {
        // back edge: cycle target -> ... -> node -> target
        std::vector<int> rev_nodes, rev_edges;
        for (int v = node; v != target; v = via_node[v]) {
          rev_nodes.push_back(v);
          rev_edges.push_back(via_edge[v]);
        }
        std::vector<int> cycle_nodes = {target};
        std::vector<int> cycle_edges;
        cycle_nodes.insert(cycle_nodes.end(), rev_nodes.rbegin(), rev_nodes.rend());
        cycle_edges.insert(cycle_edges.end(), rev_edges.rbegin(), rev_edges.rend());
        cycle_edges.push_back(edge);  // the closing dart node -> target
        cycle_nodes.push_back(target);

        verdict.pass = false;
        verdict.cycle_nodes = cycle_nodes;
        EdgePath proj;
        proj.base = ball.base;
        proj.start = CubeId{0, ball.nodes[target].vertex};
        for (int e : cycle_edges) proj.edges.push_back(CubeId{1, e});
        verdict.projected_cycle = proj;
        verdict.cross_check_essential = is_essential(*ball.base, proj).essential;
        return verdict;
      }
    }
  }
  verdict.pass = true;
  return verdict;
}

}  // namespace pcs

#pragma once

#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "pcs/arith.hpp"
#include "pcs/chain.hpp"
#include "pcs/errors.hpp"
#include "pcs/precubical.hpp"
#include "pcs/snf.hpp"

namespace pcs {

namespace homology_detail {

inline Matrix boundary1_matrix(const PrecubicalSet& x) {
  Matrix m(x.count(0), x.count(1));
  for (int e = 0; e < x.count(1); ++e) {
    CubeId edge{1, e};
    m.at(x.face(edge, Sign::Plus, 1).index, e) += 1;
    m.at(x.face(edge, Sign::Minus, 1).index, e) -= 1;
  }
  return m;
}

inline Matrix boundary2_matrix(const PrecubicalSet& x) {
  Matrix m(x.count(1), x.count(2));
  for (int q = 0; q < x.count(2); ++q) {
    CubeId sq{2, q};
    m.at(x.face(sq, Sign::Plus, 1).index, q) += 1;
    m.at(x.face(sq, Sign::Minus, 2).index, q) += 1;
    m.at(x.face(sq, Sign::Minus, 1).index, q) -= 1;
    m.at(x.face(sq, Sign::Plus, 2).index, q) -= 1;
  }
  return m;
}

inline int skeleton_components(const PrecubicalSet& x) {
  std::vector<int> parent(x.count(0));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int e = 0; e < x.count(1); ++e) {
    CubeId edge{1, e};
    parent[find(x.face(edge, Sign::Minus, 1).index)] = find(x.face(edge, Sign::Plus, 1).index);
  }
  int comps = 0;
  for (int v = 0; v < x.count(0); ++v)
    if (find(v) == v) ++comps;
  return comps;
}

}  // namespace homology_detail

/// H₀ and H₁ of the cellular chain complex, plus enough of the Smith
/// decomposition to answer boundary-membership queries without
/// re-reducing anything.
///
/// With P₁ ∂₁ Q₁ = D₁ of rank r₁, the last n₁ − r₁ columns of Q₁ are an
/// integral basis of ker ∂₁ (a direct summand). In those coordinates
/// im ∂₂ is presented by M = rows r₁.. of Q₁⁻¹ ∂₂, and with
/// P_M M Q_M = D_M a kernel vector w lies in im ∂₂ iff z = P_M w is
/// componentwise divisible by the diagonal of D_M (zero where the
/// diagonal is zero).
struct HomologyResult {
  long long h0_rank = 0;
  long long h1_free_rank = 0;
  std::vector<Int> h1_torsion;  // invariant factors > 1, divisibility order

  // presentation data
  int n1 = 0;
  int rank1 = 0;  // rank ∂₁
  int rank2 = 0;  // rank ∂₂ = rank of the kernel-coordinate presentation
  Matrix q1inv;   // n1 x n1
  Matrix pm;      // k x k, k = n1 - rank1
  std::vector<Int> m_diag;  // diagonal of D_M (length min(k, n2), zeros kept)
};

inline HomologyResult homology(const PrecubicalSet& x) {
  HomologyResult h;
  Matrix b1 = homology_detail::boundary1_matrix(x);
  Matrix b2 = homology_detail::boundary2_matrix(x);
  h.n1 = x.count(1);

  SmithResult s1 = smith_normal_form(b1);
  h.rank1 = s1.rank;
  h.q1inv = std::move(s1.qinv);

  int k = h.n1 - h.rank1;  // rank of ker ∂₁
  Matrix coords = h.q1inv.mul(b2);
  Matrix m(k, b2.cols);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < b2.cols; ++j) m.at(i, j) = coords.at(h.rank1 + i, j);

  SmithResult sm = smith_normal_form(std::move(m));
  h.rank2 = sm.rank;
  h.pm = std::move(sm.p);
  h.m_diag = sm.diagonal();

  h.h0_rank = homology_detail::skeleton_components(x);
  h.h1_free_rank = k - h.rank2;
  for (const Int& d : h.m_diag)
    if (d > 1) h.h1_torsion.push_back(d);
  return h;
}

/// True iff c = ∂₂x has an integer solution x. Uses the stored
/// presentation; c must be a 1-cycle.
inline bool is_nullhomologous(const PrecubicalSet& x, const Chain& c, const HomologyResult& h) {
  if (c.degree != 1) throw DomainError("is_nullhomologous needs a degree-1 chain");
  if (!boundary1(x, c).is_zero())
    throw PreconditionError("is_nullhomologous: chain is not a cycle");

  std::vector<Int> dense(h.n1, Int(0));
  for (const auto& [edge, k] : c.coef) dense[edge.index] = k;
  std::vector<Int> w = h.q1inv.apply(dense);
  // A cycle has no component outside ker ∂₁'s coordinate block.
  for (int i = 0; i < h.rank1; ++i)
    if (w[i] != 0) throw PreconditionError("is_nullhomologous: cycle check desynced from SNF");

  std::vector<Int> kc(w.begin() + h.rank1, w.end());
  std::vector<Int> z = h.pm.apply(kc);
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (i < h.m_diag.size() && h.m_diag[i] != 0) {
      if (z[i] % h.m_diag[i] != 0) return false;
    } else if (z[i] != 0) {
      return false;
    }
  }
  return true;
}

inline bool is_nullhomologous(const PrecubicalSet& x, const Chain& c) {
  return is_nullhomologous(x, c, homology(x));
}

// ---------------------------------------------------------------------------
// Nonnegative-cycle audit

/// Outcome of enumerating every 1-cycle with coefficients in
/// [0, bound]. A nonzero nullhomologous entry would contradict the
/// directed-homology lemma the library is built around, so `violations`
/// staying empty is the point of the exercise.
struct AuditReport {
  int bound = 0;
  unsigned long long cycles_found = 0;  // including the zero cycle
  unsigned long long nonzero_cycles = 0;
  std::vector<Chain> violations;  // nonzero nullhomologous nonnegative cycles
  unsigned long long nodes_explored = 0;
};

/// Depth-first search over coefficient assignments, pruned by vertex
/// flow balance: a completed vertex must balance exactly, a pending one
/// within the capacity its remaining incident edges can still supply.
/// Throws SearchLimitError once `node_cap` assignments were explored.
inline AuditReport nonnegative_cycle_audit(const PrecubicalSet& x, int bound,
                                           unsigned long long node_cap = 2'000'000,
                                           const std::function<void(const Chain&)>& on_cycle = {}) {
  if (bound < 0) throw DomainError("nonnegative_cycle_audit: negative bound");
  AuditReport report;
  report.bound = bound;
  int n1 = x.count(1);
  int n0 = x.count(0);

  std::vector<int> head(n1), tail(n1);
  for (int e = 0; e < n1; ++e) {
    CubeId edge{1, e};
    head[e] = x.face(edge, Sign::Plus, 1).index;
    tail[e] = x.face(edge, Sign::Minus, 1).index;
  }

  // cap_in[i][v]: max inflow vertex v can still receive from edges >= i.
  std::vector<std::vector<long long>> cap_in(n1 + 1, std::vector<long long>(n0, 0));
  std::vector<std::vector<long long>> cap_out(n1 + 1, std::vector<long long>(n0, 0));
  for (int i = n1 - 1; i >= 0; --i) {
    cap_in[i] = cap_in[i + 1];
    cap_out[i] = cap_out[i + 1];
    cap_in[i][head[i]] += bound;
    cap_out[i][tail[i]] += bound;
  }

  HomologyResult h = homology(x);
  std::vector<long long> balance(n0, 0);  // inflow - outflow so far
  std::vector<int> coefs(n1, 0);

  auto feasible = [&](int v, int next_edge) {
    return -cap_in[next_edge][v] <= balance[v] && balance[v] <= cap_out[next_edge][v];
  };

  std::function<void(int)> walk = [&](int i) {
    if (++report.nodes_explored > node_cap)
      throw SearchLimitError("nonnegative cycle audit: explored " +
                             std::to_string(report.nodes_explored - 1) + " assignments (cap " +
                             std::to_string(node_cap) + ", bound " + std::to_string(bound) +
                             ", " + std::to_string(n1) + " edges); refusing to continue");
    if (i == n1) {
      ++report.cycles_found;
      Chain c(1);
      for (int e = 0; e < n1; ++e)
        if (coefs[e] != 0) c.coef.emplace(CubeId{1, e}, coefs[e]);
      if (!c.is_zero()) {
        ++report.nonzero_cycles;
        if (on_cycle) on_cycle(c);
        if (is_nullhomologous(x, c, h)) report.violations.push_back(c);
      }
      return;
    }
    for (int k = 0; k <= bound; ++k) {
      coefs[i] = k;
      balance[head[i]] += k;
      balance[tail[i]] -= k;
      if (feasible(head[i], i + 1) && feasible(tail[i], i + 1)) walk(i + 1);
      balance[head[i]] -= k;
      balance[tail[i]] += k;
    }
    coefs[i] = 0;
  };

  if (n0 == 0) {
    report.cycles_found = 1;  // the zero chain on the empty instance
    return report;
  }
  walk(0);
  return report;
}

}  // namespace pcs

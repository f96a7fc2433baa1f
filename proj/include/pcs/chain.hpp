#pragma once

#include <map>
#include <string>

#include "pcs/arith.hpp"
#include "pcs/errors.hpp"
#include "pcs/precubical.hpp"

namespace pcs {

/// Finitely supported integer combination of the degree-n cubes. The
/// map holds nonzero coefficients only.
struct Chain {
  int degree = 0;
  std::map<CubeId, Int> coef;

  explicit Chain(int deg = 0) : degree(deg) {}

  void add(CubeId c, const Int& k) {
    if (c.dim != degree)
      throw DomainError("chain of degree " + std::to_string(degree) +
                        " cannot hold a dimension-" + std::to_string(c.dim) + " cube");
    if (k == 0) return;
    auto it = coef.find(c);
    if (it == coef.end()) {
      coef.emplace(c, k);
      return;
    }
    it->second += k;
    if (it->second == 0) coef.erase(it);
  }

  Int at(CubeId c) const {
    auto it = coef.find(c);
    return it == coef.end() ? Int(0) : it->second;
  }

  bool is_zero() const { return coef.empty(); }
  bool operator==(const Chain&) const = default;
};

inline Chain operator+(Chain a, const Chain& b) {
  if (a.degree != b.degree) throw DomainError("chain sum: degrees differ");
  for (const auto& [c, k] : b.coef) a.add(c, k);
  return a;
}

inline Chain operator-(Chain a, const Chain& b) {
  if (a.degree != b.degree) throw DomainError("chain difference: degrees differ");
  for (const auto& [c, k] : b.coef) a.add(c, -k);
  return a;
}

inline Chain operator*(const Int& s, const Chain& a) {
  Chain out(a.degree);
  if (s == 0) return out;
  for (const auto& [c, k] : a.coef) out.coef.emplace(c, s * k);
  return out;
}

/// ∂₁: edge ↦ (positive end) − (negative end), extended linearly.
inline Chain boundary1(const PrecubicalSet& x, const Chain& c) {
  if (c.degree != 1) throw DomainError("boundary1 needs a degree-1 chain");
  Chain out(0);
  for (const auto& [edge, k] : c.coef) {
    out.add(x.face(edge, Sign::Plus, 1), k);
    out.add(x.face(edge, Sign::Minus, 1), -k);
  }
  return out;
}

/// ∂₂: square ↦ d₊₁ + d₋₂ − d₋₁ − d₊₂, extended linearly. Coefficients
/// accumulate when distinct face slots hit the same edge.
inline Chain boundary2(const PrecubicalSet& x, const Chain& c) {
  if (c.degree != 2) throw DomainError("boundary2 needs a degree-2 chain");
  Chain out(1);
  for (const auto& [sq, k] : c.coef) {
    out.add(x.face(sq, Sign::Plus, 1), k);
    out.add(x.face(sq, Sign::Minus, 2), k);
    out.add(x.face(sq, Sign::Minus, 1), -k);
    out.add(x.face(sq, Sign::Plus, 2), -k);
  }
  return out;
}

/// Coefficient of σ in ∂₂θ: the slot-sum of the tabulated signs
/// (d₊₁, d₋₂ ↦ +1; d₋₁, d₊₂ ↦ −1), 0 when σ is not a face of θ.
inline Int face_degree(const PrecubicalSet& x, CubeId theta, CubeId sigma) {
  if (!x.contains(theta) || theta.dim != 2)
    throw DomainError("face_degree: first argument must be a square in the set");
  if (!x.contains(sigma) || sigma.dim != 1)
    throw DomainError("face_degree: second argument must be an edge in the set");
  Int deg = 0;
  if (x.face(theta, Sign::Plus, 1) == sigma) deg += 1;
  if (x.face(theta, Sign::Minus, 2) == sigma) deg += 1;
  if (x.face(theta, Sign::Minus, 1) == sigma) deg -= 1;
  if (x.face(theta, Sign::Plus, 2) == sigma) deg -= 1;
  return deg;
}

}  // namespace pcs

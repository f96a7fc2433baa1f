#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcs/arith.hpp"
#include "pcs/errors.hpp"

namespace pcs {

/// Identifies one cube: its dimension and its position in that
/// dimension's roster. Rosters are ordered and stable, so a CubeId is a
/// fixed basis element for the chain modules.
struct CubeId {
  int dim = 0;
  int index = 0;
  auto operator<=>(const CubeId&) const = default;
};

enum class Sign : int { Minus = 0, Plus = 1 };

inline Sign opposite(Sign s) { return s == Sign::Minus ? Sign::Plus : Sign::Minus; }
inline char sign_char(Sign s) { return s == Sign::Minus ? '-' : '+'; }

/// A finite precubical set: one roster of cubes per dimension plus the
/// face table d_{-i}, d_{+i}. The structure is plain data; nothing here
/// enforces the cubical face identities. That is validate()'s job, and
/// tests rely on being able to build broken instances.
class PrecubicalSet {
 public:
  int max_dim() const { return static_cast<int>(names_.size()) - 1; }

  int count(int dim) const {
    if (dim < 0 || dim > max_dim()) return 0;
    return static_cast<int>(names_[dim].size());
  }

  std::size_t total_cells() const {
    std::size_t t = 0;
    for (const auto& roster : names_) t += roster.size();
    return t;
  }

  bool contains(CubeId c) const {
    return c.dim >= 0 && c.dim <= max_dim() && c.index >= 0 && c.index < count(c.dim);
  }

  const std::string& name(CubeId c) const {
    require_contains(c);
    return names_[c.dim][c.index];
  }

  std::optional<CubeId> find(std::string_view nm) const {
    auto it = by_name_.find(std::string(nm));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
  }

  /// Raw face-table entry (may be out of range on unvalidated input).
  int face_index(CubeId c, Sign s, int axis) const {
    require_contains(c);
    if (axis < 1 || axis > c.dim)
      throw DomainError("face axis " + std::to_string(axis) + " out of range for dim " +
                        std::to_string(c.dim) + " cube '" + name(c) + "'");
    return faces_[c.dim][c.index][slot(axis, s)];
  }

  /// d_{s,axis}(c). Throws if the entry is unset or out of range; run
  /// validate() first on untrusted input.
  CubeId face(CubeId c, Sign s, int axis) const {
    int t = face_index(c, s, axis);
    if (t < 0 || t >= count(c.dim - 1))
      throw DomainError("face d_{" + std::string(1, sign_char(s)) + std::to_string(axis) +
                        "} of cube '" + name(c) + "' is unset or out of range");
    return CubeId{c.dim - 1, t};
  }

  CubeId add_cube(int dim, std::string nm) {
    if (dim < 0) throw DomainError("negative cube dimension");
    if (by_name_.count(nm)) throw DomainError("duplicate cube name '" + nm + "'");
    if (static_cast<int>(names_.size()) <= dim) {
      names_.resize(dim + 1);
      faces_.resize(dim + 1);
    }
    CubeId c{dim, static_cast<int>(names_[dim].size())};
    by_name_.emplace(nm, c);
    names_[dim].push_back(std::move(nm));
    faces_[dim].emplace_back(2 * dim, -1);
    return c;
  }

  void set_face(CubeId c, Sign s, int axis, CubeId target) {
    require_contains(c);
    if (target.dim != c.dim - 1)
      throw DomainError("face target '" + name(target) + "' has dimension " +
                        std::to_string(target.dim) + ", expected " + std::to_string(c.dim - 1));
    require_contains(target);
    set_face_raw(c, s, axis, target.index);
  }

  /// Unchecked variant: stores an arbitrary roster index. validate()
  /// reports out-of-range entries as structural violations.
  void set_face_raw(CubeId c, Sign s, int axis, int target_index) {
    require_contains(c);
    if (axis < 1 || axis > c.dim) throw DomainError("face axis out of range");
    faces_[c.dim][c.index][slot(axis, s)] = target_index;
  }

  static int slot(int axis, Sign s) { return 2 * (axis - 1) + static_cast<int>(s); }

 private:
  void require_contains(CubeId c) const {
    if (!contains(c))
      throw DomainError("cube (dim " + std::to_string(c.dim) + ", index " +
                        std::to_string(c.index) + ") is not in the precubical set");
  }

  std::vector<std::vector<std::string>> names_;
  std::vector<std::vector<std::vector<int>>> faces_;  // faces_[d][i][slot] -> index in dim d-1
  std::map<std::string, CubeId> by_name_;
};

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  enum class Kind { Structural, FaceIdentity };
  Kind kind;
  CubeId cube;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks that the face table is total and in range, and that the cubical
/// face identities d_{a,i} d_{b,j} = d_{b,j-1} d_{a,i} (i < j) hold on
/// every cube of dimension >= 2.
inline ValidationReport validate(const PrecubicalSet& x) {
  ValidationReport report;
  static constexpr std::array<Sign, 2> kSigns = {Sign::Minus, Sign::Plus};

  for (int d = 1; d <= x.max_dim(); ++d) {
    for (int i = 0; i < x.count(d); ++i) {
      CubeId c{d, i};
      for (int axis = 1; axis <= d; ++axis) {
        for (Sign s : kSigns) {
          int t = x.face_index(c, s, axis);
          if (t < 0 || t >= x.count(d - 1)) {
            report.violations.push_back(
                {Violation::Kind::Structural, c,
                 "face d_{" + std::string(1, sign_char(s)) + std::to_string(axis) + "} of '" +
                     x.name(c) + "' is " + (t < 0 ? "unset" : "out of range (index " + std::to_string(t) + ")")});
          }
        }
      }
    }
  }
  if (!report.ok()) return report;  // identities need a total, in-range table

  for (int d = 2; d <= x.max_dim(); ++d) {
    for (int idx = 0; idx < x.count(d); ++idx) {
      CubeId c{d, idx};
      for (int i = 1; i <= d; ++i) {
        for (int j = i + 1; j <= d; ++j) {
          for (Sign a : kSigns) {
            for (Sign b : kSigns) {
              CubeId lhs = x.face(x.face(c, b, j), a, i);
              CubeId rhs = x.face(x.face(c, a, i), b, j - 1);
              if (lhs != rhs) {
                report.violations.push_back(
                    {Violation::Kind::FaceIdentity, c,
                     "on '" + x.name(c) + "': d_{" + std::string(1, sign_char(a)) +
                         std::to_string(i) + "} d_{" + std::string(1, sign_char(b)) +
                         std::to_string(j) + "} = '" + x.name(lhs) + "' but d_{" +
                         std::string(1, sign_char(b)) + std::to_string(j - 1) + "} d_{" +
                         std::string(1, sign_char(a)) + std::to_string(i) + "} = '" +
                         x.name(rhs) + "'"});
              }
            }
          }
        }
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// The representable cube □[n]

/// Standard n-cube: k-cubes are words over {0,1,x} of length n with k
/// occurrences of 'x'; d_{s,i} substitutes the i-th 'x' (left to right)
/// by 0 or 1. Rosters are ordered lexicographically with '0'<'1'<'x'.
/// The word doubles as the cube's name (□[0]'s sole vertex is "pt").
inline PrecubicalSet standard_cube(int n) {
  if (n < 0) throw DomainError("standard_cube: negative dimension");
  PrecubicalSet x;
  if (n == 0) {
    x.add_cube(0, "pt");
    return x;
  }
  static constexpr char kDigits[3] = {'0', '1', 'x'};
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= 3;

  std::vector<std::string> words;
  words.reserve(total);
  for (std::size_t w = 0; w < total; ++w) {
    std::string word(n, '0');
    std::size_t rem = w;
    for (int pos = n - 1; pos >= 0; --pos) {
      word[pos] = kDigits[rem % 3];
      rem /= 3;
    }
    words.push_back(std::move(word));
  }
  // counting order ascending == lexicographic with '0'<'1'<'x'
  for (const auto& word : words) {
    int stars = static_cast<int>(std::count(word.begin(), word.end(), 'x'));
    x.add_cube(stars, word);
  }
  for (const auto& word : words) {
    int stars = static_cast<int>(std::count(word.begin(), word.end(), 'x'));
    if (stars == 0) continue;
    CubeId c = *x.find(word);
    int star_seen = 0;
    for (int pos = 0; pos < n; ++pos) {
      if (word[pos] != 'x') continue;
      ++star_seen;
      for (Sign s : {Sign::Minus, Sign::Plus}) {
        std::string target = word;
        target[pos] = (s == Sign::Minus) ? '0' : '1';
        x.set_face(c, s, star_seen, *x.find(target));
      }
    }
  }
  return x;
}

// ---------------------------------------------------------------------------
// Sub-precubical sets

/// Per-dimension subset of a parent's cubes, closed under faces.
struct SubPrecubicalSet {
  const PrecubicalSet* parent = nullptr;
  std::vector<std::vector<char>> member;  // member[d][i]

  bool contains(CubeId c) const {
    return parent && parent->contains(c) && c.dim < static_cast<int>(member.size()) &&
           member[c.dim][c.index];
  }

  int count(int dim) const {
    if (dim < 0 || dim >= static_cast<int>(member.size())) return 0;
    int n = 0;
    for (char m : member[dim]) n += m ? 1 : 0;
    return n;
  }

  std::size_t total_cells() const {
    std::size_t t = 0;
    for (int d = 0; d < static_cast<int>(member.size()); ++d) t += count(d);
    return t;
  }

  bool closed_under_faces() const {
    for (int d = 1; d < static_cast<int>(member.size()); ++d) {
      for (int i = 0; i < static_cast<int>(member[d].size()); ++i) {
        if (!member[d][i]) continue;
        CubeId c{d, i};
        for (int axis = 1; axis <= d; ++axis)
          for (Sign s : {Sign::Minus, Sign::Plus})
            if (!contains(parent->face(c, s, axis))) return false;
      }
    }
    return true;
  }

  /// Standalone copy. Cubes keep their names and relative roster order.
  PrecubicalSet extract() const {
    PrecubicalSet out;
    std::vector<std::vector<int>> remap(member.size());
    for (int d = 0; d < static_cast<int>(member.size()); ++d) {
      remap[d].assign(member[d].size(), -1);
      for (int i = 0; i < static_cast<int>(member[d].size()); ++i) {
        if (!member[d][i]) continue;
        CubeId nc = out.add_cube(d, parent->name(CubeId{d, i}));
        remap[d][i] = nc.index;
      }
    }
    for (int d = 1; d < static_cast<int>(member.size()); ++d) {
      for (int i = 0; i < static_cast<int>(member[d].size()); ++i) {
        if (!member[d][i]) continue;
        CubeId c{d, i};
        for (int axis = 1; axis <= d; ++axis) {
          for (Sign s : {Sign::Minus, Sign::Plus}) {
            CubeId f = parent->face(c, s, axis);
            out.set_face(CubeId{d, remap[d][i]}, s, axis, CubeId{d - 1, remap[d - 1][f.index]});
          }
        }
      }
    }
    return out;
  }
};

namespace detail {
inline SubPrecubicalSet empty_sub(const PrecubicalSet& x) {
  SubPrecubicalSet s;
  s.parent = &x;
  s.member.resize(x.max_dim() + 1);
  for (int d = 0; d <= x.max_dim(); ++d) s.member[d].assign(x.count(d), 0);
  return s;
}

/// Adds c and everything below it reachable by faces.
inline void close_downward(SubPrecubicalSet& s, CubeId c) {
  if (s.member[c.dim][c.index]) return;
  s.member[c.dim][c.index] = 1;
  for (int axis = 1; axis <= c.dim; ++axis)
    for (Sign sg : {Sign::Minus, Sign::Plus}) close_downward(s, s.parent->face(c, sg, axis));
}
}  // namespace detail

/// sk_n(X): all cubes of dimension <= n.
inline SubPrecubicalSet skeleton(const PrecubicalSet& x, int n) {
  SubPrecubicalSet s = detail::empty_sub(x);
  for (int d = 0; d <= std::min(n, x.max_dim()); ++d)
    for (int i = 0; i < x.count(d); ++i) s.member[d][i] = 1;
  return s;
}

/// <σ>: iterated-face closure of a single cube.
inline SubPrecubicalSet generated(const PrecubicalSet& x, CubeId sigma) {
  if (!x.contains(sigma)) throw DomainError("generated: cube not in the precubical set");
  SubPrecubicalSet s = detail::empty_sub(x);
  detail::close_downward(s, sigma);
  return s;
}

// ---------------------------------------------------------------------------
// Realization points and supports

/// A point of |X| in cube-local coordinates. Normal form (after
/// support()) has every coordinate strictly inside (0,1).
struct RealizationPoint {
  CubeId carrier;
  std::vector<Rat> coords;
  bool operator==(const RealizationPoint&) const = default;
};

namespace detail {
inline void check_point(const PrecubicalSet& x, const RealizationPoint& p) {
  if (!x.contains(p.carrier)) throw DomainError("realization point: carrier not in set");
  if (static_cast<int>(p.coords.size()) != p.carrier.dim)
    throw DomainError("realization point: expected " + std::to_string(p.carrier.dim) +
                      " coordinates, got " + std::to_string(p.coords.size()));
  for (const Rat& c : p.coords)
    if (c < 0 || c > 1) throw DomainError("realization point: coordinate outside [0,1]");
}
}  // namespace detail

/// supp(x): push boundary coordinates into faces until all coordinates
/// are interior. Resolves the lowest boundary axis first; the result is
/// independent of that order (a consequence of the face identities,
/// property-tested rather than assumed).
inline RealizationPoint support(const PrecubicalSet& x, RealizationPoint p) {
  detail::check_point(x, p);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < p.coords.size(); ++i) {
      if (p.coords[i] == 0 || p.coords[i] == 1) {
        Sign s = (p.coords[i] == 0) ? Sign::Minus : Sign::Plus;
        p.carrier = x.face(p.carrier, s, static_cast<int>(i) + 1);
        p.coords.erase(p.coords.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return p;
}

/// Iterated face of σ along a pattern over {-1, 0, 1}: entry k fixes
/// axis k+1 at 0 (value 0) or 1 (value 1), -1 leaves it free. Applied
/// highest axis first so lower axis numbers stay stable.
inline CubeId iterated_face(const PrecubicalSet& x, CubeId sigma, std::span<const int> pattern) {
  if (static_cast<int>(pattern.size()) != sigma.dim)
    throw DomainError("iterated_face: pattern length " + std::to_string(pattern.size()) +
                      " does not match cube dimension " + std::to_string(sigma.dim));
  CubeId c = sigma;
  for (int pos = sigma.dim - 1; pos >= 0; --pos) {
    if (pattern[pos] < 0) continue;
    c = x.face(c, pattern[pos] == 0 ? Sign::Minus : Sign::Plus, pos + 1);
  }
  return c;
}

/// Corner vertex of σ selected by ε ∈ {0,1}^n.
inline CubeId corner(const PrecubicalSet& x, CubeId sigma, std::span<const int> eps) {
  if (!x.contains(sigma)) throw DomainError("corner: cube not in the precubical set");
  for (int e : eps)
    if (e != 0 && e != 1) throw DomainError("corner: epsilon entries must be 0 or 1");
  return iterated_face(x, sigma, eps);
}

}  // namespace pcs

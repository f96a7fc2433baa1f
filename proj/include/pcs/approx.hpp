#pragma once

#include <string>
#include <vector>

#include "pcs/arith.hpp"
#include "pcs/errors.hpp"
#include "pcs/paths.hpp"
#include "pcs/precubical.hpp"

namespace pcs {

/// One monotone linear piece of a piecewise-linear directed path,
/// in the local coordinates of its carrier cube.
struct PLSegment {
  CubeId carrier;
  std::vector<Rat> from;
  std::vector<Rat> to;
};

/// Piecewise-linear directed path: consecutive segments glue, meaning
/// the support of one segment's end equals the support of the next
/// segment's start.
struct PLDipath {
  std::vector<PLSegment> segments;
};

namespace approx_detail {

inline void check_segment(const PrecubicalSet& x, const PLSegment& seg, std::size_t index) {
  RealizationPoint a{seg.carrier, seg.from};
  RealizationPoint b{seg.carrier, seg.to};
  detail::check_point(x, a);
  detail::check_point(x, b);
  for (std::size_t i = 0; i < seg.from.size(); ++i)
    if (seg.from[i] > seg.to[i])
      throw DomainError("track segment " + std::to_string(index + 1) +
                        " is not monotone at axis " + std::to_string(i + 1));
}

// Corner selector of the baby approximation step: coordinate exactly 1
// maps to 1, everything below to 0.
inline std::vector<int> corner_of(const std::vector<Rat>& coords) {
  std::vector<int> eps(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) eps[i] = (coords[i] == 1) ? 1 : 0;
  return eps;
}

// Staircase between two corners of sigma, pushed into X along sigma's
// faces: the edge flipping axis i is the iterated face fixing every
// other axis at the current corner value.
inline void append_staircase(const PrecubicalSet& x, CubeId sigma, std::vector<int> cur,
                             const std::vector<int>& target, std::vector<CubeId>& out) {
  for (std::size_t i = 0; i < cur.size(); ++i) {
    if (cur[i] == 0 && target[i] == 1) {
      std::vector<int> pattern = cur;
      pattern[i] = -1;  // free axis: the pushed cell is an edge
      out.push_back(iterated_face(x, sigma, pattern));
      cur[i] = 1;
    }
  }
}

}  // namespace approx_detail

/// Cellular approximation: each segment contributes the staircase
/// between the corners its endpoints project to (coordinate 1 projects
/// to 1, anything smaller to 0), and the staircases concatenate because
/// gluing supports share their initial corner. The result runs from
/// corner(supp(start), 0…0) to corner(supp(end), 0…0); a nonconstant
/// PL loop always yields a nonconstant edge loop, since some segment of
/// a nonconstant loop must arrive at coordinate 1.
inline EdgePath cellular_approximate(const PrecubicalSet& x, const PLDipath& track) {
  if (track.segments.empty())
    throw DomainError("cellular_approximate: track has no segments");
  for (std::size_t s = 0; s < track.segments.size(); ++s)
    approx_detail::check_segment(x, track.segments[s], s);
  for (std::size_t s = 0; s + 1 < track.segments.size(); ++s) {
    RealizationPoint end_pt{track.segments[s].carrier, track.segments[s].to};
    RealizationPoint next_pt{track.segments[s + 1].carrier, track.segments[s + 1].from};
    if (support(x, end_pt) != support(x, next_pt))
      throw PreconditionError("cellular_approximate: segments " + std::to_string(s + 1) +
                              " and " + std::to_string(s + 2) + " do not glue");
  }

  const PLSegment& first = track.segments.front();
  RealizationPoint start_supp =
      support(x, RealizationPoint{first.carrier, first.from});
  std::vector<int> zeros(start_supp.carrier.dim, 0);
  EdgePath path;
  path.base = &x;
  path.start = corner(x, start_supp.carrier, zeros);

  for (const PLSegment& seg : track.segments) {
    approx_detail::append_staircase(x, seg.carrier, approx_detail::corner_of(seg.from),
                                    approx_detail::corner_of(seg.to), path.edges);
  }
  return path;
}

}  // namespace pcs

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace pcs {

// All homology computations run over arbitrary-precision integers: SNF
// pivots overflow 64-bit words even on small inputs. Coordinates of
// realization points are exact rationals.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

}  // namespace pcs

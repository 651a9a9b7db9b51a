#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace qsppoly {

// 256-bit binary float. Integer coefficients up to 2^256 are exact, which
// covers the step-function Bernstein polynomials up to degree ~200.
using Wide = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<256, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

}  // namespace qsppoly

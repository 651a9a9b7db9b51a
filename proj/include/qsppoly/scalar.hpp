#pragma once

#include <cmath>
#include <limits>

#include "qsppoly/wide.hpp"

// Overloads that let the templated numerics run on double and Wide alike.
namespace qsppoly::scalar {

inline double abs(double x) { return std::fabs(x); }
inline Wide abs(const Wide& x) { return boost::multiprecision::abs(x); }

inline double pow(double a, double b) { return std::pow(a, b); }
inline Wide pow(const Wide& a, const Wide& b) { return boost::multiprecision::pow(a, b); }

inline double sqrt(double a) { return std::sqrt(a); }
inline Wide sqrt(const Wide& a) { return boost::multiprecision::sqrt(a); }

inline double to_double(double x) { return x; }
inline double to_double(const Wide& x) { return x.convert_to<double>(); }

inline int sign(double x) { return (x > 0) - (x < 0); }
inline int sign(const Wide& x) { return x.sign(); }

/// Unit roundoff of T.
template <class T>
inline T unit_roundoff() {
  return std::numeric_limits<T>::epsilon() / T(2);
}

}  // namespace qsppoly::scalar

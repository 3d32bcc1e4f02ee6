#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdio>
#include <string>

namespace iia {

// Exact scalar used for the algebraic/cohomological side of the library.
// The numeric side (flow integration, descent) uses plain double through the
// same templated entry points.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }
inline bool is_zero(double x) { return x == 0.0; }

inline double to_double(const Rat& x) { return x.get_d(); }
inline double to_double(double x) { return x; }

inline Rat abs_val(const Rat& x) { return abs(x); }
inline double abs_val(double x) { return std::fabs(x); }

inline std::string scalar_str(const Rat& x) { return x.get_str(); }

// 17 significant digits round-trip any double exactly.
inline std::string scalar_str(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf);
}

template <class S>
struct ScalarName;
template <>
struct ScalarName<Rat> {
  static constexpr const char* value = "rational";
};
template <>
struct ScalarName<double> {
  static constexpr const char* value = "double";
};

}  // namespace iia

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace bayesrec {

/// Exact arbitrary-precision rational.
using Rational = boost::multiprecision::cpp_rational;

}  // namespace bayesrec

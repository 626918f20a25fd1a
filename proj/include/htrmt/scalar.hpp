#pragma once

#include "htrmt/multipoly.hpp"
#include "htrmt/rational.hpp"

#include <string>
#include <variant>

namespace htrmt {

enum class Ring { rational, poly, float64 };

const char* ring_name(Ring r);

// The coefficient ring a recurrence runs over, chosen at call time.
using Scalar = std::variant<Rational, MultiPoly, double>;

Ring ring_of(const Scalar& s);

Scalar ring_add(const Scalar& a, const Scalar& b);
Scalar ring_mul(const Scalar& a, const Scalar& b);
Scalar ring_neg(const Scalar& a);

// Exact entries print as "num/den" or polynomial text; doubles as shortest round-trip decimal.
std::string to_string(const Scalar& s);

std::string format_double(double x);

} // namespace htrmt

#pragma once

#include <cmath>
#include <vector>

#include "fitstar/common.hpp"

namespace fitstar {

/// A point in the n-dimensional configuration space.
using State = std::vector<double>;

/// Euclidean distance between two states of equal dimension.
double distance(const State& a, const State& b);

/// Point on the segment a->b at parameter t in [0, 1].
State interpolate(const State& a, const State& b, double t);

/// True iff every coordinate is finite.
bool all_finite(const State& x);

/// Throws ContractViolation unless x is non-empty and fully finite; `what`
/// names the offending state in the error message.
void require_state(const State& x, const char* what);

}  // namespace fitstar

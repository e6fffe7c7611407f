#pragma once

#include <optional>

#include "fanih/linalg.hpp"

namespace fanih {

/// Exact feasibility for { x >= 0 : a x = b } by phase-one simplex with
/// Bland's rule. Returns a basic feasible solution or nullopt.
std::optional<Vec> find_nonnegative_solution(const Matrix& a, const Vec& b);

}  // namespace fanih

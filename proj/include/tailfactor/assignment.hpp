#pragma once

#include <cstddef>
#include <vector>

#include "tailfactor/matrix.hpp"

namespace tailfactor {

// Minimum-cost perfect assignment on a square cost matrix (Hungarian
// algorithm with potentials, O(n^3)). Returns row -> column.
std::vector<std::size_t> solve_assignment(const Matrix& cost);

} // namespace tailfactor

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

namespace corridor {

/// Hungarian (Kuhn-Munkres) solver for the rectangular linear sum
/// assignment problem with rows <= cols. `cost` is row-major rows x cols.
/// Missing rows are padded with a constant sentinel larger than every
/// |cost| so they cannot influence the real rows' matching.
///
/// Returns row -> column. Ties resolve toward lower indices.
[[nodiscard]] std::vector<int> solve_min_cost_assignment(std::span<const double> cost, int rows, int cols);

}  // namespace corridor

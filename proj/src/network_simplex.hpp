#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wass_smooth::detail {

struct TransportSolution {
  struct Cell {
    std::size_t i;
    std::size_t j;
    double mass;
  };
  std::vector<Cell> plan;
  double cost = 0.0;
  std::vector<double> f;  // dual potentials of the sources
  std::vector<double> g;  // dual potentials of the sinks, g_j = min_i (c_ij - f_i)
  long pivots = 0;
};

/// Minimum-cost transport between supplies a and demands b (equal totals) with
/// dense row-major costs. Primal network simplex on a strongly feasible tree.
TransportSolution solve_transport(std::span<const double> a, std::span<const double> b,
                                  std::span<const double> cost);

}  // namespace wass_smooth::detail

#pragma once

#include <utility>

#include "chemsim/grid.hpp"
#include "chemsim/solver.hpp"

namespace chemsim {

enum class OracleKind { Homogeneous, HeatU, HeatV };

/// Exact solution for spatially constant data: u stays u0, v decays as
/// v0 exp(-a(u0)^s t).
std::pair<double, double> homogeneous_solution(double u0, double v0, double s, const TruncationParams& p,
                                               double t);

/// baseline + amp exp(-lambda t) prod_axis cos(k pi (x - origin) / L),
/// lambda = sum_axis (k pi / L)^2, at cell centers.
Field heat_eigen_solution(const Grid& grid, double baseline, double amp, int k, double t);

/// Explicit Euler run to T with dt = explicit_dt_limit / 4^r, shortened so
/// that an integer number of steps lands on T.
State brute_force_reference(const State& initial, const ModelParams& mp, double T, int refinement,
                            FluxScheme flux = FluxScheme::Centered);

}  // namespace chemsim

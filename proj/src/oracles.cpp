#include "chemsim/oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chemsim {

std::pair<double, double> homogeneous_solution(double u0, double v0, double s, const TruncationParams& p,
                                               double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("oracle time must be >= 0");
    return {u0, v0 * std::exp(-consumption_rate(u0, s, p) * t)};
}

Field heat_eigen_solution(const Grid& grid, double baseline, double amp, int k, double t) {
    if (k < 1) throw std::invalid_argument("eigenmode k must be >= 1");
    if (baseline - std::abs(amp) < 0.0) throw std::invalid_argument("baseline - amplitude must be >= 0");
    double lambda = 0.0;
    for (int a = 0; a < grid.dim; ++a) {
        const double w = k * std::numbers::pi / grid.extent(a);
        lambda += w * w;
    }
    const double decay = amp * std::exp(-lambda * t);
    Field f(grid);
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        const auto c = unflatten(grid, idx);
        double prod = 1.0;
        for (int a = 0; a < grid.dim; ++a)
            prod *= std::cos(k * std::numbers::pi * (grid.center(a, c[a]) - grid.origin[a]) / grid.extent(a));
        f[idx] = baseline + decay * prod;
    }
    return f;
}

State brute_force_reference(const State& initial, const ModelParams& mp, double T, int refinement,
                            FluxScheme flux) {
    if (refinement < 1) throw std::invalid_argument("refinement level must be >= 1");
    if (!(T >= 0.0)) throw std::invalid_argument("reference time must be >= 0");
    if (T == 0.0) return initial;

    // The guard depends on sup u when untruncated; re-check every step.
    const double dt_max = explicit_dt_limit(initial, mp) / std::pow(4.0, refinement);
    const long long steps = static_cast<long long>(std::ceil(T / dt_max));
    SchemeParams sp;
    sp.dt = T / static_cast<double>(steps);
    sp.t_end = T;
    sp.flux = flux;
    sp.mode = StepMode::Explicit;

    State st = initial;
    for (long long n = 1; n <= steps; ++n) {
        st = step_explicit(st, mp, sp);
        st.t = initial.t + static_cast<double>(n) * sp.dt;
    }
    return st;
}

}  // namespace chemsim

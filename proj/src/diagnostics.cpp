#include "chemsim/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace chemsim {

std::array<double, 12> csv_values(const DiagnosticsRow& r) {
    return {r.t,      r.mass_u,      r.min_u,     r.max_u,          r.min_v,  r.max_v,
            r.energy, r.grad_z_l2sq, r.grad_z_l4, r.consumption_diss, r.g_mass, r.v_lower_bound_ref};
}

RunReference make_reference(const State& initial) {
    return {integrate(initial.u) / initial.u.grid().volume(), initial.v.min()};
}

double discrete_lower_bound(double v0_min, double dt, long long n, const ModelParams& mp) {
    if (!mp.trunc.truncated()) return 0.0;
    const double cap = std::pow(truncation_ceiling(mp.trunc), mp.s);
    return v0_min * std::pow(1.0 + dt * cap, -static_cast<double>(n));
}

Field z_transform(const Field& v, double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("z transform requires alpha > 0");
    Field z(v.grid());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double radicand = v[i] + alpha;
        if (radicand < 0.0) throw std::domain_error("z transform: v + alpha < 0");
        z[i] = std::sqrt(radicand);
    }
    return z;
}

double energy(const State& st, const ModelParams& mp) {
    const std::size_t n = st.u.size();
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = eval_g(std::max(st.u[i], 0.0), mp.s, mp.trunc);
    const Field grad = gradient_sq(z_transform(st.v, mp.alpha));
    return 0.25 * mp.s * integrate(st.u.grid(), g) + 0.5 * integrate(grad);
}

DiagnosticsRow collect(const State& st, const ModelParams& mp, const SchemeParams& sp, long long step,
                       const RunReference& ref) {
    const Grid& grid = st.u.grid();
    const std::size_t n = st.u.size();
    const Field z = z_transform(st.v, mp.alpha);
    const Field grad = gradient_sq(z);

    std::vector<double> g(n), quartic(n), diss(n);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = eval_g(std::max(st.u[i], 0.0), mp.s, mp.trunc);
        quartic[i] = grad[i] * grad[i] / (z[i] * z[i]);
        diss[i] = consumption_rate(st.u[i], mp.s, mp.trunc) * grad[i];
    }

    DiagnosticsRow row;
    row.t = st.t;
    row.mass_u = integrate(st.u);
    row.min_u = st.u.min();
    row.max_u = st.u.max();
    row.min_v = st.v.min();
    row.max_v = st.v.max();
    row.u_star = ref.u_star;
    row.g_mass = integrate(grid, g);
    row.grad_z_l2sq = integrate(grad);
    row.grad_z_l4 = integrate(grid, quartic);
    row.consumption_diss = integrate(grid, diss);
    row.energy = 0.25 * mp.s * row.g_mass + 0.5 * row.grad_z_l2sq;
    row.v_lower_bound_ref = discrete_lower_bound(ref.v0_min, sp.dt, step, mp);
    return row;
}

EnergyResiduals energy_residuals(std::span<const DiagnosticsRow> series, double tol) {
    if (series.size() < 2) throw std::invalid_argument("energy residuals need at least 2 rows");
    const std::size_t intervals = series.size() - 1;
    std::vector<double> drive(intervals);
    EnergyResiduals out;
    for (std::size_t k = 0; k < intervals; ++k) {
        const double dt = series[k + 1].t - series[k].t;
        if (!(dt > 0.0)) throw std::invalid_argument("energy residuals need strictly increasing times");
        drive[k] = (series[k + 1].energy - series[k].energy) / dt + series[k].consumption_diss;
        const double g = series[k].grad_z_l2sq;
        if (g > 0.0) {
            out.c_fit = std::max(out.c_fit, drive[k] / g);
        } else if (drive[k] > tol) {
            out.feasible = false;
        }
    }
    out.residuals.resize(intervals);
    for (std::size_t k = 0; k < intervals; ++k) out.residuals[k] = drive[k] - out.c_fit * series[k].grad_z_l2sq;
    return out;
}

namespace {

// Second-order stencils on a 2D cell-centered field with mirror ghosts,
// i.e. the even reflection that encodes a zero normal derivative.
class MirrorStencil {
public:
    explicit MirrorStencil(const Field& f) : f_(f), g_(f.grid()) {
        if (g_.dim != 2) throw std::invalid_argument("identity verification requires dim=2");
        if (g_.n[0] < 3 || g_.n[1] < 3) throw std::invalid_argument("identity verification requires n >= 3");
    }

    double at(int i, int j) const {
        i = std::clamp(i, 0, g_.n[0] - 1);
        j = std::clamp(j, 0, g_.n[1] - 1);
        return f_[static_cast<std::size_t>(i) * g_.n[1] + j];
    }
    double dx(int i, int j) const { return (at(i + 1, j) - at(i - 1, j)) / (2.0 * g_.h[0]); }
    double dy(int i, int j) const { return (at(i, j + 1) - at(i, j - 1)) / (2.0 * g_.h[1]); }
    double dxx(int i, int j) const {
        return (at(i + 1, j) - 2.0 * at(i, j) + at(i - 1, j)) / (g_.h[0] * g_.h[0]);
    }
    double dyy(int i, int j) const {
        return (at(i, j + 1) - 2.0 * at(i, j) + at(i, j - 1)) / (g_.h[1] * g_.h[1]);
    }
    double dxy(int i, int j) const {
        return (at(i + 1, j + 1) - at(i + 1, j - 1) - at(i - 1, j + 1) + at(i - 1, j - 1)) /
               (4.0 * g_.h[0] * g_.h[1]);
    }
    double hessian_sq(int i, int j) const {
        const double a = dxx(i, j), b = dxy(i, j), c = dyy(i, j);
        return a * a + 2.0 * b * b + c * c;
    }
    double grad_sq(int i, int j) const {
        const double a = dx(i, j), b = dy(i, j);
        return a * a + b * b;
    }

private:
    const Field& f_;
    const Grid& g_;
};

template <class CellFn>
double cell_integral(const Grid& g, CellFn&& fn) {
    std::vector<double> vals(g.size());
    for (int i = 0; i < g.n[0]; ++i)
        for (int j = 0; j < g.n[1]; ++j) vals[static_cast<std::size_t>(i) * g.n[1] + j] = fn(i, j);
    return integrate(g, vals);
}

// Outward derivative at a face from the three nearest cell centers,
// (-2 w0 + 3 w1 - w2) / h towards the interior, exact for quadratics.
double face_normal_derivative(double w0, double w1, double w2, double h) {
    return -(-2.0 * w0 + 3.0 * w1 - w2) / h;
}

IdentityReport make_report(double lhs, double rhs, const Grid& g) {
    return {lhs, rhs, std::abs(lhs - rhs), std::max(g.h[0], g.h[1])};
}

}  // namespace

IdentityReport verify_identity_boundary(const Field& z) {
    const MirrorStencil d(z);
    const Grid& g = z.grid();
    const int nx = g.n[0], ny = g.n[1];

    const double lhs = cell_integral(g, [&](int i, int j) {
        const double lap = d.dxx(i, j) + d.dyy(i, j);
        return lap * lap;
    });
    const double hess = cell_integral(g, [&](int i, int j) { return d.hessian_sq(i, j); });

    std::vector<double> boundary;
    boundary.reserve(2 * (nx + ny));
    for (int j = 0; j < ny; ++j) {
        boundary.push_back(g.h[1] * face_normal_derivative(d.grad_sq(0, j), d.grad_sq(1, j), d.grad_sq(2, j), g.h[0]));
        boundary.push_back(g.h[1] * face_normal_derivative(d.grad_sq(nx - 1, j), d.grad_sq(nx - 2, j),
                                                           d.grad_sq(nx - 3, j), g.h[0]));
    }
    for (int i = 0; i < nx; ++i) {
        boundary.push_back(g.h[0] * face_normal_derivative(d.grad_sq(i, 0), d.grad_sq(i, 1), d.grad_sq(i, 2), g.h[1]));
        boundary.push_back(g.h[0] * face_normal_derivative(d.grad_sq(i, ny - 1), d.grad_sq(i, ny - 2),
                                                           d.grad_sq(i, ny - 3), g.h[1]));
    }
    const double rhs = hess - 0.5 * compensated_sum(boundary);
    return make_report(lhs, rhs, g);
}

IdentityReport verify_identity_winkler(const Field& z, double floor) {
    if (!(floor > 0.0)) throw std::invalid_argument("floor must be > 0");
    for (double x : z.values())
        if (!(x >= floor)) throw std::domain_error("z falls below the floor");

    const MirrorStencil d(z);
    const Grid& g = z.grid();
    Field root(g);
    for (std::size_t i = 0; i < z.size(); ++i) root[i] = std::sqrt(z[i]);
    const MirrorStencil dr(root);

    const double lhs = cell_integral(g, [&](int i, int j) {
        const double zz = d.at(i, j);
        return d.hessian_sq(i, j) + d.grad_sq(i, j) / zz * (d.dxx(i, j) + d.dyy(i, j));
    });
    const double rhs = cell_integral(g, [&](int i, int j) {
        const double zz = d.at(i, j);
        const double gs = d.grad_sq(i, j);
        return 4.0 * zz * dr.hessian_sq(i, j) + 0.75 * gs * gs / (zz * zz);
    });
    return make_report(lhs, rhs, g);
}

double refinement_slope(std::span<const double> h, std::span<const double> err) {
    if (h.size() != err.size() || h.size() < 2) throw std::invalid_argument("slope fit needs >= 2 matched points");
    if (std::all_of(err.begin(), err.end(), [](double e) { return e == 0.0; }))
        return std::numeric_limits<double>::infinity();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double k = static_cast<double>(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!(err[i] > 0.0) || !(h[i] > 0.0)) return std::numeric_limits<double>::quiet_NaN();
        const double x = std::log(h[i]), y = std::log(err[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace chemsim

#include "chemsim/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace chemsim {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void require_finite(const Field& f, const char* name) {
    if (!f.all_finite()) throw StepError(std::string("non-finite value in ") + name + " after step");
}

}  // namespace

void ModelParams::validate() const {
    if (!(s >= 1.0) || !std::isfinite(s)) throw std::invalid_argument("s must be >= 1");
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be >= 0");
}

void SchemeParams::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be > 0");
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be >= 0");
    if (!(lin_tol > 0.0)) throw std::invalid_argument("lin_tol must be > 0");
    if (lin_maxit < 1) throw std::invalid_argument("lin_maxit must be >= 1");
}

long long SchemeParams::step_count() const {
    const double ratio = t_end / dt;
    const long long steps = std::llround(ratio);
    if (std::abs(ratio - static_cast<double>(steps)) > 1e-9 * std::max(1.0, ratio))
        throw std::invalid_argument("t_end must be an integer multiple of dt");
    return steps;
}

void State::validate() const {
    require_same_grid(u, v);
    if (!(t >= 0.0)) throw std::invalid_argument("state time must be >= 0");
    if (!u.all_finite() || !v.all_finite()) throw std::invalid_argument("state holds non-finite values");
}

Field solve_spd(const LinearOperator& apply, const Field& b, double tol, int maxit, CgInfo* info) {
    const std::size_t n = b.size();
    const auto bv = b.values();
    const double b_norm = std::sqrt(dot(bv, bv));
    Field x(b.grid());
    if (b_norm == 0.0) {
        if (info) *info = {0, 0.0};
        return x;
    }

    std::copy(bv.begin(), bv.end(), x.values().begin());
    std::vector<double> r(n), p(n), q(n);
    apply(x.values(), q);
    for (std::size_t i = 0; i < n; ++i) r[i] = bv[i] - q[i];
    p = r;
    double rr = dot(r, r);

    int it = 0;
    while (std::sqrt(rr) > tol * b_norm) {
        if (it == maxit) {
            std::ostringstream msg;
            msg << "conjugate gradients did not converge in " << maxit
                << " iterations (relative residual " << std::sqrt(rr) / b_norm << ")";
            throw LinearSolveError(msg.str(), std::sqrt(rr) / b_norm, it);
        }
        apply(p, q);
        const double pq = dot(p, q);
        if (!(pq > 0.0)) throw LinearSolveError("operator is not positive definite", std::sqrt(rr) / b_norm, it);
        const double step = rr / pq;
        auto xv = x.values();
        for (std::size_t i = 0; i < n; ++i) {
            xv[i] += step * p[i];
            r[i] -= step * q[i];
        }
        const double rr_next = dot(r, r);
        const double beta = rr_next / rr;
        for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
        rr = rr_next;
        ++it;
    }
    if (info) *info = {it, std::sqrt(rr) / b_norm};
    return x;
}

double max_consumption(const Field& u, const ModelParams& mp) {
    double c = 0.0;
    for (double x : u.values()) c = std::max(c, consumption_rate(x, mp.s, mp.trunc));
    return c;
}

double explicit_dt_limit(const State& st, const ModelParams& mp) {
    const Grid& g = st.u.grid();
    const double a_bound = mp.trunc.truncated() ? truncation_ceiling(mp.trunc) : std::max(st.u.max(), 1.0);
    const double h = g.min_spacing();
    return h * h / (2.0 * g.dim * (1.0 + a_bound));
}

State step_imex(const State& st, const ModelParams& mp, const SchemeParams& sp) {
    const Grid& g = st.u.grid();
    const double dt = sp.dt;
    const std::size_t n = g.size();

    Field rhs_u = chemo_divergence(st.u, st.v, mp.trunc, sp.flux);
    for (std::size_t i = 0; i < n; ++i) rhs_u[i] = st.u[i] - dt * rhs_u[i];

    std::vector<double> lap(n);
    LinearOperator diffusion = [&](std::span<const double> x, std::span<double> y) {
        apply_laplacian(g, x, lap);
        for (std::size_t i = 0; i < n; ++i) y[i] = x[i] - dt * lap[i];
    };
    Field u_next = solve_spd(diffusion, rhs_u, sp.lin_tol, sp.lin_maxit);

    std::vector<double> rate(n);
    for (std::size_t i = 0; i < n; ++i) rate[i] = consumption_rate(st.u[i], mp.s, mp.trunc);
    LinearOperator reaction_diffusion = [&](std::span<const double> x, std::span<double> y) {
        apply_laplacian(g, x, lap);
        for (std::size_t i = 0; i < n; ++i) y[i] = x[i] - dt * lap[i] + dt * rate[i] * x[i];
    };
    Field v_next = solve_spd(reaction_diffusion, st.v, sp.lin_tol, sp.lin_maxit);

    require_finite(u_next, "u");
    require_finite(v_next, "v");
    return State{st.t + dt, std::move(u_next), std::move(v_next)};
}

State step_explicit(const State& st, const ModelParams& mp, const SchemeParams& sp) {
    const double limit = explicit_dt_limit(st, mp);
    if (sp.dt > limit * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "explicit step dt=" << sp.dt << " exceeds the stability limit " << limit;
        throw StepError(msg.str());
    }
    const double dt = sp.dt;
    const std::size_t n = st.u.size();
    const Field chem = chemo_divergence(st.u, st.v, mp.trunc, sp.flux);
    const Field lap_u = laplacian_neumann(st.u);
    const Field lap_v = laplacian_neumann(st.v);

    Field u_next(st.u.grid());
    Field v_next(st.v.grid());
    for (std::size_t i = 0; i < n; ++i) {
        u_next[i] = st.u[i] + dt * (lap_u[i] - chem[i]);
        v_next[i] = st.v[i] + dt * (lap_v[i] - consumption_rate(st.u[i], mp.s, mp.trunc) * st.v[i]);
    }
    require_finite(u_next, "u");
    require_finite(v_next, "v");
    return State{st.t + dt, std::move(u_next), std::move(v_next)};
}

State step(const State& st, const ModelParams& mp, const SchemeParams& sp) {
    return sp.mode == StepMode::Imex ? step_imex(st, mp, sp) : step_explicit(st, mp, sp);
}

}  // namespace chemsim

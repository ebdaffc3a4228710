#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>

#include "chemsim/grid.hpp"
#include "chemsim/truncation.hpp"

namespace chemsim {

struct ModelParams {
    double s = 1.0;  // consumption exponent, s >= 1
    TruncationParams trunc = TruncationParams::untruncated();
    double alpha = 1e-2;  // shift of z = sqrt(v + alpha), diagnostics only

    void validate() const;
};

enum class StepMode { Imex, Explicit };

struct SchemeParams {
    double dt = 1e-3;
    double t_end = 0.0;
    FluxScheme flux = FluxScheme::Centered;
    double lin_tol = 1e-12;
    int lin_maxit = 2000;
    StepMode mode = StepMode::Imex;

    void validate() const;
    /// Number of steps to t_end. Throws unless t_end is a multiple of dt.
    long long step_count() const;
};

struct State {
    double t = 0.0;
    Field u;
    Field v;

    void validate() const;
};

/// CG failed to reach the requested tolerance.
class LinearSolveError : public std::runtime_error {
public:
    LinearSolveError(const std::string& what, double residual, int iterations)
        : std::runtime_error(what), residual_(residual), iterations_(iterations) {}
    double residual() const { return residual_; }
    int iterations() const { return iterations_; }

private:
    double residual_;
    int iterations_;
};

/// NaN/inf appeared or a step precondition was violated at run time.
class StepError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// y = A x for a symmetric positive definite A.
using LinearOperator = std::function<void(std::span<const double> x, std::span<double> y)>;

struct CgInfo {
    int iterations = 0;
    double rel_residual = 0.0;
};

/// Conjugate gradients started from x0 = b, stopping at ||r|| <= tol ||b||.
/// Starting from b keeps sum(x) == sum(b) for operators with unit column
/// sums, such as I - dt*Laplacian.
Field solve_spd(const LinearOperator& apply, const Field& b, double tol, int maxit, CgInfo* info = nullptr);

/// Largest dt admitted by the explicit stepper:
/// h_min^2 / (2 dim (1 + A)) with A = m+1, or max(u, 1) when untruncated.
double explicit_dt_limit(const State& st, const ModelParams& mp);

State step_imex(const State& st, const ModelParams& mp, const SchemeParams& sp);
State step_explicit(const State& st, const ModelParams& mp, const SchemeParams& sp);
/// Dispatches on sp.mode.
State step(const State& st, const ModelParams& mp, const SchemeParams& sp);

/// Largest consumption rate max(a(u),0)^s over the cells of u.
double max_consumption(const Field& u, const ModelParams& mp);

}  // namespace chemsim

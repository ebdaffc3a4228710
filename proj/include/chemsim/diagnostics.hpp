#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "chemsim/grid.hpp"
#include "chemsim/solver.hpp"

namespace chemsim {

/// One time-stamped record of the monitored quantities.
struct DiagnosticsRow {
    double t = 0.0;
    double mass_u = 0.0;
    double min_u = 0.0;
    double max_u = 0.0;
    double min_v = 0.0;
    double max_v = 0.0;
    double u_star = 0.0;            // mean of the initial u, fixed per run
    double energy = 0.0;            // (s/4) int g(u) + (1/2) int |grad z|^2
    double grad_z_l2sq = 0.0;       // int |grad z|^2
    double grad_z_l4 = 0.0;         // int |grad z|^4 / z^2
    double consumption_diss = 0.0;  // int a(u)^s |grad z|^2
    double g_mass = 0.0;            // int g(u)
    double v_lower_bound_ref = 0.0;
};

/// CSV column order of diagnostics.csv. u_star is not persisted.
inline constexpr std::array<std::string_view, 12> kDiagnosticsColumns{
    "t",         "mass_u",      "min_u",     "max_u",           "min_v",  "max_v",
    "energy",    "grad_z_l2sq", "grad_z_l4", "consumption_diss", "g_mass", "v_lower_bound_ref"};

/// Values of a row in kDiagnosticsColumns order.
std::array<double, 12> csv_values(const DiagnosticsRow& row);

/// Per-run constants needed by collect().
struct RunReference {
    double u_star = 0.0;
    double v0_min = 0.0;
};

RunReference make_reference(const State& initial);

/// min(v0) (1 + dt (m+1)^s)^(-n). The untruncated problem only keeps v >= 0,
/// so the reference is 0 there.
double discrete_lower_bound(double v0_min, double dt, long long n, const ModelParams& mp);

/// sqrt(v + alpha); throws std::domain_error for alpha <= 0 or a negative radicand.
Field z_transform(const Field& v, double alpha);

/// g is evaluated at max(u, 0).
double energy(const State& st, const ModelParams& mp);

DiagnosticsRow collect(const State& st, const ModelParams& mp, const SchemeParams& sp, long long step,
                       const RunReference& ref);

struct EnergyResiduals {
    std::vector<double> residuals;  // one per interval
    double c_fit = 0.0;             // smallest admissible constant, >= 0
    bool feasible = true;           // false when an interval with zero grad z exceeds tol
};

/// r_n = (E_{n+1} - E_n)/dt_n + consumption_diss_n - C grad_z_l2sq_n, with C
/// fitted as the smallest value keeping every r_n <= 0. Intervals with zero
/// grad z only need r_n <= tol.
EnergyResiduals energy_residuals(std::span<const DiagnosticsRow> series, double tol = 1e-12);

struct IdentityReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_gap = 0.0;
    double h = 0.0;
};

/// int |Lap z|^2  vs  int |D^2 z|^2 - (1/2) oint d_eta |grad z|^2 on a 2D grid.
IdentityReport verify_identity_boundary(const Field& z);

/// int |D^2 z|^2 + int (|grad z|^2 / z) Lap z  vs
/// 4 int z |D^2 sqrt z|^2 + (3/4) int |grad z|^4 / z^2, for z >= floor > 0.
IdentityReport verify_identity_winkler(const Field& z, double floor);

/// Least-squares slope of log(err) against log(h).
double refinement_slope(std::span<const double> h, std::span<const double> err);

}  // namespace chemsim

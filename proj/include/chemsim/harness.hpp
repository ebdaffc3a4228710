#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "chemsim/config.hpp"
#include "chemsim/diagnostics.hpp"

namespace chemsim {

/// Command-line misuse; maps to exit status 2 together with ConfigError.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunOutcome {
    std::vector<DiagnosticsRow> rows;
    std::string csv_path;
    int snapshots_written = 0;  // u/v pairs
};

/// Runs the configured simulation, writing <output_dir>/diagnostics.csv and,
/// when snapshot_every > 0, snapshot_u_<step>.txt / snapshot_v_<step>.txt.
RunOutcome cmd_run(const RunConfig& cfg, const std::string& base_dir = ".");

struct SweepMember {
    int m = 0;
    double sup_u = 0.0;
    bool covers_solution = false;  // m >= sup u over the run
};

struct SweepPair {
    int m1 = 0;
    int m2 = 0;
    double gap_u = 0.0;  // max over recorded times of max-norm difference
    double gap_v = 0.0;
};

struct SweepReport {
    std::vector<SweepMember> members;
    std::vector<SweepPair> pairs;
    bool pass = false;  // >= 2 covering members, all their gaps <= tolerance
    double tolerance = 1e-12;

    std::string to_string() const;
};

/// Runs the config once per truncation level (concurrently) and compares
/// the recorded trajectories pairwise.
SweepReport cmd_sweep_m(const RunConfig& cfg, const std::vector<int>& m_list, const std::string& base_dir = ".");

enum class ConvergenceAxis { Space, Time };

struct ConvergenceLevel {
    int n = 0;
    double dt = 0.0;
    double resolution = 0.0;  // h for space, dt for time
    double error = 0.0;       // max-norm error against the oracle at t_end
};

struct ConvergenceReport {
    ConvergenceAxis axis = ConvergenceAxis::Space;
    std::vector<ConvergenceLevel> levels;
    double order = 0.0;
    double target = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    bool pass = false;

    std::string to_string() const;
};

/// Space: the config must be a decoupled heat problem (u0 = constant 0 with
/// an eigen v0, or v0 = constant 0 with an eigen u0); each level halves h and
/// quarters dt. Time: spatially constant u0 and v0; each level halves dt.
ConvergenceReport cmd_convergence(const RunConfig& cfg, ConvergenceAxis axis, int levels);

struct VerifyLevel {
    int n = 0;
    IdentityReport boundary;
    IdentityReport winkler;
};

struct VerifyReport {
    std::vector<VerifyLevel> levels;
    double boundary_slope = 0.0;
    double winkler_slope = 0.0;
    bool pass = false;  // both slopes >= 1.8

    std::string to_string() const;
};

/// Checks both integral identities on z = 2 + cos(pi x / Lx) cos(pi y / Ly)
/// (or the constant z = 2) over the listed resolutions.
VerifyReport cmd_verify(int dim, const std::vector<int>& n_list, double extent = 1.0, bool constant_z = false);

}  // namespace chemsim

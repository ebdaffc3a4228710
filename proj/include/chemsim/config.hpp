#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

#include "chemsim/grid.hpp"
#include "chemsim/solver.hpp"

namespace chemsim {

/// Parse or validation failure; line() is 0 when no single line is at fault.
class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, const std::string& msg);
    int line() const { return line_; }

private:
    int line_;
};

struct GridSpec {
    int dim = 1;
    std::array<int, 3> n{0, 0, 0};
    std::array<double, 3> extent{1.0, 1.0, 1.0};

    Grid make_grid() const { return Grid::uniform(dim, n, extent); }
};

enum class InitialKind { Constant, Eigen, File };

struct InitialCondition {
    InitialKind kind = InitialKind::Constant;
    double value = 1.0;     // Constant
    double baseline = 1.0;  // Eigen
    double amp = 0.0;
    int k = 1;
    std::string path;       // File

    static InitialCondition constant(double c);
    static InitialCondition eigen(double baseline, double amp, int k);

    bool is_constant(double c) const { return kind == InitialKind::Constant && value == c; }
};

/// Defaults (every key except dim, n and t_end is optional):
///   extent=1  dt=1e-3  s=1  m=none  alpha=0.01  flux=centered
///   lin_tol=1e-12  lin_maxit=2000  mode=imex  every=1  snapshot_every=0
///   output_dir=.  u0=constant 1  v0=constant 1
struct RunConfig {
    GridSpec grid;
    ModelParams model;
    SchemeParams scheme;
    InitialCondition u0 = InitialCondition::constant(1.0);
    InitialCondition v0 = InitialCondition::constant(1.0);
    int every = 1;
    int snapshot_every = 0;
    std::string output_dir = ".";
};

/// `key = value` lines, `#` starts a comment. Unknown or duplicate keys,
/// malformed values and violated invariants raise ConfigError.
RunConfig parse_config(std::string_view text);

/// Canonical text: every key in a fixed order, shortest round-trip numbers.
std::string serialize_config(const RunConfig& cfg);

/// Throws ConfigError(0, ...) when an invariant is violated.
void validate_config(const RunConfig& cfg);

/// Evaluates the initial-condition specs on the config grid. File paths are
/// resolved relative to `base_dir` unless absolute.
State build_initial_state(const RunConfig& cfg, const std::string& base_dir = ".");

}  // namespace chemsim

#pragma once

#include <functional>

#include "chemsim/diagnostics.hpp"
#include "chemsim/solver.hpp"

namespace chemsim {

/// Receives each recorded row together with the state it was computed from.
using DiagnosticsSink = std::function<void(const DiagnosticsRow&, const State&)>;

struct RunSummary {
    long long steps = 0;
    long long rows = 0;
    double sup_u = 0.0;  // max of u over every step, not only recorded ones
    double inf_u = 0.0;
};

/// Advances `initial` to sp.t_end, emitting a row at t=0, every `every`
/// steps and at t_end. Step times are t0 + n*dt.
State run(const State& initial, const ModelParams& mp, const SchemeParams& sp, int every,
          const DiagnosticsSink& sink, RunSummary* summary = nullptr);

}  // namespace chemsim

#include "chemsim/simulation.hpp"

#include <algorithm>
#include <stdexcept>

namespace chemsim {

State run(const State& initial, const ModelParams& mp, const SchemeParams& sp, int every,
          const DiagnosticsSink& sink, RunSummary* summary) {
    if (every < 1) throw std::invalid_argument("output cadence must be >= 1");
    mp.validate();
    sp.validate();
    initial.validate();
    const long long steps = sp.step_count();
    const RunReference ref = make_reference(initial);

    RunSummary stats;
    stats.sup_u = initial.u.max();
    stats.inf_u = initial.u.min();
    auto emit = [&](const State& st, long long n) {
        if (sink) sink(collect(st, mp, sp, n, ref), st);
        ++stats.rows;
    };

    State st = initial;
    emit(st, 0);
    for (long long n = 1; n <= steps; ++n) {
        st = step(st, mp, sp);
        st.t = initial.t + static_cast<double>(n) * sp.dt;
        stats.sup_u = std::max(stats.sup_u, st.u.max());
        stats.inf_u = std::min(stats.inf_u, st.u.min());
        if (n % every == 0 || n == steps) emit(st, n);
    }
    stats.steps = steps;
    if (summary) *summary = stats;
    return st;
}

}  // namespace chemsim

#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "chemsim/diagnostics.hpp"
#include "chemsim/harness.hpp"
#include "chemsim/simulation.hpp"

namespace py = pybind11;
using namespace chemsim;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

TruncationParams level(std::optional<int> m) {
    return m ? TruncationParams::level(*m) : TruncationParams::untruncated();
}

Grid grid_for(const Array& a, const std::vector<double>& extent) {
    const int dim = static_cast<int>(a.ndim());
    if (dim < 1 || dim > 3) throw std::invalid_argument("arrays must be 1-, 2- or 3-dimensional");
    std::array<int, 3> n{1, 1, 1};
    std::array<double, 3> ext{1.0, 1.0, 1.0};
    for (int k = 0; k < dim; ++k) {
        n[k] = static_cast<int>(a.shape(k));
        if (extent.size() == 1) ext[k] = extent[0];
        else if (extent.size() == static_cast<std::size_t>(dim)) ext[k] = extent[k];
        else throw std::invalid_argument("extent needs 1 or ndim entries");
    }
    return Grid::uniform(dim, n, ext);
}

Field to_field(const Array& a, const Grid& g) {
    const auto* p = a.data();
    return Field(g, std::vector<double>(p, p + a.size()));
}

Array to_array(const Field& f) {
    std::vector<py::ssize_t> shape;
    for (int k = 0; k < f.grid().dim; ++k) shape.push_back(f.grid().n[k]);
    Array out(shape);
    std::copy(f.values().begin(), f.values().end(), out.mutable_data());
    return out;
}

py::dict rows_to_dict(const std::vector<DiagnosticsRow>& rows) {
    py::dict d;
    for (std::size_t c = 0; c < kDiagnosticsColumns.size(); ++c) {
        Array col(static_cast<py::ssize_t>(rows.size()));
        auto* p = col.mutable_data();
        for (std::size_t k = 0; k < rows.size(); ++k) p[k] = csv_values(rows[k])[c];
        d[py::str(std::string(kDiagnosticsColumns[c]))] = col;
    }
    return d;
}

FluxScheme flux_of(const std::string& s) {
    if (s == "centered") return FluxScheme::Centered;
    if (s == "upwind") return FluxScheme::Upwind;
    throw std::invalid_argument("flux must be 'centered' or 'upwind'");
}

template <double (*F)(double, const TruncationParams&)>
py::object vectorized(py::object u, std::optional<int> m) {
    const auto p = level(m);
    return py::vectorize([p](double x) { return F(x, p); })(u);
}

}  // namespace

PYBIND11_MODULE(_chemsim, m) {
    m.doc() = "Finite-volume solver for a truncated chemotaxis-consumption system.";

    m.def("eval_a", &vectorized<eval_a>, py::arg("u"), py::arg("m") = py::none(),
          "Truncation a_m(u); m=None is the untruncated map.");
    m.def("eval_a_prime", &vectorized<eval_a_prime>, py::arg("u"), py::arg("m") = py::none());
    m.def("eval_a_second", &vectorized<eval_a_second>, py::arg("u"), py::arg("m") = py::none());
    m.def(
        "eval_g",
        [](double r, double s, std::optional<int> mm) { return eval_g(r, s, level(mm)); },
        py::arg("r"), py::arg("s"), py::arg("m") = py::none());
    m.def(
        "power_gap",
        [](double w1, double w2, double s) {
            const auto g = power_gap(w1, w2, s);
            return py::make_tuple(g.lhs, g.rhs);
        },
        py::arg("w1"), py::arg("w2"), py::arg("s"));

    m.def(
        "laplacian",
        [](const Array& f, std::vector<double> extent) {
            const Grid g = grid_for(f, extent);
            return to_array(laplacian_neumann(to_field(f, g)));
        },
        py::arg("f"), py::arg("extent") = std::vector<double>{1.0}, "Zero-flux finite-volume Laplacian.");
    m.def(
        "chemo_divergence",
        [](const Array& u, const Array& v, std::optional<int> mm, const std::string& flux,
           std::vector<double> extent) {
            const Grid g = grid_for(u, extent);
            return to_array(chemo_divergence(to_field(u, g), to_field(v, grid_for(v, extent)), level(mm), flux_of(flux)));
        },
        py::arg("u"), py::arg("v"), py::arg("m") = py::none(), py::arg("flux") = "centered",
        py::arg("extent") = std::vector<double>{1.0});
    m.def(
        "integrate",
        [](const Array& f, std::vector<double> extent) { return integrate(to_field(f, grid_for(f, extent))); },
        py::arg("f"), py::arg("extent") = std::vector<double>{1.0});

    m.def(
        "simulate",
        [](const Array& u0, const Array& v0, double s, std::optional<int> mm, double dt, double t_end, int every,
           const std::string& flux, const std::string& mode, double alpha, std::vector<double> extent) {
            const Grid g = grid_for(u0, extent);
            ModelParams mp;
            mp.s = s;
            mp.trunc = level(mm);
            mp.alpha = alpha;
            SchemeParams sp;
            sp.dt = dt;
            sp.t_end = t_end;
            sp.flux = flux_of(flux);
            if (mode == "imex") sp.mode = StepMode::Imex;
            else if (mode == "explicit") sp.mode = StepMode::Explicit;
            else throw std::invalid_argument("mode must be 'imex' or 'explicit'");
            const State init{0.0, to_field(u0, g), to_field(v0, grid_for(v0, extent))};
            std::vector<DiagnosticsRow> rows;
            const State fin = [&] {
                py::gil_scoped_release release;
                return run(init, mp, sp, every, [&](const DiagnosticsRow& r, const State&) { rows.push_back(r); });
            }();
            return py::make_tuple(to_array(fin.u), to_array(fin.v), rows_to_dict(rows));
        },
        py::arg("u0"), py::arg("v0"), py::arg("s") = 1.0, py::arg("m") = py::none(), py::arg("dt") = 1e-3,
        py::arg("t_end") = 0.0, py::arg("every") = 1, py::arg("flux") = "centered", py::arg("mode") = "imex",
        py::arg("alpha") = 1e-2, py::arg("extent") = std::vector<double>{1.0},
        "Advance (u0, v0) to t_end. Returns (u, v, diagnostics) with one array per diagnostics column.");

    m.def(
        "run_config",
        [](const std::string& text, const std::string& base_dir) {
            const RunConfig cfg = parse_config(text);
            RunOutcome out;
            {
                py::gil_scoped_release release;
                out = cmd_run(cfg, base_dir);
            }
            return py::make_tuple(out.csv_path, rows_to_dict(out.rows));
        },
        py::arg("text"), py::arg("base_dir") = ".", "Run a config text; writes diagnostics.csv like the CLI.");
    m.def("canonical_config", [](const std::string& text) { return serialize_config(parse_config(text)); },
          py::arg("text"));

    m.def(
        "verify_identities",
        [](std::vector<int> n_list, double extent, bool constant) {
            const VerifyReport rep = cmd_verify(2, n_list, extent, constant);
            py::list levels;
            for (const auto& lvl : rep.levels) {
                py::dict d;
                d["n"] = lvl.n;
                d["boundary"] = py::make_tuple(lvl.boundary.lhs, lvl.boundary.rhs, lvl.boundary.abs_gap);
                d["winkler"] = py::make_tuple(lvl.winkler.lhs, lvl.winkler.rhs, lvl.winkler.abs_gap);
                levels.append(d);
            }
            py::dict out;
            out["levels"] = levels;
            out["boundary_slope"] = rep.boundary_slope;
            out["winkler_slope"] = rep.winkler_slope;
            out["pass"] = rep.pass;
            return out;
        },
        py::arg("n_list") = std::vector<int>{32, 64, 128}, py::arg("extent") = 1.0, py::arg("constant") = false);

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<StepError>(m, "StepError", PyExc_RuntimeError);
    py::register_exception<LinearSolveError>(m, "LinearSolveError", PyExc_RuntimeError);
}

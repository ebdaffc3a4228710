#include "chemsim/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace chemsim {

Grid Grid::uniform(int dim, std::array<int, 3> cells, std::array<double, 3> extent,
                   std::array<double, 3> origin) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("grid dim must be 1, 2 or 3");
    Grid g;
    g.dim = dim;
    for (int a = 0; a < 3; ++a) {
        if (a < dim) {
            if (cells[a] < 2) throw std::invalid_argument("grid needs n >= 2 cells per axis");
            if (!(extent[a] > 0.0) || !std::isfinite(extent[a]))
                throw std::invalid_argument("grid extent must be positive");
            g.n[a] = cells[a];
            g.h[a] = extent[a] / cells[a];
            g.origin[a] = origin[a];
        } else {
            g.n[a] = 1;
            g.h[a] = 1.0;
            g.origin[a] = 0.0;
        }
    }
    return g;
}

std::size_t Grid::size() const {
    return static_cast<std::size_t>(n[0]) * static_cast<std::size_t>(n[1]) * static_cast<std::size_t>(n[2]);
}

double Grid::cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < dim; ++a) v *= h[a];
    return v;
}

double Grid::volume() const {
    double v = 1.0;
    for (int a = 0; a < dim; ++a) v *= extent(a);
    return v;
}

double Grid::min_spacing() const {
    double m = h[0];
    for (int a = 1; a < dim; ++a) m = std::min(m, h[a]);
    return m;
}

std::size_t Grid::stride(int axis) const {
    std::size_t s = 1;
    for (int a = 2; a > axis; --a) s *= static_cast<std::size_t>(n[a]);
    return s;
}

Field::Field(const Grid& grid, double fill) : grid_(grid), values_(grid.size(), fill) {}

Field::Field(const Grid& grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw std::invalid_argument("field has " + std::to_string(values_.size()) + " values, grid has " +
                                    std::to_string(grid_.size()) + " cells");
}

bool Field::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
}

double Field::min() const { return *std::min_element(values_.begin(), values_.end()); }
double Field::max() const { return *std::max_element(values_.begin(), values_.end()); }

std::array<int, 3> unflatten(const Grid& g, std::size_t idx) {
    std::array<int, 3> c{0, 0, 0};
    for (int a = 2; a >= 0; --a) {
        c[a] = static_cast<int>(idx % static_cast<std::size_t>(g.n[a]));
        idx /= static_cast<std::size_t>(g.n[a]);
    }
    return c;
}

void require_same_grid(const Field& a, const Field& b) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("fields live on different grids");
}

namespace {

// Calls face(lo, hi, axis) for every interior face, lo < hi the adjacent
// cells along `axis`. Iteration order is fixed.
template <class FaceFn>
void for_each_face(const Grid& g, FaceFn&& face) {
    const std::size_t total = g.size();
    for (int a = 0; a < g.dim; ++a) {
        const std::size_t st = g.stride(a);
        const std::size_t na = static_cast<std::size_t>(g.n[a]);
        for (std::size_t idx = 0; idx < total; ++idx) {
            if ((idx / st) % na + 1 < na) face(idx, idx + st, a);
        }
    }
}

}  // namespace

void apply_laplacian(const Grid& g, std::span<const double> f, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    std::array<double, 3> inv_h2{};
    for (int a = 0; a < g.dim; ++a) inv_h2[a] = 1.0 / (g.h[a] * g.h[a]);
    for_each_face(g, [&](std::size_t lo, std::size_t hi, int a) {
        const double flux = (f[hi] - f[lo]) * inv_h2[a];
        out[lo] += flux;
        out[hi] -= flux;
    });
}

Field laplacian_neumann(const Field& f) {
    Field out(f.grid());
    apply_laplacian(f.grid(), f.values(), out.values());
    return out;
}

Field chemo_divergence(const Field& u, const Field& v, const TruncationParams& p, FluxScheme scheme) {
    require_same_grid(u, v);
    const Grid& g = u.grid();
    Field out(g);
    std::array<double, 3> inv_h2{};
    for (int a = 0; a < g.dim; ++a) inv_h2[a] = 1.0 / (g.h[a] * g.h[a]);
    for_each_face(g, [&](std::size_t lo, std::size_t hi, int a) {
        const double dv = v[hi] - v[lo];
        double u_face;
        if (scheme == FluxScheme::Centered) {
            u_face = 0.5 * (u[lo] + u[hi]);
        } else {
            u_face = dv >= 0.0 ? u[lo] : u[hi];
        }
        const double flux = eval_a(u_face, p) * (dv * inv_h2[a]);
        out[lo] += flux;
        out[hi] -= flux;
    });
    return out;
}

Field gradient_sq(const Field& f) {
    const Grid& g = f.grid();
    Field out(g);
    const std::size_t total = g.size();
    for (int a = 0; a < g.dim; ++a) {
        const std::size_t st = g.stride(a);
        const int na = g.n[a];
        const double h = g.h[a];
        for (std::size_t idx = 0; idx < total; ++idx) {
            const int i = static_cast<int>((idx / st) % static_cast<std::size_t>(na));
            double d;
            if (i == 0) {
                d = (f[idx + st] - f[idx]) / h;
            } else if (i == na - 1) {
                d = (f[idx] - f[idx - st]) / h;
            } else {
                d = (f[idx + st] - f[idx - st]) / (2.0 * h);
            }
            out[idx] += d * d;
        }
    }
    return out;
}

double compensated_sum(std::span<const double> xs) {
    double sum = 0.0;
    double c = 0.0;
    for (double x : xs) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            c += (sum - t) + x;
        } else {
            c += (x - t) + sum;
        }
        sum = t;
    }
    return sum + c;
}

double integrate(const Grid& g, std::span<const double> f) { return g.cell_volume() * compensated_sum(f); }

double integrate(const Field& f) { return integrate(f.grid(), f.values()); }

double lp_norm(const Field& f, double p) {
    const auto vals = f.values();
    if (std::isinf(p) && p > 0) {
        double m = 0.0;
        for (double x : vals) m = std::max(m, std::abs(x));
        return m;
    }
    if (p != 1.0 && p != 2.0 && p != 4.0) throw std::invalid_argument("lp_norm supports p in {1, 2, 4, inf}");
    std::vector<double> powered(vals.size());
    std::transform(vals.begin(), vals.end(), powered.begin(), [p](double x) {
        const double ax = std::abs(x);
        if (p == 1.0) return ax;
        if (p == 2.0) return ax * ax;
        return ax * ax * ax * ax;
    });
    return std::pow(integrate(f.grid(), powered), 1.0 / p);
}

}  // namespace chemsim

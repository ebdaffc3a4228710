#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "chemsim/truncation.hpp"

namespace chemsim {

/// Uniform cell-centered tensor-product grid on a box, 1 to 3 dimensions.
struct Grid {
    int dim = 1;
    std::array<int, 3> n{1, 1, 1};
    std::array<double, 3> h{1.0, 1.0, 1.0};
    std::array<double, 3> origin{0.0, 0.0, 0.0};

    /// Validates dim in {1,2,3}, n >= 2 and extent > 0 on the active axes.
    static Grid uniform(int dim, std::array<int, 3> cells, std::array<double, 3> extent,
                        std::array<double, 3> origin = {0.0, 0.0, 0.0});

    std::size_t size() const;
    double extent(int axis) const { return n[axis] * h[axis]; }
    double cell_volume() const;
    double volume() const;
    double min_spacing() const;
    /// Cell-center coordinate of index i along an axis.
    double center(int axis, int i) const { return origin[axis] + (i + 0.5) * h[axis]; }
    /// Row-major stride of an axis (axis 0 varies slowest).
    std::size_t stride(int axis) const;

    bool operator==(const Grid&) const = default;
};

/// One real value per cell center, row-major with axis 0 slowest.
class Field {
public:
    explicit Field(const Grid& grid, double fill = 0.0);
    Field(const Grid& grid, std::vector<double> values);

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }

    double& operator[](std::size_t i) { return values_[i]; }
    double operator[](std::size_t i) const { return values_[i]; }

    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }

    bool all_finite() const;
    double min() const;
    double max() const;

private:
    Grid grid_;
    std::vector<double> values_;
};

/// Cell coordinates of a flat index.
std::array<int, 3> unflatten(const Grid& g, std::size_t idx);

enum class FluxScheme { Centered, Upwind };

/// Throws std::invalid_argument when two fields live on different grids.
void require_same_grid(const Field& a, const Field& b);

// Discrete operators. All of them are in flux form over interior faces with
// zero flux through boundary faces, so cell sums of the results telescope.

Field laplacian_neumann(const Field& f);
/// Raw-array variant used by the linear solver; out is overwritten.
void apply_laplacian(const Grid& g, std::span<const double> f, std::span<double> out);

/// Divergence of a(u) grad v with the face value of u taken as the
/// arithmetic mean (Centered) or the donor cell chosen by the sign of the
/// face gradient of v (Upwind). The u-equation subtracts this term.
Field chemo_divergence(const Field& u, const Field& v, const TruncationParams& p, FluxScheme scheme);

/// |grad f|^2 per cell, centered differences inside and one-sided
/// differences in boundary cells.
Field gradient_sq(const Field& f);

/// Midpoint quadrature h^dim * sum(f), compensated summation.
double integrate(const Field& f);
double integrate(const Grid& g, std::span<const double> f);

/// L^p norm for p in {1, 2, 4, infinity}.
double lp_norm(const Field& f, double p);

/// Neumaier-compensated sum of a sequence.
double compensated_sum(std::span<const double> xs);

}  // namespace chemsim

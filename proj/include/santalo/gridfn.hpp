#pragma once

#include <array>
#include <vector>

#include "santalo/errors.hpp"
#include "santalo/vec2.hpp"

namespace santalo {

// Extended-real sentinel: values at or beyond ±kInfThreshold count as ±infinity.
// Arithmetic on sentinels is always guarded, never performed.
inline constexpr double kInfValue = 1e308;
inline constexpr double kInfThreshold = 1e300;

inline bool is_pos_inf(double v) { return v >= kInfThreshold; }
inline bool is_neg_inf(double v) { return v <= -kInfThreshold; }
inline bool is_finite_value(double v) { return v > -kInfThreshold && v < kInfThreshold; }

// Per-axis closed interval.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
};

struct Box {
    int dim = 2;
    std::array<Interval, 2> axis;
};

// Extended-real function phi (or a nonnegative density) sampled on a regular
// tensor grid over `box`. Row-major storage: index = i0 * shape[1] + i1.
struct GridFn {
    int dim = 2;
    Box box;
    std::array<int, 2> shape{2, 2};  // shape[1] == 1 when dim == 1
    std::vector<double> values;
    bool convexified = false;

    double node(int axis, int i) const {
        const Interval& iv = box.axis[static_cast<std::size_t>(axis)];
        int n = shape[static_cast<std::size_t>(axis)];
        return iv.lo + (iv.hi - iv.lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    double step(int axis) const {
        const Interval& iv = box.axis[static_cast<std::size_t>(axis)];
        return (iv.hi - iv.lo) / static_cast<double>(shape[static_cast<std::size_t>(axis)] - 1);
    }
    double at(int i0, int i1 = 0) const {
        return values[static_cast<std::size_t>(i0) * static_cast<std::size_t>(shape[1]) +
                      static_cast<std::size_t>(i1)];
    }
    double& at(int i0, int i1 = 0) {
        return values[static_cast<std::size_t>(i0) * static_cast<std::size_t>(shape[1]) +
                      static_cast<std::size_t>(i1)];
    }
    std::size_t count() const { return values.size(); }
};

GridFn make_grid(int dim, const Box& box, std::array<int, 2> shape, double fill = 0.0);

// Sample phi(node) over the grid.
template <typename F>
GridFn sample_grid(int dim, const Box& box, std::array<int, 2> shape, F&& phi) {
    GridFn g = make_grid(dim, box, shape);
    if (dim == 1) {
        for (int i = 0; i < g.shape[0]; ++i) g.at(i) = phi(Vec2{g.node(0, i), 0.0});
    } else {
        for (int i = 0; i < g.shape[0]; ++i) {
            for (int j = 0; j < g.shape[1]; ++j) g.at(i, j) = phi(Vec2{g.node(0, i), g.node(1, j)});
        }
    }
    return g;
}

// Multilinear interpolation of the sampled values; +inf outside the box or when
// any supporting corner is infinite.
double grid_interp(const GridFn& g, const Vec2& x);

// Checks discrete convexity along axis lines and both diagonals within slack.
bool grid_is_convex(const GridFn& g, double slack = 1e-9);

// True when the finite-valued node set is lattice-convex (along lines/diagonals).
bool grid_finite_set_convex(const GridFn& g);

}  // namespace santalo

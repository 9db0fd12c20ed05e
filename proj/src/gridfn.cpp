#include "santalo/gridfn.hpp"

#include <cmath>

namespace santalo {

GridFn make_grid(int dim, const Box& box, std::array<int, 2> shape, double fill) {
    if (dim != 1 && dim != 2) throw UnsupportedDimensionError("GridFn supports dim 1 or 2");
    GridFn g;
    g.dim = dim;
    g.box = box;
    g.box.dim = dim;
    g.shape = shape;
    if (dim == 1) g.shape[1] = 1;
    if (g.shape[0] < 2 || (dim == 2 && g.shape[1] < 2)) throw InputError("grid needs >= 2 nodes per axis");
    for (int axis = 0; axis < dim; ++axis) {
        if (!(box.axis[static_cast<std::size_t>(axis)].width() > 0.0)) {
            throw InputError("grid box must have positive side lengths");
        }
    }
    g.values.assign(static_cast<std::size_t>(g.shape[0]) * static_cast<std::size_t>(g.shape[1]), fill);
    return g;
}

double grid_interp(const GridFn& g, const Vec2& x) {
    auto locate = [&](int axis, double v, int& i, double& t) -> bool {
        const Interval& iv = g.box.axis[static_cast<std::size_t>(axis)];
        int n = g.shape[static_cast<std::size_t>(axis)];
        double s = (v - iv.lo) / iv.width() * (n - 1);
        if (s < -1e-9 || s > n - 1 + 1e-9) return false;
        s = std::min(std::max(s, 0.0), static_cast<double>(n - 1));
        i = std::min(static_cast<int>(s), n - 2);
        t = s - i;
        return true;
    };
    if (g.dim == 1) {
        int i;
        double t;
        if (!locate(0, x.x, i, t)) return kInfValue;
        double a = g.at(i), b = g.at(i + 1);
        if (!is_finite_value(a) || !is_finite_value(b)) return kInfValue;
        return a + (b - a) * t;
    }
    int i, j;
    double t, u;
    if (!locate(0, x.x, i, t) || !locate(1, x.y, j, u)) return kInfValue;
    double v00 = g.at(i, j), v10 = g.at(i + 1, j), v01 = g.at(i, j + 1), v11 = g.at(i + 1, j + 1);
    if (!is_finite_value(v00) || !is_finite_value(v10) || !is_finite_value(v01) || !is_finite_value(v11)) {
        return kInfValue;
    }
    return v00 * (1 - t) * (1 - u) + v10 * t * (1 - u) + v01 * (1 - t) * u + v11 * t * u;
}

namespace {

// Midpoint convexity along a stride: v[k-1] + v[k+1] >= 2 v[k] - slack.
bool line_convex(const GridFn& g, std::size_t start, std::size_t stride, int count, double slack) {
    for (int k = 1; k + 1 < count; ++k) {
        double a = g.values[start + static_cast<std::size_t>(k - 1) * stride];
        double b = g.values[start + static_cast<std::size_t>(k) * stride];
        double c = g.values[start + static_cast<std::size_t>(k + 1) * stride];
        if (!is_finite_value(b)) continue;
        double lhs = (is_finite_value(a) ? a : kInfValue) / 2.0 + (is_finite_value(c) ? c : kInfValue) / 2.0;
        if (is_finite_value(a) && is_finite_value(c)) {
            if (lhs < b - slack) return false;
        }
        // infinite neighbor: midpoint inequality holds trivially
    }
    return true;
}

bool line_finite_convex(const GridFn& g, std::size_t start, std::size_t stride, int count) {
    // finite nodes along the line must form one contiguous run
    int first = -1, last = -1;
    for (int k = 0; k < count; ++k) {
        if (is_finite_value(g.values[start + static_cast<std::size_t>(k) * stride])) {
            if (first < 0) first = k;
            last = k;
        }
    }
    for (int k = first; k >= 0 && k <= last; ++k) {
        if (!is_finite_value(g.values[start + static_cast<std::size_t>(k) * stride])) return false;
    }
    return true;
}

}  // namespace

bool grid_is_convex(const GridFn& g, double slack) {
    int n0 = g.shape[0], n1 = g.shape[1];
    std::size_t s1 = 1, s0 = static_cast<std::size_t>(n1);
    if (g.dim == 1) return line_convex(g, 0, 1, n0, slack);
    for (int i = 0; i < n0; ++i) {
        if (!line_convex(g, static_cast<std::size_t>(i) * s0, s1, n1, slack)) return false;
    }
    for (int j = 0; j < n1; ++j) {
        if (!line_convex(g, static_cast<std::size_t>(j), s0, n0, slack)) return false;
    }
    // diagonals (both orientations)
    for (int d = -(n1 - 1); d < n0; ++d) {
        int i0 = std::max(0, d), j0 = i0 - d;
        int len = std::min(n0 - i0, n1 - j0);
        if (len >= 3) {
            if (!line_convex(g, static_cast<std::size_t>(i0) * s0 + static_cast<std::size_t>(j0), s0 + s1,
                             len, slack)) {
                return false;
            }
        }
        int j1 = std::min(n1 - 1, n1 - 1 + d);  // anti-diagonal start
        int i1 = std::max(0, d);
        j1 = (i1 - d);
        j1 = n1 - 1 - j1;
        int len2 = std::min(n0 - i1, j1 + 1);
        if (len2 >= 3) {
            if (!line_convex(g, static_cast<std::size_t>(i1) * s0 + static_cast<std::size_t>(j1), s0 - s1,
                             len2, slack)) {
                return false;
            }
        }
    }
    return true;
}

bool grid_finite_set_convex(const GridFn& g) {
    int n0 = g.shape[0], n1 = g.shape[1];
    std::size_t s1 = 1, s0 = static_cast<std::size_t>(n1);
    if (g.dim == 1) return line_finite_convex(g, 0, 1, n0);
    for (int i = 0; i < n0; ++i) {
        if (!line_finite_convex(g, static_cast<std::size_t>(i) * s0, s1, n1)) return false;
    }
    for (int j = 0; j < n1; ++j) {
        if (!line_finite_convex(g, static_cast<std::size_t>(j), s0, n0)) return false;
    }
    return true;
}

}  // namespace santalo

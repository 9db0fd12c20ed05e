#include "santalo/functions.hpp"

#include <algorithm>
#include <cmath>

namespace santalo {

namespace {

bool polygon_symmetric(const Polygon& K) {
    for (const auto& v : K.verts) {
        bool found = false;
        for (const auto& w : K.verts) {
            if (std::fabs(v.x + w.x) <= 1e-9 && std::fabs(v.y + w.y) <= 1e-9) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

struct PotentialVisitor {
    const LogConcaveFn& f;
    Vec2 x;

    double operator()(const GaussianKernel& k) const {
        Vec2 d = x - k.center;
        if (f.dim == 1) return -k.logamp + 0.5 * k.A.a11 * d.x * d.x;
        return -k.logamp + 0.5 * k.A.quad(d);
    }
    double operator()(const ExpNormKernel& k) const {
        if (f.dim == 1) return std::fabs(x.x);
        if (k.p == 1.0) return std::fabs(x.x) + std::fabs(x.y);
        return norm(x);
    }
    double operator()(const IndicatorKernel& k) const {
        if (f.dim == 1) {
            return (x.x >= k.iv.lo - 1e-15 && x.x <= k.iv.hi + 1e-15) ? 0.0 : kInfValue;
        }
        return contains(k.body, x) ? 0.0 : kInfValue;
    }
    double operator()(const BallIndicatorKernel& k) const {
        return norm(x) <= k.radius * (1.0 + 1e-15) ? 0.0 : kInfValue;
    }
    double operator()(const SupportExpKernel& k) const {
        if (f.dim == 1) return std::max(x.x * k.iv.lo, x.x * k.iv.hi);
        return support_function(k.body, x);
    }
    double operator()(const GridKernel& k) const { return grid_interp(k.potential, x); }
    double operator()(const TruncGaussPolarKernel& k) const {
        double r = (f.dim == 1) ? std::fabs(x.x) : norm(x);
        double knee = k.alpha * k.radius;
        if (r <= knee) return 0.5 * r * r / k.alpha;
        return k.radius * r - 0.5 * k.alpha * k.radius * k.radius;
    }
    double operator()(const TruncatedKernel& k) const {
        double p = potential(*k.base, x);
        if (is_pos_inf(p) || p > k.t) return kInfValue;
        return p;
    }
    double operator()(const HomothetyKernel& k) const {
        double p = potential(*k.base, x / k.lambda);
        if (is_pos_inf(p)) return kInfValue;
        return k.lambda * p;
    }
    double operator()(const PowerKernel& k) const {
        double p = potential(*k.base, x);
        if (is_pos_inf(p)) return kInfValue;
        return k.alpha * p;
    }
};

}  // namespace

double potential(const LogConcaveFn& f, const Vec2& x) {
    return std::visit(PotentialVisitor{f, x}, f.kernel);
}

LogConcaveFn gaussian_fn(int dim, const Mat2& A, const Vec2& center, double logamp) {
    if (dim != 1 && dim != 2) throw UnsupportedDimensionError("gaussian_fn: dim must be 1 or 2");
    LogConcaveFn f;
    f.dim = dim;
    f.kernel = GaussianKernel{A, center, logamp};
    f.even = (std::fabs(center.x) == 0.0 && (dim == 1 || std::fabs(center.y) == 0.0));
    return f;
}

LogConcaveFn expnorm_fn(int dim, double p) {
    if (p != 1.0 && p != 2.0) throw InputError("expnorm_fn: p must be 1 or 2");
    LogConcaveFn f;
    f.dim = dim;
    f.even = true;
    f.kernel = ExpNormKernel{p};
    return f;
}

LogConcaveFn indicator_fn(const Polygon& K) {
    LogConcaveFn f;
    f.dim = 2;
    f.even = polygon_symmetric(K);
    f.kernel = IndicatorKernel{K, Interval{}};
    return f;
}

LogConcaveFn indicator_fn(const Interval& iv) {
    if (!(iv.hi > iv.lo)) throw InputError("indicator_fn: empty interval");
    LogConcaveFn f;
    f.dim = 1;
    f.even = std::fabs(iv.lo + iv.hi) <= 1e-12;
    f.kernel = IndicatorKernel{Polygon{}, iv};
    return f;
}

LogConcaveFn ball_indicator_fn(double radius) {
    if (!(radius > 0.0)) throw InputError("ball_indicator_fn: radius must be > 0");
    LogConcaveFn f;
    f.dim = 2;
    f.even = true;
    f.kernel = BallIndicatorKernel{radius};
    return f;
}

LogConcaveFn support_exp_fn(const Polygon& K) {
    LogConcaveFn f;
    f.dim = 2;
    f.even = polygon_symmetric(K);
    f.kernel = SupportExpKernel{K, Interval{}};
    return f;
}

LogConcaveFn support_exp_fn(const Interval& iv) {
    LogConcaveFn f;
    f.dim = 1;
    f.even = std::fabs(iv.lo + iv.hi) <= 1e-12;
    f.kernel = SupportExpKernel{Polygon{}, iv};
    return f;
}

LogConcaveFn grid_backed_fn(GridFn potential_grid, bool even) {
    LogConcaveFn f;
    f.dim = potential_grid.dim;
    f.even = even;
    f.kernel = GridKernel{std::move(potential_grid)};
    return f;
}

double SConcaveFn::eval(const Vec2& x) const {
    if (base) {
        double p = potential(*base, x);
        if (!is_finite_value(p) || p >= static_cast<double>(s)) return 0.0;
        return std::pow(1.0 - p / static_cast<double>(s), static_cast<double>(s));
    }
    double v = grid_interp(*grid, x);
    if (!is_finite_value(v)) return 0.0;
    return std::max(v, 0.0);
}

SConcaveFn s_approx(const LogConcaveFn& f, int s) {
    if (s < 1) throw InputError("s_approx: s must be >= 1");
    SConcaveFn g;
    g.s = s;
    g.dim = f.dim;
    g.even = f.even;
    g.base = std::make_shared<LogConcaveFn>(f);
    return g;
}

SConcaveFn s_concave_from_grid(GridFn density, int s, bool even) {
    if (s < 1) throw InputError("s_concave_from_grid: s must be >= 1");
    SConcaveFn g;
    g.s = s;
    g.dim = density.dim;
    g.even = even;
    g.grid = std::make_shared<GridFn>(std::move(density));
    return g;
}

namespace {

Box box_around(int dim, const Vec2& c, const Vec2& hw) {
    Box b;
    b.dim = dim;
    b.axis[0] = {c.x - hw.x, c.x + hw.x};
    b.axis[1] = (dim == 2) ? Interval{c.y - hw.y, c.y + hw.y} : Interval{0.0, 0.0};
    return b;
}

Box bbox_of(const Polygon& K) {
    Box b;
    b.dim = 2;
    double xlo = K[0].x, xhi = K[0].x, ylo = K[0].y, yhi = K[0].y;
    for (const auto& v : K.verts) {
        xlo = std::min(xlo, v.x);
        xhi = std::max(xhi, v.x);
        ylo = std::min(ylo, v.y);
        yhi = std::max(yhi, v.y);
    }
    b.axis[0] = {xlo, xhi};
    b.axis[1] = {ylo, yhi};
    return b;
}

struct LevelBoxVisitor {
    const LogConcaveFn& f;
    double t;

    Box operator()(const GaussianKernel& k) const {
        double tt = t + k.logamp;
        if (tt <= 0.0) throw EmptyLevelError("level set has no interior");
        if (f.dim == 1) {
            double hw = std::sqrt(2.0 * tt / k.A.a11);
            return box_around(1, k.center, {hw, 0.0});
        }
        Mat2 Ainv = k.A.inverse();
        return box_around(2, k.center, {std::sqrt(2.0 * tt * Ainv.a11), std::sqrt(2.0 * tt * Ainv.a22)});
    }
    Box operator()(const ExpNormKernel&) const {
        if (t <= 0.0) throw EmptyLevelError("level set has no interior");
        return box_around(f.dim, {}, {t, t});
    }
    Box operator()(const IndicatorKernel& k) const {
        if (t < 0.0) throw EmptyLevelError("level set has no interior");
        if (f.dim == 1) {
            Box b;
            b.dim = 1;
            b.axis[0] = k.iv;
            return b;
        }
        return bbox_of(k.body);
    }
    Box operator()(const BallIndicatorKernel& k) const {
        if (t < 0.0) throw EmptyLevelError("level set has no interior");
        return box_around(2, {}, {k.radius, k.radius});
    }
    Box operator()(const SupportExpKernel& k) const {
        if (t <= 0.0) throw EmptyLevelError("level set has no interior");
        if (f.dim == 1) {
            // max(x*lo, x*hi) <= t with lo < 0 < hi
            Box b;
            b.dim = 1;
            b.axis[0] = {t / k.iv.lo, t / k.iv.hi};
            return b;
        }
        Polygon P = scale(polar_body(k.body, Vec2{0, 0}), t);
        return bbox_of(P);
    }
    Box operator()(const GridKernel& k) const {
        const GridFn& g = k.potential;
        double xlo = kInfValue, xhi = -kInfValue, ylo = kInfValue, yhi = -kInfValue;
        for (int i = 0; i < g.shape[0]; ++i) {
            for (int j = 0; j < g.shape[1]; ++j) {
                if (g.at(i, j) <= t) {
                    xlo = std::min(xlo, g.node(0, i));
                    xhi = std::max(xhi, g.node(0, i));
                    if (g.dim == 2) {
                        ylo = std::min(ylo, g.node(1, j));
                        yhi = std::max(yhi, g.node(1, j));
                    }
                }
            }
        }
        if (xlo > xhi) throw EmptyLevelError("level set has no interior");
        // one-cell pad, clamped to the grid box
        double h0 = g.step(0);
        Box b;
        b.dim = g.dim;
        b.axis[0] = {std::max(g.box.axis[0].lo, xlo - h0), std::min(g.box.axis[0].hi, xhi + h0)};
        if (g.dim == 2) {
            double h1 = g.step(1);
            b.axis[1] = {std::max(g.box.axis[1].lo, ylo - h1), std::min(g.box.axis[1].hi, yhi + h1)};
        }
        return b;
    }
    Box operator()(const TruncGaussPolarKernel& k) const {
        if (t <= 0.0) throw EmptyLevelError("level set has no interior");
        double half = 0.5 * k.alpha * k.radius * k.radius;
        double r = (t <= half) ? std::sqrt(2.0 * k.alpha * t) : (t + half) / k.radius;
        return box_around(f.dim, {}, {r, r});
    }
    Box operator()(const TruncatedKernel& k) const {
        return potential_level_bbox(*k.base, std::min(t, k.t));
    }
    Box operator()(const HomothetyKernel& k) const {
        Box b = potential_level_bbox(*k.base, t / k.lambda);
        for (int a = 0; a < f.dim; ++a) {
            b.axis[static_cast<std::size_t>(a)].lo *= k.lambda;
            b.axis[static_cast<std::size_t>(a)].hi *= k.lambda;
        }
        return b;
    }
    Box operator()(const PowerKernel& k) const {
        return potential_level_bbox(*k.base, t / k.alpha);
    }
};

}  // namespace

Box potential_level_bbox(const LogConcaveFn& f, double t) {
    return std::visit(LevelBoxVisitor{f, t}, f.kernel);
}

Box support_box(const SConcaveFn& g) {
    if (g.base) return potential_level_bbox(*g.base, static_cast<double>(g.s));
    const GridFn& d = *g.grid;
    double xlo = kInfValue, xhi = -kInfValue, ylo = kInfValue, yhi = -kInfValue;
    for (int i = 0; i < d.shape[0]; ++i) {
        for (int j = 0; j < d.shape[1]; ++j) {
            if (is_finite_value(d.at(i, j)) && d.at(i, j) > 0.0) {
                xlo = std::min(xlo, d.node(0, i));
                xhi = std::max(xhi, d.node(0, i));
                if (d.dim == 2) {
                    ylo = std::min(ylo, d.node(1, j));
                    yhi = std::max(yhi, d.node(1, j));
                }
            }
        }
    }
    if (xlo > xhi) throw EmptyLevelError("s-concave grid has empty support");
    Box b;
    b.dim = d.dim;
    b.axis[0] = {xlo, xhi};
    if (d.dim == 2) b.axis[1] = {ylo, yhi};
    return b;
}

bool is_even_kernel(const LogConcaveFn& f) { return f.even; }

}  // namespace santalo

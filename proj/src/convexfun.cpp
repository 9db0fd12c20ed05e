#include "santalo/convexfun.hpp"

#include <algorithm>
#include <cmath>

#include "santalo/parallel.hpp"

namespace santalo {

void legendre_line(const std::vector<double>& x, const std::vector<double>& phi,
                   const std::vector<double>& y, std::vector<double>& out) {
    const std::size_t n = x.size();
    // lower convex hull of the finite samples (slopes strictly increasing)
    std::vector<int> hull;
    hull.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (!is_finite_value(phi[j])) continue;
        while (hull.size() >= 2) {
            int a = hull[hull.size() - 2], b = hull[hull.size() - 1];
            double lhs = (phi[b] - phi[a]) * (x[j] - x[b]);
            double rhs = (phi[j] - phi[b]) * (x[b] - x[a]);
            if (lhs >= rhs) {
                hull.pop_back();  // b is above the chord a--j
            } else {
                break;
            }
        }
        hull.push_back(static_cast<int>(j));
    }
    if (hull.empty()) throw AllInfiniteError("legendre: no finite sample on line");

    out.resize(y.size());
    std::size_t k = 0;
    for (std::size_t m = 0; m < y.size(); ++m) {
        double yy = y[m];
        while (k + 1 < hull.size() &&
               phi[hull[k + 1]] - phi[hull[k]] <= yy * (x[hull[k + 1]] - x[hull[k]])) {
            ++k;
        }
        out[m] = yy * x[hull[k]] - phi[hull[k]];
    }
}

namespace {

// slope range of finite consecutive samples along one axis, over all lines
void slope_range_axis(const GridFn& g, int axis, double& smin, double& smax) {
    smin = kInfValue;
    smax = -kInfValue;
    int n0 = g.shape[0], n1 = g.shape[1];
    double h = g.step(axis);
    auto upd = [&](double a, double b) {
        if (is_finite_value(a) && is_finite_value(b)) {
            double s = (b - a) / h;
            smin = std::min(smin, s);
            smax = std::max(smax, s);
        }
    };
    if (axis == 0) {
        for (int j = 0; j < n1; ++j) {
            for (int i = 0; i + 1 < n0; ++i) upd(g.at(i, j), g.at(i + 1, j));
        }
    } else {
        for (int i = 0; i < n0; ++i) {
            for (int j = 0; j + 1 < n1; ++j) upd(g.at(i, j), g.at(i, j + 1));
        }
    }
}

Interval padded_range(double smin, double smax) {
    if (smin > smax) {  // no finite pair at all
        smin = smax = 0.0;
    }
    double w = smax - smin;
    Interval iv{smin - 0.1 * w, smax + 0.1 * w};
    if (iv.width() < 1e-9) {
        double c = 0.5 * (iv.lo + iv.hi);
        double hw = std::max(1.0, 0.1 * std::fabs(c));
        iv = {c - hw, c + hw};
    }
    return iv;
}

std::vector<double> axis_nodes(const Box& box, int axis, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    const Interval& iv = box.axis[static_cast<std::size_t>(axis)];
    for (int i = 0; i < n; ++i) {
        v[static_cast<std::size_t>(i)] = iv.lo + iv.width() * static_cast<double>(i) / (n - 1);
    }
    return v;
}

}  // namespace

Box default_dual_box(const GridFn& phi) {
    Box b;
    b.dim = phi.dim;
    for (int axis = 0; axis < phi.dim; ++axis) {
        double smin, smax;
        slope_range_axis(phi, axis, smin, smax);
        b.axis[static_cast<std::size_t>(axis)] = padded_range(smin, smax);
    }
    return b;
}

GridFn legendre(const GridFn& phi) { return legendre(phi, default_dual_box(phi)); }

GridFn legendre(const GridFn& phi, const Box& dual_box) {
    return legendre(phi, dual_box, phi.shape);
}

GridFn legendre(const GridFn& phi, const Box& dual_box, std::array<int, 2> dual_shape) {
    bool any_finite = false;
    for (double v : phi.values) any_finite = any_finite || is_finite_value(v);
    if (!any_finite) throw AllInfiniteError("legendre: potential is identically infinite");

    if (phi.dim == 1) {
        GridFn out = make_grid(1, dual_box, dual_shape);
        std::vector<double> x = axis_nodes(phi.box, 0, phi.shape[0]);
        std::vector<double> y = axis_nodes(dual_box, 0, dual_shape[0]);
        std::vector<double> res;
        legendre_line(x, phi.values, y, res);
        out.values = std::move(res);
        out.convexified = true;
        return out;
    }

    const int n0 = phi.shape[0], n1 = phi.shape[1];
    const int m0 = dual_shape[0], m1 = dual_shape[1];
    std::vector<double> x0 = axis_nodes(phi.box, 0, n0);
    std::vector<double> x1 = axis_nodes(phi.box, 1, n1);
    std::vector<double> y0 = axis_nodes(dual_box, 0, m0);
    std::vector<double> y1 = axis_nodes(dual_box, 1, m1);

    // stage 1: conjugate along axis 1 for every x0-row
    // A(i, k1) = sup_{x1} (y1[k1]*x1 - phi(i, x1)); -inf marks empty rows
    std::vector<double> A(static_cast<std::size_t>(n0) * static_cast<std::size_t>(m1));
    parallel_for(static_cast<std::size_t>(n0), [&](std::size_t i) {
        std::vector<double> row(static_cast<std::size_t>(n1));
        bool finite = false;
        for (int j = 0; j < n1; ++j) {
            row[static_cast<std::size_t>(j)] = phi.at(static_cast<int>(i), j);
            finite = finite || is_finite_value(row[static_cast<std::size_t>(j)]);
        }
        std::vector<double> res;
        if (finite) {
            legendre_line(x1, row, y1, res);
        } else {
            res.assign(static_cast<std::size_t>(m1), -kInfValue);
        }
        for (int k1 = 0; k1 < m1; ++k1) {
            A[i * static_cast<std::size_t>(m1) + static_cast<std::size_t>(k1)] =
                res[static_cast<std::size_t>(k1)];
        }
    });

    // stage 2: conjugate along axis 0 for every dual column
    GridFn out = make_grid(2, dual_box, dual_shape);
    parallel_for(static_cast<std::size_t>(m1), [&](std::size_t k1) {
        std::vector<double> psi(static_cast<std::size_t>(n0));
        for (int i = 0; i < n0; ++i) {
            double a = A[static_cast<std::size_t>(i) * static_cast<std::size_t>(m1) + k1];
            psi[static_cast<std::size_t>(i)] = is_neg_inf(a) ? kInfValue : -a;
        }
        std::vector<double> res;
        legendre_line(x0, psi, y0, res);
        for (int k0 = 0; k0 < m0; ++k0) {
            out.at(k0, static_cast<int>(k1)) = res[static_cast<std::size_t>(k0)];
        }
    });
    out.convexified = true;
    return out;
}

double legendre_brute(const GridFn& phi, const Vec2& x) {
    double best = -kInfValue;
    bool any = false;
    if (phi.dim == 1) {
        for (int i = 0; i < phi.shape[0]; ++i) {
            double v = phi.at(i);
            if (!is_finite_value(v)) continue;
            any = true;
            best = std::max(best, x.x * phi.node(0, i) - v);
        }
    } else {
        for (int i = 0; i < phi.shape[0]; ++i) {
            for (int j = 0; j < phi.shape[1]; ++j) {
                double v = phi.at(i, j);
                if (!is_finite_value(v)) continue;
                any = true;
                best = std::max(best, x.x * phi.node(0, i) + x.y * phi.node(1, j) - v);
            }
        }
    }
    if (!any) throw AllInfiniteError("legendre_brute: potential is identically infinite");
    return best;
}

namespace {

// dual box for grid polars: slope range plus enough reach for e^{-Lphi} to
// decay by tail_depth below its peak
Box grid_polar_dual_box(const GridFn& phi, double tail_depth) {
    Box b = default_dual_box(phi);
    double phimin = kInfValue, phimax = -kInfValue;
    Box supp;
    supp.dim = phi.dim;
    double xlo = kInfValue, xhi = -kInfValue, ylo = kInfValue, yhi = -kInfValue;
    for (int i = 0; i < phi.shape[0]; ++i) {
        for (int j = 0; j < phi.shape[1]; ++j) {
            double v = phi.at(i, j);
            if (!is_finite_value(v)) continue;
            phimin = std::min(phimin, v);
            phimax = std::max(phimax, v);
            xlo = std::min(xlo, phi.node(0, i));
            xhi = std::max(xhi, phi.node(0, i));
            if (phi.dim == 2) {
                ylo = std::min(ylo, phi.node(1, j));
                yhi = std::max(yhi, phi.node(1, j));
            }
        }
    }
    double depth = tail_depth + (phimax - phimin);
    auto extend = [&](Interval range, double lo_reach, double hi_reach) {
        if (hi_reach > 1e-9) range.hi = std::max(range.hi, depth / hi_reach);
        if (lo_reach < -1e-9) range.lo = std::min(range.lo, depth / lo_reach);
        return range;
    };
    b.axis[0] = extend(b.axis[0], xlo, xhi);
    if (phi.dim == 2) b.axis[1] = extend(b.axis[1], ylo, yhi);
    return b;
}

LogConcaveFn polar_via_grid(const LogConcaveFn& f, double tail_depth) {
    // sample the potential where the density is above e^{-tail_depth}
    Box box = potential_level_bbox(f, tail_depth);
    std::array<int, 2> shape{257, f.dim == 2 ? 257 : 1};
    if (f.dim == 2) shape = {257, 257};
    GridFn phi = sample_grid(f.dim, box, shape, [&](const Vec2& x) { return potential(f, x); });
    GridFn lphi = legendre(phi, grid_polar_dual_box(phi, tail_depth), shape);
    return grid_backed_fn(std::move(lphi), f.even);
}

struct PolarVisitor {
    const LogConcaveFn& f;
    double tail_depth;

    LogConcaveFn operator()(const GaussianKernel& k) const {
        bool centered = std::fabs(k.center.x) == 0.0 && (f.dim == 1 || std::fabs(k.center.y) == 0.0);
        if (!centered) return polar_via_grid(f, tail_depth);
        if (f.dim == 1) {
            return gaussian_fn(1, Mat2{1.0 / k.A.a11, 0.0, 1.0}, Vec2{}, -k.logamp);
        }
        return gaussian_fn(2, k.A.inverse(), Vec2{}, -k.logamp);
    }
    LogConcaveFn operator()(const ExpNormKernel& k) const {
        if (f.dim == 1) return indicator_fn(Interval{-1.0, 1.0});
        if (k.p == 1.0) {
            return indicator_fn(make_polygon({{1, -1}, {1, 1}, {-1, 1}, {-1, -1}}));
        }
        return ball_indicator_fn(1.0);
    }
    LogConcaveFn operator()(const IndicatorKernel& k) const {
        if (f.dim == 1) return support_exp_fn(k.iv);
        return support_exp_fn(k.body);
    }
    LogConcaveFn operator()(const BallIndicatorKernel& k) const {
        // e^{-r|y|}: power of the Euclidean exponential
        LogConcaveFn base = expnorm_fn(f.dim, 2.0);
        LogConcaveFn out;
        out.dim = f.dim;
        out.even = true;
        out.kernel = PowerKernel{std::make_shared<LogConcaveFn>(std::move(base)), k.radius};
        return out;
    }
    LogConcaveFn operator()(const SupportExpKernel& k) const {
        if (f.dim == 1) return indicator_fn(k.iv);
        return indicator_fn(k.body);
    }
    LogConcaveFn operator()(const GridKernel&) const { return polar_via_grid(f, tail_depth); }
    LogConcaveFn operator()(const TruncGaussPolarKernel& k) const {
        double t = 0.5 * k.alpha * k.radius * k.radius;
        LogConcaveFn base = gaussian_fn(f.dim, Mat2{k.alpha, 0.0, k.alpha}, Vec2{}, 0.0);
        LogConcaveFn out;
        out.dim = f.dim;
        out.even = true;
        out.kernel = TruncatedKernel{std::make_shared<LogConcaveFn>(std::move(base)), t};
        return out;
    }
    LogConcaveFn operator()(const TruncatedKernel& k) const {
        if (const auto* g = std::get_if<GaussianKernel>(&k.base->kernel)) {
            bool isotropic = std::fabs(g->A.a12) == 0.0 &&
                             (f.dim == 1 || std::fabs(g->A.a11 - g->A.a22) == 0.0);
            bool centered = std::fabs(g->center.x) == 0.0 &&
                            (f.dim == 1 || std::fabs(g->center.y) == 0.0);
            if (isotropic && centered && g->logamp == 0.0) {
                LogConcaveFn out;
                out.dim = f.dim;
                out.even = true;
                out.kernel = TruncGaussPolarKernel{g->A.a11, std::sqrt(2.0 * k.t / g->A.a11)};
                return out;
            }
        }
        return polar_via_grid(f, tail_depth);
    }
    LogConcaveFn operator()(const HomothetyKernel& k) const {
        LogConcaveFn inner = polar_fn(*k.base, tail_depth);
        LogConcaveFn out;
        out.dim = f.dim;
        out.even = inner.even;
        out.kernel = PowerKernel{std::make_shared<LogConcaveFn>(std::move(inner)), k.lambda};
        return out;
    }
    LogConcaveFn operator()(const PowerKernel& k) const {
        LogConcaveFn inner = polar_fn(*k.base, tail_depth);
        LogConcaveFn out;
        out.dim = f.dim;
        out.even = inner.even;
        out.kernel = HomothetyKernel{std::make_shared<LogConcaveFn>(std::move(inner)), k.alpha};
        return out;
    }
};

}  // namespace

LogConcaveFn polar_fn(const LogConcaveFn& f, double tail_depth) {
    return std::visit(PolarVisitor{f, tail_depth}, f.kernel);
}

GridFn ls_transform_grid(const GridFn& density, int s, std::array<int, 2> out_shape) {
    if (s < 1) throw InputError("ls_transform: s must be >= 1");
    const int dim = density.dim;
    double g0 = grid_interp(density, Vec2{0, 0});
    if (!is_finite_value(g0) || g0 <= 0.0) {
        throw ZeroAtOriginError("ls_transform: g(0) must be positive");
    }

    struct Node {
        Vec2 y;
        double g;
    };
    std::vector<Node> supp;
    for (int i = 0; i < density.shape[0]; ++i) {
        for (int j = 0; j < density.shape[1]; ++j) {
            double v = density.at(i, j);
            if (is_finite_value(v) && v > 0.0) {
                supp.push_back({Vec2{density.node(0, i), dim == 2 ? density.node(1, j) : 0.0}, v});
            }
        }
    }

    const double sd = static_cast<double>(s);
    Box out_box;
    out_box.dim = dim;
    if (dim == 1) {
        double ymin = 0.0, ymax = 0.0;
        for (const auto& n : supp) {
            ymin = std::min(ymin, n.y.x);
            ymax = std::max(ymax, n.y.x);
        }
        double hi = (ymax > 1e-9) ? sd / ymax : sd / 1e-9;
        double lo = (ymin < -1e-9) ? sd / ymin : -sd / 1e-9;
        out_box.axis[0] = {lo, hi};
    } else {
        std::vector<Vec2> pts;
        pts.reserve(supp.size());
        for (const auto& n : supp) pts.push_back(n.y);
        Polygon hull = convex_hull(std::move(pts));
        Polygon pol = scale(polar_body(hull, Vec2{0, 0}), sd);
        double xlo = pol[0].x, xhi = pol[0].x, ylo = pol[0].y, yhi = pol[0].y;
        for (const auto& v : pol.verts) {
            xlo = std::min(xlo, v.x);
            xhi = std::max(xhi, v.x);
            ylo = std::min(ylo, v.y);
            yhi = std::max(yhi, v.y);
        }
        out_box.axis[0] = {xlo, xhi};
        out_box.axis[1] = {ylo, yhi};
    }

    GridFn out = make_grid(dim, out_box, dim == 1 ? std::array<int, 2>{out_shape[0], 1} : out_shape);
    const int n1 = out.shape[1];
    parallel_for(static_cast<std::size_t>(out.count()), [&](std::size_t idx) {
        int i = static_cast<int>(idx) / n1;
        int j = static_cast<int>(idx) % n1;
        Vec2 x{out.node(0, i), dim == 2 ? out.node(1, j) : 0.0};
        double best = kInfValue;
        for (const auto& nd : supp) {
            double b = 1.0 - dot(x, nd.y) / sd;
            double val = (b <= 0.0) ? 0.0 : std::pow(b, sd) / nd.g;
            best = std::min(best, val);
            if (best == 0.0) break;
        }
        out.values[idx] = best;
    });
    return out;
}

SConcaveFn ls_transform(const SConcaveFn& g, std::array<int, 2> out_shape) {
    Box supp = support_box(g);
    // pad one step so boundary zeros are represented
    for (int a = 0; a < g.dim; ++a) {
        double pad = 0.01 * supp.axis[static_cast<std::size_t>(a)].width();
        supp.axis[static_cast<std::size_t>(a)].lo -= pad;
        supp.axis[static_cast<std::size_t>(a)].hi += pad;
    }
    std::array<int, 2> shape{g.dim == 1 ? 513 : 129, g.dim == 1 ? 1 : 129};
    GridFn density = sample_grid(g.dim, supp, shape, [&](const Vec2& x) { return g.eval(x); });
    GridFn out = ls_transform_grid(density, g.s, out_shape);
    return s_concave_from_grid(std::move(out), g.s, g.even);
}

GridFn asplund_product(const LogConcaveFn& f, const LogConcaveFn& g, const Box& target_box,
                       std::array<int, 2> shape) {
    if (f.dim != g.dim) throw InputError("asplund_product: dimension mismatch");
    const double depth = 30.0;
    Box bf = potential_level_bbox(f, depth);
    Box bg = potential_level_bbox(g, depth);
    std::array<int, 2> work = (f.dim == 1) ? std::array<int, 2>{257, 1} : std::array<int, 2>{129, 129};
    GridFn phif = sample_grid(f.dim, bf, work, [&](const Vec2& x) { return potential(f, x); });
    GridFn phig = sample_grid(g.dim, bg, work, [&](const Vec2& x) { return potential(g, x); });

    Box dual;
    dual.dim = f.dim;
    Box df = default_dual_box(phif);
    Box dg = default_dual_box(phig);
    for (int a = 0; a < f.dim; ++a) {
        Interval iv{std::max(df.axis[static_cast<std::size_t>(a)].lo, dg.axis[static_cast<std::size_t>(a)].lo),
                    std::min(df.axis[static_cast<std::size_t>(a)].hi, dg.axis[static_cast<std::size_t>(a)].hi)};
        if (iv.width() < 1e-9) {
            double c = 0.5 * (iv.lo + iv.hi);
            iv = {c - 1.0, c + 1.0};
        }
        dual.axis[static_cast<std::size_t>(a)] = iv;
    }

    GridFn lf = legendre(phif, dual, work);
    GridFn lg = legendre(phig, dual, work);
    GridFn sum = lf;
    for (std::size_t i = 0; i < sum.values.size(); ++i) {
        double a = lf.values[i], b = lg.values[i];
        sum.values[i] = (is_finite_value(a) && is_finite_value(b)) ? a + b : kInfValue;
    }
    GridFn conv = legendre(sum, target_box, f.dim == 1 ? std::array<int, 2>{shape[0], 1} : shape);
    GridFn out = conv;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        double v = conv.values[i];
        out.values[i] = is_finite_value(v) ? std::exp(-v) : 0.0;
    }
    out.convexified = false;
    return out;
}

LogConcaveFn homothety(const LogConcaveFn& f, double lambda) {
    if (!(lambda > 0.0)) throw InputError("homothety: lambda must be > 0");
    if (lambda == 1.0) return f;
    if (const auto* k = std::get_if<GaussianKernel>(&f.kernel)) {
        Mat2 A{k->A.a11 / lambda, k->A.a12 / lambda, k->A.a22 / lambda};
        return gaussian_fn(f.dim, A, k->center * lambda, lambda * k->logamp);
    }
    if (const auto* k = std::get_if<IndicatorKernel>(&f.kernel)) {
        if (f.dim == 1) return indicator_fn(Interval{lambda * k->iv.lo, lambda * k->iv.hi});
        return indicator_fn(scale(k->body, lambda));
    }
    if (const auto* k = std::get_if<BallIndicatorKernel>(&f.kernel)) {
        return ball_indicator_fn(lambda * k->radius);
    }
    if (std::holds_alternative<ExpNormKernel>(f.kernel) ||
        std::holds_alternative<SupportExpKernel>(f.kernel)) {
        return f;  // 1-homogeneous potentials are homothety-invariant
    }
    LogConcaveFn out;
    out.dim = f.dim;
    out.even = f.even;
    out.kernel = HomothetyKernel{std::make_shared<LogConcaveFn>(f), lambda};
    return out;
}

}  // namespace santalo

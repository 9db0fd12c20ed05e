#include "santalo/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "santalo/parallel.hpp"

namespace santalo {

namespace {

Box bbox_of_poly(const Polygon& K) {
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

Box intersect_box(const Box& a, const Box& b) {
    Box r = a;
    for (int i = 0; i < a.dim; ++i) {
        auto ia = a.axis[static_cast<std::size_t>(i)];
        auto ib = b.axis[static_cast<std::size_t>(i)];
        r.axis[static_cast<std::size_t>(i)] = {std::max(ia.lo, ib.lo), std::min(ia.hi, ib.hi)};
    }
    return r;
}

struct DecayBoxVisitor {
    const LogConcaveFn& f;
    Vec2 b;
    double depth;

    std::optional<Box> operator()(const GaussianKernel& k) const {
        Box out;
        out.dim = f.dim;
        if (f.dim == 1) {
            double mode = k.center.x - b.x / k.A.a11;
            double hw = std::sqrt(2.0 * depth / k.A.a11);
            out.axis[0] = {mode - hw, mode + hw};
            return out;
        }
        Mat2 Ai = k.A.inverse();
        Vec2 mode = k.center - Ai.apply(b);
        double hx = std::sqrt(2.0 * depth * Ai.a11);
        double hy = std::sqrt(2.0 * depth * Ai.a22);
        out.axis[0] = {mode.x - hx, mode.x + hx};
        out.axis[1] = {mode.y - hy, mode.y + hy};
        return out;
    }
    std::optional<Box> operator()(const ExpNormKernel& k) const {
        double bdual = (f.dim == 1) ? std::fabs(b.x)
                       : (k.p == 1.0) ? std::max(std::fabs(b.x), std::fabs(b.y))
                                      : norm(b);
        double margin = 1.0 - bdual;
        if (margin <= 1e-12) return std::nullopt;
        double r = depth / margin;
        Box out;
        out.dim = f.dim;
        out.axis[0] = {-r, r};
        out.axis[1] = {-r, r};
        return out;
    }
    std::optional<Box> operator()(const IndicatorKernel& k) const {
        Box out;
        out.dim = f.dim;
        if (f.dim == 1) {
            out.axis[0] = k.iv;
            return out;
        }
        return bbox_of_poly(k.body);
    }
    std::optional<Box> operator()(const BallIndicatorKernel& k) const {
        Box out;
        out.dim = 2;
        out.axis[0] = {-k.radius, k.radius};
        out.axis[1] = {-k.radius, k.radius};
        return out;
    }
    std::optional<Box> operator()(const SupportExpKernel& k) const {
        Box out;
        out.dim = f.dim;
        if (f.dim == 1) {
            double lo = k.iv.lo + b.x, hi = k.iv.hi + b.x;
            if (!(lo < -1e-12 && hi > 1e-12)) return std::nullopt;
            out.axis[0] = {depth / lo, depth / hi};
            return out;
        }
        Polygon shifted = translate(k.body, b);
        if (interior_margin(shifted, Vec2{0, 0}) <= 1e-12) return std::nullopt;
        return bbox_of_poly(scale(polar_body(shifted, Vec2{0, 0}), depth));
    }
    std::optional<Box> operator()(const GridKernel& k) const { return k.potential.box; }
    std::optional<Box> operator()(const TruncGaussPolarKernel& k) const {
        double bn = (f.dim == 1) ? std::fabs(b.x) : norm(b);
        if (bn >= k.radius * (1.0 - 1e-12)) return std::nullopt;
        double r = k.alpha * k.radius +
                   (depth + 0.5 * k.alpha * k.radius * k.radius + 0.5 * k.alpha * bn * bn) /
                       (k.radius - bn);
        Box out;
        out.dim = f.dim;
        out.axis[0] = {-r, r};
        out.axis[1] = {-r, r};
        return out;
    }
    std::optional<Box> operator()(const TruncatedKernel& k) const {
        Box supp = potential_level_bbox(*k.base, k.t);
        auto inner = decay_box(*k.base, b, depth);
        return inner ? intersect_box(supp, *inner) : supp;
    }
    std::optional<Box> operator()(const HomothetyKernel& k) const {
        auto inner = decay_box(*k.base, b, depth / k.lambda);
        if (!inner) return std::nullopt;
        Box out = *inner;
        for (int i = 0; i < f.dim; ++i) {
            out.axis[static_cast<std::size_t>(i)].lo *= k.lambda;
            out.axis[static_cast<std::size_t>(i)].hi *= k.lambda;
        }
        return out;
    }
    std::optional<Box> operator()(const PowerKernel& k) const {
        return decay_box(*k.base, b / k.alpha, depth / k.alpha);
    }
};

}  // namespace

std::optional<Box> decay_box(const LogConcaveFn& f, const Vec2& b, double depth) {
    return std::visit(DecayBoxVisitor{f, b, depth}, f.kernel);
}

namespace {

std::optional<Interval> combine(std::optional<Interval> a, std::optional<Interval> b) {
    if (!a) return b;
    if (!b) return a;
    return Interval{std::max(a->lo, b->lo), std::min(a->hi, b->hi)};
}

// chord of the ellipse quad(A, w + v*pp) <= 2*level along v
std::optional<Interval> ellipse_slice(const Mat2& A, const Vec2& w, const Vec2& pp, double level) {
    double qa = A.quad(pp);
    double qb = 2.0 * dot(pp, A.apply(w));
    double qc = A.quad(w) - 2.0 * level;
    double disc = qb * qb - 4.0 * qa * qc;
    if (disc <= 0.0) return Interval{0.0, -1.0};
    double rt = std::sqrt(disc);
    return Interval{(-qb - rt) / (2.0 * qa), (-qb + rt) / (2.0 * qa)};
}

std::optional<Interval> polygon_slice(const Polygon& K, const Vec2& th, const Vec2& pp, double u) {
    double vlo = -kInfValue, vhi = kInfValue;
    for (const auto& h : halfspaces(K)) {
        double c = dot(pp, h.normal);
        double r = h.offset - u * dot(th, h.normal);
        if (std::fabs(c) < 1e-14) {
            if (r < 0.0) return Interval{0.0, -1.0};
        } else if (c > 0.0) {
            vhi = std::min(vhi, r / c);
        } else {
            vlo = std::max(vlo, r / c);
        }
    }
    return Interval{vlo, vhi};
}

struct SliceVisitor {
    const LogConcaveFn& f;
    Vec2 th, pp;
    double u;

    std::optional<Interval> operator()(const GaussianKernel&) const { return std::nullopt; }
    std::optional<Interval> operator()(const ExpNormKernel&) const { return std::nullopt; }
    std::optional<Interval> operator()(const IndicatorKernel& k) const {
        if (f.dim != 2) return std::nullopt;
        return polygon_slice(k.body, th, pp, u);
    }
    std::optional<Interval> operator()(const BallIndicatorKernel& k) const {
        double d = k.radius * k.radius - u * u;
        if (d <= 0.0) return Interval{0.0, -1.0};
        double s = std::sqrt(d);
        return Interval{-s, s};
    }
    std::optional<Interval> operator()(const SupportExpKernel&) const { return std::nullopt; }
    std::optional<Interval> operator()(const GridKernel&) const { return std::nullopt; }
    std::optional<Interval> operator()(const TruncGaussPolarKernel&) const { return std::nullopt; }
    std::optional<Interval> operator()(const TruncatedKernel& k) const {
        std::optional<Interval> own;
        if (const auto* g = std::get_if<GaussianKernel>(&k.base->kernel)) {
            own = ellipse_slice(g->A, th * u - g->center, pp, k.t + g->logamp);
        }
        return combine(own, slice_support(*k.base, th, pp, u));
    }
    std::optional<Interval> operator()(const HomothetyKernel& k) const {
        auto inner = slice_support(*k.base, th, pp, u / k.lambda);
        if (!inner) return std::nullopt;
        return Interval{inner->lo * k.lambda, inner->hi * k.lambda};
    }
    std::optional<Interval> operator()(const PowerKernel& k) const {
        return slice_support(*k.base, th, pp, u);
    }
};

}  // namespace

std::optional<Interval> slice_support(const LogConcaveFn& f, const Vec2& th, const Vec2& pp,
                                      double u) {
    if (f.dim != 2) return std::nullopt;
    return std::visit(SliceVisitor{f, th, pp, u}, f.kernel);
}

DensityAdapter adapt_tilted(const LogConcaveFn& f, const Vec2& b, double depth) {
    DensityAdapter a;
    a.dim = f.dim;
    auto box = decay_box(f, b, depth);
    if (!box) {
        a.box.dim = f.dim;
        a.box.axis[0] = {0.0, 0.0};  // empty box signals overflow to callers
        a.value = [](const Vec2&) { return 0.0; };
        return a;
    }
    a.box = *box;
    LogConcaveFn fn = f;
    a.value = [fn, b](const Vec2& x) {
        double p = potential(fn, x);
        if (is_pos_inf(p)) return 0.0;
        return std::exp(-(p + dot(b, x)));
    };
    LogConcaveFn fn2 = f;
    a.slice = [fn2](const Vec2& th, const Vec2& pp, double u) {
        return slice_support(fn2, th, pp, u);
    };
    return a;
}

DensityAdapter adapt_density(const SConcaveFn& g) {
    DensityAdapter a;
    a.dim = g.dim;
    a.box = support_box(g);
    SConcaveFn gc = g;
    a.value = [gc](const Vec2& x) { return gc.eval(x); };
    if (g.base) {
        LogConcavePtr base = g.base;
        double s = static_cast<double>(g.s);
        a.slice = [base, s](const Vec2& th, const Vec2& pp, double u) -> std::optional<Interval> {
            if (const auto* gk = std::get_if<GaussianKernel>(&base->kernel)) {
                // support of f_s is the level set {phi <= s}
                const Vec2 w = th * u - gk->center;
                double qa = gk->A.quad(pp);
                double qb = 2.0 * dot(pp, gk->A.apply(w));
                double qc = gk->A.quad(w) - 2.0 * (s + gk->logamp);
                double disc = qb * qb - 4.0 * qa * qc;
                if (disc <= 0.0) return Interval{0.0, -1.0};
                double rt = std::sqrt(disc);
                return Interval{(-qb - rt) / (2.0 * qa), (-qb + rt) / (2.0 * qa)};
            }
            return slice_support(*base, th, pp, u);
        };
    }
    return a;
}

namespace {

bool box_empty(const Box& b) {
    for (int i = 0; i < b.dim; ++i) {
        if (!(b.axis[static_cast<std::size_t>(i)].width() > 0.0)) return true;
    }
    return false;
}

// Simpson weights over n (odd, >= 3) nodes spanning [lo, hi].
double simpson_weight(int i, int n, double h) {
    if (i == 0 || i == n - 1) return h / 3.0;
    return (i % 2 == 1) ? 4.0 * h / 3.0 : 2.0 * h / 3.0;
}

// v-interval of the box on the rotated line u -> u*th + v*pp
std::optional<Interval> box_slice(const Box& box, const Vec2& th, const Vec2& pp, double u) {
    double vlo = -kInfValue, vhi = kInfValue;
    auto clipaxis = [&](double thc, double ppc, double lo, double hi) -> bool {
        double base = u * thc;
        if (std::fabs(ppc) < 1e-14) {
            return base >= lo - 1e-12 && base <= hi + 1e-12;
        }
        double a = (lo - base) / ppc, b = (hi - base) / ppc;
        if (a > b) std::swap(a, b);
        vlo = std::max(vlo, a);
        vhi = std::min(vhi, b);
        return true;
    };
    if (!clipaxis(th.x, pp.x, box.axis[0].lo, box.axis[0].hi)) return Interval{0.0, -1.0};
    if (!clipaxis(th.y, pp.y, box.axis[1].lo, box.axis[1].hi)) return Interval{0.0, -1.0};
    return Interval{vlo, vhi};
}

double support_of_box(const Box& box, const Vec2& th) {
    double best = -kInfValue;
    for (int cx = 0; cx < 2; ++cx) {
        for (int cy = 0; cy < 2; ++cy) {
            Vec2 corner{cx ? box.axis[0].hi : box.axis[0].lo, cy ? box.axis[1].hi : box.axis[1].lo};
            best = std::max(best, dot(corner, th));
        }
    }
    return best;
}

struct SliceSums {
    double m0 = 0.0;  // ∫ g dv
    double mu = 0.0;  // ∫ v g dv (moment along pp)
};

// Simpson along the slice; serial within a slice (one thread owns a row).
SliceSums slice_integral(const DensityAdapter& a, const Vec2& th, const Vec2& pp, double u, int nv,
                         bool with_moment) {
    auto iv = box_slice(a.box, th, pp, u);
    if (a.slice) {
        auto sup = a.slice(th, pp, u);
        if (sup) {
            if (!iv) iv = sup;
            else {
                iv->lo = std::max(iv->lo, sup->lo);
                iv->hi = std::min(iv->hi, sup->hi);
            }
        }
    }
    SliceSums s;
    if (!iv || !(iv->hi > iv->lo)) return s;
    double h = (iv->hi - iv->lo) / (nv - 1);
    double acc0 = 0.0, acc1 = 0.0;
    for (int j = 0; j < nv; ++j) {
        double v = iv->lo + h * j;
        double w = simpson_weight(j, nv, h);
        double g = a.value(th * u + pp * v);
        acc0 += w * g;
        if (with_moment) acc1 += w * g * v;
    }
    s.m0 = acc0;
    s.mu = acc1;
    return s;
}

struct Sweep {
    double mass = 0.0;
    Vec2 moment;
};

// One full 2D pass at resolution (nu, nv) over u in [ulo, uhi].
Sweep sweep2d(const DensityAdapter& a, const Vec2& th, double ulo, double uhi, int nu, int nv,
              bool with_moment) {
    Vec2 pp = perp(th);
    double hu = (uhi - ulo) / (nu - 1);
    std::vector<double> c0(static_cast<std::size_t>(nu));
    std::vector<double> cu(static_cast<std::size_t>(nu));
    std::vector<double> cv(static_cast<std::size_t>(nu));
    parallel_for(static_cast<std::size_t>(nu), [&](std::size_t i) {
        double u = ulo + hu * static_cast<double>(i);
        double w = simpson_weight(static_cast<int>(i), nu, hu);
        SliceSums s = slice_integral(a, th, pp, u, nv, with_moment);
        c0[i] = w * s.m0;
        if (with_moment) {
            cu[i] = w * s.m0 * u;
            cv[i] = w * s.mu;
        }
    });
    Sweep out;
    out.mass = pairwise_sum(c0);
    if (with_moment) {
        double mu = pairwise_sum(cu);
        double mv = pairwise_sum(cv);
        out.moment = th * mu + pp * mv;
    }
    return out;
}

Sweep sweep1d(const DensityAdapter& a, double ulo, double uhi, int n, bool with_moment) {
    double h = (uhi - ulo) / (n - 1);
    std::vector<double> c0(static_cast<std::size_t>(n));
    std::vector<double> cu(static_cast<std::size_t>(n));
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
        double u = ulo + h * static_cast<double>(i);
        double w = simpson_weight(static_cast<int>(i), n, h);
        double g = a.value(Vec2{u, 0.0});
        c0[i] = w * g;
        if (with_moment) cu[i] = w * g * u;
    });
    Sweep out;
    out.mass = pairwise_sum(c0);
    if (with_moment) out.moment = Vec2{pairwise_sum(cu), 0.0};
    return out;
}

MomentResult integrate_core(const DensityAdapter& a, const Vec2& theta, double ulo_override,
                            bool restrict_u, const QuadSpec& spec, bool with_moment) {
    MomentResult out;
    if (box_empty(a.box)) {
        out.mass.overflow = true;
        return out;
    }
    double ulo, uhi;
    Vec2 th = theta;
    if (a.dim == 1) {
        ulo = a.box.axis[0].lo;
        uhi = a.box.axis[0].hi;
        if (th.x < 0.0) {  // mass above along -e1: u in [lo, -cut]
            ulo = a.box.axis[0].lo;
            uhi = restrict_u ? std::min(a.box.axis[0].hi, -ulo_override) : a.box.axis[0].hi;
            if (!(uhi > ulo)) return out;
            Sweep s1 = sweep1d(a, ulo, uhi, spec.n1d, with_moment);
            Sweep s2 = sweep1d(a, ulo, uhi, 2 * spec.n1d - 1, with_moment);
            out.mass.value = s2.mass + (s2.mass - s1.mass) / 15.0;
            out.mass.err = std::fabs(s2.mass - s1.mass) / 15.0;
            out.moment = s2.moment + (s2.moment - s1.moment) / 15.0;
            return out;
        }
        if (restrict_u) ulo = std::max(ulo, ulo_override);
        if (!(uhi > ulo)) return out;
        Sweep s1 = sweep1d(a, ulo, uhi, spec.n1d, with_moment);
        Sweep s2 = sweep1d(a, ulo, uhi, 2 * spec.n1d - 1, with_moment);
        out.mass.value = s2.mass + (s2.mass - s1.mass) / 15.0;
        out.mass.err = std::fabs(s2.mass - s1.mass) / 15.0;
        out.moment = s2.moment + (s2.moment - s1.moment) / 15.0;
        return out;
    }

    ulo = -support_of_box(a.box, Vec2{-th.x, -th.y});
    uhi = support_of_box(a.box, th);
    if (restrict_u) ulo = std::max(ulo, ulo_override);
    if (!(uhi > ulo)) return out;
    Sweep s1 = sweep2d(a, th, ulo, uhi, spec.n2d, spec.n2d, with_moment);
    Sweep s2 = sweep2d(a, th, ulo, uhi, 2 * spec.n2d - 1, 2 * spec.n2d - 1, with_moment);
    out.mass.value = s2.mass + (s2.mass - s1.mass) / 15.0;
    out.mass.err = std::fabs(s2.mass - s1.mass) / 15.0;
    out.moment = s2.moment + (s2.moment - s1.moment) / 15.0;
    return out;
}

}  // namespace

MassResult integrate_adapter(const DensityAdapter& a, const QuadSpec& spec) {
    return integrate_core(a, Vec2{1, 0}, 0.0, false, spec, false).mass;
}

MomentResult integrate_adapter_moment(const DensityAdapter& a, const QuadSpec& spec) {
    return integrate_core(a, Vec2{1, 0}, 0.0, false, spec, true);
}

MassResult mass_above_adapter(const DensityAdapter& a, const Vec2& theta, double cut_offset,
                              const QuadSpec& spec) {
    if (a.dim == 1) {
        // {x*theta >= c}: theta = +1 -> [c, hi]; theta = -1 -> [lo, -c]
        return integrate_core(a, theta, theta.x > 0 ? cut_offset : cut_offset, true, spec, false)
            .mass;
    }
    return integrate_core(a, theta, cut_offset, true, spec, false).mass;
}

MassResult integrate_tilted(const LogConcaveFn& f, const Vec2& b, const QuadSpec& spec) {
    return integrate_adapter(adapt_tilted(f, b, spec.depth()), spec);
}

MomentResult integrate_tilted_moment(const LogConcaveFn& f, const Vec2& b, const QuadSpec& spec) {
    return integrate_adapter_moment(adapt_tilted(f, b, spec.depth()), spec);
}

double MarginalCut::solve(double target, double* residual) const {
    const std::size_t n = u.size();
    // T descends from total to 0; find the bracketing interval
    std::size_t lo = 0, hi = n - 1;
    if (target >= T[0]) {
        if (residual) *residual = std::fabs(T[0] - target) / (total + 1e-300);
        return u[0];
    }
    if (target <= T[n - 1]) {
        if (residual) *residual = std::fabs(T[n - 1] - target) / (total + 1e-300);
        return u[n - 1];
    }
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        (T[mid] >= target ? lo : hi) = mid;
    }
    // cubic Hermite on [u_lo, u_hi] with T' = -M
    double h = u[hi] - u[lo];
    double t0 = T[lo], t1 = T[hi], d0 = -M[lo] * h, d1 = -M[hi] * h;
    auto eval = [&](double s) {
        double s2 = s * s, s3 = s2 * s;
        return (2 * s3 - 3 * s2 + 1) * t0 + (s3 - 2 * s2 + s) * d0 + (-2 * s3 + 3 * s2) * t1 +
               (s3 - s2) * d1;
    };
    double a = 0.0, b = 1.0;
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (a + b);
        (eval(mid) >= target ? a : b) = mid;
    }
    double s = 0.5 * (a + b);
    if (residual) *residual = std::fabs(eval(s) - target) / (total + 1e-300);
    return u[lo] + s * h;
}

MarginalCut direction_marginal(const DensityAdapter& a, const Vec2& theta, const QuadSpec& spec) {
    MarginalCut mc;
    if (box_empty(a.box)) return mc;
    double ulo, uhi;
    Vec2 th = theta;
    int nu, nv;
    if (a.dim == 1) {
        ulo = a.box.axis[0].lo;
        uhi = a.box.axis[0].hi;
        nu = 2 * spec.n1d - 1;
        nv = 0;
    } else {
        ulo = -support_of_box(a.box, Vec2{-th.x, -th.y});
        uhi = support_of_box(a.box, th);
        nu = 4 * spec.n2d - 3;  // fine u-grid: the cut solve interpolates on it
        nv = 2 * spec.n2d - 1;
    }
    if (!(uhi > ulo)) return mc;

    mc.u.resize(static_cast<std::size_t>(nu));
    mc.M.resize(static_cast<std::size_t>(nu));
    double hu = (uhi - ulo) / (nu - 1);
    Vec2 pp = perp(th);
    parallel_for(static_cast<std::size_t>(nu), [&](std::size_t i) {
        double uu = ulo + hu * static_cast<double>(i);
        mc.u[i] = uu;
        if (a.dim == 1) {
            double x = (th.x > 0) ? uu : -uu;
            mc.M[i] = a.value(Vec2{x, 0.0});
        } else {
            mc.M[i] = slice_integral(a, th, pp, uu, nv, false).m0;
        }
    });
    if (a.dim == 1 && th.x < 0) {
        // marginal along -e1: reparametrize so u ascends in the theta frame
        std::reverse(mc.M.begin(), mc.M.end());
        for (std::size_t i = 0; i < mc.u.size(); ++i) {
            mc.u[i] = -(ulo + hu * static_cast<double>(mc.u.size() - 1 - i));
        }
        std::reverse(mc.u.begin(), mc.u.end());
        std::sort(mc.u.begin(), mc.u.end());
    }

    // right-tail cumulative: composite Simpson over pairs from the right,
    // half-cells by the 3-point Newton-Cotes rule
    std::size_t n = mc.u.size();
    mc.T.assign(n, 0.0);
    for (std::size_t j = n - 1; j >= 2; j -= 2) {
        double full = hu / 3.0 * (mc.M[j - 2] + 4.0 * mc.M[j - 1] + mc.M[j]);
        double half = hu / 12.0 * (-mc.M[j - 2] + 8.0 * mc.M[j - 1] + 5.0 * mc.M[j]);
        mc.T[j - 1] = mc.T[j] + half;
        mc.T[j - 2] = mc.T[j] + full;
        if (j == 2) break;
    }
    mc.total = mc.T[0];
    return mc;
}

}  // namespace santalo

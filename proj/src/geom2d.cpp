#include "santalo/geom2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "santalo/parallel.hpp"

namespace santalo {

namespace {

constexpr double kCollinearRelTol = 1e-12;

double poly_scale(const std::vector<Vec2>& pts) {
    double s = 1.0;
    for (const auto& p : pts) s = std::max({s, std::fabs(p.x), std::fabs(p.y)});
    return s;
}

// Merge consecutive near-duplicates and drop collinear vertices (cyclically).
std::vector<Vec2> clean_ring(std::vector<Vec2> pts) {
    // duplicate merge
    std::vector<Vec2> out;
    for (const auto& p : pts) {
        if (out.empty() || std::fabs(p.x - out.back().x) > kVertexTol ||
            std::fabs(p.y - out.back().y) > kVertexTol) {
            out.push_back(p);
        }
    }
    while (out.size() >= 2 && std::fabs(out.front().x - out.back().x) <= kVertexTol &&
           std::fabs(out.front().y - out.back().y) <= kVertexTol) {
        out.pop_back();
    }
    // collinear drop, repeated until stable
    bool changed = true;
    while (changed && out.size() >= 3) {
        changed = false;
        std::vector<Vec2> next;
        int n = static_cast<int>(out.size());
        for (int i = 0; i < n; ++i) {
            const Vec2& a = out[(i + n - 1) % n];
            const Vec2& b = out[i];
            const Vec2& c = out[(i + 1) % n];
            Vec2 e1 = b - a, e2 = c - b;
            if (cross(e1, e2) <= kCollinearRelTol * norm(e1) * norm(e2)) {
                changed = true;  // drop b
            } else {
                next.push_back(b);
            }
        }
        out = std::move(next);
    }
    return out;
}

double shoelace(const std::vector<Vec2>& v) {
    double s = 0.0;
    int n = static_cast<int>(v.size());
    for (int i = 0; i < n; ++i) s += cross(v[i], v[(i + 1) % n]);
    return 0.5 * s;
}

}  // namespace

Polygon make_polygon(std::vector<Vec2> pts) {
    if (pts.size() >= 3 && shoelace(pts) < 0.0) std::reverse(pts.begin(), pts.end());
    std::vector<Vec2> v = clean_ring(std::move(pts));
    if (v.size() < 3) throw InvalidPolygonError("polygon has fewer than 3 distinct vertices");
    int n = static_cast<int>(v.size());
    for (int i = 0; i < n; ++i) {
        Vec2 e1 = v[i] - v[(i + n - 1) % n];
        Vec2 e2 = v[(i + 1) % n] - v[i];
        if (cross(e1, e2) <= 0.0) throw InvalidPolygonError("vertices not in strictly convex CCW position");
    }
    if (shoelace(v) <= 0.0) throw InvalidPolygonError("polygon has no interior");
    return Polygon{std::move(v)};
}

Polygon convex_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Vec2& a, const Vec2& b) {
                              return std::fabs(a.x - b.x) <= kVertexTol && std::fabs(a.y - b.y) <= kVertexTol;
                          }),
              pts.end());
    int n = static_cast<int>(pts.size());
    if (n < 3) throw InvalidPolygonError("hull needs at least 3 points");
    std::vector<Vec2> h(2 * static_cast<std::size_t>(n));
    int k = 0;
    for (int i = 0; i < n; ++i) {
        while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (int i = n - 2, lower = k + 1; i >= 0; --i) {
        while (k >= lower && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(static_cast<std::size_t>(k - 1));
    return make_polygon(std::move(h));
}

std::vector<HalfSpace> halfspaces(const Polygon& K) {
    std::vector<HalfSpace> hs;
    int n = K.size();
    hs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Vec2 e = K[(i + 1) % n] - K[i];
        Vec2 nrm = normalized(Vec2{e.y, -e.x});  // outward for CCW
        hs.push_back({nrm, dot(nrm, K[i])});
    }
    return hs;
}

double volume(const Polygon& K) { return shoelace(K.verts); }

Vec2 centroid(const Polygon& K) {
    double a = 0.0;
    Vec2 c{0.0, 0.0};
    int n = K.size();
    for (int i = 0; i < n; ++i) {
        const Vec2& p = K[i];
        const Vec2& q = K[(i + 1) % n];
        double w = cross(p, q);
        a += w;
        c += (p + q) * w;
    }
    return c / (3.0 * a);
}

double support_function(const Polygon& K, const Vec2& theta) {
    double s = -std::numeric_limits<double>::infinity();
    for (const auto& v : K.verts) s = std::max(s, dot(v, theta));
    return s;
}

double interior_margin(const Polygon& K, const Vec2& p) {
    double m = std::numeric_limits<double>::infinity();
    int n = K.size();
    for (int i = 0; i < n; ++i) {
        Vec2 e = K[(i + 1) % n] - K[i];
        Vec2 nrm = normalized(Vec2{e.y, -e.x});
        m = std::min(m, dot(nrm, K[i]) - dot(nrm, p));
    }
    return m;
}

bool contains(const Polygon& K, const Vec2& p, double slack) {
    return interior_margin(K, p) >= -slack;
}

Polygon translate(const Polygon& K, const Vec2& d) {
    Polygon out = K;
    for (auto& v : out.verts) v += d;
    return out;
}

Polygon scale(const Polygon& K, double s) {
    Polygon out = K;
    for (auto& v : out.verts) v = v * s;
    return out;
}

double distance_to_polygon(const Vec2& p, const Polygon& K) {
    if (contains(K, p, 0.0)) return 0.0;
    double d = std::numeric_limits<double>::infinity();
    int n = K.size();
    for (int i = 0; i < n; ++i) {
        const Vec2& a = K[i];
        const Vec2& b = K[(i + 1) % n];
        Vec2 ab = b - a;
        double t = dot(p - a, ab) / norm_sq(ab);
        t = std::clamp(t, 0.0, 1.0);
        d = std::min(d, dist(p, a + ab * t));
    }
    return d;
}

double hausdorff_distance(const Polygon& P, const Polygon& Q) {
    double d = 0.0;
    for (const auto& v : P.verts) d = std::max(d, distance_to_polygon(v, Q));
    for (const auto& v : Q.verts) d = std::max(d, distance_to_polygon(v, P));
    return d;
}

Polygon clip(const Polygon& K, const Vec2& n, double a) {
    std::vector<Vec2> out;
    int m = K.size();
    for (int i = 0; i < m; ++i) {
        const Vec2& p = K[i];
        const Vec2& q = K[(i + 1) % m];
        double sp = a - dot(p, n);
        double sq = a - dot(q, n);
        if (sp >= 0.0) out.push_back(p);
        if ((sp >= 0.0) != (sq >= 0.0)) {
            double t = sp / (sp - sq);
            out.push_back(p + (q - p) * t);
        }
    }
    Polygon res;
    res.verts = std::move(out);
    return res;
}

double clipped_area_above(const Polygon& K, const Vec2& n, double a) {
    Polygon part = clip(K, Vec2{-n.x, -n.y}, -a);  // keep <x,n> >= a
    if (part.size() < 3) return 0.0;
    return shoelace(part.verts);
}

namespace {

struct TaggedVert {
    Vec2 p;
    int lin;   // line id of incoming edge
    int lout;  // line id of outgoing edge
};

std::optional<Vec2> line_intersection(const HalfSpace& A, const HalfSpace& B) {
    double det = cross(A.normal, B.normal);
    if (std::fabs(det) < 1e-13) return std::nullopt;
    return Vec2{(A.offset * B.normal.y - B.offset * A.normal.y) / det,
                (A.normal.x * B.offset - B.normal.x * A.offset) / det};
}

}  // namespace

std::optional<Polygon> halfplane_intersection(const std::vector<HalfSpace>& hs_in) {
    if (hs_in.empty()) throw InputError("halfplane_intersection: empty half-space list");
    std::vector<HalfSpace> hs = hs_in;
    for (auto& h : hs) {
        double n = norm(h.normal);
        if (n < 1e-300) throw InputError("halfplane_intersection: zero normal");
        h.normal = h.normal / n;
        h.offset /= n;
    }

    // Recession-cone check: a direction gap of pi or more between consecutive
    // normal angles means the intersection is unbounded (if nonempty).
    {
        std::vector<double> ang;
        ang.reserve(hs.size());
        for (const auto& h : hs) ang.push_back(std::atan2(h.normal.y, h.normal.x));
        std::sort(ang.begin(), ang.end());
        double maxgap = ang.front() + 2.0 * M_PI - ang.back();
        for (std::size_t i = 1; i < ang.size(); ++i) maxgap = std::max(maxgap, ang[i] - ang[i - 1]);
        if (maxgap >= M_PI - 1e-9) throw UnboundedError("half-plane intersection is unbounded");
    }

    constexpr double R = 1e7;
    std::vector<TaggedVert> poly = {
        {{-R, -R}, -4, -1}, {{R, -R}, -1, -2}, {{R, R}, -2, -3}, {{-R, R}, -3, -4}};

    for (int j = 0; j < static_cast<int>(hs.size()); ++j) {
        const HalfSpace& h = hs[static_cast<std::size_t>(j)];
        std::vector<TaggedVert> next;
        int m = static_cast<int>(poly.size());
        for (int i = 0; i < m; ++i) {
            const TaggedVert& v = poly[static_cast<std::size_t>(i)];
            const TaggedVert& w = poly[static_cast<std::size_t>((i + 1) % m)];
            double sv = h.offset - dot(v.p, h.normal);
            double sw = h.offset - dot(w.p, h.normal);
            if (sv >= 0.0) next.push_back(v);
            if ((sv >= 0.0) != (sw >= 0.0)) {
                double t = sv / (sv - sw);
                Vec2 p = v.p + (w.p - v.p) * t;
                if (sv >= 0.0) {
                    next.push_back({p, v.lout, j});
                } else {
                    next.push_back({p, j, v.lout});
                }
            }
        }
        poly = std::move(next);
        if (poly.size() < 3) return std::nullopt;
    }

    // Recompute vertex positions exactly from the two defining lines.
    std::vector<Vec2> verts;
    verts.reserve(poly.size());
    for (const auto& v : poly) {
        if (v.lin < 0 || v.lout < 0) throw UnboundedError("half-plane intersection reaches seed box");
        auto exact = line_intersection(hs[static_cast<std::size_t>(v.lin)],
                                       hs[static_cast<std::size_t>(v.lout)]);
        verts.push_back(exact.value_or(v.p));
    }
    std::vector<Vec2> cleaned = clean_ring(std::move(verts));
    if (cleaned.size() < 3 || shoelace(cleaned) <= 0.0) return std::nullopt;
    return make_polygon(std::move(cleaned));
}

Polygon polar_body(const Polygon& K, const Vec2& x) {
    double sc = poly_scale(K.verts) + norm(x);
    if (interior_margin(K, x) <= 1e-12 * sc) {
        throw CenterOutsideError("polar_body: center not strictly inside the body");
    }
    int m = K.size();
    std::vector<Vec2> verts;
    verts.reserve(static_cast<std::size_t>(m));
    // Every vertex of a strictly convex K yields a facet {y : <y, v_i - x> <= 1}
    // of (K - x)°; consecutive facet lines meet at the polar's vertices.
    for (int i = 0; i < m; ++i) {
        Vec2 a = K[i] - x;
        Vec2 b = K[(i + 1) % m] - x;
        double det = cross(a, b);
        Vec2 y{(b.y - a.y) / det, (a.x - b.x) / det};
        verts.push_back(y + x);
    }
    return make_polygon(std::move(verts));
}

double ball_volume(int n) {
    if (n < 1) throw InputError("ball_volume: n must be >= 1");
    // V_n = (2*pi/n) * V_{n-2}, V_1 = 2, V_2 = pi; identical to the
    // double-factorial formulas but without overflow.
    double v = (n % 2 == 1) ? 2.0 : M_PI;
    for (int k = (n % 2 == 1) ? 3 : 4; k <= n; k += 2) v *= 2.0 * M_PI / k;
    return v;
}

double log_ball_volume(int n) {
    if (n < 1) throw InputError("log_ball_volume: n must be >= 1");
    double lv = (n % 2 == 1) ? std::log(2.0) : std::log(M_PI);
    for (int k = (n % 2 == 1) ? 3 : 4; k <= n; k += 2) lv += std::log(2.0 * M_PI / k);
    return lv;
}

double volume_product(const Polygon& K, const Vec2& x) {
    return volume(K) * volume(polar_body(K, x));
}

namespace {

double bbox_diameter(const Polygon& K) {
    double xlo = K[0].x, xhi = K[0].x, ylo = K[0].y, yhi = K[0].y;
    for (const auto& v : K.verts) {
        xlo = std::min(xlo, v.x);
        xhi = std::max(xhi, v.x);
        ylo = std::min(ylo, v.y);
        yhi = std::max(yhi, v.y);
    }
    return std::hypot(xhi - xlo, yhi - ylo);
}

}  // namespace

Vec2 santalo_point_body(const Polygon& K, int max_iter) {
    const double diam = bbox_diameter(K);
    const double h = 1e-4 * diam;
    const double margin = 1e-9 * diam;
    auto f = [&](const Vec2& x) { return volume(polar_body(K, x)); };

    Vec2 x = centroid(K);
    double fx = f(x);
    for (int it = 0; it < max_iter; ++it) {
        double fpx = f({x.x + h, x.y});
        double fmx = f({x.x - h, x.y});
        double fpy = f({x.x, x.y + h});
        double fmy = f({x.x, x.y - h});
        Vec2 g{(fpx - fmx) / (2.0 * h), (fpy - fmy) / (2.0 * h)};
        if (norm(g) <= 1e-10) return x;

        double h11 = (fpx - 2.0 * fx + fmx) / (h * h);
        double h22 = (fpy - 2.0 * fx + fmy) / (h * h);
        double fpp = f({x.x + h, x.y + h});
        double fpm = f({x.x + h, x.y - h});
        double fmp = f({x.x - h, x.y + h});
        double fmm = f({x.x - h, x.y - h});
        double h12 = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
        Mat2 H{h11, h12, h22};

        Vec2 d;
        if (H.positive_definite()) {
            Mat2 Hi = H.inverse();
            d = -Hi.apply(g);
        } else {
            d = -g * (diam / (norm(g) + 1e-300)) * 0.1;  // gradient fallback
        }

        double gd = dot(g, d);
        double t = 1.0;
        bool moved = false;
        for (int bt = 0; bt < 60; ++bt) {
            Vec2 xn = x + d * t;
            if (interior_margin(K, xn) > margin) {
                double fn = f(xn);
                double want = fx + 1e-4 * t * gd;
                // below the float noise floor the Armijo test is meaningless
                if (fn <= want || std::fabs(t * gd) <= 1e-14 * (std::fabs(fx) + 1e-300)) {
                    x = xn;
                    fx = fn;
                    moved = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if (!moved) break;
    }
    // final gradient check
    Vec2 g{(f({x.x + h, x.y}) - f({x.x - h, x.y})) / (2.0 * h),
           (f({x.x, x.y + h}) - f({x.x, x.y - h})) / (2.0 * h)};
    if (norm(g) <= 1e-10) return x;
    throw NoConvergenceError("santalo_point_body: gradient did not reach tolerance");
}

std::optional<BodyRegion> santalo_region_body(const Polygon& K, double t, int rays) {
    if (!(t > 0.0)) throw InputError("santalo_region_body: t must be > 0");
    if (rays < 16) throw InputError("santalo_region_body: rays must be >= 16");
    const double vb2 = ball_volume(2);
    const double threshold = t * vb2 * vb2;
    const double VK = volume(K);
    Vec2 x0 = santalo_point_body(K);
    auto product = [&](const Vec2& x) { return VK * volume(polar_body(K, x)); };
    if (product(x0) > threshold * (1.0 + 1e-12)) return std::nullopt;

    auto hs = halfspaces(K);
    BodyRegion reg;
    reg.kind = 's';
    reg.param = t;
    reg.dirs = rays;
    reg.center = x0;
    reg.radii.resize(static_cast<std::size_t>(rays));
    reg.residuals.resize(static_cast<std::size_t>(rays));

    parallel_for(static_cast<std::size_t>(rays), [&](std::size_t k) {
        Vec2 th = unit_dir(static_cast<int>(k), rays);
        double rmax = std::numeric_limits<double>::infinity();
        for (const auto& h : hs) {
            double den = dot(th, h.normal);
            if (den > 1e-15) rmax = std::min(rmax, (h.offset - dot(x0, h.normal)) / den);
        }
        double lo = 0.0, hi = rmax * (1.0 - 1e-9);
        if (product(x0 + th * hi) <= threshold) {
            lo = hi;  // threshold met arbitrarily close to the boundary
        } else {
            while (hi - lo > 1e-8) {
                double mid = 0.5 * (lo + hi);
                (product(x0 + th * mid) <= threshold ? lo : hi) = mid;
            }
        }
        reg.radii[k] = lo;
        reg.residuals[k] = hi - lo;
    });

    double rmaxv = *std::max_element(reg.radii.begin(), reg.radii.end());
    if (rmaxv <= kVertexTol) {
        reg.degenerate = true;
        return reg;
    }
    std::vector<Vec2> verts;
    verts.reserve(static_cast<std::size_t>(rays));
    for (int k = 0; k < rays; ++k) {
        verts.push_back(x0 + unit_dir(k, rays) * reg.radii[static_cast<std::size_t>(k)]);
    }
    try {
        reg.poly = make_polygon(std::move(verts));
    } catch (const InvalidPolygonError&) {
        reg.degenerate = true;
    }
    return reg;
}

std::optional<BodyRegion> floating_body_body(const Polygon& K, double lambda, int dirs) {
    if (!(lambda > 0.0 && lambda < 0.5)) throw InputError("floating_body_body: need 0 < lambda < 1/2");
    if (dirs < 16) throw InputError("floating_body_body: dirs must be >= 16");
    const double VK = volume(K);
    const double target = lambda * VK;

    BodyRegion reg;
    reg.kind = 'f';
    reg.param = lambda;
    reg.dirs = dirs;
    reg.radii.resize(static_cast<std::size_t>(dirs));
    reg.residuals.resize(static_cast<std::size_t>(dirs));

    parallel_for(static_cast<std::size_t>(dirs), [&](std::size_t k) {
        Vec2 th = unit_dir(static_cast<int>(k), dirs);
        double lo = -support_function(K, Vec2{-th.x, -th.y});
        double hi = support_function(K, th);
        double a = 0.5 * (lo + hi), res = VK;
        for (int it = 0; it < 200; ++it) {
            a = 0.5 * (lo + hi);
            double area = clipped_area_above(K, th, a);
            res = area - target;
            if (std::fabs(res) <= 1e-10 * VK) break;
            (res > 0.0 ? lo : hi) = a;
        }
        reg.radii[k] = a;
        reg.residuals[k] = std::fabs(res) / VK;
    });

    std::vector<HalfSpace> cuts;
    cuts.reserve(static_cast<std::size_t>(dirs));
    for (int k = 0; k < dirs; ++k) {
        cuts.push_back({unit_dir(k, dirs), reg.radii[static_cast<std::size_t>(k)]});
    }
    auto poly = halfplane_intersection(cuts);
    if (!poly) return std::nullopt;
    reg.poly = *poly;
    return reg;
}

SectionWitness section_witness(const Polygon& K, const Vec2& u_in, double a, int grid) {
    Vec2 u = normalized(u_in);
    const double sc = poly_scale(K.verts);
    // chord endpoints
    std::vector<Vec2> pts;
    int m = K.size();
    for (int i = 0; i < m; ++i) {
        const Vec2& p = K[i];
        const Vec2& q = K[(i + 1) % m];
        double sp = dot(p, u) - a;
        double sq = dot(q, u) - a;
        if ((sp > 0.0) != (sq > 0.0)) {
            double t = sp / (sp - sq);
            pts.push_back(p + (q - p) * t);
        } else if (std::fabs(sp) <= 1e-12 * sc) {
            pts.push_back(p);
        }
    }
    std::vector<Vec2> ends;
    for (const auto& p : pts) {
        bool dup = false;
        for (const auto& e : ends) dup = dup || dist(p, e) <= 1e-9;
        if (!dup) ends.push_back(p);
    }
    if (ends.size() != 2) throw LineMissesBodyError("section line does not cross the interior");
    Vec2 p0 = ends[0], p1 = ends[1];
    if (interior_margin(K, (p0 + p1) * 0.5) <= 1e-12 * sc) {
        throw LineMissesBodyError("section line touches only the boundary");
    }

    const double VK = volume(K);
    double lambda = clipped_area_above(K, u, a) / VK;
    auto product_at = [&](double tau) {
        return VK * volume(polar_body(K, p0 + (p1 - p0) * tau));
    };

    const double eps = 1e-6;
    double best_tau = 0.5, best = product_at(0.5);
    if (grid > 1) {
        for (int i = 1; i <= grid; ++i) {
            double tau = static_cast<double>(i) / (grid + 1);
            tau = std::clamp(tau, eps, 1.0 - eps);
            double v = product_at(tau);
            if (v < best) {
                best = v;
                best_tau = tau;
            }
        }
        // golden-section refinement around the best coarse point
        double span = 1.0 / (grid + 1);
        double lo = std::max(eps, best_tau - span), hi = std::min(1.0 - eps, best_tau + span);
        constexpr double gr = 0.6180339887498949;
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = product_at(x1), f2 = product_at(x2);
        while (hi - lo > 1e-10) {
            if (f1 < f2) {
                hi = x2; x2 = x1; f2 = f1;
                x1 = hi - gr * (hi - lo);
                f1 = product_at(x1);
            } else {
                lo = x1; x1 = x2; f1 = f2;
                x2 = lo + gr * (hi - lo);
                f2 = product_at(x2);
            }
        }
        double mid = 0.5 * (lo + hi);
        double fm = product_at(mid);
        if (fm < best) {
            best = fm;
            best_tau = mid;
        }
    }

    SectionWitness w;
    w.z = p0 + (p1 - p0) * best_tau;
    w.product = best;
    w.lambda = lambda;
    double vb2 = ball_volume(2);
    w.bound = vb2 * vb2 / (4.0 * lambda * (1.0 - lambda));
    w.holds = w.product <= w.bound + 1e-6 * w.bound;
    return w;
}

}  // namespace santalo

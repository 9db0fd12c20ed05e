#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "santalo/errors.hpp"
#include "santalo/vec2.hpp"

namespace santalo {

// {x : <x, normal> <= offset}, |normal| = 1.
struct HalfSpace {
    Vec2 normal;
    double offset = 0.0;
};

// Convex polygon, vertices counter-clockwise and in strictly convex position.
// The half-space representation is always derived from the vertices, never
// patched incrementally.
struct Polygon {
    std::vector<Vec2> verts;

    int size() const { return static_cast<int>(verts.size()); }
    const Vec2& operator[](int i) const { return verts[static_cast<std::size_t>(i)]; }
};

// Absolute coordinate tolerance for merging duplicate vertices.
inline constexpr double kVertexTol = 1e-9;

// Builds a Polygon from CCW-ordered points: merges duplicates within kVertexTol,
// drops collinear vertices, and verifies strict convexity. Throws
// InvalidPolygonError if the cleaned list is not a CCW convex polygon with
// positive area.
Polygon make_polygon(std::vector<Vec2> pts);

// Convex hull (monotone chain); collinear points on the hull boundary dropped.
Polygon convex_hull(std::vector<Vec2> pts);

// Derived H-representation: edge i runs from verts[i] to verts[i+1], outward
// unit normal, offset = support value.
std::vector<HalfSpace> halfspaces(const Polygon& K);

double volume(const Polygon& K);  // shoelace area
Vec2 centroid(const Polygon& K);
double support_function(const Polygon& K, const Vec2& theta);

bool contains(const Polygon& K, const Vec2& p, double slack = kVertexTol);
// Signed interior margin: min over facets of (offset - <p, normal>); positive
// strictly inside.
double interior_margin(const Polygon& K, const Vec2& p);

Polygon translate(const Polygon& K, const Vec2& d);
Polygon scale(const Polygon& K, double s);

// Distance from a point to a convex polygon (0 if inside).
double distance_to_polygon(const Vec2& p, const Polygon& K);
double hausdorff_distance(const Polygon& P, const Polygon& Q);

// Clip K by the half-plane {<x,n> <= a}. Empty result has no vertices.
Polygon clip(const Polygon& K, const Vec2& n, double a);
// Area of K ∩ {<x,n> >= a}, computed exactly from the clipped polygon.
double clipped_area_above(const Polygon& K, const Vec2& n, double a);

// Intersection of half-planes. Returns std::nullopt when the interior is void.
// Throws UnboundedError when the intersection is unbounded (callers must add a
// bounding box of half-spaces themselves).
std::optional<Polygon> halfplane_intersection(const std::vector<HalfSpace>& hs);

// Polar body with respect to an interior point x: x + (K - x)°. Throws
// CenterOutsideError when x is not strictly inside K.
Polygon polar_body(const Polygon& K, const Vec2& x);

// Volume of the Euclidean unit ball in dimension n (double-factorial formulas).
double ball_volume(int n);
// log Vol(B_2^n); stays finite long after the volume itself underflows.
double log_ball_volume(int n);

// Unique minimizer of x -> volume(polar_body(K, x)) by damped Newton with
// finite-difference derivatives. Throws NoConvergenceError.
Vec2 santalo_point_body(const Polygon& K, int max_iter = 120);

// Mahler-style normalized product Vol(K)·Vol(K^x).
double volume_product(const Polygon& K, const Vec2& x);

struct BodyRegion {
    char kind = 's';             // 's' santalo | 'f' floating
    double param = 0.0;          // t or lambda
    int dirs = 0;
    Vec2 center;                 // ray origin (santalo) or 0 (floating)
    std::vector<double> radii;   // per-ray radii (santalo) or offsets a(theta) (floating)
    std::vector<double> residuals;
    Polygon poly;                // empty when degenerate
    bool degenerate = false;     // all radii below vertex tolerance
};

// Santaló region S(K,t) = {x : Vol(K)Vol(K^x) <= t·Vol(B_2^2)^2}, traced by
// radius bisection along evenly spaced rays from the Santaló point.
std::optional<BodyRegion> santalo_region_body(const Polygon& K, double t, int rays = 256);

// Floating body F(K,λ): intersection over dirs directions of {<x,θ> <= a(θ)}
// where the cut area equals λ·Vol(K) (relative residual 1e-10).
std::optional<BodyRegion> floating_body_body(const Polygon& K, double lambda, int dirs = 256);

struct SectionWitness {
    Vec2 z;
    double product = 0.0;   // Vol(K)·Vol(K^z)
    double lambda = 0.0;    // volume fraction cut by the line
    double bound = 0.0;     // Vol(B_2^2)^2 / (4λ(1-λ))
    bool holds = false;
};

// Minimizes the volume product along the open chord K ∩ {<x,u> = a} and checks
// it against the sectional bound. Throws LineMissesBodyError.
SectionWitness section_witness(const Polygon& K, const Vec2& u, double a, int grid = 32);

}  // namespace santalo

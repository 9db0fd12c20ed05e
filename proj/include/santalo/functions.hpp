#pragma once

#include <memory>
#include <optional>
#include <variant>

#include "santalo/geom2d.hpp"
#include "santalo/gridfn.hpp"
#include "santalo/vec2.hpp"

namespace santalo {

struct LogConcaveFn;
using LogConcavePtr = std::shared_ptr<const LogConcaveFn>;

// f(x) = exp(logamp - <A(x-c), x-c>/2). In 1D only A.a11 and c.x are used.
struct GaussianKernel {
    Mat2 A;
    Vec2 center;
    double logamp = 0.0;
};

// f(x) = exp(-||x||_p), p in {1, 2}.
struct ExpNormKernel {
    double p = 1.0;
};

// Indicator of a convex body: polygon when dim == 2, interval when dim == 1.
struct IndicatorKernel {
    Polygon body;      // dim == 2
    Interval iv;       // dim == 1
};

// Indicator of the Euclidean ball of given radius (dim == 2).
struct BallIndicatorKernel {
    double radius = 1.0;
};

// f(x) = exp(-h_K(x)); arises as the polar of an indicator.
struct SupportExpKernel {
    Polygon body;      // dim == 2
    Interval iv;       // dim == 1
};

// f = exp(-phi) with phi sampled on a grid; +inf outside the grid box.
struct GridKernel {
    GridFn potential;
};

// Polar of an isotropic truncated Gaussian alpha|x|^2/2 restricted to |x| <= R:
// phi(y) = |y|^2/(2 alpha) for |y| <= alpha R, else R|y| - alpha R^2/2.
struct TruncGaussPolarKernel {
    double alpha = 1.0;
    double radius = 1.0;
};

// f restricted to the level set {phi_base <= t}, zero outside.
struct TruncatedKernel {
    LogConcavePtr base;
    double t = 1.0;
};

// (lambda · f)(x) = f(x/lambda)^lambda.
struct HomothetyKernel {
    LogConcavePtr base;
    double lambda = 1.0;
};

// f = base^alpha (potential scaled by alpha).
struct PowerKernel {
    LogConcavePtr base;
    double alpha = 1.0;
};

using Kernel = std::variant<GaussianKernel, ExpNormKernel, IndicatorKernel, BallIndicatorKernel,
                            SupportExpKernel, GridKernel, TruncGaussPolarKernel, TruncatedKernel,
                            HomothetyKernel, PowerKernel>;

struct LogConcaveFn {
    int dim = 2;
    bool even = false;
    Kernel kernel;
};

// Potential phi = -log f, extended-real (kInfValue outside the support).
double potential(const LogConcaveFn& f, const Vec2& x);
inline double density(const LogConcaveFn& f, const Vec2& x) {
    double p = potential(f, x);
    return is_pos_inf(p) ? 0.0 : std::exp(-p);
}

// Constructors.
LogConcaveFn gaussian_fn(int dim, const Mat2& A = Mat2{}, const Vec2& center = Vec2{},
                         double logamp = 0.0);
LogConcaveFn expnorm_fn(int dim, double p = 1.0);
LogConcaveFn indicator_fn(const Polygon& K);
LogConcaveFn indicator_fn(const Interval& iv);
LogConcaveFn ball_indicator_fn(double radius);
LogConcaveFn support_exp_fn(const Polygon& K);
LogConcaveFn support_exp_fn(const Interval& iv);
LogConcaveFn grid_backed_fn(GridFn potential_grid, bool even);

// s-concave approximation f_s(x) = (1 + log f(x)/s)_+^s and grid-backed
// s-concave functions (outputs of the L_s transform).
struct SConcaveFn {
    int s = 1;
    int dim = 1;
    bool even = false;
    LogConcavePtr base;                   // set for the f_s form
    std::shared_ptr<const GridFn> grid;   // set for grid-backed densities
    double eval(const Vec2& x) const;
};

SConcaveFn s_approx(const LogConcaveFn& f, int s);
SConcaveFn s_concave_from_grid(GridFn density, int s, bool even);

// Level-set bounding box {phi <= t} (finite for integrable f). Used by
// truncation and s-concave supports.
Box potential_level_bbox(const LogConcaveFn& f, double t);

// Support box of f_s = {x : log f(x) > -s}.
Box support_box(const SConcaveFn& g);

bool is_even_kernel(const LogConcaveFn& f);

}  // namespace santalo

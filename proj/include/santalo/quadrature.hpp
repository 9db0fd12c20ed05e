#pragma once

#include <functional>
#include <optional>

#include "santalo/functions.hpp"

namespace santalo {

struct QuadSpec {
    int n1d = 257;       // base Simpson nodes for 1D integrals (Richardson refines to 2n-1)
    int n2d = 129;       // base Simpson nodes per axis for 2D integrals
    double cut = 1e-12;  // relative effective-support cutoff; depth = -log(cut)
    double depth() const { return -std::log(cut); }
};

struct MassResult {
    double value = 0.0;
    double err = 0.0;       // Richardson error estimate (absolute)
    bool overflow = false;  // integrand does not decay: +infinity as a tagged value
};

struct MomentResult {
    MassResult mass;
    Vec2 moment;  // ∫ x · integrand dx
};

// Generic integrand view: a nonnegative density over an effective box, with an
// optional exact support chord in a rotated frame (u along theta, v along
// perp(theta)).
struct DensityAdapter {
    int dim = 2;
    Box box;
    std::function<double(const Vec2&)> value;
    // engaged + lo>hi means the slice misses the support entirely
    std::function<std::optional<Interval>(const Vec2& th, const Vec2& pp, double u)> slice;
};

// Effective bounding box of e^{-<b,x>} f(x) down to depth below the peak;
// std::nullopt when the integrand fails to decay (dual mass +infinity).
std::optional<Box> decay_box(const LogConcaveFn& f, const Vec2& b, double depth);

// Exact support chord of f on the line {u·th + v·pp} when one is available.
std::optional<Interval> slice_support(const LogConcaveFn& f, const Vec2& th, const Vec2& pp,
                                      double u);

DensityAdapter adapt_tilted(const LogConcaveFn& f, const Vec2& b, double depth);
DensityAdapter adapt_density(const SConcaveFn& g);

// Tensor Simpson with one Richardson halving step; deterministic for any
// thread count (per-row slices, fixed-order pairwise reduction).
MassResult integrate_adapter(const DensityAdapter& a, const QuadSpec& spec);
MomentResult integrate_adapter_moment(const DensityAdapter& a, const QuadSpec& spec);
// Restricted to the half-plane {<x,theta> >= cut_offset}.
MassResult mass_above_adapter(const DensityAdapter& a, const Vec2& theta, double cut_offset,
                              const QuadSpec& spec);

// ∫ e^{-<b,x>} f dx; overflow is a tagged result, never an exception.
MassResult integrate_tilted(const LogConcaveFn& f, const Vec2& b, const QuadSpec& spec = {});
MomentResult integrate_tilted_moment(const LogConcaveFn& f, const Vec2& b, const QuadSpec& spec = {});

// Marginal of a density along direction theta with its right-tail cumulative;
// supports the mass-fraction cut solve.
struct MarginalCut {
    std::vector<double> u;  // ascending, odd count
    std::vector<double> M;  // marginal values
    std::vector<double> T;  // right tail: T[j] = ∫_{u[j]}^{u.back()} M
    double total = 0.0;

    // Offset a with tail(a) = target (cubic Hermite between nodes). residual is
    // |tail(a) - target| relative to total.
    double solve(double target, double* residual) const;
};

MarginalCut direction_marginal(const DensityAdapter& a, const Vec2& theta, const QuadSpec& spec);

}  // namespace santalo

#pragma once

#include <optional>

#include "santalo/functions.hpp"
#include "santalo/gridfn.hpp"

namespace santalo {

// Discrete Legendre transform of one line of samples. x ascending, y ascending,
// phi extended-real; out[k] = max_j (y[k]*x[j] - phi[j]), computed in linear
// time through the lower convex hull. Throws AllInfiniteError when no finite
// sample exists. Negative-infinite samples are treated as "no information"
// (they would dominate everything; callers never produce them).
void legendre_line(const std::vector<double>& x, const std::vector<double>& phi,
                   const std::vector<double>& y, std::vector<double>& out);

// Per-axis slope range of the finite samples, padded 10% per side; degenerate
// ranges are widened to a unit half-width around the center.
Box default_dual_box(const GridFn& phi);

// Discrete Legendre transform onto a dual grid (same shape as the input unless
// dual_shape given). Dimension-by-dimension lower-envelope sweep; the result is
// flagged convexified.
GridFn legendre(const GridFn& phi);
GridFn legendre(const GridFn& phi, const Box& dual_box);
GridFn legendre(const GridFn& phi, const Box& dual_box, std::array<int, 2> dual_shape);

// Brute-force conjugate at a single point: max over all finite grid nodes of
// <x, node> - phi(node). Test oracle for legendre.
double legendre_brute(const GridFn& phi, const Vec2& x);

// Functional polar f° = e^{-L(-log f)}. Closed-form kernels dualize
// symbolically; grid-backed inputs go through the grid transform. `tail_depth`
// controls how far the grid dual box must track the decay of e^{-Lphi}.
LogConcaveFn polar_fn(const LogConcaveFn& f, double tail_depth = 30.0);

// L_s transform of an s-concave function:
//   (L_s g)(x) = inf_{g(y) > 0} (1 - <x,y>/s)_+^s / g(y).
// Grid-backed output on s·(supp g)°. Throws ZeroAtOriginError when g(0) = 0.
SConcaveFn ls_transform(const SConcaveFn& g, std::array<int, 2> out_shape = {257, 1});
GridFn ls_transform_grid(const GridFn& density, int s, std::array<int, 2> out_shape = {257, 1});

// Asplund (sup-convolution) product sampled on the target grid, computed via
// the conjugate identity L(phi box psi) = L(phi) + L(psi). Returns a density
// grid.
GridFn asplund_product(const LogConcaveFn& f, const LogConcaveFn& g, const Box& target_box,
                       std::array<int, 2> shape);

// (lambda · f)(x) = f(x/lambda)^lambda.
LogConcaveFn homothety(const LogConcaveFn& f, double lambda);

}  // namespace santalo

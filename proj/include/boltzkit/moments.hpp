// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "boltzkit/charfun.hpp"
#include "boltzkit/norms.hpp"

namespace boltzkit {

struct LevyConstant {
  double value = 0.0;
  double error = 0.0;
};

/// c(alpha) = int_{R^3} (1 - cos zeta_1) / |zeta|^(3+alpha) d zeta
///          = 4 pi int_0^inf (1 - sin(r)/r) r^(-1-alpha) dr.
/// Cached per alpha (write-once map). Throws DivergenceError at the
/// endpoints alpha <= 0 or alpha >= 2.
LevyConstant levy_constant(double alpha);

struct MomentResult {
  double value = 0.0;
  double error = 0.0;
  bool infinite = false;
  bool inconclusive = false;
};

/// mnorm_re(phi, alpha) / c(alpha): the |v|^alpha moment for symmetric
/// measures; for asymmetric measures this is the moment of the symmetrized
/// measure (the norm only sees Re phi).
MomentResult moment_from_charfn(const AnalyticCharFn& phi, double alpha);
MomentResult moment_from_charfn(const RadialCharFn& phi, double alpha);

struct SecondMomentResult {
  double value = 0.0;
  bool infinite = false;
  double fit_slope = 0.0;  // |delta| ~ r^slope near 0; < ~2 means no energy
};

/// -3 phi''(0) from a quadratic fit on the smallest positive radii;
/// flagged infinite when delta is visibly non-C2 at the origin.
SecondMomentResult second_moment(const RadialCharFn& phi);

struct LiftResult {
  RadialGrid grid;
  std::vector<double> psi;  // (1 - Laplacian)^n phi at the grid nodes
  double psi0 = 0.0;
  double derivative_error = 0.0;  // FD path only: stencil-order disagreement
  RadialCharFn normalized() const;  // psi / psi(0) as a characteristic fn
};

/// Exact-derivative lift for families with closed-form radial Laplacians
/// (gaussian polynomials, dirac sinc eigenfunctions, point mass). Stable
/// components have no bounded lift and raise NumericError.
LiftResult laplacian_lift(const AnalyticCharFn& phi, int n,
                          const RadialGrid& grid);

/// Finite-difference lift on sampled data: 7-point stencils for the radial
/// Laplacian delta'' + (2/r) delta' (3 delta''(0) at the origin), applied n
/// times. derivative_error compares 5- and 7-point stencils; above
/// tolerance it raises NumericError carrying the estimate.
LiftResult laplacian_lift(const RadialCharFn& phi, int n,
                          double tolerance = 1e-4);

}  // namespace boltzkit

#pragma once

#include "minfib/field.hpp"

namespace minfib {

/// Finite-difference configuration shared by all operators. Defaults: 5-point
/// stencils, h = 1e-4 for first derivatives and h = 1e-3 for second ones.
struct CalculusOptions {
  Stencil d1 = Stencil::first_derivative();
  Stencil d2 = Stencil::second_derivative();
};

/// Coefficients of the gradient over the given orthonormal frame: entry i is
/// the first derivative of f along the geodesic with velocity frame[i]. The
/// ambient gradient is the complex combination sum_i c_i X_i; its real and
/// imaginary parts are the gradients of Re f and Im f.
Eigen::VectorXcd gradient_in_frame(const ScalarField& f,
                                   const TangentFrame& frame,
                                   const CalculusOptions& opts = {});
Eigen::VectorXcd gradient(const ScalarField& f, const ManifoldPoint& p,
                          const CalculusOptions& opts = {});

/// Laplace-Beltrami value at p: trace of the Hessian computed as the sum of
/// second derivatives of f along the frame geodesics.
Complex tension_in_frame(const ScalarField& f, const TangentFrame& frame,
                         const CalculusOptions& opts = {});
Complex tension(const ScalarField& f, const ManifoldPoint& p,
                const CalculusOptions& opts = {});

/// Conformality operator: the complex-bilinear (unconjugated) pairing of the
/// two gradients, sum_i X_i(f) X_i(g).
Complex conformality_in_frame(const ScalarField& f, const ScalarField& g,
                              const TangentFrame& frame,
                              const CalculusOptions& opts = {});
Complex conformality(const ScalarField& f, const ScalarField& g,
                     const ManifoldPoint& p, const CalculusOptions& opts = {});

/// |df|^2 = |grad Re f|^2 + |grad Im f|^2 at p.
double dphi_norm_sq(const ScalarField& f, const ManifoldPoint& p,
                    const CalculusOptions& opts = {});

/// p-tension field at a submersion point; throws DegeneratePoint when
/// |df|^2(p) <= 1e-10. For pexp == 2 this reduces exactly to tension().
Complex p_tension(const ScalarField& f, const ManifoldPoint& p, double pexp,
                  const CalculusOptions& opts = {});

/// Eigenvalues of the first fundamental form of f (pullback of the plane
/// metric) with respect to the manifold metric, plus the Gram matrix of
/// {grad u, grad v} they were computed from. `degenerate` marks a critical
/// point (Gram determinant <= 1e-14); both eigenvalues are 0 there.
struct FirstFundamentalData {
  double lam1 = 0.0;
  double lam2 = 0.0;
  Eigen::Matrix2d gram = Eigen::Matrix2d::Zero();
  bool degenerate = false;
};

FirstFundamentalData first_fundamental_eigenvalues(
    const ScalarField& f, const ManifoldPoint& p,
    const CalculusOptions& opts = {});

struct EigenpairEstimate {
  EigenData data;
  double tension_residual = 0.0;       // max |tau(f) - lambda f| over used samples
  double conformality_residual = 0.0;  // max |kappa(f,f) - mu f^2| over used samples
  int lambda_samples = 0;
  int mu_samples = 0;
};

/// Least-squares fit of (lambda, mu) from random samples. Samples with
/// |f| < 1e-6 are excluded from the lambda fit and |f^2| < 1e-6 from the mu
/// fit; throws InsufficientSamples when fewer than 5 usable points remain.
EigenpairEstimate estimate_eigenpair(const ScalarField& f,
                                     const ManifoldSpec& spec,
                                     int sample_count, Rng& rng,
                                     const CalculusOptions& opts = {});

/// Residual |tau(fg) - (tau(f) g + 2 kappa(f,g) + f tau(g))| at p.
double product_rule_check(const ScalarField& f, const ScalarField& g,
                          const ManifoldPoint& p,
                          const CalculusOptions& opts = {});

}  // namespace minfib

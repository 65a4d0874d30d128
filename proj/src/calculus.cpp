#include "minfib/calculus.hpp"

#include <cmath>

namespace minfib {

namespace {

Complex derivative_along(const ScalarField& f, const ManifoldPoint& p,
                         const Eigen::VectorXd& direction,
                         const Stencil& stencil) {
  return diff_along_curve(
      [&](double t) { return geodesic(p, direction, t).ambient; },
      [&](const Eigen::VectorXd& a) { return f(a); }, stencil);
}

}  // namespace

Eigen::VectorXcd gradient_in_frame(const ScalarField& f,
                                   const TangentFrame& frame,
                                   const CalculusOptions& opts) {
  Eigen::VectorXcd coeffs(static_cast<Eigen::Index>(frame.vectors.size()));
  for (std::size_t i = 0; i < frame.vectors.size(); ++i)
    coeffs(static_cast<Eigen::Index>(i)) =
        derivative_along(f, frame.base, frame.vectors[i], opts.d1);
  return coeffs;
}

Eigen::VectorXcd gradient(const ScalarField& f, const ManifoldPoint& p,
                          const CalculusOptions& opts) {
  return gradient_in_frame(f, tangent_frame(p), opts);
}

Complex tension_in_frame(const ScalarField& f, const TangentFrame& frame,
                         const CalculusOptions& opts) {
  Complex acc(0.0, 0.0);
  for (const auto& x : frame.vectors)
    acc += derivative_along(f, frame.base, x, opts.d2);
  return acc;
}

Complex tension(const ScalarField& f, const ManifoldPoint& p,
                const CalculusOptions& opts) {
  return tension_in_frame(f, tangent_frame(p), opts);
}

Complex conformality_in_frame(const ScalarField& f, const ScalarField& g,
                              const TangentFrame& frame,
                              const CalculusOptions& opts) {
  const Eigen::VectorXcd df = gradient_in_frame(f, frame, opts);
  const Eigen::VectorXcd dg = gradient_in_frame(g, frame, opts);
  Complex acc(0.0, 0.0);
  for (Eigen::Index i = 0; i < df.size(); ++i) acc += df(i) * dg(i);
  return acc;
}

Complex conformality(const ScalarField& f, const ScalarField& g,
                     const ManifoldPoint& p, const CalculusOptions& opts) {
  return conformality_in_frame(f, g, tangent_frame(p), opts);
}

double dphi_norm_sq(const ScalarField& f, const ManifoldPoint& p,
                    const CalculusOptions& opts) {
  return gradient(f, p, opts).squaredNorm();
}

Complex p_tension(const ScalarField& f, const ManifoldPoint& p, double pexp,
                  const CalculusOptions& opts) {
  if (!(pexp > 1.0)) throw DegenerateInput("p_tension: pexp must exceed 1");
  const TangentFrame frame = tangent_frame(p);
  const Eigen::VectorXcd df = gradient_in_frame(f, frame, opts);
  const double norm_sq = df.squaredNorm();
  if (norm_sq <= 1e-10)
    throw DegeneratePoint("p_tension: |df|^2 below threshold at " +
                          p.spec.name() + " point");
  const Complex tau = tension_in_frame(f, frame, opts);
  if (pexp == 2.0) return tau;  // the bracket's second term carries p-2 = 0

  // grad log |df|^{p-2} = (p-2)/2 * grad(|df|^2) / |df|^2, paired with df.
  Complex pairing(0.0, 0.0);
  for (std::size_t i = 0; i < frame.vectors.size(); ++i) {
    const Complex di = diff_along_curve(
        [&](double t) { return geodesic(p, frame.vectors[i], t).ambient; },
        [&](const Eigen::VectorXd& a) {
          return Complex(dphi_norm_sq(f, {p.spec, a}, opts), 0.0);
        },
        opts.d1);
    pairing += di.real() * df(static_cast<Eigen::Index>(i));
  }
  const double scale = std::pow(norm_sq, 0.5 * (pexp - 2.0));
  return scale * (tau + 0.5 * (pexp - 2.0) * pairing / norm_sq);
}

FirstFundamentalData first_fundamental_eigenvalues(const ScalarField& f,
                                                   const ManifoldPoint& p,
                                                   const CalculusOptions& opts) {
  const Eigen::VectorXcd coeffs = gradient(f, p, opts);
  const Eigen::VectorXd du = coeffs.real();
  const Eigen::VectorXd dv = coeffs.imag();

  FirstFundamentalData out;
  out.gram(0, 0) = du.dot(du);
  out.gram(0, 1) = out.gram(1, 0) = du.dot(dv);
  out.gram(1, 1) = dv.dot(dv);
  const double det =
      out.gram(0, 0) * out.gram(1, 1) - out.gram(0, 1) * out.gram(0, 1);
  if (det <= 1e-14) {
    out.degenerate = true;
    return out;
  }

  // Orthonormal basis {N1, N2} of span{grad u, grad v}; the nonzero
  // eigenvalues of the pullback metric live on this 2x2 block.
  const Eigen::VectorXd n1 = du / du.norm();
  Eigen::VectorXd w = dv - dv.dot(n1) * n1;
  const Eigen::VectorXd n2 = w / w.norm();
  auto dphi = [&](const Eigen::VectorXd& dir) {
    return Complex(du.dot(dir), dv.dot(dir));
  };
  const Complex a = dphi(n1);
  const Complex b = dphi(n2);
  const auto [lam1, lam2] =
      eig_sym2(std::norm(a), (a * std::conj(b)).real(), std::norm(b));
  out.lam1 = lam1;
  out.lam2 = lam2;
  return out;
}

EigenpairEstimate estimate_eigenpair(const ScalarField& f,
                                     const ManifoldSpec& spec,
                                     int sample_count, Rng& rng,
                                     const CalculusOptions& opts) {
  if (sample_count < 10)
    throw InsufficientSamples("estimate_eigenpair: need at least 10 samples");

  struct Sample {
    Complex value, tau, kappa;
  };
  std::vector<Sample> samples;
  samples.reserve(sample_count);
  for (int k = 0; k < sample_count; ++k) {
    const ManifoldPoint p = random_point(spec, rng);
    const TangentFrame frame = tangent_frame(p);
    Sample s;
    s.value = f(p);
    s.tau = tension_in_frame(f, frame, opts);
    s.kappa = conformality_in_frame(f, f, frame, opts);
    samples.push_back(s);
  }

  // lambda = argmin sum |tau_k - lambda f_k|^2 over samples with |f| >= 1e-6,
  // and likewise mu against f^2.
  Complex num_l(0, 0), num_m(0, 0);
  double den_l = 0.0, den_m = 0.0;
  int used_l = 0, used_m = 0;
  for (const auto& s : samples) {
    if (std::abs(s.value) >= 1e-6) {
      num_l += std::conj(s.value) * s.tau;
      den_l += std::norm(s.value);
      ++used_l;
    }
    const Complex sq = s.value * s.value;
    if (std::abs(sq) >= 1e-6) {
      num_m += std::conj(sq) * s.kappa;
      den_m += std::norm(sq);
      ++used_m;
    }
  }
  if (used_l < 5 || used_m < 5)
    throw InsufficientSamples(
        "estimate_eigenpair: fewer than 5 usable samples for '" + f.label() +
        "'");

  EigenpairEstimate est;
  est.data.lambda = num_l / den_l;
  est.data.mu = num_m / den_m;
  est.lambda_samples = used_l;
  est.mu_samples = used_m;
  for (const auto& s : samples) {
    if (std::abs(s.value) >= 1e-6)
      est.tension_residual = std::max(
          est.tension_residual, std::abs(s.tau - est.data.lambda * s.value));
    const Complex sq = s.value * s.value;
    if (std::abs(sq) >= 1e-6)
      est.conformality_residual = std::max(
          est.conformality_residual, std::abs(s.kappa - est.data.mu * sq));
  }
  return est;
}

double product_rule_check(const ScalarField& f, const ScalarField& g,
                          const ManifoldPoint& p, const CalculusOptions& opts) {
  const TangentFrame frame = tangent_frame(p);
  const Complex lhs = tension_in_frame(f * g, frame, opts);
  const Complex rhs = tension_in_frame(f, frame, opts) * g(p) +
                      2.0 * conformality_in_frame(f, g, frame, opts) +
                      f(p) * tension_in_frame(g, frame, opts);
  return std::abs(lhs - rhs);
}

}  // namespace minfib

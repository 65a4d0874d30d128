#include "minfib/field.hpp"

#include <cmath>
#include <numbers>

namespace minfib {

namespace {

Eigen::VectorXd phase_rotate(const Eigen::VectorXd& flat, double theta) {
  const Complex w = std::polar(1.0, theta);
  return from_complex_vector(Eigen::VectorXcd(w * to_complex_vector(flat)));
}

void require_same_manifold(const ScalarField& f, const ScalarField& g) {
  if (!(f.spec() == g.spec()))
    throw InvalidField("field operands live on different manifolds: " +
                       f.spec().name() + " vs " + g.spec().name());
}

}  // namespace

ScalarField ScalarField::make(ManifoldSpec spec, std::string label, Eval eval) {
  ScalarField f(spec, std::move(label), std::move(eval));
  if (spec.kind == ManifoldKind::ComplexProjective) {
    // Spot-check phase invariance of the lift at a few deterministic points.
    Rng rng(0x5eedf1e1dULL);
    for (int trial = 0; trial < 3; ++trial) {
      const ManifoldPoint lift = random_point(spec, rng);
      const double dev = hopf_invariance_check(f, lift, 8, rng);
      if (dev > 1e-12)
        throw InvalidField("field '" + f.label() +
                           "' is not phase invariant on " + spec.name() +
                           " (deviation " + std::to_string(dev) + ")");
    }
  }
  return f;
}

ScalarField ScalarField::make_unchecked(ManifoldSpec spec, std::string label,
                                        Eval eval) {
  return ScalarField(spec, std::move(label), std::move(eval));
}

ScalarField ScalarField::constant(ManifoldSpec spec, Complex value) {
  return make_unchecked(spec, "const", [value](const Eigen::VectorXd&) {
    return value;
  });
}

ScalarField operator+(const ScalarField& f, const ScalarField& g) {
  require_same_manifold(f, g);
  return ScalarField::make_unchecked(
      f.spec(), "(" + f.label() + "+" + g.label() + ")",
      [f, g](const Eigen::VectorXd& a) { return f(a) + g(a); });
}

ScalarField operator-(const ScalarField& f, const ScalarField& g) {
  require_same_manifold(f, g);
  return ScalarField::make_unchecked(
      f.spec(), "(" + f.label() + "-" + g.label() + ")",
      [f, g](const Eigen::VectorXd& a) { return f(a) - g(a); });
}

ScalarField operator*(const ScalarField& f, const ScalarField& g) {
  require_same_manifold(f, g);
  return ScalarField::make_unchecked(
      f.spec(), "(" + f.label() + "*" + g.label() + ")",
      [f, g](const Eigen::VectorXd& a) { return f(a) * g(a); });
}

ScalarField operator*(Complex c, const ScalarField& f) {
  return ScalarField::make_unchecked(
      f.spec(), "scaled(" + f.label() + ")",
      [c, f](const Eigen::VectorXd& a) { return c * f(a); });
}

ScalarField pow(const ScalarField& f, int k) {
  if (k < 0) throw InvalidField("pow: exponent must be non-negative");
  return ScalarField::make_unchecked(
      f.spec(), f.label() + "^" + std::to_string(k),
      [f, k](const Eigen::VectorXd& a) {
        Complex acc(1.0, 0.0);
        const Complex v = f(a);
        for (int i = 0; i < k; ++i) acc *= v;
        return acc;
      });
}

ScalarField real_part(const ScalarField& f) {
  return ScalarField::make_unchecked(
      f.spec(), "re(" + f.label() + ")",
      [f](const Eigen::VectorXd& a) { return Complex(f(a).real(), 0.0); });
}

ScalarField imag_part(const ScalarField& f) {
  return ScalarField::make_unchecked(
      f.spec(), "im(" + f.label() + ")",
      [f](const Eigen::VectorXd& a) { return Complex(f(a).imag(), 0.0); });
}

ScalarField conjugate(const ScalarField& f) {
  return ScalarField::make_unchecked(
      f.spec(), "conj(" + f.label() + ")",
      [f](const Eigen::VectorXd& a) { return std::conj(f(a)); });
}

double hopf_invariance_check(const ScalarField& f, const ManifoldPoint& lift,
                             int samples, Rng& rng) {
  if (f.spec().kind != ManifoldKind::ComplexProjective)
    throw InvalidField("hopf_invariance_check expects a CP^n field");
  const Complex base = f(lift.ambient);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    worst = std::max(worst,
                     std::abs(f(phase_rotate(lift.ambient, theta)) - base));
  }
  return worst;
}

}  // namespace minfib

#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>

#include "minfib/manifold.hpp"

namespace minfib {

/// Complex-valued function on a manifold, evaluated on flat ambient vectors.
/// Fields on CP^n act on unit lifts and must be invariant under phase
/// rotation of the lift; the checking factory enforces this at construction.
/// Fields are immutable and cheap to copy.
class ScalarField {
 public:
  using Eval = std::function<Complex(const Eigen::VectorXd&)>;

  ScalarField() = default;

  /// Checked factory. For CP^n specs the phase invariance of `eval` is
  /// spot-checked (tolerance 1e-12) and InvalidField is thrown on violation.
  static ScalarField make(ManifoldSpec spec, std::string label, Eval eval);

  /// Factory without the CP^n phase check, for deliberately ill-formed test
  /// fields.
  static ScalarField make_unchecked(ManifoldSpec spec, std::string label,
                                    Eval eval);

  static ScalarField constant(ManifoldSpec spec, Complex value);

  Complex operator()(const Eigen::VectorXd& ambient) const {
    return (*eval_)(ambient);
  }
  Complex operator()(const ManifoldPoint& p) const { return (*eval_)(p.ambient); }

  const ManifoldSpec& spec() const { return spec_; }
  const std::string& label() const { return label_; }
  bool valid() const { return static_cast<bool>(eval_); }

 private:
  ScalarField(ManifoldSpec spec, std::string label, Eval eval)
      : spec_(spec),
        label_(std::move(label)),
        eval_(std::make_shared<Eval>(std::move(eval))) {}

  ManifoldSpec spec_{ManifoldKind::Sphere, 1};
  std::string label_;
  std::shared_ptr<const Eval> eval_;
};

// Algebra of fields. Operands must live on the same manifold; the results
// inherit phase invariance, so no re-check is needed.
ScalarField operator+(const ScalarField& f, const ScalarField& g);
ScalarField operator-(const ScalarField& f, const ScalarField& g);
ScalarField operator*(const ScalarField& f, const ScalarField& g);
ScalarField operator*(Complex a, const ScalarField& f);
ScalarField pow(const ScalarField& f, int k);
ScalarField real_part(const ScalarField& f);
ScalarField imag_part(const ScalarField& f);
ScalarField conjugate(const ScalarField& f);

/// The pair (lambda, mu) of eigenvalue constants attached to a family.
struct EigenData {
  Complex lambda;
  Complex mu;
};

/// Max over `samples` random phases theta of |f(e^{i theta} lift) - f(lift)|.
double hopf_invariance_check(const ScalarField& f, const ManifoldPoint& lift,
                             int samples, Rng& rng);

}  // namespace minfib

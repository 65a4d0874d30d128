#include "minfib/manifold.hpp"

#include <cmath>

namespace minfib {

namespace {

const Complex kI(0.0, 1.0);

Eigen::MatrixXcd sp_structure_map(const Eigen::MatrixXcd& q) {
  // S(q) = J conj(q) J^{-1} with J = [[0, I], [-I, 0]]; fixed points of S are
  // exactly the matrices with the quaternionic block layout.
  const Eigen::Index n = q.rows() / 2;
  Eigen::MatrixXcd s(2 * n, 2 * n);
  const Eigen::MatrixXcd c = q.conjugate();
  s.topLeftCorner(n, n) = c.bottomRightCorner(n, n);
  s.topRightCorner(n, n) = -c.bottomLeftCorner(n, n);
  s.bottomLeftCorner(n, n) = -c.topRightCorner(n, n);
  s.bottomRightCorner(n, n) = c.topLeftCorner(n, n);
  return s;
}

Eigen::VectorXd times_i(const Eigen::VectorXd& flat) {
  // Multiply the complex vector underlying `flat` by i.
  Eigen::VectorXd out(flat.size());
  for (Eigen::Index k = 0; k < flat.size() / 2; ++k) {
    out(2 * k) = -flat(2 * k + 1);
    out(2 * k + 1) = flat(2 * k);
  }
  return out;
}

}  // namespace

int ManifoldSpec::dim() const {
  switch (kind) {
    case ManifoldKind::Sphere:
      return 2 * n - 1;
    case ManifoldKind::ComplexProjective:
      return 2 * n;
    case ManifoldKind::SpecialOrthogonal:
      return n * (n - 1) / 2;
    case ManifoldKind::Unitary:
      return n * n;
    case ManifoldKind::QuaternionicUnitary:
      return n * (2 * n + 1);
  }
  return 0;
}

int ManifoldSpec::ambient_size() const {
  switch (kind) {
    case ManifoldKind::Sphere:
      return 2 * n;
    case ManifoldKind::ComplexProjective:
      return 2 * (n + 1);
    case ManifoldKind::SpecialOrthogonal:
      return n * n;
    case ManifoldKind::Unitary:
      return 2 * n * n;
    case ManifoldKind::QuaternionicUnitary:
      return 8 * n * n;
  }
  return 0;
}

std::string ManifoldSpec::name() const {
  switch (kind) {
    case ManifoldKind::Sphere:
      return "S^" + std::to_string(2 * n - 1);
    case ManifoldKind::ComplexProjective:
      return "CP^" + std::to_string(n);
    case ManifoldKind::SpecialOrthogonal:
      return "SO(" + std::to_string(n) + ")";
    case ManifoldKind::Unitary:
      return "U(" + std::to_string(n) + ")";
    case ManifoldKind::QuaternionicUnitary:
      return "Sp(" + std::to_string(n) + ")";
  }
  return "?";
}

std::vector<std::string> ManifoldSpec::coordinate_names() const {
  std::vector<std::string> names;
  auto complex_entry = [&](const std::string& base, int r, int c) {
    const std::string idx =
        "_" + std::to_string(r + 1) + "_" + std::to_string(c + 1);
    names.push_back("re_" + base + idx);
    names.push_back("im_" + base + idx);
  };
  switch (kind) {
    case ManifoldKind::Sphere:
    case ManifoldKind::ComplexProjective: {
      const int len = (kind == ManifoldKind::Sphere) ? n : n + 1;
      for (int k = 0; k < len; ++k) {
        names.push_back("re_z" + std::to_string(k + 1));
        names.push_back("im_z" + std::to_string(k + 1));
      }
      break;
    }
    case ManifoldKind::SpecialOrthogonal:
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          names.push_back("x_" + std::to_string(r + 1) + "_" +
                          std::to_string(c + 1));
      break;
    case ManifoldKind::Unitary:
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) complex_entry("z", r, c);
      break;
    case ManifoldKind::QuaternionicUnitary:
      for (int r = 0; r < 2 * n; ++r)
        for (int c = 0; c < 2 * n; ++c) complex_entry("q", r, c);
      break;
  }
  return names;
}

double ManifoldSpec::defining_residual(const Eigen::VectorXd& ambient) const {
  if (ambient.size() != ambient_size())
    throw DegenerateInput("ambient vector has wrong length for " + name());
  switch (kind) {
    case ManifoldKind::Sphere:
    case ManifoldKind::ComplexProjective:
      return std::abs(ambient.norm() - 1.0);
    case ManifoldKind::SpecialOrthogonal: {
      const Eigen::MatrixXd x = to_real_matrix(ambient, n);
      const double ortho =
          (x * x.transpose() - Eigen::MatrixXd::Identity(n, n))
              .cwiseAbs()
              .maxCoeff();
      return std::max(ortho, std::abs(x.determinant() - 1.0));
    }
    case ManifoldKind::Unitary: {
      const Eigen::MatrixXcd z = to_complex_matrix(ambient, n, n);
      return (z * z.adjoint() - Eigen::MatrixXcd::Identity(n, n))
          .cwiseAbs()
          .maxCoeff();
    }
    case ManifoldKind::QuaternionicUnitary: {
      const Eigen::MatrixXcd q = to_complex_matrix(ambient, 2 * n, 2 * n);
      const double unitary =
          (q * q.adjoint() - Eigen::MatrixXcd::Identity(2 * n, 2 * n))
              .cwiseAbs()
              .maxCoeff();
      const double block = (sp_structure_map(q) - q).cwiseAbs().maxCoeff();
      return std::max(unitary, block);
    }
  }
  return 0.0;
}

ManifoldPoint make_point(const ManifoldSpec& spec,
                         const Eigen::VectorXd& ambient) {
  const double res = spec.defining_residual(ambient);
  if (res > ManifoldSpec::kPointTol)
    throw DegenerateInput("point violates " + spec.name() +
                          " relations, residual " + std::to_string(res));
  return {spec, ambient};
}

double tangency_residual(const ManifoldPoint& p, const Eigen::VectorXd& x) {
  const auto& spec = p.spec;
  if (x.size() != spec.ambient_size())
    throw DegenerateInput("tangent vector has wrong length for " + spec.name());
  switch (spec.kind) {
    case ManifoldKind::Sphere:
      return std::abs(p.ambient.dot(x));
    case ManifoldKind::ComplexProjective:
      return std::max(std::abs(p.ambient.dot(x)),
                      std::abs(times_i(p.ambient).dot(x)));
    case ManifoldKind::SpecialOrthogonal: {
      const Eigen::MatrixXd base = to_real_matrix(p.ambient, spec.n);
      const Eigen::MatrixXd z = base.transpose() * to_real_matrix(x, spec.n);
      return (z + z.transpose()).cwiseAbs().maxCoeff();
    }
    case ManifoldKind::Unitary: {
      const Eigen::MatrixXcd base = to_complex_matrix(p.ambient, spec.n, spec.n);
      const Eigen::MatrixXcd z =
          base.adjoint() * to_complex_matrix(x, spec.n, spec.n);
      return (z + z.adjoint()).cwiseAbs().maxCoeff();
    }
    case ManifoldKind::QuaternionicUnitary: {
      const int m = 2 * spec.n;
      const Eigen::MatrixXcd base = to_complex_matrix(p.ambient, m, m);
      const Eigen::MatrixXcd xm = to_complex_matrix(x, m, m);
      const Eigen::MatrixXcd z = base.adjoint() * xm;
      const double skew = (z + z.adjoint()).cwiseAbs().maxCoeff();
      const double block = (sp_structure_map(xm) - xm).cwiseAbs().maxCoeff();
      return std::max(skew, block);
    }
  }
  return 0.0;
}

double metric(const ManifoldPoint& p, const Eigen::VectorXd& x,
              const Eigen::VectorXd& y) {
  constexpr double kTangencyTol = 1e-8;
  if (tangency_residual(p, x) > kTangencyTol ||
      tangency_residual(p, y) > kTangencyTol)
    throw TangencyViolation("metric: argument not tangent at " +
                            p.spec.name() + " point");
  return x.dot(y);
}

// --- canonical bases --------------------------------------------------------

namespace {

void check_pair(int n, int r, int s) {
  if (r < 1 || s <= r || s > n)
    throw IndexOutOfRange("basis indices must satisfy 1 <= r < s <= n");
}

void check_single(int n, int t) {
  if (t < 1 || t > n)
    throw IndexOutOfRange("basis index must satisfy 1 <= t <= n");
}

}  // namespace

Eigen::MatrixXd so_basis(int n, int r, int s) {
  check_pair(n, r, s);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  const double c = 1.0 / std::sqrt(2.0);
  m(r - 1, s - 1) = c;
  m(s - 1, r - 1) = -c;
  return m;
}

Eigen::MatrixXcd u_basis_skew(int n, int r, int s) {
  return so_basis(n, r, s).cast<Complex>();
}

Eigen::MatrixXcd u_basis_sym(int n, int r, int s) {
  check_pair(n, r, s);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  const Complex c = kI / std::sqrt(2.0);
  m(r - 1, s - 1) = c;
  m(s - 1, r - 1) = c;
  return m;
}

Eigen::MatrixXcd u_basis_diag(int n, int t) {
  check_single(n, t);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  m(t - 1, t - 1) = kI;
  return m;
}

Eigen::MatrixXcd sp_basis(SpBasisFamily family, int n, int r, int s) {
  const double c = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  auto place = [&](const Eigen::MatrixXcd& tl, const Eigen::MatrixXcd& tr,
                   const Eigen::MatrixXcd& bl, const Eigen::MatrixXcd& br) {
    m.topLeftCorner(n, n) = c * tl;
    m.topRightCorner(n, n) = c * tr;
    m.bottomLeftCorner(n, n) = c * bl;
    m.bottomRightCorner(n, n) = c * br;
  };
  const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(n, n);
  switch (family) {
    case SpBasisFamily::DiagSkew: {
      const Eigen::MatrixXcd y = u_basis_skew(n, r, s);
      place(y, zero, zero, y);
      break;
    }
    case SpBasisFamily::DiagSym: {
      const Eigen::MatrixXcd ix = u_basis_sym(n, r, s);
      place(ix, zero, zero, -ix);
      break;
    }
    case SpBasisFamily::OffSymI: {
      const Eigen::MatrixXcd ix = u_basis_sym(n, r, s);
      place(zero, ix, ix, zero);
      break;
    }
    case SpBasisFamily::OffSym: {
      const Eigen::MatrixXcd x = -kI * u_basis_sym(n, r, s);  // real symmetric
      place(zero, x, -x, zero);
      break;
    }
    case SpBasisFamily::DiagUnit: {
      const Eigen::MatrixXcd id = u_basis_diag(n, r);
      place(id, zero, zero, -id);
      break;
    }
    case SpBasisFamily::OffUnitI: {
      const Eigen::MatrixXcd id = u_basis_diag(n, r);
      place(zero, id, id, zero);
      break;
    }
    case SpBasisFamily::OffUnit: {
      const Eigen::MatrixXcd d = -kI * u_basis_diag(n, r);  // real unit
      place(zero, d, -d, zero);
      break;
    }
  }
  return m;
}

namespace {

int pair_rank(int n, int r, int s) {
  // 0-based position of (r, s), r < s, in lexicographic order.
  check_pair(n, r, s);
  int idx = 0;
  for (int rr = 1; rr < r; ++rr) idx += n - rr;
  return idx + (s - r - 1);
}

}  // namespace

int so_frame_index(int n, int r, int s) { return pair_rank(n, r, s); }

int u_frame_index_skew(int n, int r, int s) { return pair_rank(n, r, s); }

int u_frame_index_sym(int n, int r, int s) {
  return n * (n - 1) / 2 + pair_rank(n, r, s);
}

int u_frame_index_diag(int n, int t) {
  check_single(n, t);
  return n * (n - 1) + (t - 1);
}

int sp_frame_index(SpBasisFamily family, int n, int r, int s) {
  const int pairs = n * (n - 1) / 2;
  switch (family) {
    case SpBasisFamily::DiagSkew:
      return pair_rank(n, r, s);
    case SpBasisFamily::DiagSym:
      return pairs + pair_rank(n, r, s);
    case SpBasisFamily::OffSymI:
      return 2 * pairs + pair_rank(n, r, s);
    case SpBasisFamily::OffSym:
      return 3 * pairs + pair_rank(n, r, s);
    case SpBasisFamily::DiagUnit:
      check_single(n, r);
      return 4 * pairs + (r - 1);
    case SpBasisFamily::OffUnitI:
      check_single(n, r);
      return 4 * pairs + n + (r - 1);
    case SpBasisFamily::OffUnit:
      check_single(n, r);
      return 4 * pairs + 2 * n + (r - 1);
  }
  throw IndexOutOfRange("sp_frame_index: unknown family");
}

// --- frames -----------------------------------------------------------------

namespace {

std::vector<Eigen::VectorXd> sphere_frame(const Eigen::VectorXd& p) {
  // Householder map sending e_1 to p exactly; use the reflection whose axis
  // avoids the antipode of the current hemisphere so the construction is
  // deterministic and well conditioned everywhere.
  const Eigen::Index d = p.size();
  Eigen::VectorXd u = p;
  double sign = 1.0;
  if (p(0) >= 0.0) {
    u(0) += 1.0;  // H = 2 u u^T / |u|^2 - I
  } else {
    u(0) -= 1.0;  // H = I - 2 u u^T / |u|^2
    sign = -1.0;
  }
  const double uu = u.squaredNorm();
  std::vector<Eigen::VectorXd> frame;
  frame.reserve(d - 1);
  for (Eigen::Index j = 1; j < d; ++j) {
    Eigen::VectorXd col = Eigen::VectorXd::Zero(d);
    col(j) = -sign;
    col += sign * (2.0 * u(j) / uu) * u;
    frame.push_back(col);
  }
  return frame;
}

std::vector<Eigen::VectorXd> cp_frame(const Eigen::VectorXd& flat) {
  // Complex Householder whose first column is a unit-phase multiple of the
  // lift; the remaining columns give a horizontal complex-orthonormal set.
  const Eigen::VectorXcd p = to_complex_vector(flat);
  const Eigen::Index d = p.size();
  Eigen::VectorXcd v = p;
  const double a0 = std::abs(p(0));
  const Complex sigma = (a0 > 1e-12) ? p(0) / a0 : Complex(1.0, 0.0);
  v(0) += sigma;
  const double vv = v.squaredNorm();
  std::vector<Eigen::VectorXd> frame;
  frame.reserve(2 * (d - 1));
  for (Eigen::Index j = 1; j < d; ++j) {
    Eigen::VectorXcd col = Eigen::VectorXcd::Zero(d);
    col(j) = 1.0;
    col -= (2.0 * std::conj(v(j)) / vv) * v;
    frame.push_back(from_complex_vector(col));
    frame.push_back(from_complex_vector(kI * col));
  }
  return frame;
}

}  // namespace

TangentFrame tangent_frame(const ManifoldPoint& p) {
  const auto& spec = p.spec;
  TangentFrame frame{p, {}};
  switch (spec.kind) {
    case ManifoldKind::Sphere:
      frame.vectors = sphere_frame(p.ambient);
      break;
    case ManifoldKind::ComplexProjective:
      frame.vectors = cp_frame(p.ambient);
      break;
    case ManifoldKind::SpecialOrthogonal: {
      const Eigen::MatrixXd base = to_real_matrix(p.ambient, spec.n);
      for (int r = 1; r < spec.n; ++r)
        for (int s = r + 1; s <= spec.n; ++s)
          frame.vectors.push_back(
              from_real_matrix(base * so_basis(spec.n, r, s)));
      break;
    }
    case ManifoldKind::Unitary: {
      const Eigen::MatrixXcd base = to_complex_matrix(p.ambient, spec.n, spec.n);
      for (int r = 1; r < spec.n; ++r)
        for (int s = r + 1; s <= spec.n; ++s)
          frame.vectors.push_back(
              from_complex_matrix(base * u_basis_skew(spec.n, r, s)));
      for (int r = 1; r < spec.n; ++r)
        for (int s = r + 1; s <= spec.n; ++s)
          frame.vectors.push_back(
              from_complex_matrix(base * u_basis_sym(spec.n, r, s)));
      for (int t = 1; t <= spec.n; ++t)
        frame.vectors.push_back(
            from_complex_matrix(base * u_basis_diag(spec.n, t)));
      break;
    }
    case ManifoldKind::QuaternionicUnitary: {
      const int m = 2 * spec.n;
      const Eigen::MatrixXcd base = to_complex_matrix(p.ambient, m, m);
      const SpBasisFamily pair_families[] = {
          SpBasisFamily::DiagSkew, SpBasisFamily::DiagSym,
          SpBasisFamily::OffSymI, SpBasisFamily::OffSym};
      for (const auto fam : pair_families)
        for (int r = 1; r < spec.n; ++r)
          for (int s = r + 1; s <= spec.n; ++s)
            frame.vectors.push_back(
                from_complex_matrix(base * sp_basis(fam, spec.n, r, s)));
      const SpBasisFamily unit_families[] = {SpBasisFamily::DiagUnit,
                                             SpBasisFamily::OffUnitI,
                                             SpBasisFamily::OffUnit};
      for (const auto fam : unit_families)
        for (int t = 1; t <= spec.n; ++t)
          frame.vectors.push_back(
              from_complex_matrix(base * sp_basis(fam, spec.n, t)));
      break;
    }
  }
  return frame;
}

ManifoldPoint geodesic(const ManifoldPoint& p, const Eigen::VectorXd& x,
                       double t) {
  const auto& spec = p.spec;
  if (tangency_residual(p, x) > 1e-8)
    throw TangencyViolation("geodesic: velocity not tangent at " + spec.name());
  if (std::abs(x.norm() - 1.0) > 1e-10)
    throw TangencyViolation("geodesic: velocity must be a unit vector");
  switch (spec.kind) {
    case ManifoldKind::Sphere:
    case ManifoldKind::ComplexProjective:
      return {spec, std::cos(t) * p.ambient + std::sin(t) * x};
    case ManifoldKind::SpecialOrthogonal: {
      const Eigen::MatrixXd base = to_real_matrix(p.ambient, spec.n);
      const Eigen::MatrixXd vel = to_real_matrix(x, spec.n);
      const Eigen::MatrixXd z = base.transpose() * vel;
      return {spec, from_real_matrix(base * matrix_exp(Eigen::MatrixXd(t * z)))};
    }
    case ManifoldKind::Unitary:
    case ManifoldKind::QuaternionicUnitary: {
      const int m = (spec.kind == ManifoldKind::Unitary) ? spec.n : 2 * spec.n;
      const Eigen::MatrixXcd base = to_complex_matrix(p.ambient, m, m);
      const Eigen::MatrixXcd vel = to_complex_matrix(x, m, m);
      const Eigen::MatrixXcd z = base.adjoint() * vel;
      return {spec,
              from_complex_matrix(base * matrix_exp(Eigen::MatrixXcd(t * z)))};
    }
  }
  throw DegenerateInput("geodesic: unknown manifold kind");
}

ManifoldPoint retract(const ManifoldSpec& spec,
                      const Eigen::VectorXd& ambient) {
  if (ambient.size() != spec.ambient_size())
    throw DegenerateInput("retract: ambient vector has wrong length");
  switch (spec.kind) {
    case ManifoldKind::Sphere:
    case ManifoldKind::ComplexProjective: {
      const double nrm = ambient.norm();
      if (nrm < 1e-6) throw RetractFailed("retract: vector too close to 0");
      return {spec, ambient / nrm};
    }
    case ManifoldKind::SpecialOrthogonal: {
      const Eigen::MatrixXd x = to_real_matrix(ambient, spec.n);
      const Eigen::JacobiSVD<Eigen::MatrixXd> svd(
          x, Eigen::ComputeFullU | Eigen::ComputeFullV);
      if (svd.singularValues().minCoeff() < 1e-6)
        throw RetractFailed("retract: polar factor ill-conditioned");
      const Eigen::MatrixXd q = svd.matrixU() * svd.matrixV().transpose();
      if (q.determinant() < 0.0)
        throw RetractFailed("retract: nearest orthogonal factor not in SO(n)");
      return {spec, from_real_matrix(q)};
    }
    case ManifoldKind::Unitary: {
      const Eigen::MatrixXcd z = to_complex_matrix(ambient, spec.n, spec.n);
      const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
          z, Eigen::ComputeFullU | Eigen::ComputeFullV);
      if (svd.singularValues().minCoeff() < 1e-6)
        throw RetractFailed("retract: polar factor ill-conditioned");
      return {spec, from_complex_matrix(
                        Eigen::MatrixXcd(svd.matrixU() * svd.matrixV().adjoint()))};
    }
    case ManifoldKind::QuaternionicUnitary: {
      const int m = 2 * spec.n;
      Eigen::MatrixXcd q = to_complex_matrix(ambient, m, m);
      q = 0.5 * (q + sp_structure_map(q));  // project onto the block structure
      const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
          q, Eigen::ComputeFullU | Eigen::ComputeFullV);
      if (svd.singularValues().minCoeff() < 1e-6)
        throw RetractFailed("retract: polar factor ill-conditioned");
      Eigen::MatrixXcd u = svd.matrixU() * svd.matrixV().adjoint();
      u = 0.5 * (u + sp_structure_map(u));
      return {spec, from_complex_matrix(u)};
    }
  }
  throw DegenerateInput("retract: unknown manifold kind");
}

double point_distance(const ManifoldSpec& spec, const Eigen::VectorXd& a,
                      const Eigen::VectorXd& b) {
  if (spec.kind != ManifoldKind::ComplexProjective) return (a - b).norm();
  const Eigen::VectorXcd za = to_complex_vector(a);
  const Eigen::VectorXcd zb = to_complex_vector(b);
  const double overlap = std::abs(za.dot(zb));
  // Chordal distance of the best phase alignment of the two lifts.
  return std::sqrt(std::max(0.0, za.squaredNorm() + zb.squaredNorm() -
                                     2.0 * overlap));
}

ManifoldPoint random_point(const ManifoldSpec& spec, Rng& rng) {
  switch (spec.kind) {
    case ManifoldKind::Sphere:
      return {spec, uniform_sphere_point(2 * spec.n - 1, rng)};
    case ManifoldKind::ComplexProjective:
      return {spec, uniform_sphere_point(2 * spec.n + 1, rng)};
    case ManifoldKind::SpecialOrthogonal:
      return {spec, from_real_matrix(haar_so(spec.n, rng))};
    case ManifoldKind::Unitary:
      return {spec, from_complex_matrix(haar_unitary(spec.n, rng))};
    case ManifoldKind::QuaternionicUnitary:
      return {spec, from_complex_matrix(haar_sp(spec.n, rng))};
  }
  throw DegenerateInput("random_point: unknown manifold kind");
}

}  // namespace minfib

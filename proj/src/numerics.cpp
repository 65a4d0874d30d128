#include "minfib/numerics.hpp"

#include <cmath>
#include <numbers>

namespace minfib {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : seed_(seed), state_(splitmix64(seed)) {
  if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t Rng::next_u64() {
  // xorshift64* keeps the generator self-contained and bit-stable across
  // standard libraries.
  std::uint64_t x = state_;
  x ^= x >> 12;
  x ^= x << 25;
  x ^= x >> 27;
  state_ = x;
  return x * 0x2545F4914F6CDD1DULL;
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

Rng Rng::split(std::uint64_t stream) const {
  return Rng(splitmix64(seed_ ^ splitmix64(stream + 0x632BE59BD9B4E019ULL)));
}

Stencil Stencil::first_derivative(double h, int points) {
  Stencil s{1, points, h};
  s.validate();
  return s;
}

Stencil Stencil::second_derivative(double h, int points) {
  Stencil s{2, points, h};
  s.validate();
  return s;
}

void Stencil::validate() const {
  if (order != 1 && order != 2)
    throw DegenerateInput("stencil order must be 1 or 2");
  if (points < 3 || points % 2 == 0)
    throw DegenerateInput("stencil needs an odd point count >= 3");
  if (points <= order)
    throw DegenerateInput("stencil point count must exceed the order");
  if (!(step > 0.0)) throw DegenerateInput("stencil step must be positive");
}

std::vector<double> Stencil::offsets() const {
  validate();
  std::vector<double> t(points);
  const int half = (points - 1) / 2;
  for (int i = 0; i < points; ++i) t[i] = (i - half) * step;
  return t;
}

std::vector<double> Stencil::weights() const {
  validate();
  const int p = points;
  const int half = (p - 1) / 2;
  // Moment conditions on the unit-spaced grid: sum_i w_i j_i^k = k! delta_{k,order}.
  Eigen::MatrixXd vander(p, p);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(p);
  for (int k = 0; k < p; ++k)
    for (int i = 0; i < p; ++i)
      vander(k, i) = std::pow(static_cast<double>(i - half), k);
  rhs(order) = (order == 1) ? 1.0 : 2.0;
  const Eigen::VectorXd w = Eigen::FullPivLU<Eigen::MatrixXd>(vander).solve(rhs);
  std::vector<double> out(p);
  const double scale = std::pow(step, order);
  for (int i = 0; i < p; ++i) out[i] = w(i) / scale;
  return out;
}

int Stencil::exactness_degree() const {
  validate();
  const int accuracy = 2 * ((points - order + 1) / 2);
  return order + accuracy - 1;
}

std::vector<Eigen::VectorXd> gram_schmidt(
    const std::vector<Eigen::VectorXd>& vectors, const InnerProduct& inner) {
  const int k = static_cast<int>(vectors.size());
  if (k == 0) return {};
  Eigen::MatrixXd gram(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) gram(i, j) = inner(vectors[i], vectors[j]);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (gram + gram.transpose()));
  if (es.eigenvalues().minCoeff() <= 1e-12)
    throw DegenerateInput("gram_schmidt: input vectors nearly dependent");

  std::vector<Eigen::VectorXd> out;
  out.reserve(k);
  for (int i = 0; i < k; ++i) {
    Eigen::VectorXd u = vectors[i];
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 0; j < i; ++j) u -= inner(out[j], u) * out[j];
    const double nrm = std::sqrt(inner(u, u));
    if (!(nrm > 0.0))
      throw DegenerateInput("gram_schmidt: vanishing residual vector");
    out.push_back(u / nrm);
  }
  return out;
}

std::pair<double, double> eig_sym2(double a11, double a12, double a22) {
  const double tr = a11 + a22;
  double disc = (a11 - a22) * (a11 - a22) + 4.0 * a12 * a12;
  if (disc < 0.0) disc = 0.0;
  const double s = std::sqrt(disc);
  return {0.5 * (tr - s), 0.5 * (tr + s)};
}

Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& x) {
  if (x.rows() != x.cols())
    throw DegenerateInput("matrix_exp: matrix must be square");
  const Eigen::Index n = x.rows();
  int squarings = 0;
  double nrm = x.norm();
  while (nrm > 0.25) {
    nrm *= 0.5;
    ++squarings;
  }
  const Eigen::MatrixXcd a = x / std::pow(2.0, squarings);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd sum = term;
  for (int k = 1; k <= 32; ++k) {
    term = (term * a) / static_cast<double>(k);
    sum += term;
    if (term.norm() <= 1e-18 * sum.norm()) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& x) {
  return matrix_exp(Eigen::MatrixXcd(x.cast<Complex>())).real();
}

Complex diff_along_curve(
    const std::function<Eigen::VectorXd(double)>& curve,
    const std::function<Complex(const Eigen::VectorXd&)>& f,
    const Stencil& stencil) {
  const auto t = stencil.offsets();
  const auto w = stencil.weights();
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < t.size(); ++i) acc += w[i] * f(curve(t[i]));
  return acc;
}

Eigen::MatrixXd haar_so(int n, Rng& rng) {
  if (n < 2) throw DegenerateInput("haar_so: n must be >= 2");
  Eigen::MatrixXd g(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) g(r, c) = rng.gaussian();
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < n; ++c)
    if (r(c, c) < 0.0) q.col(c) = -q.col(c);
  if (q.determinant() < 0.0) q.row(0) = -q.row(0);
  return q;
}

Eigen::MatrixXcd haar_unitary(int n, Rng& rng) {
  if (n < 2) throw DegenerateInput("haar_unitary: n must be >= 2");
  Eigen::MatrixXcd g(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) g(r, c) = Complex(rng.gaussian(), rng.gaussian());
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < n; ++c) {
    const Complex d = r(c, c);
    const double a = std::abs(d);
    q.col(c) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
  }
  return q;
}

namespace {

// Quaternionic partner of a column: the structure map sending column alpha of
// an Sp(n) matrix to column n+alpha. Conjugation and negation are exact, so
// the block relation of the assembled matrix holds to the last bit.
Eigen::VectorXcd sp_partner(const Eigen::VectorXcd& x) {
  const Eigen::Index n = x.size() / 2;
  Eigen::VectorXcd y(2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    y(k) = -std::conj(x(n + k));
    y(n + k) = std::conj(x(k));
  }
  return y;
}

}  // namespace

Eigen::MatrixXcd haar_sp(int n, Rng& rng) {
  if (n < 1) throw DegenerateInput("haar_sp: n must be >= 1");
  const int m = 2 * n;
  Eigen::MatrixXcd q(m, m);
  std::vector<Eigen::VectorXcd> cols;
  cols.reserve(m);
  for (int a = 0; a < n; ++a) {
    Eigen::VectorXcd g(m);
    for (int k = 0; k < m; ++k) g(k) = Complex(rng.gaussian(), rng.gaussian());
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& c : cols) g -= c.dot(g) * c;
    const double nrm = g.norm();
    if (!(nrm > 1e-12)) throw DegenerateInput("haar_sp: degenerate draw");
    g /= nrm;
    cols.push_back(g);
    cols.push_back(sp_partner(g));
  }
  for (int a = 0; a < n; ++a) {
    q.col(a) = cols[2 * a];
    q.col(n + a) = cols[2 * a + 1];
  }
  return q;
}

Eigen::MatrixXcd haar_sample(CompactGroup group, int n, Rng& rng) {
  switch (group) {
    case CompactGroup::SpecialOrthogonal:
      return haar_so(n, rng).cast<Complex>();
    case CompactGroup::Unitary:
      return haar_unitary(n, rng);
    case CompactGroup::QuaternionicUnitary:
      return haar_sp(n, rng);
  }
  throw DegenerateInput("haar_sample: unknown group");
}

Eigen::VectorXd uniform_sphere_point(int dim, Rng& rng) {
  if (dim < 1) throw DegenerateInput("uniform_sphere_point: dim must be >= 1");
  Eigen::VectorXd v(dim + 1);
  double nrm = 0.0;
  do {
    for (int k = 0; k <= dim; ++k) v(k) = rng.gaussian();
    nrm = v.norm();
  } while (nrm < 1e-12);
  return v / nrm;
}

Eigen::MatrixXd require_symmetric(const Eigen::MatrixXd& m, double tol) {
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol)
    throw DegenerateInput("require_symmetric: matrix is not symmetric");
  return m;
}

Eigen::MatrixXcd require_hermitian(const Eigen::MatrixXcd& m, double tol) {
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw DegenerateInput("require_hermitian: matrix is not Hermitian");
  return m;
}

}  // namespace minfib

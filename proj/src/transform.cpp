#include "rabi/transform.hpp"

#include <cmath>

namespace rabi {

namespace {

const double kSqrt2 = std::sqrt(2.0);

/// diag(f(0), ..., f(n_max))
template <typename F>
Matrix diag_fn(int n_max, F f) {
  Matrix m = Matrix::Zero(n_max + 1, n_max + 1);
  for (int n = 0; n <= n_max; ++n) m(n, n) = f(n);
  return m;
}

Matrix embed(const OperatorMatrix& spin, const Matrix& field) {
  return kron_embed(spin, OperatorMatrix(field)).entries();
}

}  // namespace

double k_fn(int n) { return n == 0 ? (kSqrt2 - 1.0) / (2.0 * kSqrt2) : 0.0; }

double l_fn(int n) { return 1.0 / std::sqrt(2.0 * n + 2.0); }

double f1_fn(int n) { return -l_fn(n) * l_fn(n + 2); }

double f2_fn(int n) { return 0.5 * (1.0 + 2.0 * kSqrt2 * k_fn(n)); }

double f3_fn(int n) {
  return (l_fn(n) + l_fn(n + 1) * (1.0 + 2.0 * kSqrt2 * k_fn(n))) / (2.0 * kSqrt2);
}

double f4_fn(int n) {
  return (l_fn(n) - l_fn(n + 1) * (1.0 + 2.0 * kSqrt2 * k_fn(n))) / (2.0 * kSqrt2);
}

OperatorMatrix build_u(const ModelParams& p) {
  p.validate();
  p.require_resonant("build_u");
  const BosonOperators b = boson_operators(p.n_max);
  const SpinOperators s = spin_operators();
  const Matrix k = diag_fn(p.n_max, k_fn);
  const Matrix l = diag_fn(p.n_max, l_fn);
  const Index d = 2 * (p.n_max + 1);
  const OperatorMatrix one_minus_sz(Matrix::Identity(2, 2) - s.sigma_z.entries());

  Matrix u = Matrix::Identity(d, d) / kSqrt2 + embed(one_minus_sz, k) +
             embed(s.sigma_plus, l * b.a.entries()) -
             embed(s.sigma_minus, b.a_dag.entries() * l);
  return OperatorMatrix(std::move(u));
}

OperatorMatrix conjugate(const OperatorMatrix& u, const OperatorMatrix& h) {
  if (u.dim() != h.dim()) throw DimensionError("conjugate: operator dimensions differ");
  Matrix out = u.entries() * h.entries() * u.entries().adjoint();
  return OperatorMatrix(std::move(out));
}

VDecomposition decompose_v(const ModelParams& p) {
  p.validate();
  p.require_resonant("decompose_v");
  const BosonOperators b = boson_operators(p.n_max);
  const SpinOperators s = spin_operators();
  const Matrix& a = b.a.entries();
  const Matrix& ad = b.a_dag.entries();
  const Matrix a2 = a * a;
  const Matrix a3 = a2 * a;
  const Matrix ad2 = ad * ad;
  const Matrix ad3 = ad2 * ad;
  const Matrix f1 = diag_fn(p.n_max, f1_fn);
  const Matrix f2 = diag_fn(p.n_max, f2_fn);
  const Matrix f3 = diag_fn(p.n_max, f3_fn);
  const Matrix f4 = diag_fn(p.n_max, f4_fn);
  const double g = p.g;

  Matrix v1 = g * (embed(s.sigma_plus, f1 * a3) + embed(s.sigma_minus, ad3 * f1));
  Matrix v2 = g * (embed(s.sigma_plus, ad * f2) + embed(s.sigma_minus, f2 * a));
  Matrix v3 = g * embed(s.sigma_z, f3 * a2 + ad2 * f3);
  Matrix v4 = g * embed(identity(2), f4 * a2 + ad2 * f4);
  return {OperatorMatrix(std::move(v1), true), OperatorMatrix(std::move(v2), true),
          OperatorMatrix(std::move(v3), true), OperatorMatrix(std::move(v4), true)};
}

HamiltonianMatrix build_h1_tilde(const ModelParams& p) {
  const VDecomposition v = decompose_v(p);
  return HamiltonianMatrix(build_jc_diag(p).entries() + v.v1.entries(), p.n_max);
}

HamiltonianMatrix build_h2_tilde(const ModelParams& p) {
  const VDecomposition v = decompose_v(p);
  return HamiltonianMatrix(build_jc_diag(p).entries() + v.v2.entries(), p.n_max);
}

HamiltonianMatrix untransform(const ModelParams& p, const HamiltonianMatrix& h_tilde) {
  const OperatorMatrix u = build_u(p);
  if (u.dim() != h_tilde.dim()) throw DimensionError("untransform: cutoff mismatch");
  Matrix h = u.entries().adjoint() * h_tilde.entries() * u.entries();
  // Exact in infinite dimensions; force the truncated product to be Hermitian.
  Matrix sym = 0.5 * (h + h.adjoint());
  return HamiltonianMatrix(std::move(sym), p.n_max);
}

Frequencies effective_frequencies(int n, int s, const ModelParams& p) {
  if (n < 0) throw InvalidArgument("effective_frequencies: n must be non-negative");
  if (s != 1 && s != -1) throw InvalidArgument("effective_frequencies: s must be +1 or -1");
  const double w = p.omega;
  const double g = p.g;
  const auto r = [n](int k) { return std::sqrt(static_cast<double>(n + k)); };
  Frequencies f{};
  f.w1 = 2.0 * w - g * (r(3) + r(1));
  f.w2 = 2.0 * w + g * (r(2) + r(0));
  f.w3 = 2.0 * w + g * (r(0) - r(2)) + 0.5 * g * (s + 1) * (r(3) + r(2) - r(1) - r(0));
  return f;
}

Frequencies approx_frequencies(int n, const ModelParams& p) {
  if (n < 0) throw InvalidArgument("approx_frequencies: n must be non-negative");
  const double root = std::sqrt(n + 1.0);
  return {2.0 * (p.omega - p.g * root), 2.0 * (p.omega + p.g * root), 2.0 * p.omega};
}

}  // namespace rabi

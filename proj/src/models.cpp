#include "rabi/models.hpp"

#include <cmath>
#include <sstream>

namespace rabi {

namespace {

struct Pieces {
  BosonOperators b;
  SpinOperators s;
  OperatorMatrix field_id;
  OperatorMatrix spin_id;
};

Pieces pieces(int n_max) {
  return {boson_operators(n_max), spin_operators(), identity(n_max + 1), identity(2)};
}

Matrix embed(const OperatorMatrix& spin, const Matrix& field) {
  return kron_embed(spin, OperatorMatrix(field)).entries();
}

/// diag(1 / sqrt(2(n + shift) + 2)), n = 0..n_max
Matrix inverse_sqrt_diag(int n_max, int shift) {
  Matrix m = Matrix::Zero(n_max + 1, n_max + 1);
  for (int n = 0; n <= n_max; ++n) m(n, n) = 1.0 / std::sqrt(2.0 * (n + shift) + 2.0);
  return m;
}

Matrix jc_entries(const ModelParams& p, const Pieces& k) {
  const Matrix& a = k.b.a.entries();
  const Matrix& ad = k.b.a_dag.entries();
  return 0.5 * p.omega * embed(k.s.sigma_z, k.field_id.entries()) +
         p.nu * embed(k.spin_id, k.b.n_hat.entries()) +
         p.g * (embed(k.s.sigma_plus, a) + embed(k.s.sigma_minus, ad));
}

Matrix v_entries(const ModelParams& p, const Pieces& k) {
  return p.g * (embed(k.s.sigma_plus, k.b.a_dag.entries()) +
                embed(k.s.sigma_minus, k.b.a.entries()));
}

// H_JC + (T + T^dag) with
//   T = -(g/2) s+ L(n)L(n+2) a^3 + (g/4) s- (1 + sign*delta) a
//       - sign (g/(4 sqrt2)) (1 + sz) L(n) a^2
//       + sign (g/(4 sqrt2)) (1 - sz)(1 + sign*delta) L(n+1) a^2
// where sign = -1 gives H1 and sign = +1 gives H2.
HamiltonianMatrix explicit_model(const ModelParams& p, double sign, const char* what) {
  p.validate();
  p.require_resonant(what);
  const Pieces k = pieces(p.n_max);
  const Matrix& a = k.b.a.entries();
  const Matrix& one = k.field_id.entries();
  const Matrix& delta = k.b.vac_proj.entries();
  const Matrix l0 = inverse_sqrt_diag(p.n_max, 0);
  const Matrix l1 = inverse_sqrt_diag(p.n_max, 1);
  const Matrix l2 = inverse_sqrt_diag(p.n_max, 2);
  const Matrix a2 = a * a;
  const Matrix a3 = a2 * a;

  const OperatorMatrix one_plus_sz(k.spin_id.entries() + k.s.sigma_z.entries());
  const OperatorMatrix one_minus_sz(k.spin_id.entries() - k.s.sigma_z.entries());

  const double g = p.g;
  const double c = g / (4.0 * std::sqrt(2.0));
  Matrix t = -0.5 * g * embed(k.s.sigma_plus, l0 * l2 * a3) +
             0.25 * g * embed(k.s.sigma_minus, (one + sign * delta) * a) -
             sign * c * embed(one_plus_sz, l0 * a2) +
             sign * c * embed(one_minus_sz, (one + sign * delta) * l1 * a2);

  Matrix h = jc_entries(p, k) + t + t.adjoint();
  return HamiltonianMatrix(std::move(h), p.n_max);
}

}  // namespace

void ModelParams::validate() const {
  std::ostringstream msg;
  if (!(omega > 0.0)) msg << "omega must be positive (got " << omega << "); ";
  if (!std::isfinite(nu) || !std::isfinite(g)) msg << "nu and g must be finite; ";
  if (guard < 0) msg << "guard must be non-negative (got " << guard << "); ";
  if (n_max < guard + 4) msg << "n_max must be >= guard + 4 (got n_max=" << n_max
                             << ", guard=" << guard << "); ";
  if (!msg.str().empty()) throw InvalidArgument("ModelParams: " + msg.str());
}

void ModelParams::require_resonant(const char* what) const {
  if (!resonant()) {
    std::ostringstream msg;
    msg << what << ": closed forms require nu == omega (got nu=" << nu << ", omega=" << omega
        << ")";
    throw UnsupportedConfiguration(msg.str());
  }
}

int default_cutoff_for_number(int n0) { return n0 + 40; }

int default_cutoff_for_coherent(std::complex<double> alpha) {
  const double r = std::abs(alpha);
  return static_cast<int>(std::ceil(r * r + 10.0 * r + 20.0));
}

HamiltonianMatrix build_rabi(const ModelParams& p) {
  p.validate();
  const Pieces k = pieces(p.n_max);
  const Matrix x = k.b.a.entries() + k.b.a_dag.entries();
  const Matrix sx = k.s.sigma_plus.entries() + k.s.sigma_minus.entries();
  Matrix h = 0.5 * p.omega * embed(k.s.sigma_z, k.field_id.entries()) +
             p.nu * embed(k.spin_id, k.b.n_hat.entries()) + p.g * embed(OperatorMatrix(sx), x);
  return HamiltonianMatrix(std::move(h), p.n_max);
}

HamiltonianMatrix build_jc(const ModelParams& p) {
  p.validate();
  return HamiltonianMatrix(jc_entries(p, pieces(p.n_max)), p.n_max);
}

HamiltonianMatrix build_v(const ModelParams& p) {
  p.validate();
  return HamiltonianMatrix(v_entries(p, pieces(p.n_max)), p.n_max);
}

HamiltonianMatrix build_jc_diag(const ModelParams& p) {
  p.validate();
  p.require_resonant("build_jc_diag");
  const Index d = 2 * (p.n_max + 1);
  Matrix h = Matrix::Zero(d, d);
  for (Spin spin : {Spin::down, Spin::up}) {
    const double s = spin == Spin::up ? 1.0 : -1.0;
    for (int n = 0; n <= p.n_max; ++n) {
      const Index i = joint_index(spin, n, p.n_max);
      h(i, i) = 0.5 * p.omega * s + p.omega * n +
                0.5 * p.g * ((s + 1.0) * std::sqrt(n + 1.0) + (s - 1.0) * std::sqrt(double(n)));
    }
  }
  return HamiltonianMatrix(std::move(h), p.n_max);
}

HamiltonianMatrix build_h1_explicit(const ModelParams& p) {
  return explicit_model(p, -1.0, "build_h1_explicit");
}

HamiltonianMatrix build_h2_explicit(const ModelParams& p) {
  return explicit_model(p, +1.0, "build_h2_explicit");
}

SignFlipUnitaries sign_flip_unitaries(const ModelParams& p) {
  const int d = p.n_max + 1;
  Matrix field = Matrix::Zero(d, d);
  for (int n = 0; n < d; ++n) field(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  Matrix spin = Matrix::Zero(2, 2);
  spin(0, 0) = 1.0;   // exp(0) on |down>
  spin(1, 1) = -1.0;  // exp(i pi) on |up>
  return {kron_embed(identity(2), OperatorMatrix(std::move(field), true)),
          kron_embed(OperatorMatrix(std::move(spin), true), identity(d))};
}

}  // namespace rabi

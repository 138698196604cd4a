#include "rabi/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rabi {

namespace {

void require_unit_norm(const Vector& v, const char* what) {
  const double norm2 = v.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg << what << ": squared norm " << norm2 << " differs from 1 by more than "
        << kNormTolerance;
    throw InvalidArgument(msg.str());
  }
}

Vector rescaled(Vector v, const char* what) {
  const double norm = v.norm();
  if (norm == 0.0) throw InvalidArgument(std::string(what) + ": zero vector");
  v /= norm;
  return v;
}

// log of the Poisson weight e^{-x} x^n / n!
double log_poisson(int n, double mean) {
  return -mean + n * std::log(mean) - std::lgamma(n + 1.0);
}

}  // namespace

FieldState::FieldState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 1) throw InvalidArgument("FieldState: empty amplitude vector");
  require_unit_norm(amplitudes_, "FieldState");
}

FieldState FieldState::normalized(Vector amplitudes) {
  return FieldState(rescaled(std::move(amplitudes), "FieldState"));
}

double FieldState::mean_photon_number() const {
  double s = 0.0;
  for (Index n = 0; n < amplitudes_.size(); ++n) s += n * std::norm(amplitudes_[n]);
  return s;
}

double FieldState::weight_above(int n) const {
  double s = 0.0;
  for (Index k = std::max(n + 1, 0); k < amplitudes_.size(); ++k) s += std::norm(amplitudes_[k]);
  return s;
}

JointState::JointState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 4 || amplitudes_.size() % 2 != 0)
    throw DimensionError("JointState: length must be 2(n_max+1) with n_max >= 1");
  require_unit_norm(amplitudes_, "JointState");
}

JointState JointState::normalized(Vector amplitudes) {
  return JointState(rescaled(std::move(amplitudes), "JointState"));
}

JointState JointState::product(Spin s, const FieldState& f) {
  const int n_max = f.n_max();
  if (n_max < 1) throw DimensionError("JointState: field cutoff must be at least 1");
  Vector v = Vector::Zero(2 * (n_max + 1));
  v.segment(joint_index(s, 0, n_max), n_max + 1) = f.amplitudes();
  return JointState(std::move(v));
}

JointState JointState::basis(Spin s, int n, int n_max) {
  if (n < 0 || n > n_max) throw CutoffError("JointState::basis: n outside 0..n_max");
  Vector v = Vector::Zero(2 * (n_max + 1));
  v[joint_index(s, n, n_max)] = 1.0;
  return JointState(std::move(v));
}

OperatorMatrix::OperatorMatrix(Matrix entries, bool hermitian)
    : entries_(std::move(entries)), hermitian_(hermitian) {
  if (entries_.rows() != entries_.cols())
    throw DimensionError("OperatorMatrix: matrix must be square");
  if (hermitian_) {
    const double defect = max_abs(entries_ - entries_.adjoint());
    if (defect > kHermitianTolerance) {
      std::ostringstream msg;
      msg << "OperatorMatrix: Hermitian flag set but max|M - M^dag| = " << defect;
      throw NonHermitianError(msg.str());
    }
  }
}

HamiltonianMatrix::HamiltonianMatrix(Matrix entries, int n_max)
    : OperatorMatrix(std::move(entries), true), n_max_(n_max) {
  if (dim() != 2 * (n_max + 1))
    throw DimensionError("HamiltonianMatrix: dimension must be 2(n_max+1)");
}

FieldState number_state(int n, int n_max) {
  if (n < 0 || n > n_max) {
    std::ostringstream msg;
    msg << "number_state: n = " << n << " exceeds cutoff n_max = " << n_max;
    throw CutoffError(msg.str());
  }
  Vector v = Vector::Zero(n_max + 1);
  v[n] = 1.0;
  return FieldState(std::move(v));
}

int min_coherent_cutoff(double abs_alpha) {
  if (abs_alpha == 0.0) return 0;
  const double mean = abs_alpha * abs_alpha;
  // Far enough out that the remaining Poisson weight underflows.
  const int top = static_cast<int>(std::ceil(mean + 40.0 * abs_alpha + 200.0));
  double tail = 0.0;  // sum_{k > n} p_k, accumulated from the top down
  for (int n = top; n >= 0; --n) {
    const double next = tail + std::exp(log_poisson(n, mean));
    if (next >= kTailTolerance) return n;
    tail = next;
  }
  return 0;
}

FieldState coherent_state(cplx alpha, int n_max) {
  if (n_max < 0) throw CutoffError("coherent_state: negative cutoff");
  const double r = std::abs(alpha);
  if (r == 0.0) return number_state(0, n_max);

  const int needed = min_coherent_cutoff(r);
  if (n_max < needed) {
    std::ostringstream msg;
    msg << "coherent_state: |alpha| = " << r << " needs n_max >= " << needed
        << " for tail mass below " << kTailTolerance << " (got " << n_max << ")";
    throw InsufficientCutoffError(msg.str(), needed);
  }

  const double phase = std::arg(alpha);
  const double mean = r * r;
  Vector v(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    const double mag = std::exp(0.5 * log_poisson(n, mean));
    v[n] = std::polar(mag, n * phase);
  }
  return FieldState::normalized(std::move(v));
}

BosonOperators boson_operators(int n_max) {
  if (n_max < 1) throw CutoffError("boson_operators: n_max must be at least 1");
  const Index d = n_max + 1;
  Matrix a = Matrix::Zero(d, d);
  for (Index n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  Matrix n_hat = Matrix::Zero(d, d);
  for (Index n = 0; n < d; ++n) n_hat(n, n) = static_cast<double>(n);
  Matrix vac = Matrix::Zero(d, d);
  vac(0, 0) = 1.0;
  Matrix a_dag = a.adjoint();
  return {OperatorMatrix(std::move(a)), OperatorMatrix(std::move(a_dag)),
          OperatorMatrix(std::move(n_hat), true), OperatorMatrix(std::move(vac), true)};
}

SpinOperators spin_operators() {
  // rows/cols: 0 = |down>, 1 = |up>
  Matrix sp = Matrix::Zero(2, 2);
  sp(1, 0) = 1.0;
  Matrix sm = sp.adjoint();
  Matrix sz = Matrix::Zero(2, 2);
  sz(0, 0) = -1.0;
  sz(1, 1) = 1.0;
  return {OperatorMatrix(std::move(sp)), OperatorMatrix(std::move(sm)),
          OperatorMatrix(std::move(sz), true)};
}

OperatorMatrix identity(Index dim) { return OperatorMatrix(Matrix::Identity(dim, dim), true); }

OperatorMatrix kron_embed(const OperatorMatrix& spin_op, const OperatorMatrix& field_op) {
  if (spin_op.dim() != 2) throw DimensionError("kron_embed: spin operator must be 2x2");
  const Index d = field_op.dim();
  Matrix out = Matrix::Zero(2 * d, 2 * d);
  for (Index r = 0; r < 2; ++r)
    for (Index c = 0; c < 2; ++c) {
      const cplx s = spin_op(r, c);
      if (s != cplx{0.0, 0.0}) out.block(r * d, c * d, d, d) = s * field_op.entries();
    }
  return OperatorMatrix(std::move(out), spin_op.hermitian() && field_op.hermitian());
}

cplx inner(const JointState& x, const JointState& y) {
  if (x.dim() != y.dim()) throw DimensionError("inner: state dimensions differ");
  return x.amplitudes().dot(y.amplitudes());  // Eigen's dot conjugates the left operand
}

Vector apply(const OperatorMatrix& op, const JointState& x) {
  if (op.dim() != x.dim()) throw DimensionError("apply: operator/state dimension mismatch");
  return op.entries() * x.amplitudes();
}

cplx expectation(const OperatorMatrix& op, const JointState& x) {
  return x.amplitudes().dot(apply(op, x));
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

std::vector<Index> interior_indices(int n_max, int guard) {
  std::vector<Index> idx;
  const int top = n_max - guard;
  for (Spin s : {Spin::down, Spin::up})
    for (int n = 0; n <= top; ++n) idx.push_back(joint_index(s, n, n_max));
  return idx;
}

double interior_max_abs(const Matrix& m, int n_max, int guard) {
  const auto idx = interior_indices(n_max, guard);
  double worst = 0.0;
  for (Index j : idx)
    for (Index i : idx) worst = std::max(worst, std::abs(m(i, j)));
  return worst;
}

}  // namespace rabi

#pragma once

// Truncated Fock-space building blocks.
//
// Joint basis ordering is spin-major: index = s * (n_max + 1) + n, with
// s = 0 for |down> and s = 1 for |up>. Every matrix builder in the library
// uses this ordering.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "rabi/errors.hpp"

namespace rabi {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTailTolerance = 1e-12;

enum class Spin : int { down = 0, up = 1 };

/// Position of |s, n> in the joint basis.
constexpr Index joint_index(Spin s, int n, int n_max) {
  return static_cast<Index>(static_cast<int>(s)) * (n_max + 1) + n;
}

class FieldState {
public:
  /// Takes amplitudes c_0..c_{n_max}; throws InvalidArgument unless unit norm.
  explicit FieldState(Vector amplitudes);

  /// Rescales to unit norm first.
  static FieldState normalized(Vector amplitudes);

  int n_max() const { return static_cast<int>(amplitudes_.size()) - 1; }
  const Vector& amplitudes() const { return amplitudes_; }

  /// <n|f>, zero above the cutoff.
  cplx amplitude(int n) const {
    return (n >= 0 && n <= n_max()) ? amplitudes_[n] : cplx{0.0, 0.0};
  }

  double mean_photon_number() const;

  /// sum_{n > n} |c_n|^2 over the stored amplitudes.
  double weight_above(int n) const;

private:
  Vector amplitudes_;
};

class JointState {
public:
  explicit JointState(Vector amplitudes);
  static JointState normalized(Vector amplitudes);
  static JointState product(Spin s, const FieldState& f);
  static JointState basis(Spin s, int n, int n_max);

  int n_max() const { return static_cast<int>(amplitudes_.size() / 2) - 1; }
  Index dim() const { return amplitudes_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }
  cplx amplitude(Spin s, int n) const { return amplitudes_[joint_index(s, n, n_max())]; }

private:
  Vector amplitudes_;
};

class OperatorMatrix {
public:
  /// With hermitian = true the matrix is checked against its adjoint on the
  /// max-norm and NonHermitianError is thrown above kHermitianTolerance.
  explicit OperatorMatrix(Matrix entries, bool hermitian = false);

  const Matrix& entries() const { return entries_; }
  Index dim() const { return entries_.rows(); }
  bool hermitian() const { return hermitian_; }

  cplx operator()(Index i, Index j) const { return entries_(i, j); }

private:
  Matrix entries_;
  bool hermitian_;
};

/// Hermitian operator on the joint space of a given cutoff.
class HamiltonianMatrix : public OperatorMatrix {
public:
  HamiltonianMatrix(Matrix entries, int n_max);
  int n_max() const { return n_max_; }

  cplx element(Spin row_s, int row_n, Spin col_s, int col_n) const {
    return entries()(joint_index(row_s, row_n, n_max_), joint_index(col_s, col_n, n_max_));
  }

private:
  int n_max_;
};

struct BosonOperators {
  OperatorMatrix a;
  OperatorMatrix a_dag;
  OperatorMatrix n_hat;
  OperatorMatrix vac_proj;  ///< |0><0|, the exact rank-1 projector delta(n)
};

struct SpinOperators {
  OperatorMatrix sigma_plus;
  OperatorMatrix sigma_minus;
  OperatorMatrix sigma_z;
};

FieldState number_state(int n, int n_max);

/// Truncated, renormalized coherent state. Amplitudes come from log-factorial
/// accumulation so large n does not overflow. Throws InsufficientCutoffError
/// when the untruncated Poisson tail above n_max exceeds kTailTolerance.
FieldState coherent_state(cplx alpha, int n_max);

/// Smallest cutoff whose coherent-state tail mass is below kTailTolerance.
int min_coherent_cutoff(double abs_alpha);

/// a has sqrt(n) on (n-1, n). The commutator [a, a^dag] equals the identity
/// except at (n_max, n_max), where truncation gives -n_max instead of 1.
BosonOperators boson_operators(int n_max);

SpinOperators spin_operators();

OperatorMatrix identity(Index dim);

/// spin_op (x) field_op in spin-major ordering.
OperatorMatrix kron_embed(const OperatorMatrix& spin_op, const OperatorMatrix& field_op);

cplx inner(const JointState& x, const JointState& y);
cplx expectation(const OperatorMatrix& op, const JointState& x);
Vector apply(const OperatorMatrix& op, const JointState& x);

double max_abs(const Matrix& m);

/// Joint indices with n <= n_max - guard, both spin sectors.
std::vector<Index> interior_indices(int n_max, int guard);

/// max_{i,j in interior} |m(i,j)|
double interior_max_abs(const Matrix& m, int n_max, int guard);

}  // namespace rabi

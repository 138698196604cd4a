#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "rabi/errors.hpp"
#include "rabi/fock.hpp"

using namespace rabi;

TEST_CASE("number states are basis vectors") {
  const FieldState f = number_state(6, 200);
  CHECK(f.n_max() == 200);
  CHECK(f.amplitude(6) == cplx{1.0, 0.0});
  CHECK(f.amplitudes().cwiseAbs().sum() == doctest::Approx(1.0));

  const FieldState vac = number_state(0, 10);
  CHECK(vac.amplitude(0) == cplx{1.0, 0.0});
  CHECK(vac.mean_photon_number() == 0.0);

  const FieldState hundred = number_state(100, 150);
  CHECK(hundred.amplitude(100) == cplx{1.0, 0.0});
  CHECK(hundred.mean_photon_number() == doctest::Approx(100.0));

  CHECK_THROWS_AS(number_state(11, 10), CutoffError);
  CHECK_THROWS_AS(number_state(-1, 10), Error);
}

TEST_CASE("field amplitudes beyond the cutoff read as zero") {
  const FieldState f = number_state(3, 5);
  CHECK(f.amplitude(6) == cplx{0.0, 0.0});
  CHECK(f.amplitude(-1) == cplx{0.0, 0.0});
  CHECK(f.weight_above(2) == doctest::Approx(1.0));
  CHECK(f.weight_above(3) == 0.0);
}

TEST_CASE("coherent states") {
  const FieldState vac = coherent_state({0.0, 0.0}, 10);
  CHECK(vac.amplitude(0) == cplx{1.0, 0.0});
  CHECK(vac.weight_above(0) == 0.0);

  const FieldState c2 = coherent_state({2.0, 0.0}, 44);
  CHECK(std::abs(c2.mean_photon_number() - 4.0) < 1e-10);

  const FieldState c8 = coherent_state({8.0, 0.0}, 200);
  CHECK(std::abs(c8.mean_photon_number() - 64.0) < 1e-8);

  SUBCASE("probabilities match a Poisson distribution built by recursion") {
    const std::vector<double> w = oracle::poisson_weights(64.0, 200);
    double worst = 0.0;
    for (int n = 0; n <= 200; ++n) worst = std::max(worst, std::abs(std::norm(c8.amplitude(n)) - w[n]));
    CHECK(worst < 1e-14);
  }
  SUBCASE("complex alpha carries the phase alpha^n") {
    const cplx alpha{1.0, 1.0};
    const FieldState c = coherent_state(alpha, 60);
    for (int n = 1; n <= 10; ++n) {
      const cplx ratio = c.amplitude(n) / c.amplitude(n - 1);
      CHECK(std::abs(ratio - alpha / std::sqrt(static_cast<double>(n))) < 1e-13);
    }
  }
  SUBCASE("too small a cutoff names the minimum adequate one") {
    try {
      coherent_state({8.0, 0.0}, 80);
      FAIL("expected InsufficientCutoffError");
    } catch (const InsufficientCutoffError& e) {
      CHECK(e.min_n_max() == min_coherent_cutoff(8.0));
      CHECK(e.min_n_max() > 80);
      CHECK_NOTHROW(coherent_state({8.0, 0.0}, e.min_n_max()));
      CHECK_THROWS_AS(coherent_state({8.0, 0.0}, e.min_n_max() - 1), InsufficientCutoffError);
    }
  }
}

TEST_CASE("state constructors enforce unit norm") {
  Vector v = Vector::Zero(4);
  v[1] = 2.0;
  CHECK_THROWS_AS(FieldState{v}, Error);
  CHECK(FieldState::normalized(v).amplitude(1) == cplx{1.0, 0.0});
  CHECK_THROWS_AS(JointState{Vector::Zero(4)}, Error);
}

TEST_CASE("boson operators") {
  const int N = 12;
  const BosonOperators b = boson_operators(N);
  const Vector one = number_state(1, N).amplitudes();
  CHECK(oracle::max_abs(b.a.entries() * one - number_state(0, N).amplitudes()) < 1e-15);

  for (int n = 0; n <= N; ++n) CHECK(b.n_hat(n, n) == cplx{double(n), 0.0});
  CHECK(oracle::max_abs(b.n_hat.entries() - b.a_dag.entries() * b.a.entries()) < 1e-12);

  const Matrix comm = b.a.entries() * b.a_dag.entries() - b.a_dag.entries() * b.a.entries();
  const Matrix defect = comm - Matrix::Identity(N + 1, N + 1);
  CHECK(oracle::max_abs(defect.topLeftCorner(N, N)) < 1e-13);
  CHECK(oracle::max_abs(defect.topRightCorner(N, 1)) == 0.0);
  // Truncation: a a^dag has nothing to raise |n_max> into.
  CHECK(defect(N, N).real() == doctest::Approx(-(N + 1.0)));

  CHECK(b.vac_proj(0, 0) == cplx{1.0, 0.0});
  CHECK(b.vac_proj.entries().cwiseAbs().sum() == 1.0);
}

TEST_CASE("Pauli algebra") {
  const SpinOperators s = spin_operators();
  const Matrix sp = s.sigma_plus.entries(), sm = s.sigma_minus.entries(), sz = s.sigma_z.entries();
  const Matrix I = Matrix::Identity(2, 2);
  CHECK(oracle::max_abs(sp * sp) == 0.0);
  CHECK(oracle::max_abs(sm * sm) == 0.0);
  CHECK(oracle::max_abs(sm * sp + sp * sm - I) == 0.0);
  CHECK(oracle::max_abs(2.0 * sp * sm - I - sz) == 0.0);
  // sigma+ raises |down> to |up>.
  CHECK(sp(1, 0) == cplx{1.0, 0.0});
  CHECK(sz(0, 0) == cplx{-1.0, 0.0});
}

TEST_CASE("tensor embedding") {
  const int N = 8;
  const BosonOperators b = boson_operators(N);
  const SpinOperators s = spin_operators();
  const OperatorMatrix I2 = identity(2);
  const OperatorMatrix If = identity(N + 1);

  CHECK(oracle::max_abs(kron_embed(I2, If).entries() - Matrix::Identity(2 * (N + 1), 2 * (N + 1))) == 0.0);

  const JointState up5 = JointState::basis(Spin::up, 5, N);
  CHECK(oracle::max_abs(apply(kron_embed(s.sigma_z, If), up5) - up5.amplitudes()) == 0.0);

  // (sigma+ (x) a)|down, 1> = |up, 0>
  const Vector out = apply(kron_embed(s.sigma_plus, b.a), JointState::basis(Spin::down, 1, N));
  CHECK(oracle::max_abs(out - JointState::basis(Spin::up, 0, N).amplitudes()) < 1e-15);
  const Matrix dense = kron_embed(s.sigma_plus, b.a).entries();
  CHECK(dense(oracle::idx(Spin::up, 0, N), oracle::idx(Spin::down, 1, N)) == cplx{1.0, 0.0});

  CHECK_THROWS_AS(kron_embed(b.a, b.a), DimensionError);
}

TEST_CASE("kron_embed obeys the mixed-product rule") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int N = 2 + trial % 7;
    const OperatorMatrix A(oracle::random_matrix(rng, 2, 2)), C(oracle::random_matrix(rng, 2, 2));
    const OperatorMatrix B(oracle::random_matrix(rng, N + 1, N + 1));
    const OperatorMatrix D(oracle::random_matrix(rng, N + 1, N + 1));
    const Matrix lhs = kron_embed(A, B).entries() * kron_embed(C, D).entries();
    const Matrix rhs =
        kron_embed(OperatorMatrix(A.entries() * C.entries()), OperatorMatrix(B.entries() * D.entries())).entries();
    CHECK(oracle::max_abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("inner products and expectations") {
  const int N = 44;
  const FieldState c2 = coherent_state({2.0, 0.0}, N);
  const JointState psi = JointState::product(Spin::up, c2);
  CHECK(std::abs(inner(psi, psi) - 1.0) < 1e-14);

  const OperatorMatrix sz = kron_embed(spin_operators().sigma_z, identity(N + 1));
  CHECK(std::abs(expectation(sz, psi) - 1.0) < 1e-14);

  const OperatorMatrix n = kron_embed(identity(2), boson_operators(N).n_hat);
  CHECK(std::abs(expectation(n, psi) - 4.0) < 1e-10);

  CHECK_THROWS_AS(inner(psi, JointState::basis(Spin::up, 0, 5)), DimensionError);
}

TEST_CASE("operator matrices check their shape and hermiticity") {
  CHECK_THROWS_AS(OperatorMatrix(Matrix::Zero(2, 3)), DimensionError);
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(OperatorMatrix(m, true), NonHermitianError);
  CHECK_NOTHROW(OperatorMatrix(m, false));
}

TEST_CASE("interior index set") {
  const auto idx = interior_indices(10, 3);
  CHECK(idx.size() == 16);
  CHECK(idx.front() == 0);
  CHECK(idx.back() == oracle::idx(Spin::up, 7, 10));
  Matrix m = Matrix::Zero(22, 22);
  m(oracle::idx(Spin::up, 10, 10), 0) = 5.0;
  CHECK(interior_max_abs(m, 10, 3) == 0.0);
  m(oracle::idx(Spin::up, 7, 10), 0) = 2.0;
  CHECK(interior_max_abs(m, 10, 3) == 2.0);
}

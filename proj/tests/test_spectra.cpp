#include "doctest.h"

#include <algorithm>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "rabi/errors.hpp"
#include "rabi/spectra.hpp"
#include "rabi/transform.hpp"

using namespace rabi;

namespace {

ModelParams params(int n_max, double g = 0.1) {
  ModelParams p;
  p.n_max = n_max;
  p.g = g;
  return p;
}

int nonzero_components(const JointState& v) {
  int count = 0;
  for (Index i = 0; i < v.dim(); ++i)
    if (v.amplitudes()[i] != cplx{0.0, 0.0}) ++count;
  return count;
}

}  // namespace

TEST_CASE("block rotation at weak coupling") {
  const ModelParams p = params(200);
  for (int n = 0; n <= 6; ++n) CHECK(std::pow(ahm1_coefficients(n, p).a_n, 2) >= 0.99);
  double prev = 1.0;
  for (int n = 0; n <= 20; ++n) {
    const double a2 = std::pow(ahm1_coefficients(n, p).a_n, 2);
    CHECK(a2 <= prev);
    CHECK(a2 > 0.95);
    prev = a2;
  }
}

TEST_CASE("decoupled limit") {
  const ModelParams p = params(50, 0.0);
  for (int n = 0; n < 10; ++n) {
    const AhmCoefficients c = ahm1_coefficients(n, p);
    CHECK(c.alpha_n == 0.0);
    CHECK(c.a_n == 1.0);
    CHECK(c.b_n == 0.0);
    CHECK(c.delta_n == doctest::Approx(2.0 * p.omega));
    const PairEigenvalues e = ahm1_eigenvalues(n, p);
    CHECK(e.plus == doctest::Approx((2.0 * n + 5.0) * p.omega / 2.0));
    CHECK(e.minus == doctest::Approx((2.0 * n + 1.0) * p.omega / 2.0));
    CHECK(ahm2_coefficients(n, p).a_n == 1.0);
  }
  const H2SpecialCoefficients k = ahm2_special_coefficients(p);
  CHECK(k.epsilon == doctest::Approx(p.omega));
  CHECK(k.gamma == 0.0);
  CHECK(k.c == 1.0);
  CHECK(k.d == 0.0);
  const auto xi = ahm2_specials(p);
  CHECK(xi[0].value == doctest::Approx(-0.5 * p.omega));
  CHECK(xi[1].value == doctest::Approx(1.5 * p.omega));
}

TEST_CASE("n = 0 block against a direct 2x2 diagonalization") {
  const ModelParams p = params(40);
  const AhmCoefficients c = ahm1_coefficients(0, p);
  CHECK(c.mu_n == doctest::Approx(0.1 * std::sqrt(2.0)).epsilon(1e-15));
  CHECK(c.eta_n == doctest::Approx(2.0 - 0.1 * (1.0 + std::sqrt(3.0))).epsilon(1e-15));
  CHECK(c.delta_n == doctest::Approx(std::hypot(c.mu_n, c.eta_n)).epsilon(1e-15));

  const HamiltonianMatrix t = build_h1_tilde(p);
  const Index i = oracle::idx(Spin::up, 0, p.n_max), j = oracle::idx(Spin::down, 3, p.n_max);
  const auto [lo, hi] = oracle::eig2(t(i, i).real(), t(i, j).real(), t(j, j).real());
  const PairEigenvalues e = ahm1_eigenvalues(0, p);
  CHECK(std::abs(e.minus - lo) < 1e-14);
  CHECK(std::abs(e.plus - hi) < 1e-14);
}

TEST_CASE("pair invariants for random couplings") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> gd(-0.6, 0.6);
  std::uniform_int_distribution<int> nd(0, 400);
  for (int trial = 0; trial < 500; ++trial) {
    const ModelParams p = params(200, gd(rng));
    const int n = nd(rng);
    const AhmCoefficients c = ahm1_coefficients(n, p);
    const PairEigenvalues e = ahm1_eigenvalues(n, p);
    CHECK(std::abs(c.a_n * c.a_n + c.b_n * c.b_n - 1.0) < 1e-14);
    CHECK(e.plus - e.minus == doctest::Approx(c.delta_n));
    CHECK(c.delta_n > 0.0);
    // alpha solves mu x^2 + 2 eta x - mu = 0 on the branch with sign(alpha) = sign(mu).
    CHECK(std::abs(c.mu_n * c.alpha_n * c.alpha_n + 2.0 * c.eta_n * c.alpha_n - c.mu_n) <
          1e-13 * (1.0 + c.alpha_n * c.alpha_n));
    CHECK(c.alpha_n * c.mu_n >= 0.0);
    if (c.eta_n >= 0.0) CHECK(std::abs(c.alpha_n) <= 1.0);
  }
}

TEST_CASE("degenerate branch is reported") {
  ModelParams p = params(40, 0.0);
  p.omega = p.nu = -1.0;
  CHECK_THROWS_AS(ahm1_coefficients(0, p), DegenerateBranchError);
}

TEST_CASE("H1 specials") {
  const ModelParams p = params(60);
  const auto chi = ahm1_specials(p);
  REQUIRE(chi.size() == 3);
  CHECK(chi[0].value == -0.5);
  CHECK(chi[1].value == doctest::Approx(0.5 - p.g));
  CHECK(chi[2].value == doctest::Approx(1.5 - std::sqrt(2.0) * p.g));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(chi[1].vector.amplitude(Spin::down, 1) - r) < 1e-15);
  CHECK(std::abs(chi[1].vector.amplitude(Spin::up, 0) + r) < 1e-15);
  CHECK(nonzero_components(chi[1].vector) == 2);
  const HamiltonianMatrix h1 = build_h1_explicit(p);
  for (const EigenRecord& x : chi) CHECK(residual(h1, x) < 1e-10);
  CHECK(chi[0].label.str() == "chi0");
}

TEST_CASE("H2 specials") {
  const ModelParams p = params(60);
  const H2SpecialCoefficients k = ahm2_special_coefficients(p);
  CHECK(k.c == doctest::Approx(0.999456454344816).epsilon(1e-14));
  CHECK(k.d == doctest::Approx(-0.0329665871525823).epsilon(1e-13));
  CHECK(k.c * k.c + k.d * k.d == doctest::Approx(1.0).epsilon(1e-15));
  const auto xi = ahm2_specials(p);
  REQUIRE(xi.size() == 3);
  CHECK(xi[2].value == doctest::Approx(0.5 * p.omega + p.g));
  CHECK(xi[0].value == doctest::Approx((p.omega + std::sqrt(2.0) * p.g - 2.0 * k.epsilon) / 2.0));
  CHECK(xi[1].value == doctest::Approx((p.omega + std::sqrt(2.0) * p.g + 2.0 * k.epsilon) / 2.0));
  const HamiltonianMatrix h2 = build_h2_explicit(p);
  for (const EigenRecord& x : xi) CHECK(residual(h2, x) < 1e-10);
  CHECK(xi[0].label.str() == "xi-");
  CHECK(xi[2].label.str() == "xi0");
}

TEST_CASE("H2 pairs follow from H1 by g -> -g") {
  const ModelParams p = params(200);
  const HamiltonianMatrix t2 = build_h2_tilde(p);
  for (int n = 0; n <= 50; ++n) {
    const PairEigenvalues l = ahm2_eigenvalues(n, p);
    const PairEigenvalues k = ahm1_eigenvalues(n, p.with_g(-p.g));
    CHECK(l.plus == k.plus);
    CHECK(l.minus == k.minus);
    const Index i = oracle::idx(Spin::down, n + 1, p.n_max), j = oracle::idx(Spin::up, n + 2, p.n_max);
    const auto [lo, hi] = oracle::eig2(t2(i, i).real(), t2(i, j).real(), t2(j, j).real());
    CHECK(std::abs(l.minus - lo) < 1e-12);
    CHECK(std::abs(l.plus - hi) < 1e-12);
  }
}

TEST_CASE("untransformed pair states") {
  const ModelParams p = params(80);
  const HamiltonianMatrix h1 = build_h1_explicit(p);
  const HamiltonianMatrix h2 = build_h2_explicit(p);
  for (int n : {0, 1, 2, 10, largest_pair_index(p)}) {
    for (Approx m : {Approx::h1, Approx::h2}) {
      const auto [minus, plus] = untransformed_pair_states(m, n, p);
      CHECK(nonzero_components(minus.vector) == 4);
      CHECK(nonzero_components(plus.vector) == 4);
      CHECK(std::abs(inner(minus.vector, minus.vector) - 1.0) < 1e-14);
      CHECK(std::abs(inner(minus.vector, plus.vector)) < 1e-15);
      const HamiltonianMatrix& h = m == Approx::h1 ? h1 : h2;
      CHECK(residual(h, minus) < 1e-10);
      CHECK(residual(h, plus) < 1e-10);
    }
  }
  CHECK_THROWS_AS(untransformed_pair_states(Approx::h1, largest_pair_index(p) + 1, p), CutoffError);
  const auto [m0, p0] = untransformed_pair_states(Approx::h2, 3, p);
  CHECK(m0.label.str() == "psi-(3)");
  CHECK(p0.label.str() == "psi+(3)");
}

TEST_CASE("full eigenbasis is orthonormal and matches the dense spectrum") {
  const ModelParams p = params(60);
  for (Approx m : {Approx::h1, Approx::h2}) {
    const auto basis = full_eigenbasis(m, p);
    CHECK(basis.size() == std::size_t(2 * (largest_pair_index(p) + 1) + 3));
    Matrix V(2 * (p.n_max + 1), basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) V.col(k) = basis[k].vector.amplitudes();
    CHECK(oracle::max_abs(V.adjoint() * V - Matrix::Identity(V.cols(), V.cols())) < 1e-10);

    const HamiltonianMatrix h = m == Approx::h1 ? build_h1_explicit(p) : build_h2_explicit(p);
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.entries(), Eigen::EigenvaluesOnly);
    std::vector<double> dense(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    for (const EigenRecord& r : basis) {
      CHECK(residual(h, r) < 1e-10);
      const auto it = std::lower_bound(dense.begin(), dense.end(), r.value - 1e-9);
      REQUIRE(it != dense.end());
      CHECK(std::abs(*it - r.value) < 1e-9);
    }
    // Deterministic ordering: pairs by n, minus before plus, then specials.
    CHECK(basis[0].label.kind == EigenLabel::Kind::pair_minus);
    CHECK(basis[1].label.kind == EigenLabel::Kind::pair_plus);
    CHECK(basis[2].label.index == 1);
    CHECK(basis.back().label.kind == EigenLabel::Kind::special);
  }
}

TEST_CASE("spectrum dump format") {
  const ModelParams p = params(30);
  const auto basis = full_eigenbasis(Approx::h1, p);
  const HamiltonianMatrix h = build_h1_explicit(p);
  std::vector<double> res;
  for (const auto& r : basis) res.push_back(residual(h, r));
  const std::string dump = format_spectrum(basis, res);
  std::istringstream in(dump);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  CHECK(lines.size() == basis.size());
  CHECK(lines.front().rfind("chi0 E=-0.5 ", 0) == 0);
  CHECK(lines.front().find("components=dn|0:1") != std::string::npos);
  double prev = -1e300;
  for (const std::string& l : lines) {
    const auto e = l.find(" E=");
    const double v = std::stod(l.substr(e + 3));
    CHECK(v >= prev);
    prev = v;
  }
  CHECK_THROWS_AS(format_spectrum(basis, {}), InvalidArgument);
}

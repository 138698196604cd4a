#include "doctest.h"

#include <algorithm>
#include <numbers>

#include "oracles.hpp"
#include "rabi/dynamics.hpp"
#include "rabi/errors.hpp"
#include "rabi/signal.hpp"

using namespace rabi;

namespace {

ModelParams params(int n_max, double g = 0.1) {
  ModelParams p;
  p.n_max = n_max;
  p.g = g;
  return p;
}

SurvivalSeries propagate(const HamiltonianMatrix& h, const FieldState& f, const TimeGrid& grid) {
  return propagate_survival(h, JointState::product(Spin::up, f), grid);
}

}  // namespace

TEST_CASE("model tags") {
  CHECK(to_string(ModelTag::ahm1) == "AHM1");
  CHECK(parse_model_tag("rh") == ModelTag::rh);
  CHECK(parse_model_tag("JcM") == ModelTag::jcm);
  CHECK_THROWS_AS(parse_model_tag("h3"), InvalidArgument);
}

TEST_CASE("time grids") {
  const TimeGrid g{0.0, 10.0, 4};
  const auto t = g.times();
  REQUIRE(t.size() == 5);
  CHECK(t[1] == 2.5);
  CHECK(t.back() == 10.0);
  CHECK_THROWS_AS((TimeGrid{5.0, 1.0, 10}.validate()), InvalidArgument);
  CHECK_THROWS_AS((TimeGrid{-1.0, 1.0, 10}.validate()), InvalidArgument);
  CHECK_THROWS_AS((TimeGrid{0.0, 1.0, 1}.validate()), InvalidArgument);
}

TEST_CASE("exact propagation basics") {
  const TimeGrid grid{0.0, 50.0, 500};
  const FieldState f = number_state(3, 30);
  const SurvivalSeries s = propagate(build_rabi(params(30)), f, grid);
  CHECK(std::abs(s.p.front() - 1.0) < 1e-12);
  CHECK(s.max_norm_error < 1e-10);
  for (double v : s.p) {
    CHECK(v >= -1e-12);
    CHECK(v <= 1.0 + 1e-10);
  }
  const SurvivalSeries frozen = propagate(build_rabi(params(30, 0.0)), f, grid);
  for (double v : frozen.p) CHECK(std::abs(v - 1.0) < 1e-12);

  CHECK_THROWS_AS(propagate(build_rabi(params(30)), number_state(3, 20), grid), DimensionError);
}

TEST_CASE("Rabi propagation against a hand-built matrix") {
  const TimeGrid grid{0.0, 40.0, 400};
  const FieldState f = coherent_state({1.5, 0.5}, 50);
  const ModelParams p = params(50, 0.2);
  const HamiltonianMatrix hand(oracle::rabi_by_hand(p.omega, p.nu, p.g, p.n_max), p.n_max);
  CHECK(oracle::max_dev(propagate(build_rabi(p), f, grid).p, propagate(hand, f, grid).p) < 1e-12);
}

TEST_CASE("propagation tracks a small time step integration") {
  // Crank-Nicolson with a fine step: second order, so the error is tiny but not zero.
  const ModelParams p = params(20, 0.3);
  const FieldState f = number_state(2, p.n_max);
  const Matrix H = build_rabi(p).entries();
  const Index D = H.rows();
  const double dt = 2.5e-4;
  const cplx i{0.0, 1.0};
  const Matrix lhs = Matrix::Identity(D, D) + 0.5 * i * dt * H;
  const Matrix rhs = Matrix::Identity(D, D) - 0.5 * i * dt * H;
  const Matrix step = lhs.partialPivLu().solve(rhs);
  Vector psi = JointState::product(Spin::up, f).amplitudes();
  const TimeGrid grid{0.0, 10.0, 10};
  const SurvivalSeries s = propagate(build_rabi(p), f, grid);
  int k = 0;
  for (int n = 0; n <= 40000; ++n) {
    if (n % 4000 == 0) {
      const double up = psi.tail(p.n_max + 1).squaredNorm();
      CHECK(std::abs(up - s.p[k]) < 1e-6);
      ++k;
    }
    psi = step * psi;
  }
}

TEST_CASE("JC closed form") {
  const ModelParams p = params(46);
  const TimeGrid grid{0.0, 100.0, 2000};
  const SurvivalSeries s = survival_jcm_analytic(number_state(6, 46), p, grid);
  for (std::size_t i = 0; i < s.times.size(); ++i)
    CHECK(std::abs(s.p[i] - 0.5 * (1.0 + std::cos(2.0 * p.g * std::sqrt(7.0) * s.times[i]))) < 1e-14);
  for (const FieldState& f : {number_state(6, 46), coherent_state({2.0, 0.0}, 46), coherent_state({1.0, -2.0}, 46)})
    CHECK(oracle::max_dev(survival_jcm_analytic(f, p, grid).p, propagate(build_jc(p), f, grid).p) < 1e-10);

  ModelParams off = p;
  off.nu = 1.2;
  CHECK_THROWS_AS(survival_jcm_analytic(number_state(6, 46), off, grid), UnsupportedConfiguration);
}

TEST_CASE("overlaps with the H1 pair states") {
  const ModelParams p = params(46);
  const FieldState six = number_state(6, 46);
  const double r = 1.0 / std::sqrt(2.0);
  const AhmCoefficients c6 = ahm1_coefficients(6, p), c4 = ahm1_coefficients(4, p);
  CHECK(std::abs(overlaps_f(6, six, p).minus - c6.a_n * r) < 1e-15);
  CHECK(std::abs(overlaps_f(6, six, p).plus - c6.b_n * r) < 1e-15);
  CHECK(std::abs(overlaps_f(4, six, p).minus + c4.b_n * r) < 1e-15);
  CHECK(std::abs(overlaps_f(4, six, p).plus - c4.a_n * r) < 1e-15);
  for (int n : {0, 1, 2, 3, 5, 7, 10})
    CHECK(std::abs(overlaps_f(n, six, p).minus) + std::abs(overlaps_f(n, six, p).plus) == 0.0);

  const FieldState coh = coherent_state({2.0, 1.0}, 46);
  const JointState psi = JointState::product(Spin::up, coh);
  for (int n = 0; n <= largest_pair_index(p); ++n) {
    const PairOverlaps F = overlaps_f(n, coh, p);
    CHECK(std::norm(F.minus) + std::norm(F.plus) ==
          doctest::Approx(0.5 * (std::norm(coh.amplitude(n)) + std::norm(coh.amplitude(n + 2)))));
    const auto [minus, plus] = untransformed_pair_states(Approx::h1, n, p);
    CHECK(std::abs(inner(minus.vector, psi) - F.minus) < 1e-12);
    CHECK(std::abs(inner(plus.vector, psi) - F.plus) < 1e-12);
  }
  CHECK_THROWS_AS(overlaps_f(largest_pair_index(p) + 1, coh, p), CutoffError);
}

TEST_CASE("H1 closed form against propagation") {
  const ModelParams p = params(46);
  const TimeGrid grid{0.0, 25.0 / p.g, 5000};
  const FieldState six = number_state(6, 46);
  CHECK(oracle::max_dev(survival_ahm1_analytic(six, p, grid).p, propagate(build_h1_explicit(p), six, grid).p) < 1e-8);

  // States touching the special states exercise the bracket term.
  const TimeGrid short_grid{0.0, 100.0, 1000};
  for (int n : {0, 1, 2}) {
    const ModelParams q = params(40);
    const FieldState f = number_state(n, 40);
    CHECK(oracle::max_dev(survival_ahm1_analytic(f, q, short_grid).p,
                          propagate(build_h1_explicit(q), f, short_grid).p) < 1e-8);
  }
}

TEST_CASE("special bracket vanishes without vacuum and one-photon weight") {
  const ModelParams p = params(46);
  const auto terms = ahm1_oscillators(number_state(6, 46), p);
  // Four block terms for each of the two blocks that see |6>, nothing else.
  CHECK(terms.size() <= 8);
  const double k1 = 0.5 * p.omega - p.g;
  const double k2 = 1.5 * p.omega - std::sqrt(2.0) * p.g;
  for (const auto& t : terms) {
    for (int n = 0; n <= 1; ++n) {
      const PairEigenvalues e = ahm1_eigenvalues(n, p);
      for (double k : {k1, k2}) {
        CHECK(std::abs(t.frequency - (e.minus - k)) > 1e-9);
        CHECK(std::abs(t.frequency - (e.plus - k)) > 1e-9);
      }
    }
  }
}

TEST_CASE("closed forms reject fields reaching into the guard band") {
  const ModelParams p = params(30);
  const TimeGrid grid;
  CHECK_THROWS_AS(survival_ahm1_analytic(number_state(25, 30), p, grid), UnsupportedFieldTail);
  CHECK_THROWS_AS(survival_ahm2_analytic(number_state(25, 30), p, grid), UnsupportedFieldTail);
  CHECK_NOTHROW(survival_ahm1_analytic(number_state(22, 30), p, grid));
}

TEST_CASE("weak-coupling reduction reproduces the JC closed form") {
  const ModelParams p = params(46);
  const TimeGrid grid;
  for (const FieldState& f : {number_state(6, 46), coherent_state({2.0, 0.0}, 46)}) {
    CHECK(oracle::max_dev(survival_ahm1_weak_coupling(f, p, grid).p, survival_jcm_analytic(f, p, grid).p) < 1e-12);
  }
}

TEST_CASE("H2 closed form") {
  const ModelParams p = params(46);
  const TimeGrid grid;
  for (const FieldState& f : {number_state(6, 46), number_state(0, 46), number_state(1, 46),
                              coherent_state({2.0, 0.0}, 46)}) {
    CHECK(oracle::max_dev(survival_ahm2_analytic(f, p, grid).p, propagate(build_h2_explicit(p), f, grid).p) < 1e-8);
  }
  const FieldState zero = number_state(0, 46);
  for (double v : survival_ahm2_analytic(zero, params(46, 0.0), grid).p) CHECK(std::abs(v - 1.0) < 1e-12);
  CHECK_THROWS_AS(survival_ahm2_analytic(number_state(6, 40), p, grid), DimensionError);
}

TEST_CASE("|up, 0> in the H2 eigenbasis") {
  // U|up,0> = (|up,0> - |dn,1>)/sqrt2 splits evenly between xi0 and the n = 0 pair.
  const ModelParams p = params(30);
  const JointState psi = JointState::basis(Spin::up, 0, p.n_max);
  const auto xi = ahm2_specials(p);
  CHECK(std::norm(inner(xi[0].vector, psi)) < 1e-30);
  CHECK(std::norm(inner(xi[1].vector, psi)) < 1e-30);
  CHECK(std::norm(inner(xi[2].vector, psi)) == doctest::Approx(0.5).epsilon(1e-14));
  const auto [m, pl] = untransformed_pair_states(Approx::h2, 0, p);
  CHECK(std::norm(inner(m.vector, psi)) + std::norm(inner(pl.vector, psi)) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("g-sign symmetry between the approximating models") {
  const ModelParams p = params(46);
  const TimeGrid grid;
  const FieldState six = number_state(6, 46);
  const auto h1 = survival_ahm1_analytic(six, p, grid);
  const auto h2 = survival_ahm2_analytic(six, p.with_g(-p.g), grid);
  CHECK(oracle::max_dev(h1.p, h2.p) < 1e-10);
  // With vacuum weight the special states break the equality.
  const FieldState one = number_state(1, 46);
  CHECK(oracle::max_dev(survival_ahm1_analytic(one, p, grid).p,
                        survival_ahm2_analytic(one, p.with_g(-p.g), grid).p) > 1e-3);
}

TEST_CASE("field parity maps the Rabi dynamics at g onto -g") {
  const ModelParams p = params(44);
  const TimeGrid grid;
  const FieldState f = coherent_state({2.0, 0.5}, 44);
  const FieldState flipped = coherent_state({-2.0, -0.5}, 44);
  CHECK(oracle::max_dev(propagate(build_rabi(p), f, grid).p,
                        propagate(build_rabi(p.with_g(-p.g)), flipped, grid).p) < 1e-12);
}

TEST_CASE("spectral gap approaches 2 omega") {
  const ModelParams p = params(200);
  for (int n = 50; n <= 200; ++n) {
    const double gap = ahm1_eigenvalues(n + 2, p).plus - ahm1_eigenvalues(n, p).plus;
    CHECK(std::abs(gap - 2.0 * p.omega) < 3.0 * p.g / std::sqrt(n + 1.0));
  }
  // kappa-_{n+2} - kappa+_n approaches 2 g sqrt(n+1) while g sqrt(n+1) << omega.
  for (int n : {20, 40, 80}) {
    const double d = ahm1_eigenvalues(n + 2, p.with_g(0.01)).minus - ahm1_eigenvalues(n, p.with_g(0.01)).plus;
    CHECK(std::abs(d - 2.0 * 0.01 * std::sqrt(n + 1.0)) / (2.0 * 0.01 * std::sqrt(n + 1.0)) < 0.05);
  }
}

TEST_CASE("Rabi oscillation for |up, 6> runs slightly slower than JC") {
  const ModelParams p = params(46);
  const TimeGrid grid;
  const auto series = compare_models(number_state(6, 46), p, grid, {ModelTag::jcm, ModelTag::rh});
  REQUIRE(series.size() == 2);
  CHECK(series[0].model == ModelTag::rh);
  const double f_rh = signal::dominant_frequency(signal::windowed_spectrum(series[0].p, grid.dt()));
  const double jc = 2.0 * p.g * std::sqrt(7.0);
  CHECK(f_rh < jc);
  CHECK(f_rh > 0.95 * jc);
}

TEST_CASE("compare_models input checks") {
  const ModelParams p = params(46);
  const TimeGrid grid{0.0, 10.0, 100};
  CHECK_THROWS_AS(compare_models(number_state(6, 46), p, grid, {}), InvalidArgument);
  CHECK_THROWS_AS(compare_models(number_state(6, 40), p, grid, {ModelTag::rh}), DimensionError);
  const auto all = compare_models(number_state(6, 46), p, grid,
                                  {ModelTag::jcm, ModelTag::ahm2, ModelTag::rh, ModelTag::ahm1, ModelTag::rh});
  REQUIRE(all.size() == 4);
  CHECK(all[3].model == ModelTag::jcm);
  for (const auto& s : all) CHECK(std::abs(s.p.front() - 1.0) < 1e-10);
}

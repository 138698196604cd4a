#include "rabi/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>

#include "rabi/dynamics.hpp"
#include "rabi/signal.hpp"
#include "rabi/spectra.hpp"
#include "rabi/transform.hpp"

namespace rabi::verify {

namespace {

using Checks = std::vector<Check>;

double max_deviation(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

ModelParams with_cutoff(const ModelParams& p, int n_max) {
  ModelParams q = p;
  q.n_max = n_max;
  return q;
}

struct Initial {
  std::string name;
  FieldState field;
};

Initial number_initial(int n) {
  return {"number" + std::to_string(n), number_state(n, default_cutoff_for_number(n))};
}

Initial coherent_initial(double alpha) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "coherent%g", alpha);
  return {buf, coherent_state({alpha, 0.0}, default_cutoff_for_coherent({alpha, 0.0}))};
}

SurvivalSeries propagate(const HamiltonianMatrix& h, const FieldState& f, const TimeGrid& grid,
                         ModelTag tag) {
  return propagate_survival(h, JointState::product(Spin::up, f), grid, tag);
}

// ---- suite 0: per-module invariants ----------------------------------------

Checks module_invariants(const ModelParams& p) {
  Checks out;
  const int s = 0;

  {
    double worst = 0.0;
    for (int n = 0; n <= 10; ++n)
      worst = std::max(worst, std::abs(number_state(n, 30).amplitudes().squaredNorm() - 1.0));
    for (cplx a : {cplx{2.0, 0.0}, cplx{8.0, 0.0}, cplx{1.0, 1.0}, cplx{0.0, -3.0}})
      worst = std::max(worst, std::abs(coherent_state(a, default_cutoff_for_coherent(a))
                                           .amplitudes()
                                           .squaredNorm() -
                                       1.0));
    out.push_back(make_check("fock.state_norm", s, worst, 1e-12));
  }
  {
    const int N = 30;
    const BosonOperators b = boson_operators(N);
    const Matrix comm = b.a.entries() * b.a_dag.entries() - b.a_dag.entries() * b.a.entries();
    const Matrix defect = comm - Matrix::Identity(N + 1, N + 1);
    out.push_back(make_check("fock.commutator_interior", s, max_abs(defect.topLeftCorner(N, N)),
                             1e-12));
    out.push_back(make_check("fock.commutator_defect_last_level", s,
                             std::abs(defect(N, N) + (N + 1.0)), 1e-12));
  }
  {
    const SpinOperators so = spin_operators();
    const Matrix sp = so.sigma_plus.entries();
    const Matrix sm = so.sigma_minus.entries();
    const Matrix sz = so.sigma_z.entries();
    const Matrix I = Matrix::Identity(2, 2);
    double worst = max_abs(sp * sm - sm * sp - sz);
    worst = std::max(worst, max_abs(sp * sm + sm * sp - I));
    worst = std::max(worst, max_abs(sz * sz - I));
    worst = std::max(worst, max_abs(sz * sp - sp));
    worst = std::max(worst, max_abs(sp * sz + sp));
    worst = std::max(worst, max_abs(sp * sp));
    out.push_back(make_check("fock.pauli_identities", s, worst, 1e-15));
  }
  {
    std::mt19937 rng(20240617u);
    std::normal_distribution<double> nd;
    const auto random = [&](Index r, Index c) {
      Matrix m(r, c);
      for (Index j = 0; j < c; ++j)
        for (Index i = 0; i < r; ++i) m(i, j) = {nd(rng), nd(rng)};
      return m;
    };
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      const OperatorMatrix A(random(2, 2)), C(random(2, 2));
      const OperatorMatrix B(random(9, 9)), D(random(9, 9));
      const Matrix lhs = kron_embed(A, B).entries() * kron_embed(C, D).entries();
      const Matrix rhs =
          kron_embed(OperatorMatrix(A.entries() * C.entries()), OperatorMatrix(B.entries() * D.entries()))
              .entries();
      worst = std::max(worst, max_abs(lhs - rhs));
    }
    out.push_back(make_check("fock.kron_mixed_product", s, worst, 1e-12));
  }

  const ModelParams small = with_cutoff(p, 60);
  {
    const Matrix split =
        build_rabi(small).entries() - build_jc(small).entries() - build_v(small).entries();
    out.push_back(make_check("models.rabi_split_exact", s, max_abs(split), 0.0, Relation::at_most));
  }
  {
    double non_hermitian = 0.0;
    for (const HamiltonianMatrix& h :
         {build_rabi(small), build_jc(small), build_v(small), build_jc_diag(small),
          build_h1_explicit(small), build_h2_explicit(small), build_h1_tilde(small),
          build_h2_tilde(small)}) {
      if (!h.hermitian() || max_abs(h.entries() - h.entries().adjoint()) > kHermitianTolerance)
        non_hermitian += 1.0;
    }
    out.push_back(make_check("models.builders_hermitian", s, non_hermitian, 0.0, Relation::at_most));
  }

  {
    double worst = 0.0;
    double min_gap = std::numeric_limits<double>::infinity();
    for (int n = 0; n <= 400; ++n) {
      const AhmCoefficients c = ahm1_coefficients(n, p);
      const PairEigenvalues e = ahm1_eigenvalues(n, p);
      worst = std::max(worst, std::abs((e.plus - e.minus) - c.delta_n));
      min_gap = std::min(min_gap, e.plus - e.minus);
    }
    out.push_back(make_check("spectra.pair_splitting_equals_delta", s, worst, 1e-12));
    out.push_back(make_check("spectra.pair_splitting_positive", s, min_gap, 0.0, Relation::above));
  }
  {
    double min_low = 1.0, min_all = 1.0, rises = 0.0;
    double prev = 2.0;
    for (int n = 0; n <= 20; ++n) {
      const double a2 = std::pow(ahm1_coefficients(n, p).a_n, 2);
      if (n <= 6) min_low = std::min(min_low, a2);
      min_all = std::min(min_all, a2);
      if (a2 > prev) rises += 1.0;
      prev = a2;
    }
    out.push_back(make_check("spectra.a_squared_min_n_le_6", s, min_low, 0.99, Relation::at_least));
    out.push_back(make_check("spectra.a_squared_monotone_violations", s, rises, 0.0, Relation::at_most));
    out.push_back(make_check("spectra.a_squared_min_n_le_20", s, min_all, 0.95, Relation::above));
  }

  {
    const TimeGrid grid;
    double norm_err = 0.0, bound_violation = 0.0, start_err = 0.0;
    const auto track = [&](const SurvivalSeries& ser) {
      norm_err = std::max(norm_err, ser.max_norm_error);
      for (double v : ser.p)
        bound_violation = std::max({bound_violation, -v, v - 1.0 - 1e-10});
      start_err = std::max(start_err, std::abs(ser.p.front() - 1.0));
    };
    std::vector<Initial> states = {number_initial(0), number_initial(3), number_initial(6),
                                   number_initial(20), coherent_initial(2.0), coherent_initial(8.0)};
    for (double g : {0.05, 0.1}) {
      for (const Initial& init : states) {
        ModelParams q = with_cutoff(p, init.field.n_max());
        q.g = g;
        const SurvivalSeries exact = propagate(build_h1_explicit(q), init.field, grid, ModelTag::ahm1);
        const SurvivalSeries closed = survival_ahm1_analytic(init.field, q, grid);
        track(exact);
        track(closed);
        char name[96];
        std::snprintf(name, sizeof name, "dynamics.ahm1_oracle_%s_g%g", init.name.c_str(), g);
        out.push_back(make_check(name, s, max_deviation(exact.p, closed.p), 1e-8));
      }
    }
    out.push_back(make_check("dynamics.norm_conservation", s, norm_err, 1e-10));
    out.push_back(make_check("dynamics.series_bounds_violation", s, bound_violation, 0.0,
                             Relation::at_most));
    out.push_back(make_check("dynamics.series_start_at_one", s, start_err, 1e-10));

    const Initial coh = coherent_initial(2.0);
    const ModelParams q = with_cutoff(p, coh.field.n_max());
    const SignFlipUnitaries flips = sign_flip_unitaries(q);
    const Vector flipped = flips.parity_field.entries().bottomRightCorner(q.n_max + 1, q.n_max + 1) *
                           coh.field.amplitudes();
    const SurvivalSeries plus = propagate(build_rabi(q), coh.field, grid, ModelTag::rh);
    const SurvivalSeries minus =
        propagate(build_rabi(q.with_g(-q.g)), FieldState(flipped), grid, ModelTag::rh);
    out.push_back(make_check("dynamics.rabi_parity_invariance", s, max_deviation(plus.p, minus.p),
                             1e-12));
  }
  {
    double worst = 0.0;
    for (int n = 50; n <= 200; ++n) {
      const double gap = ahm1_eigenvalues(n + 2, p).plus - ahm1_eigenvalues(n, p).plus;
      worst = std::max(worst, std::abs(gap - 2.0 * p.omega) / (3.0 * p.g / std::sqrt(n + 1.0)));
    }
    out.push_back(make_check("dynamics.gap_asymptotics_ratio", s, worst, 1.0));
  }
  return out;
}

// ---- suite 1: algebraic identities -----------------------------------------

Checks identity_suite(const ModelParams& p) {
  Checks out;
  const int s = 1;
  const OperatorMatrix u = build_u(p);
  const Matrix& U = u.entries();
  const auto interior = [&p](const Matrix& m) { return interior_max_abs(m, p.n_max, p.guard); };

  out.push_back(make_check("transform.unitarity_interior", s,
                           interior(U.adjoint() * U - Matrix::Identity(U.rows(), U.cols())), 1e-10));
  out.push_back(make_check("transform.diagonalizes_jc", s,
                           interior(conjugate(u, build_jc(p)).entries() - build_jc_diag(p).entries()),
                           1e-10));
  out.push_back(make_check("transform.decomposition_complete", s,
                           interior(decompose_v(p).sum() - conjugate(u, build_v(p)).entries()), 1e-10));
  out.push_back(make_check(
      "transform.h1_explicit_vs_conjugation", s,
      interior(untransform(p, build_h1_tilde(p)).entries() - build_h1_explicit(p).entries()), 1e-10));
  out.push_back(make_check(
      "transform.h2_explicit_vs_conjugation", s,
      interior(untransform(p, build_h2_tilde(p)).entries() - build_h2_explicit(p).entries()), 1e-10));
  return out;
}

// ---- suite 2: closed-form spectra ------------------------------------------

double nearest_distance(const Eigen::VectorXd& sorted, double x) {
  const auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
  double best = std::numeric_limits<double>::infinity();
  if (it != sorted.end()) best = std::min(best, std::abs(*it - x));
  if (it != sorted.begin()) best = std::min(best, std::abs(*(it - 1) - x));
  return best;
}

// Eigenvalues (ascending) of the Hermitian 2x2 block on indices i, j.
std::pair<double, double> block_eigenvalues(const HamiltonianMatrix& h, Index i, Index j) {
  Eigen::Matrix2cd b;
  b << h(i, i), h(i, j), h(j, i), h(j, j);
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(b);
  return {es.eigenvalues()[0], es.eigenvalues()[1]};
}

Checks spectral_suite(const ModelParams& p) {
  Checks out;
  const int s = 2;
  const int top = std::min(150, largest_pair_index(p));
  const int N = p.n_max;

  for (Approx model : {Approx::h1, Approx::h2}) {
    const std::string tag = model == Approx::h1 ? "h1" : "h2";
    const HamiltonianMatrix h = model == Approx::h1 ? build_h1_explicit(p) : build_h2_explicit(p);
    double pair_res = 0.0, special_res = 0.0, spectrum_gap = 0.0;
    Eigen::SelfAdjointEigenSolver<Matrix> dense(h.entries(), Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& evals = dense.eigenvalues();
    for (int n = 0; n <= top; ++n) {
      const auto [minus, plus] = untransformed_pair_states(model, n, p);
      pair_res = std::max({pair_res, residual(h, minus), residual(h, plus)});
      spectrum_gap = std::max(
          {spectrum_gap, nearest_distance(evals, minus.value), nearest_distance(evals, plus.value)});
    }
    for (const EigenRecord& r : model == Approx::h1 ? ahm1_specials(p) : ahm2_specials(p)) {
      special_res = std::max(special_res, residual(h, r));
      spectrum_gap = std::max(spectrum_gap, nearest_distance(evals, r.value));
    }
    out.push_back(make_check("spectra." + tag + "_pair_residual_max", s, pair_res, 1e-10));
    out.push_back(make_check("spectra." + tag + "_special_residual_max", s, special_res, 1e-10));
    out.push_back(make_check("spectra." + tag + "_dense_spectrum_match", s, spectrum_gap, 1e-9));
  }

  double norm_dev = 0.0, coef_sym = 0.0, eval_sym = 0.0;
  for (int n = 0; n <= top; ++n) {
    for (const AhmCoefficients& c : {ahm1_coefficients(n, p), ahm2_coefficients(n, p)})
      norm_dev = std::max(norm_dev, std::abs(c.a_n * c.a_n + c.b_n * c.b_n - 1.0));
    const AhmCoefficients c2 = ahm2_coefficients(n, p);
    const AhmCoefficients c1m = ahm1_coefficients(n, p.with_g(-p.g));
    coef_sym = std::max({coef_sym, std::abs(c2.a_n - c1m.a_n), std::abs(c2.b_n - c1m.b_n)});
    const PairEigenvalues l = ahm2_eigenvalues(n, p);
    const PairEigenvalues km = ahm1_eigenvalues(n, p.with_g(-p.g));
    eval_sym = std::max({eval_sym, std::abs(l.minus - km.minus), std::abs(l.plus - km.plus)});
  }
  out.push_back(make_check("spectra.ab_normalization", s, norm_dev, 1e-14));
  out.push_back(make_check("spectra.h2_coefficient_symmetry", s, coef_sym, 1e-14));
  out.push_back(make_check("spectra.h2_eigenvalue_symmetry", s, eval_sym, 1e-14));

  // Independent route: dense 2x2 diagonalization of the dressed blocks.
  const HamiltonianMatrix t1 = build_h1_tilde(p);
  const HamiltonianMatrix t2 = build_h2_tilde(p);
  double block1 = 0.0, block2 = 0.0;
  for (int n = 0; n <= top; ++n) {
    const auto [a1, b1] =
        block_eigenvalues(t1, joint_index(Spin::up, n, N), joint_index(Spin::down, n + 3, N));
    const PairEigenvalues k = ahm1_eigenvalues(n, p);
    block1 = std::max({block1, std::abs(a1 - k.minus), std::abs(b1 - k.plus)});
    const auto [a2, b2] =
        block_eigenvalues(t2, joint_index(Spin::down, n + 1, N), joint_index(Spin::up, n + 2, N));
    const PairEigenvalues l = ahm2_eigenvalues(n, p);
    block2 = std::max({block2, std::abs(a2 - l.minus), std::abs(b2 - l.plus)});
  }
  {
    const auto [a, b] =
        block_eigenvalues(t2, joint_index(Spin::down, 0, N), joint_index(Spin::up, 1, N));
    const std::vector<EigenRecord> xi = ahm2_specials(p);
    block2 = std::max({block2, std::abs(a - xi[0].value), std::abs(b - xi[1].value),
                       std::abs(t2(joint_index(Spin::up, 0, N), joint_index(Spin::up, 0, N)).real() -
                                xi[2].value)});
  }
  out.push_back(make_check("spectra.h1_block_oracle", s, block1, 1e-12));
  out.push_back(make_check("spectra.h2_block_oracle", s, block2, 1e-12));
  return out;
}

// ---- suite 3: closed forms against propagation ------------------------------

Checks oracle_suite(const ModelParams& p) {
  Checks out;
  const int s = 3;
  const TimeGrid grid;
  for (const Initial& init : {number_initial(6), number_initial(20), coherent_initial(2.0),
                              coherent_initial(8.0)}) {
    const ModelParams q = with_cutoff(p, init.field.n_max());
    const SurvivalSeries h1 = propagate(build_h1_explicit(q), init.field, grid, ModelTag::ahm1);
    const SurvivalSeries closed = survival_ahm1_analytic(init.field, q, grid);
    out.push_back(make_check("dynamics.ahm1_analytic_vs_propagation_" + init.name, s,
                             max_deviation(h1.p, closed.p), 1e-8));
    const SurvivalSeries jc = propagate(build_jc(q), init.field, grid, ModelTag::jcm);
    const SurvivalSeries jcm = survival_jcm_analytic(init.field, q, grid);
    out.push_back(make_check("dynamics.jcm_analytic_vs_propagation_" + init.name, s,
                             max_deviation(jc.p, jcm.p), 1e-10));
  }
  return out;
}

// ---- suites 4-6: features of the survival curves ----------------------------

double peak_of(const SurvivalSeries& ser, double dt, double* bin = nullptr) {
  const signal::Spectrum sp = signal::windowed_spectrum(ser.p, dt);
  if (bin) *bin = sp.bin_width;
  return signal::dominant_frequency(sp);
}

Checks fig2_suite(const ModelParams& p) {
  Checks out;
  const int s = 4;
  const TimeGrid grid;
  const Initial init = number_initial(6);
  const ModelParams q = with_cutoff(p, init.field.n_max());
  const auto series =
      compare_models(init.field, q, grid, {ModelTag::rh, ModelTag::ahm1, ModelTag::jcm});
  const SurvivalSeries& rh = series[0];
  const SurvivalSeries& ahm1 = series[1];
  const SurvivalSeries& jcm = series[2];

  double bin = 0.0;
  const double f_rh = peak_of(rh, grid.dt());
  const double f_ahm1 = peak_of(ahm1, grid.dt());
  const double f_jcm = peak_of(jcm, grid.dt(), &bin);
  out.push_back(make_check("fig2.peak_rh_minus_ahm1", s, f_rh - f_ahm1, 0.0, Relation::above));
  out.push_back(make_check("fig2.peak_jcm_minus_rh", s, f_jcm - f_rh, 0.0, Relation::above));
  out.push_back(make_check("fig2.peak_jcm_vs_2g_sqrt7", s,
                           std::abs(f_jcm - 2.0 * q.g * std::sqrt(7.0)), bin, Relation::at_most));
  const double min_rh = *std::min_element(rh.p.begin(), rh.p.end());
  const double min_jcm = *std::min_element(jcm.p.begin(), jcm.p.end());
  out.push_back(make_check("fig2.min_p_rh_minus_min_p_jcm", s, min_rh - min_jcm, 0.01,
                           Relation::above));
  return out;
}

Checks fig4_suite(const ModelParams& p) {
  Checks out;
  const int s = 5;
  const TimeGrid grid;
  const Initial init = coherent_initial(2.0);
  const ModelParams q = with_cutoff(p, init.field.n_max());
  const auto series =
      compare_models(init.field, q, grid, {ModelTag::rh, ModelTag::ahm1, ModelTag::jcm});
  const double lo = 1.8 * q.omega, hi = 2.2 * q.omega;
  const auto power = [&](const SurvivalSeries& ser) {
    return signal::band_power(signal::windowed_spectrum(ser.p, grid.dt()), lo, hi);
  };
  const double p_rh = power(series[0]);
  const double p_ahm1 = power(series[1]);
  const double p_jcm = power(series[2]);
  out.push_back(make_check("fig4.band_power_ratio_ahm1_over_jcm", s, p_ahm1 / p_jcm, 10.0,
                           Relation::at_least));
  out.push_back(make_check("fig4.band_power_ratio_rh_over_jcm", s, p_rh / p_jcm, 10.0,
                           Relation::at_least));
  return out;
}

Checks fig5_suite(const ModelParams& p) {
  Checks out;
  const int s = 6;
  const double alpha = 8.0;
  const TimeGrid grid{0.0, 700.0, 14000};
  const Initial init = coherent_initial(alpha);
  const ModelParams q = with_cutoff(p, init.field.n_max());
  const auto series =
      compare_models(init.field, q, grid, {ModelTag::rh, ModelTag::ahm1, ModelTag::jcm});
  const double nbar = alpha * alpha;
  const double window = 2.0 * std::numbers::pi / (2.0 * q.g * std::sqrt(nbar + 1.0));
  const double threshold = 0.75;
  const double t_revival = 2.0 * std::numbers::pi * std::sqrt(nbar) / q.g;

  for (const SurvivalSeries* ser : {&series[0], &series[1]}) {
    const std::string tag = to_string(ser->model);
    const signal::RevivalReport r = signal::find_revivals(ser->times, ser->p, window, threshold);
    out.push_back(make_check("fig5." + tag + "_revival_count", s,
                             static_cast<double>(r.maxima_times.size()), 2.0, Relation::at_least));
    const double first_error = r.maxima_times.empty()
                                   ? std::numeric_limits<double>::infinity()
                                   : std::abs(r.maxima_times.front() - t_revival) / t_revival;
    out.push_back(make_check("fig5." + tag + "_first_revival_rel_error", s, first_error, 0.15,
                             Relation::at_most));
  }

  const SurvivalSeries& jcm = series[2];
  const signal::RevivalReport rj = signal::find_revivals(jcm.times, jcm.p, window, threshold);
  const double t_from = rj.collapse_time < 0.0 ? jcm.times.front() : rj.collapse_time;
  const double t_to = rj.maxima_times.empty() ? t_revival : rj.maxima_times.front();
  const signal::QuiescentWindow qj =
      signal::find_quiescent_window(jcm.times, jcm.p, 50.0, 0.05, t_from, t_to);
  out.push_back(make_check("fig5.JCM_quiescent_variation", s, qj.variation, 0.05));

  const SurvivalSeries& ahm1 = series[1];
  const signal::QuiescentWindow qa = signal::find_quiescent_window(
      ahm1.times, ahm1.p, 50.0, 0.0, ahm1.times.front(), ahm1.times.back());
  out.push_back(make_check("fig5.AHM1_min_variation_over_50", s, qa.variation, 0.05,
                           Relation::at_least));
  return out;
}

// ---- suite 7: symmetries -----------------------------------------------------

Checks symmetry_suite(const ModelParams& p) {
  Checks out;
  const int s = 7;
  {
    const TimeGrid grid;
    const Initial init = number_initial(6);
    const ModelParams q = with_cutoff(p, init.field.n_max());
    const SurvivalSeries h1 = propagate(build_h1_explicit(q), init.field, grid, ModelTag::ahm1);
    const SurvivalSeries h2 =
        propagate(build_h2_explicit(q.with_g(-q.g)), init.field, grid, ModelTag::ahm2);
    out.push_back(make_check("symmetry.h1_g_vs_h2_minus_g_propagated", s,
                             max_deviation(h1.p, h2.p), 1e-10));
    const SurvivalSeries a1 = survival_ahm1_analytic(init.field, q, grid);
    const SurvivalSeries a2 = survival_ahm2_analytic(init.field, q.with_g(-q.g), grid);
    out.push_back(make_check("symmetry.h1_g_vs_h2_minus_g_closed_form", s,
                             max_deviation(a1.p, a2.p), 1e-10));
  }
  {
    const ModelParams q = with_cutoff(p, 60);
    const SignFlipUnitaries flips = sign_flip_unitaries(q);
    double worst = 0.0;
    for (const OperatorMatrix* w : {&flips.parity_field, &flips.parity_spin}) {
      for (int which = 0; which < 2; ++which) {
        const HamiltonianMatrix h = which == 0 ? build_rabi(q) : build_jc(q);
        const HamiltonianMatrix hm = which == 0 ? build_rabi(q.with_g(-q.g)) : build_jc(q.with_g(-q.g));
        worst = std::max(worst, max_abs(conjugate(*w, h).entries() - hm.entries()));
      }
    }
    out.push_back(make_check("symmetry.parity_conjugations", s, worst, 1e-14));
  }
  {
    double approx_bad = 0.0, exact_bad = 0.0;
    for (double g : {0.01, 0.05, 0.1}) {
      const ModelParams q = p.with_g(g);
      for (int n = 0; n <= 400; ++n) {
        if (!(g * std::sqrt(n + 1.0) < 2.0 * q.omega)) continue;
        const Frequencies a = approx_frequencies(n, q);
        if (!(std::abs(a.w1) < std::abs(a.w3) && std::abs(a.w1) < std::abs(a.w2))) approx_bad += 1.0;
        if (!(g * std::sqrt(n + 3.0) < 2.0 * q.omega)) continue;
        for (int spin : {-1, 1}) {
          const Frequencies e = effective_frequencies(n, spin, q);
          if (!(std::abs(e.w1) < std::abs(e.w3) && std::abs(e.w1) < std::abs(e.w2))) exact_bad += 1.0;
        }
      }
    }
    out.push_back(make_check("transform.frequency_ordering_violations", s, approx_bad, 0.0,
                             Relation::at_most));
    out.push_back(make_check("transform.exact_frequency_ordering_violations", s, exact_bad, 0.0,
                             Relation::at_most));
  }
  return out;
}

}  // namespace

Check make_check(std::string name, int suite, double value, double threshold, Relation relation) {
  Check c{std::move(name), suite, value, threshold, relation, false};
  switch (relation) {
    case Relation::below: c.pass = value < threshold; break;
    case Relation::at_most: c.pass = value <= threshold; break;
    case Relation::above: c.pass = value > threshold; break;
    case Relation::at_least: c.pass = value >= threshold; break;
  }
  return c;
}

std::string suite_title(int suite) {
  switch (suite) {
    case 0: return "module invariants";
    case 1: return "algebraic identities";
    case 2: return "closed-form spectra";
    case 3: return "closed forms vs propagation";
    case 4: return "number state n=6";
    case 5: return "coherent state alpha=2";
    case 6: return "coherent state alpha=8, long times";
    case 7: return "symmetries";
  }
  throw InvalidArgument("unknown suite " + std::to_string(suite));
}

std::vector<Check> run_suite(int suite, const ModelParams& p) {
  p.validate();
  p.require_resonant("verify");
  switch (suite) {
    case 0: return module_invariants(p);
    case 1: return identity_suite(p);
    case 2: return spectral_suite(p);
    case 3: return oracle_suite(p);
    case 4: return fig2_suite(p);
    case 5: return fig4_suite(p);
    case 6: return fig5_suite(p);
    case 7: return symmetry_suite(p);
  }
  throw InvalidArgument("unknown suite " + std::to_string(suite) + " (expected 0..7)");
}

std::string format_check(const Check& c) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "CHECK %s value=%.6g threshold=%.6g %s", c.name.c_str(), c.value,
                c.threshold, c.pass ? "PASS" : "FAIL");
  return buf;
}

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

}  // namespace rabi::verify

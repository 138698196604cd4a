#include "rabi/dynamics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "rabi/models.hpp"

namespace rabi {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
constexpr double kBasisCaptureTolerance = 1e-10;

SurvivalSeries evaluate(const kernels::SpectralProblem& problem, const TimeGrid& grid,
                        ModelTag tag) {
  SurvivalSeries s;
  s.model = tag;
  s.times = grid.times();
  s.p.resize(s.times.size());
  std::vector<double> norm_error(s.times.size());
  kernels::omp::spectral_survival(problem, s.times, s.p, norm_error);
  s.max_norm_error = norm_error.empty() ? 0.0 : *std::max_element(norm_error.begin(), norm_error.end());
  return s;
}

SurvivalSeries evaluate(double base, const std::vector<kernels::Oscillator>& terms,
                        const TimeGrid& grid, ModelTag tag) {
  SurvivalSeries s;
  s.model = tag;
  s.times = grid.times();
  s.p.resize(s.times.size());
  kernels::omp::oscillator_sum(base, terms, s.times, s.p);
  return s;
}

Eigen::VectorXd spin_signs(int n_max) {
  Eigen::VectorXd s(2 * (n_max + 1));
  s.head(n_max + 1).setConstant(-1.0);
  s.tail(n_max + 1).setConstant(1.0);
  return s;
}

void require_interior_support(const FieldState& f, const ModelParams& p, const char* what) {
  const int top = p.interior_top() - 3;
  const double tail = f.weight_above(top);
  if (tail > kTailTolerance) {
    std::ostringstream msg;
    msg << what << ": field weight " << tail << " above n = " << top
        << " (n_max - guard - 3); raise n_max";
    throw UnsupportedFieldTail(msg.str());
  }
}

// Unchecked F-_n, F+_n for arbitrary A, B and amplitude lookup.
template <typename Amp>
PairOverlaps overlaps(double A, double B, int n, Amp amp) {
  return {kInvSqrt2 * (A * amp(n) - B * amp(n + 2)), kInvSqrt2 * (A * amp(n + 2) + B * amp(n))};
}

}  // namespace

std::string to_string(ModelTag tag) {
  switch (tag) {
    case ModelTag::rh: return "RH";
    case ModelTag::ahm1: return "AHM1";
    case ModelTag::ahm2: return "AHM2";
    case ModelTag::jcm: return "JCM";
  }
  return "?";
}

ModelTag parse_model_tag(const std::string& name) {
  std::string up;
  for (char c : name) up += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (ModelTag t : {ModelTag::rh, ModelTag::ahm1, ModelTag::ahm2, ModelTag::jcm})
    if (up == to_string(t)) return t;
  throw InvalidArgument("unknown model '" + name + "' (expected rh, ahm1, ahm2 or jcm)");
}

void TimeGrid::validate() const {
  if (!(t_start >= 0.0) || !(t_end > t_start) || steps < 2) {
    std::ostringstream msg;
    msg << "TimeGrid: need 0 <= t_start < t_end and steps >= 2 (got [" << t_start << ", "
        << t_end << "], steps=" << steps << ")";
    throw InvalidArgument(msg.str());
  }
}

std::vector<double> TimeGrid::times() const {
  validate();
  std::vector<double> t(steps + 1);
  const double h = dt();
  for (int i = 0; i <= steps; ++i) t[i] = t_start + i * h;
  t[steps] = t_end;
  return t;
}

SurvivalSeries propagate_survival(const HamiltonianMatrix& h, const JointState& psi0,
                                  const TimeGrid& grid, ModelTag tag) {
  if (h.dim() != psi0.dim()) throw DimensionError("propagate_survival: state/operator cutoff mismatch");
  if (!h.hermitian()) throw NonHermitianError("propagate_survival: Hamiltonian not Hermitian");
  grid.validate();

  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.entries());
  if (solver.info() != Eigen::Success)
    throw EigensolverError("propagate_survival: Hermitian eigensolver did not converge");

  kernels::SpectralProblem problem;
  problem.energies = solver.eigenvalues();
  problem.vectors = solver.eigenvectors();
  problem.coefficients = problem.vectors.adjoint() * psi0.amplitudes();
  problem.spin_sign = spin_signs(h.n_max());
  return evaluate(problem, grid, tag);
}

SurvivalSeries survival_from_eigenbasis(const std::vector<EigenRecord>& basis,
                                        const JointState& psi0, const TimeGrid& grid,
                                        ModelTag tag) {
  grid.validate();
  std::vector<std::size_t> active;
  std::vector<cplx> coeff;
  double captured = 0.0;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const cplx c = inner(basis[k].vector, psi0);
    if (c == cplx{0.0, 0.0}) continue;
    active.push_back(k);
    coeff.push_back(c);
    captured += std::norm(c);
  }
  if (captured < 1.0 - kBasisCaptureTolerance) {
    std::ostringstream msg;
    msg << "survival_from_eigenbasis: basis captures only " << captured
        << " of the initial state; raise n_max";
    throw UnsupportedFieldTail(msg.str());
  }

  const Eigen::Index K = static_cast<Eigen::Index>(active.size());
  kernels::SpectralProblem problem;
  problem.energies.resize(K);
  problem.coefficients.resize(K);
  problem.vectors.resize(psi0.dim(), K);
  for (Eigen::Index k = 0; k < K; ++k) {
    const EigenRecord& r = basis[active[k]];
    problem.energies[k] = r.value;
    problem.coefficients[k] = coeff[k];
    problem.vectors.col(k) = r.vector.amplitudes();
  }
  problem.spin_sign = spin_signs(psi0.n_max());
  return evaluate(problem, grid, tag);
}

SurvivalSeries survival_jcm_analytic(const FieldState& f, const ModelParams& p,
                                     const TimeGrid& grid) {
  p.require_resonant("survival_jcm_analytic");
  std::vector<kernels::Oscillator> terms;
  for (int n = 0; n <= f.n_max(); ++n) {
    const double w = std::norm(f.amplitude(n));
    if (w == 0.0) continue;
    terms.push_back({0.5 * w, 2.0 * p.g * std::sqrt(n + 1.0)});
  }
  return evaluate(0.5, terms, grid, ModelTag::jcm);
}

PairOverlaps overlaps_f(int n, const FieldState& f, const ModelParams& p) {
  if (n < 0 || n + 3 > p.interior_top()) {
    std::ostringstream msg;
    msg << "overlaps_f: n = " << n << " needs n + 3 <= n_max - guard = " << p.interior_top();
    throw CutoffError(msg.str());
  }
  const AhmCoefficients c = ahm1_coefficients(n, p);
  return overlaps(c.a_n, c.b_n, n, [&f](int k) { return f.amplitude(k); });
}

std::vector<kernels::Oscillator> ahm1_oscillators(const FieldState& f, const ModelParams& p) {
  p.require_resonant("ahm1_oscillators");
  const int top = f.n_max();
  const auto amp = [&f](int k) { return f.amplitude(k); };

  // Block data for n = 0 .. top + 2.
  std::vector<double> A(top + 3), B(top + 3), km(top + 3), kp(top + 3);
  std::vector<PairOverlaps> F(top + 3);
  for (int n = 0; n <= top + 2; ++n) {
    const AhmCoefficients c = ahm1_coefficients(n, p);
    const PairEigenvalues e = ahm1_eigenvalues(n, p);
    A[n] = c.a_n;
    B[n] = c.b_n;
    km[n] = e.minus;
    kp[n] = e.plus;
    F[n] = overlaps(c.a_n, c.b_n, n, amp);
  }

  std::vector<kernels::Oscillator> terms;
  const auto push = [&terms](cplx w, double freq) {
    if (w != cplx{0.0, 0.0}) terms.push_back({w, freq});
  };
  for (int n = 0; n <= top; ++n) {
    const PairOverlaps& lo = F[n];
    const PairOverlaps& hi = F[n + 2];
    push(A[n] * A[n + 2] * std::conj(hi.minus) * lo.plus, km[n + 2] - kp[n]);
    push(-B[n] * A[n + 2] * std::conj(hi.minus) * lo.minus, km[n + 2] - km[n]);
    push(A[n] * B[n + 2] * std::conj(hi.plus) * lo.plus, kp[n + 2] - kp[n]);
    push(-B[n] * B[n + 2] * std::conj(hi.plus) * lo.minus, kp[n + 2] - km[n]);
  }

  // chi1 overlaps |up, f> through <0|f>, chi2 through <1|f>.
  const double k1 = 0.5 * p.omega - p.g;
  const double k2 = 1.5 * p.omega - std::sqrt(2.0) * p.g;
  push(kInvSqrt2 * A[0] * amp(0) * std::conj(F[0].minus), km[0] - k1);
  push(kInvSqrt2 * B[0] * amp(0) * std::conj(F[0].plus), kp[0] - k1);
  push(kInvSqrt2 * A[1] * amp(1) * std::conj(F[1].minus), km[1] - k2);
  push(kInvSqrt2 * B[1] * amp(1) * std::conj(F[1].plus), kp[1] - k2);
  return terms;
}

SurvivalSeries survival_ahm1_analytic(const FieldState& f, const ModelParams& p,
                                      const TimeGrid& grid) {
  p.validate();
  p.require_resonant("survival_ahm1_analytic");
  require_interior_support(f, p, "survival_ahm1_analytic");
  return evaluate(0.5, ahm1_oscillators(f, p), grid, ModelTag::ahm1);
}

SurvivalSeries survival_ahm1_weak_coupling(const FieldState& f, const ModelParams& p,
                                           const TimeGrid& grid) {
  p.require_resonant("survival_ahm1_weak_coupling");
  // <n+2|f> is replaced by <n|f>, so the shifted lookup returns amp(k - 2).
  const auto shifted = [&f](int k) { return f.amplitude(k - 2); };
  std::vector<kernels::Oscillator> terms;
  for (int n = 0; n <= f.n_max(); ++n) {
    const PairOverlaps lo = overlaps(1.0, 0.0, n, shifted);
    const PairOverlaps hi = overlaps(1.0, 0.0, n + 2, shifted);
    const cplx w = std::conj(hi.minus) * lo.plus;
    if (w != cplx{0.0, 0.0}) terms.push_back({w, 2.0 * p.g * std::sqrt(n + 1.0)});
  }
  return evaluate(0.5, terms, grid, ModelTag::ahm1);
}

SurvivalSeries survival_ahm2_analytic(const FieldState& f, const ModelParams& p,
                                      const TimeGrid& grid) {
  p.validate();
  p.require_resonant("survival_ahm2_analytic");
  if (f.n_max() != p.n_max) throw DimensionError("survival_ahm2_analytic: f.n_max must equal p.n_max");
  require_interior_support(f, p, "survival_ahm2_analytic");
  return survival_from_eigenbasis(full_eigenbasis(Approx::h2, p), JointState::product(Spin::up, f),
                                  grid, ModelTag::ahm2);
}

std::vector<SurvivalSeries> compare_models(const FieldState& f, const ModelParams& p,
                                           const TimeGrid& grid, std::vector<ModelTag> models) {
  if (models.empty()) throw InvalidArgument("compare_models: empty model set");
  if (f.n_max() != p.n_max) throw DimensionError("compare_models: f.n_max must equal p.n_max");
  p.validate();
  grid.validate();
  std::sort(models.begin(), models.end());
  models.erase(std::unique(models.begin(), models.end()), models.end());

  std::vector<SurvivalSeries> out;
  for (ModelTag m : models) {
    switch (m) {
      case ModelTag::rh:
        out.push_back(propagate_survival(build_rabi(p), JointState::product(Spin::up, f), grid,
                                         ModelTag::rh));
        break;
      case ModelTag::ahm1: out.push_back(survival_ahm1_analytic(f, p, grid)); break;
      case ModelTag::ahm2: out.push_back(survival_ahm2_analytic(f, p, grid)); break;
      case ModelTag::jcm: out.push_back(survival_jcm_analytic(f, p, grid)); break;
    }
  }
  return out;
}

}  // namespace rabi

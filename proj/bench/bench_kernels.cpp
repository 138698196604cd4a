// Serial reference vs OpenMP kernels on realistic problem sizes:
// spectral propagation of |up, alpha> (Rabi matrix, alpha = 2 and 8) and the
// closed-form oscillator sum for the same states.

#include <benchmark/benchmark.h>

#include <vector>

#include "rabi/dynamics.hpp"
#include "rabi/kernels.hpp"

namespace {

struct Fixture {
  rabi::kernels::SpectralProblem problem;
  std::vector<rabi::kernels::Oscillator> terms;
  std::vector<double> times;
};

const Fixture& fixture(int alpha) {
  static Fixture f2, f8;
  Fixture& f = alpha == 2 ? f2 : f8;
  if (!f.times.empty()) return f;

  rabi::ModelParams p;
  p.n_max = rabi::default_cutoff_for_coherent({static_cast<double>(alpha), 0.0});
  const rabi::FieldState field = rabi::coherent_state({static_cast<double>(alpha), 0.0}, p.n_max);
  const rabi::JointState psi0 = rabi::JointState::product(rabi::Spin::up, field);

  Eigen::SelfAdjointEigenSolver<rabi::Matrix> es(rabi::build_rabi(p).entries());
  f.problem.energies = es.eigenvalues();
  f.problem.vectors = es.eigenvectors();
  f.problem.coefficients = f.problem.vectors.adjoint() * psi0.amplitudes();
  f.problem.spin_sign.resize(psi0.dim());
  f.problem.spin_sign.head(p.n_max + 1).setConstant(-1.0);
  f.problem.spin_sign.tail(p.n_max + 1).setConstant(1.0);

  f.terms = rabi::ahm1_oscillators(field, p);
  f.times = rabi::TimeGrid{0.0, 100.0, 4000}.times();
  return f;
}

template <auto Kernel>
void BM_spectral(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<int>(state.range(0)));
  std::vector<double> p(f.times.size()), err(f.times.size());
  for (auto _ : state) {
    Kernel(f.problem, f.times, p, err);
    benchmark::DoNotOptimize(p.data());
  }
  state.counters["dim"] = static_cast<double>(f.problem.vectors.rows());
  state.counters["threads"] = rabi::kernels::max_threads();
}

template <auto Kernel>
void BM_oscillators(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<int>(state.range(0)));
  std::vector<double> out(f.times.size());
  for (auto _ : state) {
    Kernel(0.5, f.terms, f.times, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.counters["terms"] = static_cast<double>(f.terms.size());
  state.counters["threads"] = rabi::kernels::max_threads();
}

}  // namespace

BENCHMARK(BM_spectral<rabi::kernels::serial::spectral_survival>)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_spectral<rabi::kernels::omp::spectral_survival>)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_oscillators<rabi::kernels::serial::oscillator_sum>)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_oscillators<rabi::kernels::omp::oscillator_sum>)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

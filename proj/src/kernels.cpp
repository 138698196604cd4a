#include "rabi/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <omp.h>

#include "rabi/errors.hpp"

namespace rabi::kernels {

namespace {

using cplx = std::complex<double>;

// Fixed so that results never depend on how many threads run the chunks.
constexpr Eigen::Index kTimeChunk = 32;

void check_sizes(const SpectralProblem& pr, std::size_t n_times, std::size_t n_p,
                 std::size_t n_err) {
  if (pr.vectors.cols() != pr.energies.size() || pr.coefficients.size() != pr.energies.size() ||
      pr.vectors.rows() != pr.spin_sign.size())
    throw DimensionError("spectral_survival: inconsistent problem dimensions");
  if (n_p != n_times || n_err != n_times)
    throw DimensionError("spectral_survival: output spans must match the time grid");
}

}  // namespace

namespace serial {

void spectral_survival(const SpectralProblem& pr, std::span<const double> times,
                       std::span<double> p, std::span<double> norm_error) {
  check_sizes(pr, times.size(), p.size(), norm_error.size());
  const Eigen::Index D = pr.vectors.rows();
  const Eigen::Index K = pr.vectors.cols();
  std::vector<cplx> phased(K);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    for (Eigen::Index k = 0; k < K; ++k)
      phased[k] = pr.coefficients[k] * std::polar(1.0, -pr.energies[k] * t);
    double sz = 0.0;
    double norm2 = 0.0;
    for (Eigen::Index r = 0; r < D; ++r) {
      cplx amp{0.0, 0.0};
      for (Eigen::Index k = 0; k < K; ++k) amp += pr.vectors(r, k) * phased[k];
      const double w = std::norm(amp);
      sz += pr.spin_sign[r] * w;
      norm2 += w;
    }
    p[i] = 0.5 * (1.0 + sz);
    norm_error[i] = std::abs(norm2 - 1.0);
  }
}

void oscillator_sum(double base, std::span<const Oscillator> terms,
                    std::span<const double> times, std::span<double> out) {
  if (out.size() != times.size())
    throw DimensionError("oscillator_sum: output span must match the time grid");
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    double s = base;
    for (const Oscillator& o : terms) {
      const double ph = o.frequency * t;
      s += o.weight.real() * std::cos(ph) - o.weight.imag() * std::sin(ph);
    }
    out[i] = s;
  }
}

}  // namespace serial

namespace omp {

void spectral_survival(const SpectralProblem& pr, std::span<const double> times,
                       std::span<double> p, std::span<double> norm_error) {
  check_sizes(pr, times.size(), p.size(), norm_error.size());
  const Eigen::Index D = pr.vectors.rows();
  const Eigen::Index K = pr.vectors.cols();
  const Eigen::Index T = static_cast<Eigen::Index>(times.size());
  const Eigen::Index chunks = (T + kTimeChunk - 1) / kTimeChunk;

#pragma omp parallel
  {
    Eigen::MatrixXcd phased(K, kTimeChunk);
    Eigen::MatrixXcd psi(D, kTimeChunk);
#pragma omp for schedule(static)
    for (Eigen::Index c = 0; c < chunks; ++c) {
      const Eigen::Index t0 = c * kTimeChunk;
      const Eigen::Index width = std::min(kTimeChunk, T - t0);
      for (Eigen::Index j = 0; j < width; ++j) {
        const double t = times[t0 + j];
        for (Eigen::Index k = 0; k < K; ++k)
          phased(k, j) = pr.coefficients[k] * std::polar(1.0, -pr.energies[k] * t);
      }
      psi.leftCols(width).noalias() = pr.vectors * phased.leftCols(width);
      for (Eigen::Index j = 0; j < width; ++j) {
        const auto weights = psi.col(j).cwiseAbs2();
        p[t0 + j] = 0.5 * (1.0 + pr.spin_sign.dot(weights));
        norm_error[t0 + j] = std::abs(weights.sum() - 1.0);
      }
    }
  }
}

void oscillator_sum(double base, std::span<const Oscillator> terms,
                    std::span<const double> times, std::span<double> out) {
  if (out.size() != times.size())
    throw DimensionError("oscillator_sum: output span must match the time grid");
  const std::ptrdiff_t T = static_cast<std::ptrdiff_t>(times.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < T; ++i) {
    const double t = times[i];
    double s = base;
    for (const Oscillator& o : terms) {
      const double ph = o.frequency * t;
      s += o.weight.real() * std::cos(ph) - o.weight.imag() * std::sin(ph);
    }
    out[i] = s;
  }
}

}  // namespace omp

int max_threads() { return omp_get_max_threads(); }

}  // namespace rabi::kernels

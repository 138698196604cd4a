#pragma once

// Time-grid kernels behind every survival series.
//
// Each kernel exists twice: `serial` is a plain scalar loop kept as the
// reference, `omp` is the OpenMP/vectorized version used in production.
// Grid points are independent, so both produce one value per time with no
// cross-point reduction; the omp results do not depend on the thread count.

#include <complex>
#include <span>

#include <Eigen/Dense>

namespace rabi::kernels {

/// Spectral resolution of an initial state:
/// psi(t) = sum_k coefficients[k] e^{-i energies[k] t} vectors.col(k).
struct SpectralProblem {
  Eigen::VectorXd energies;   ///< K
  Eigen::MatrixXcd vectors;   ///< D x K, orthonormal columns
  Eigen::VectorXcd coefficients;  ///< K
  Eigen::VectorXd spin_sign;  ///< D, diagonal of sz (x) 1: -1 on |down, n>, +1 on |up, n>
};

/// One term Re(weight * exp(i frequency t)).
struct Oscillator {
  std::complex<double> weight;
  double frequency;
};

namespace serial {

/// p[i] = (1 + <psi(t_i)| sz |psi(t_i)>) / 2, norm_error[i] = | ||psi(t_i)||^2 - 1 |
void spectral_survival(const SpectralProblem& problem, std::span<const double> times,
                       std::span<double> p, std::span<double> norm_error);

/// out[i] = base + sum_j Re(terms[j].weight * exp(i terms[j].frequency t_i))
void oscillator_sum(double base, std::span<const Oscillator> terms,
                    std::span<const double> times, std::span<double> out);

}  // namespace serial

namespace omp {

void spectral_survival(const SpectralProblem& problem, std::span<const double> times,
                       std::span<double> p, std::span<double> norm_error);

void oscillator_sum(double base, std::span<const Oscillator> terms,
                    std::span<const double> times, std::span<double> out);

}  // namespace omp

/// Number of OpenMP threads the omp kernels will use.
int max_threads();

}  // namespace rabi::kernels

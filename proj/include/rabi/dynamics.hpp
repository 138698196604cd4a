#pragma once

// Excited-state survival probability P(t) = (1 + <sz(t)>)/2 for initial
// states |up, f>: exact propagation by diagonalization, and the closed forms
// for the resonant JC model and the approximating Hamiltonians.

#include <optional>
#include <string>
#include <vector>

#include "rabi/kernels.hpp"
#include "rabi/spectra.hpp"

namespace rabi {

enum class ModelTag { rh, ahm1, ahm2, jcm };

/// "RH", "AHM1", "AHM2", "JCM"
std::string to_string(ModelTag tag);
/// Case-insensitive; throws InvalidArgument for unknown names.
ModelTag parse_model_tag(const std::string& name);

/// Uniform grid in units of 1/omega; `steps` intervals, steps + 1 points.
struct TimeGrid {
  double t_start = 0.0;
  double t_end = 100.0;
  int steps = 4000;

  void validate() const;
  std::vector<double> times() const;
  double dt() const { return (t_end - t_start) / steps; }
};

struct SurvivalSeries {
  ModelTag model = ModelTag::rh;
  std::vector<double> times;
  std::vector<double> p;
  double max_norm_error = 0.0;  ///< max_t | ||psi(t)||^2 - 1 |, zero for pure closed forms
};

/// Diagonalizes h once and evolves psi0 spectrally. Throws NonHermitianError,
/// EigensolverError, DimensionError.
SurvivalSeries propagate_survival(const HamiltonianMatrix& h, const JointState& psi0,
                                  const TimeGrid& grid, ModelTag tag = ModelTag::rh);

/// Spectral evolution of psi0 in a closed-form eigenbasis. Throws
/// UnsupportedFieldTail when the basis captures less than 1 - 1e-10 of psi0.
SurvivalSeries survival_from_eigenbasis(const std::vector<EigenRecord>& basis,
                                        const JointState& psi0, const TimeGrid& grid,
                                        ModelTag tag);

/// (1 + sum_n |<n|f>|^2 cos(2 g sqrt(n+1) t)) / 2
SurvivalSeries survival_jcm_analytic(const FieldState& f, const ModelParams& p,
                                     const TimeGrid& grid);

struct PairOverlaps {
  std::complex<double> minus;  ///< <phi-_n | up, f>
  std::complex<double> plus;   ///< <phi+_n | up, f>
};

/// F-_n = (A_n <n|f> - B_n <n+2|f>)/sqrt2, F+_n = (A_n <n+2|f> + B_n <n|f>)/sqrt2.
/// Requires n + 3 <= n_max - guard.
PairOverlaps overlaps_f(int n, const FieldState& f, const ModelParams& p);

/// Closed-form P(t) for H1 as a sum of oscillators (four per block plus the
/// bracket from the two special states that overlap |up, f>).
std::vector<kernels::Oscillator> ahm1_oscillators(const FieldState& f, const ModelParams& p);

/// Requires f supported on n <= n_max - guard - 3 (to 1e-12), else UnsupportedFieldTail.
SurvivalSeries survival_ahm1_analytic(const FieldState& f, const ModelParams& p,
                                      const TimeGrid& grid);

/// The H1 sum with A_n -> 1, B_n -> 0, <n+2|f> -> <n|f>, the block frequency
/// kappa-_{n+2} - kappa+_n -> 2 g sqrt(n+1) and the special bracket dropped.
/// This collapses onto the resonant JC closed form.
SurvivalSeries survival_ahm1_weak_coupling(const FieldState& f, const ModelParams& p,
                                           const TimeGrid& grid);

/// Spectral resolution of |up, f> over the closed-form H2 eigenbasis.
SurvivalSeries survival_ahm2_analytic(const FieldState& f, const ModelParams& p,
                                      const TimeGrid& grid);

/// One series per requested model, in the order RH, AHM1, AHM2, JCM.
/// RH always comes from propagating the full Rabi matrix. f.n_max() must
/// equal p.n_max.
std::vector<SurvivalSeries> compare_models(const FieldState& f, const ModelParams& p,
                                           const TimeGrid& grid, std::vector<ModelTag> models);

}  // namespace rabi

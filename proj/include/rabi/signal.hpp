#pragma once

// Feature extraction from sampled P(t): dominant oscillation frequency,
// band power, revival maxima and quiescent windows.

#include <span>
#include <vector>

namespace rabi::signal {

/// One-sided power spectrum of (x - mean(x)) * Hann window, zero-padded to
/// pad * N samples. Frequencies are angular (rad per unit time).
struct Spectrum {
  std::vector<double> omega;
  std::vector<double> magnitude;
  double bin_width = 0.0;  ///< unpadded resolution 2 pi / (N dt)
};

Spectrum windowed_spectrum(std::span<const double> samples, double dt, int pad = 8);

/// Location of the largest non-DC peak, refined by a parabola through the
/// peak bin and its two neighbours.
double dominant_frequency(const Spectrum& s);

/// sum of magnitude^2 over bins with lo <= omega <= hi
double band_power(const Spectrum& s, double lo, double hi);

/// Sliding max / min / mean over [i - half, i + half], clipped at the ends.
std::vector<double> running_max(std::span<const double> x, int half);
std::vector<double> running_min(std::span<const double> x, int half);
std::vector<double> moving_average(std::span<const double> x, int half);

/// Upper envelope (running max over `window` time units) smoothed by a moving
/// average of the same width.
std::vector<double> smoothed_envelope(std::span<const double> p, double dt, double window);

struct RevivalReport {
  double collapse_time = -1.0;        ///< first time the envelope drops below threshold; -1 if never
  std::vector<double> maxima_times;   ///< local envelope maxima above threshold after the collapse
  std::vector<double> maxima_values;
};

/// Local maxima of the smoothed envelope that exceed `threshold` after the
/// envelope first falls below it. A maximum must dominate a +-window
/// neighbourhood.
RevivalReport find_revivals(std::span<const double> times, std::span<const double> p,
                            double window, double threshold);

struct QuiescentWindow {
  bool found = false;
  double start = 0.0;
  double end = 0.0;
  double variation = 0.0;  ///< max(P) - min(P) over the window (smallest seen if not found)
};

/// First window of length >= min_span inside [t_from, t_to] over which P(t)
/// stays inside a band narrower than max_variation.
QuiescentWindow find_quiescent_window(std::span<const double> times, std::span<const double> p,
                                      double min_span, double max_variation, double t_from,
                                      double t_to);

}  // namespace rabi::signal

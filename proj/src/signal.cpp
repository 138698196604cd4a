#include "rabi/signal.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>

#include <fftw3.h>

#include "rabi/errors.hpp"

namespace rabi::signal {

namespace {

// The FFTW planner is not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
struct PlanDestroy {
  void operator()(fftw_plan_s* p) const {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};

template <typename Better>
std::vector<double> running_extreme(std::span<const double> x, int half, Better better) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
  std::vector<double> out(x.size());
  std::deque<std::ptrdiff_t> q;
  std::ptrdiff_t next = 0;  // next index to enter the window
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const std::ptrdiff_t hi = std::min(n - 1, i + half);
    for (; next <= hi; ++next) {
      while (!q.empty() && !better(x[q.back()], x[next])) q.pop_back();
      q.push_back(next);
    }
    while (q.front() < i - half) q.pop_front();
    out[i] = x[q.front()];
  }
  return out;
}

}  // namespace

Spectrum windowed_spectrum(std::span<const double> samples, double dt, int pad) {
  const std::size_t n = samples.size();
  if (n < 4) throw InvalidArgument("windowed_spectrum: need at least 4 samples");
  if (pad < 1) throw InvalidArgument("windowed_spectrum: pad must be >= 1");
  const std::size_t m = n * static_cast<std::size_t>(pad);
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;

  std::unique_ptr<double, FftwFree> in(static_cast<double*>(fftw_malloc(sizeof(double) * m)));
  std::unique_ptr<fftw_complex, FftwFree> out(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (m / 2 + 1))));
  std::unique_ptr<fftw_plan_s, PlanDestroy> plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_r2c_1d(static_cast<int>(m), in.get(), out.get(), FFTW_ESTIMATE));
  }

  for (std::size_t k = 0; k < m; ++k) {
    if (k < n) {
      const double w = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * k / (n - 1)));
      in.get()[k] = (samples[k] - mean) * w;
    } else {
      in.get()[k] = 0.0;
    }
  }
  fftw_execute(plan.get());

  Spectrum s;
  const double dw = 2.0 * std::numbers::pi / (m * dt);
  s.bin_width = 2.0 * std::numbers::pi / (n * dt);
  s.omega.resize(m / 2 + 1);
  s.magnitude.resize(m / 2 + 1);
  for (std::size_t k = 0; k <= m / 2; ++k) {
    s.omega[k] = k * dw;
    s.magnitude[k] = std::hypot(out.get()[k][0], out.get()[k][1]);
  }
  return s;
}

double dominant_frequency(const Spectrum& s) {
  const std::size_t n = s.magnitude.size();
  if (n < 4) throw InvalidArgument("dominant_frequency: spectrum too short");
  std::size_t best = 1;
  for (std::size_t k = 2; k + 1 < n; ++k)
    if (s.magnitude[k] > s.magnitude[best]) best = k;
  if (best == 0 || best + 1 >= n) return s.omega[best];
  const double y0 = s.magnitude[best - 1];
  const double y1 = s.magnitude[best];
  const double y2 = s.magnitude[best + 1];
  const double denom = y0 - 2.0 * y1 + y2;
  const double shift = denom == 0.0 ? 0.0 : 0.5 * (y0 - y2) / denom;
  return s.omega[best] + shift * (s.omega[1] - s.omega[0]);
}

double band_power(const Spectrum& s, double lo, double hi) {
  double total = 0.0;
  for (std::size_t k = 0; k < s.omega.size(); ++k)
    if (s.omega[k] >= lo && s.omega[k] <= hi) total += s.magnitude[k] * s.magnitude[k];
  return total;
}

std::vector<double> running_max(std::span<const double> x, int half) {
  return running_extreme(x, half, [](double kept, double incoming) { return kept > incoming; });
}

std::vector<double> running_min(std::span<const double> x, int half) {
  return running_extreme(x, half, [](double kept, double incoming) { return kept < incoming; });
}

std::vector<double> moving_average(std::span<const double> x, int half) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
  std::vector<double> prefix(x.size() + 1, 0.0);
  for (std::ptrdiff_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + x[i];
  std::vector<double> out(x.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - half);
    const std::ptrdiff_t hi = std::min(n - 1, i + half);
    out[i] = (prefix[hi + 1] - prefix[lo]) / static_cast<double>(hi - lo + 1);
  }
  return out;
}

std::vector<double> smoothed_envelope(std::span<const double> p, double dt, double window) {
  const int half = std::max(1, static_cast<int>(std::lround(0.5 * window / dt)));
  const std::vector<double> upper = running_max(p, half);
  return moving_average(upper, half);
}

RevivalReport find_revivals(std::span<const double> times, std::span<const double> p,
                            double window, double threshold) {
  if (times.size() != p.size() || times.size() < 3)
    throw InvalidArgument("find_revivals: times and samples must match (>= 3 points)");
  const double dt = times[1] - times[0];
  const std::vector<double> env = smoothed_envelope(p, dt, window);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(env.size());
  const std::ptrdiff_t half = std::max<std::ptrdiff_t>(1, std::lround(window / dt));

  RevivalReport r;
  std::ptrdiff_t start = 0;
  while (start < n && env[start] >= threshold) ++start;
  if (start == n) return r;
  r.collapse_time = times[start];

  for (std::ptrdiff_t i = std::max(start, half); i + half < n; ++i) {
    if (env[i] <= threshold || env[i] <= env[i - 1]) continue;
    bool dominates = true;
    for (std::ptrdiff_t j = i - half; j <= i + half && dominates; ++j)
      if (env[j] > env[i]) dominates = false;
    if (!dominates) continue;
    r.maxima_times.push_back(times[i]);
    r.maxima_values.push_back(env[i]);
  }
  return r;
}

QuiescentWindow find_quiescent_window(std::span<const double> times, std::span<const double> p,
                                      double min_span, double max_variation, double t_from,
                                      double t_to) {
  if (times.size() != p.size() || times.size() < 2)
    throw InvalidArgument("find_quiescent_window: times and samples must match");
  const double dt = times[1] - times[0];
  const std::ptrdiff_t len = static_cast<std::ptrdiff_t>(std::ceil(min_span / dt - 1e-9));
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(p.size());

  QuiescentWindow w;
  w.variation = std::numeric_limits<double>::infinity();
  std::deque<std::ptrdiff_t> qmax, qmin;
  std::ptrdiff_t lo = 0;
  for (std::ptrdiff_t hi = 0; hi < n; ++hi) {
    while (!qmax.empty() && p[qmax.back()] <= p[hi]) qmax.pop_back();
    qmax.push_back(hi);
    while (!qmin.empty() && p[qmin.back()] >= p[hi]) qmin.pop_back();
    qmin.push_back(hi);
    lo = hi - len;
    if (lo < 0) continue;
    while (qmax.front() < lo) qmax.pop_front();
    while (qmin.front() < lo) qmin.pop_front();
    if (times[lo] < t_from || times[hi] > t_to) continue;
    const double var = p[qmax.front()] - p[qmin.front()];
    if (var < w.variation) {
      w.variation = var;
      w.start = times[lo];
      w.end = times[hi];
    }
    if (var < max_variation) {
      w.found = true;
      return w;
    }
  }
  return w;
}

}  // namespace rabi::signal

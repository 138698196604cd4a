#include "rabi/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numeric>
#include <optional>
#include <sstream>

namespace rabi {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

struct Component {
  Spin s;
  int n;
  double amp;
};

JointState assemble(std::initializer_list<Component> parts, int n_max) {
  Vector v = Vector::Zero(2 * (n_max + 1));
  for (const Component& c : parts) v[joint_index(c.s, c.n, n_max)] += c.amp;
  return JointState(std::move(v));
}

EigenRecord make_record(EigenLabel label, double value,
                        std::vector<std::pair<Index, double>> dressed, JointState bare) {
  return EigenRecord{label, value, std::move(dressed), std::move(bare)};
}

void require_pair_fits(int n, const ModelParams& p) {
  if (n < 0 || n + 3 > p.interior_top()) {
    std::ostringstream msg;
    msg << "pair index n = " << n << " needs n + 3 <= n_max - guard = " << p.interior_top();
    throw CutoffError(msg.str());
  }
}

}  // namespace

std::string EigenLabel::str() const {
  const bool h1 = model == Approx::h1;
  switch (kind) {
    case Kind::pair_minus:
      return std::string(h1 ? "phi-(" : "psi-(") + std::to_string(index) + ")";
    case Kind::pair_plus:
      return std::string(h1 ? "phi+(" : "psi+(") + std::to_string(index) + ")";
    case Kind::special:
      if (h1) return "chi" + std::to_string(index);
      return index == 0 ? "xi-" : index == 1 ? "xi+" : "xi0";
  }
  return "?";
}

AhmCoefficients ahm1_coefficients(int n, const ModelParams& p) {
  p.require_resonant("ahm1_coefficients");
  if (n < 0) throw InvalidArgument("ahm1_coefficients: n must be non-negative");
  AhmCoefficients c;
  c.n = n;
  c.mu_n = p.g * std::sqrt(n + 2.0);
  c.eta_n = 2.0 * p.omega - p.g * (std::sqrt(n + 1.0) + std::sqrt(n + 3.0));
  c.delta_n = std::hypot(c.mu_n, c.eta_n);
  if (c.eta_n >= 0.0) {
    c.alpha_n = c.mu_n / (c.delta_n + c.eta_n);
  } else if (c.mu_n != 0.0) {
    // (Delta - eta)/mu avoids the cancellation in Delta + eta when eta < 0.
    c.alpha_n = (c.delta_n - c.eta_n) / c.mu_n;
  } else {
    std::ostringstream msg;
    msg << "ahm1_coefficients: degenerate block at n = " << n << " (mu = 0, eta = " << c.eta_n
        << ")";
    throw DegenerateBranchError(msg.str());
  }
  const double root = std::sqrt(1.0 + c.alpha_n * c.alpha_n);
  c.a_n = 1.0 / root;
  c.b_n = c.alpha_n / root;
  return c;
}

PairEigenvalues ahm1_eigenvalues(int n, const ModelParams& p) {
  const AhmCoefficients c = ahm1_coefficients(n, p);
  const double centre =
      (2.0 * n + 3.0) * p.omega + p.g * (std::sqrt(n + 1.0) - std::sqrt(n + 3.0));
  return {0.5 * (centre - c.delta_n), 0.5 * (centre + c.delta_n)};
}

AhmCoefficients ahm2_coefficients(int n, const ModelParams& p) {
  return ahm1_coefficients(n, p.with_g(-p.g));
}

PairEigenvalues ahm2_eigenvalues(int n, const ModelParams& p) {
  return ahm1_eigenvalues(n, p.with_g(-p.g));
}

std::vector<EigenRecord> ahm1_specials(const ModelParams& p) {
  p.validate();
  p.require_resonant("ahm1_specials");
  const int N = p.n_max;
  const double w = p.omega;
  const double g = p.g;
  using K = EigenLabel::Kind;
  std::vector<EigenRecord> out;
  out.push_back(make_record({Approx::h1, K::special, 0}, -0.5 * w,
                            {{joint_index(Spin::down, 0, N), 1.0}},
                            assemble({{Spin::down, 0, 1.0}}, N)));
  out.push_back(make_record({Approx::h1, K::special, 1}, 0.5 * w - g,
                            {{joint_index(Spin::down, 1, N), 1.0}},
                            assemble({{Spin::down, 1, kInvSqrt2}, {Spin::up, 0, -kInvSqrt2}}, N)));
  out.push_back(make_record({Approx::h1, K::special, 2}, 1.5 * w - std::sqrt(2.0) * g,
                            {{joint_index(Spin::down, 2, N), 1.0}},
                            assemble({{Spin::down, 2, kInvSqrt2}, {Spin::up, 1, -kInvSqrt2}}, N)));
  return out;
}

H2SpecialCoefficients ahm2_special_coefficients(const ModelParams& p) {
  p.require_resonant("ahm2_special_coefficients");
  const double w = p.omega;
  const double g = p.g;
  H2SpecialCoefficients c{};
  c.epsilon = std::sqrt(g * g + std::sqrt(2.0) * g * w + w * w);
  c.gamma = -g / (g + std::sqrt(2.0) * (w + c.epsilon));
  const double root = std::sqrt(1.0 + c.gamma * c.gamma);
  c.c = 1.0 / root;
  c.d = c.gamma / root;
  return c;
}

std::vector<EigenRecord> ahm2_specials(const ModelParams& p) {
  p.validate();
  const H2SpecialCoefficients k = ahm2_special_coefficients(p);
  const int N = p.n_max;
  const double w = p.omega;
  const double g = p.g;
  const double base = w + std::sqrt(2.0) * g;
  using K = EigenLabel::Kind;
  const Index dn0 = joint_index(Spin::down, 0, N);
  const Index up1 = joint_index(Spin::up, 1, N);
  std::vector<EigenRecord> out;
  out.push_back(make_record(
      {Approx::h2, K::special, 0}, 0.5 * (base - 2.0 * k.epsilon), {{dn0, k.c}, {up1, k.d}},
      assemble({{Spin::down, 0, k.c},
                {Spin::down, 2, k.d * kInvSqrt2},
                {Spin::up, 1, k.d * kInvSqrt2}},
               N)));
  out.push_back(make_record(
      {Approx::h2, K::special, 1}, 0.5 * (base + 2.0 * k.epsilon), {{dn0, k.d}, {up1, -k.c}},
      assemble({{Spin::down, 0, k.d},
                {Spin::down, 2, -k.c * kInvSqrt2},
                {Spin::up, 1, -k.c * kInvSqrt2}},
               N)));
  out.push_back(make_record({Approx::h2, K::special, 2}, 0.5 * w + g,
                            {{joint_index(Spin::up, 0, N), 1.0}},
                            assemble({{Spin::down, 1, kInvSqrt2}, {Spin::up, 0, kInvSqrt2}}, N)));
  return out;
}

std::pair<EigenRecord, EigenRecord> untransformed_pair_states(Approx model, int n,
                                                              const ModelParams& p) {
  p.validate();
  require_pair_fits(n, p);
  const int N = p.n_max;
  const double r = kInvSqrt2;
  using K = EigenLabel::Kind;

  if (model == Approx::h1) {
    const AhmCoefficients c = ahm1_coefficients(n, p);
    const PairEigenvalues e = ahm1_eigenvalues(n, p);
    const double A = c.a_n;
    const double B = c.b_n;
    const Index up_n = joint_index(Spin::up, n, N);
    const Index dn_n3 = joint_index(Spin::down, n + 3, N);
    EigenRecord minus = make_record(
        {Approx::h1, K::pair_minus, n}, e.minus, {{up_n, A}, {dn_n3, B}},
        assemble({{Spin::down, n + 1, r * A},
                  {Spin::down, n + 3, r * B},
                  {Spin::up, n + 2, -r * B},
                  {Spin::up, n, r * A}},
                 N));
    EigenRecord plus = make_record(
        {Approx::h1, K::pair_plus, n}, e.plus, {{up_n, B}, {dn_n3, -A}},
        assemble({{Spin::down, n + 1, r * B},
                  {Spin::down, n + 3, -r * A},
                  {Spin::up, n + 2, r * A},
                  {Spin::up, n, r * B}},
                 N));
    return {std::move(minus), std::move(plus)};
  }

  const AhmCoefficients c = ahm2_coefficients(n, p);
  const PairEigenvalues e = ahm2_eigenvalues(n, p);
  const double C = c.a_n;
  const double D = c.b_n;
  const Index dn_n1 = joint_index(Spin::down, n + 1, N);
  const Index up_n2 = joint_index(Spin::up, n + 2, N);
  EigenRecord minus = make_record(
      {Approx::h2, K::pair_minus, n}, e.minus, {{dn_n1, C}, {up_n2, D}},
      assemble({{Spin::down, n + 1, r * C},
                {Spin::down, n + 3, r * D},
                {Spin::up, n + 2, r * D},
                {Spin::up, n, -r * C}},
               N));
  EigenRecord plus = make_record(
      {Approx::h2, K::pair_plus, n}, e.plus, {{dn_n1, D}, {up_n2, -C}},
      assemble({{Spin::down, n + 1, r * D},
                {Spin::down, n + 3, -r * C},
                {Spin::up, n + 2, -r * C},
                {Spin::up, n, -r * D}},
               N));
  return {std::move(minus), std::move(plus)};
}

int largest_pair_index(const ModelParams& p) { return p.interior_top() - 3; }

std::vector<EigenRecord> full_eigenbasis(Approx model, const ModelParams& p) {
  p.validate();
  p.require_resonant("full_eigenbasis");
  const int top = largest_pair_index(p);
  const int count = std::max(top + 1, 0);
  std::vector<std::optional<std::pair<EigenRecord, EigenRecord>>> pairs(count);

  // Any exception inside the parallel region is captured and rethrown after it.
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (int n = 0; n < count; ++n) {
    try {
      pairs[n] = untransformed_pair_states(model, n, p);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<EigenRecord> out;
  out.reserve(2 * count + 3);
  for (auto& pr : pairs) {
    out.push_back(std::move(pr->first));
    out.push_back(std::move(pr->second));
  }
  for (EigenRecord& r : model == Approx::h1 ? ahm1_specials(p) : ahm2_specials(p))
    out.push_back(std::move(r));
  return out;
}

double residual(const HamiltonianMatrix& h, const EigenRecord& r) {
  if (h.dim() != r.vector.dim()) throw DimensionError("residual: cutoff mismatch");
  const Vector& v = r.vector.amplitudes();
  return (h.entries() * v - r.value * v).norm();
}

std::string format_spectrum(const std::vector<EigenRecord>& records,
                            const std::vector<double>& residuals) {
  if (residuals.size() != records.size())
    throw InvalidArgument("format_spectrum: one residual per record expected");
  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return records[a].value < records[b].value;
  });

  std::string out;
  char buf[64];
  for (std::size_t i : order) {
    const EigenRecord& r = records[i];
    out += r.label.str();
    std::snprintf(buf, sizeof buf, " E=%.12g residual=%.3e components=", r.value, residuals[i]);
    out += buf;
    const int N = r.vector.n_max();
    bool first = true;
    for (Spin s : {Spin::down, Spin::up})
      for (int n = 0; n <= N; ++n) {
        const double amp = r.vector.amplitude(s, n).real();
        if (amp == 0.0) continue;
        std::snprintf(buf, sizeof buf, "%s%s|%d:%.12g", first ? "" : ",",
                      s == Spin::down ? "dn" : "up", n, amp);
        out += buf;
        first = false;
      }
    out += '\n';
  }
  return out;
}

}  // namespace rabi

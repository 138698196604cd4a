#pragma once

#include <complex>

#include "rabi/fock.hpp"

namespace rabi {

/// Physical parameters (hbar = 1) plus truncation controls.
struct ModelParams {
  double omega = 1.0;  ///< atomic transition frequency
  double nu = 1.0;     ///< field mode frequency
  double g = 0.1;      ///< coupling constant
  int n_max = 200;     ///< Fock cutoff
  int guard = 5;       ///< identities near the cutoff are only asserted for n <= n_max - guard

  /// omega > 0, guard >= 0, n_max >= guard + 4. Throws InvalidArgument.
  void validate() const;

  bool resonant() const { return nu == omega; }

  /// Throws UnsupportedConfiguration off resonance; the closed forms need nu == omega.
  void require_resonant(const char* what) const;

  int interior_top() const { return n_max - guard; }

  ModelParams with_g(double new_g) const {
    ModelParams p = *this;
    p.g = new_g;
    return p;
  }
};

/// n0 + 40
int default_cutoff_for_number(int n0);
/// ceil(|alpha|^2 + 10|alpha| + 20)
int default_cutoff_for_coherent(std::complex<double> alpha);

/// (omega/2) sz + nu a^dag a + g (s+ + s-)(a + a^dag). nu may differ from omega.
HamiltonianMatrix build_rabi(const ModelParams& p);
/// (omega/2) sz + nu a^dag a + g (s+ a + s- a^dag)
HamiltonianMatrix build_jc(const ModelParams& p);
/// Counter-rotating part g (s+ a^dag + s- a).
HamiltonianMatrix build_v(const ModelParams& p);

/// Diagonal JC spectrum in the dressed basis:
/// (omega/2) s + omega n + (g/2)((s+1) sqrt(n+1) + (s-1) sqrt(n)) at |s, n>.
HamiltonianMatrix build_jc_diag(const ModelParams& p);

/// Approximating Hamiltonians written directly as H_JC plus multi-photon
/// correction terms in the bare basis. Deliberately independent of the
/// transform module so they can serve as an oracle for U^dag H~ U.
HamiltonianMatrix build_h1_explicit(const ModelParams& p);
HamiltonianMatrix build_h2_explicit(const ModelParams& p);

struct SignFlipUnitaries {
  OperatorMatrix parity_field;  ///< exp(i pi a^dag a) embedded: (-1)^n on the diagonal
  OperatorMatrix parity_spin;   ///< exp(i (pi/2)(sz + 1)) embedded: +1 on |down>, -1 on |up>
};

/// Both map H(g) -> H(-g) under conjugation. parity_spin uses the literal
/// generator exp(i (pi/2)(sz + 1)) with no extra global phase.
SignFlipUnitaries sign_flip_unitaries(const ModelParams& p);

}  // namespace rabi

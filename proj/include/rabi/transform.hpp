#pragma once

// The unitary U that diagonalizes the resonant Jaynes-Cummings Hamiltonian,
// the counter-rotating term in the dressed basis split into four processes,
// and the interaction-picture oscillation frequencies of those processes.

#include "rabi/models.hpp"

namespace rabi {

/// K(n) = ((sqrt2 - 1) / (2 sqrt2)) delta_{n,0}
double k_fn(int n);
/// L(n) = 1 / sqrt(2n + 2)
double l_fn(int n);

/// U = 1/sqrt2 + K(n)(1 - sz) + s+ L(n) a - s- a^dag L(n), from the closed
/// form. Truncation breaks unitarity only on the last Fock level.
OperatorMatrix build_u(const ModelParams& p);

/// u * h * u^dag
OperatorMatrix conjugate(const OperatorMatrix& u, const OperatorMatrix& h);

/// U V U^dag = v1 + v2 + v3 + v4, all in the dressed basis.
struct VDecomposition {
  OperatorMatrix v1;  ///< g(s+ F1 a^3 + s- (a^dag)^3 F1): three-photon exchange
  OperatorMatrix v2;  ///< g(s+ a^dag F2 + s- F2 a): joint excitation / relaxation
  OperatorMatrix v3;  ///< g sz (F3 a^2 + (a^dag)^2 F3): two-photon, spin-dependent
  OperatorMatrix v4;  ///< g (F4 a^2 + (a^dag)^2 F4): two-photon, spin-independent

  Matrix sum() const {
    return v1.entries() + v2.entries() + v3.entries() + v4.entries();
  }
};

/// F-functions evaluated at photon number n.
double f1_fn(int n);
double f2_fn(int n);
double f3_fn(int n);
double f4_fn(int n);

VDecomposition decompose_v(const ModelParams& p);

/// Dressed-basis approximating Hamiltonians: diagonal JC part plus v1 (or v2).
HamiltonianMatrix build_h1_tilde(const ModelParams& p);
HamiltonianMatrix build_h2_tilde(const ModelParams& p);

/// U^dag H~ U, the bare-basis counterpart of a dressed Hamiltonian.
HamiltonianMatrix untransform(const ModelParams& p, const HamiltonianMatrix& h_tilde);

struct Frequencies {
  double w1;  ///< three-photon term
  double w2;  ///< s+ a^dag term
  double w3;  ///< two-photon terms
};

/// Exact c-number frequencies on |s, n>, s = +1 (up) or -1 (down).
Frequencies effective_frequencies(int n, int s, const ModelParams& p);

/// Large-n forms: 2(omega - g sqrt(n+1)), 2(omega + g sqrt(n+1)), 2 omega.
Frequencies approx_frequencies(int n, const ModelParams& p);

}  // namespace rabi

#pragma once

// Closed-form eigensystems of the two approximating Hamiltonians.
//
// Dressed H1~ couples |up, n> with |down, n+3> and leaves |down, 0..2>
// untouched. Dressed H2~ couples |down, n+1> with |up, n+2>; its specials are
// a rotated pair on (|down, 0>, |up, 1>) plus |up, 0>. Eigenvectors are
// returned in the bare basis (after U^dag).

#include <string>
#include <utility>
#include <vector>

#include "rabi/models.hpp"

namespace rabi {

enum class Approx { h1, h2 };

/// Rotation of the n-th 2x2 block.
struct AhmCoefficients {
  int n = 0;
  double alpha_n = 0.0;
  double mu_n = 0.0;     ///< g sqrt(n+2), twice the block's off-diagonal magnitude
  double eta_n = 0.0;    ///< 2 omega - g(sqrt(n+1) + sqrt(n+3)), the detuning of the block
  double delta_n = 0.0;  ///< sqrt(mu^2 + eta^2), the level splitting
  double a_n = 1.0;
  double b_n = 0.0;
};

struct PairEigenvalues {
  double minus;
  double plus;
};

/// Coefficients of the H2~ special pair.
struct H2SpecialCoefficients {
  double gamma;
  double epsilon;
  double c;
  double d;
};

struct EigenLabel {
  enum class Kind { pair_minus, pair_plus, special };
  Approx model = Approx::h1;
  Kind kind = Kind::special;
  int index = 0;  ///< n for pairs; special index 0..2 (for H2: 0 = xi-, 1 = xi+, 2 = xi0)

  /// phi-(n), phi+(n), chi0..chi2 for H1; psi-(n), psi+(n), xi-, xi+, xi0 for H2.
  std::string str() const;
};

struct EigenRecord {
  EigenLabel label;
  double value = 0.0;
  std::vector<std::pair<Index, double>> transformed_components;  ///< dressed-basis support
  JointState vector;  ///< bare-basis eigenvector
};

/// Uses mu/(Delta + eta) when eta >= 0 and the equivalent (Delta - eta)/mu
/// otherwise. Throws DegenerateBranchError when mu == 0 and eta <= 0.
AhmCoefficients ahm1_coefficients(int n, const ModelParams& p);
PairEigenvalues ahm1_eigenvalues(int n, const ModelParams& p);

/// chi0, chi1, chi2 with eigenvalues -omega/2, omega/2 - g, 3omega/2 - sqrt2 g.
std::vector<EigenRecord> ahm1_specials(const ModelParams& p);

/// C_n(g) = A_n(-g), D_n(g) = B_n(-g) (reported as a_n / b_n).
AhmCoefficients ahm2_coefficients(int n, const ModelParams& p);
/// lambda_n(g) = kappa_n(-g)
PairEigenvalues ahm2_eigenvalues(int n, const ModelParams& p);

H2SpecialCoefficients ahm2_special_coefficients(const ModelParams& p);

/// xi-, xi+, xi0 with eigenvalues (omega + sqrt2 g -/+ 2 epsilon)/2 and omega/2 + g.
std::vector<EigenRecord> ahm2_specials(const ModelParams& p);

/// (minus, plus) bare-basis eigenstates of the n-th block.
/// Requires n + 3 <= n_max - guard, otherwise CutoffError.
std::pair<EigenRecord, EigenRecord> untransformed_pair_states(Approx model, int n,
                                                              const ModelParams& p);

/// Largest pair index admitted into the basis: n_max - guard - 3.
int largest_pair_index(const ModelParams& p);

/// Every pair with n <= largest_pair_index, ordered (n, minus, plus), then the
/// three specials. Built in parallel over n; ordering is deterministic.
std::vector<EigenRecord> full_eigenbasis(Approx model, const ModelParams& p);

/// ||H v - E v||_2
double residual(const HamiltonianMatrix& h, const EigenRecord& r);

/// One line per record, sorted by eigenvalue:
///   <label> E=<value, 12 significant digits> residual=<r> components=s|n:amp,...
/// where s is "dn" or "up" and components are the nonzero bare amplitudes.
std::string format_spectrum(const std::vector<EigenRecord>& records,
                            const std::vector<double>& residuals);

}  // namespace rabi

#pragma once

#include <optional>
#include <vector>

#include "necl/common.hpp"

namespace necl::spectral {

enum class DensityKind { OhmicExpCutoff, SingleModeDelta, Tabulated };
enum class Scheme { Midpoint, GaussLegendre };

// Continuous spectral density J(omega). The single-mode kind stands for a
// delta at omega0 whose weight is (pi/2) c^2/(m omega0); callers treat it
// as a point mass.
struct SpectralDensity {
  DensityKind kind = DensityKind::OhmicExpCutoff;
  double eta = 1.0;      // ohmic coupling strength
  double omega_c = 1.0;  // exponential cutoff
  // single-mode parameters
  double mode_mass = 1.0;
  double mode_omega = 1.0;
  double mode_coupling = 1.0;
  // tabulated (omega, J) pairs, strictly increasing in omega
  std::vector<std::pair<double, double>> table;

  static SpectralDensity ohmic(double eta, double omega_c);
  static SpectralDensity single_mode(double m, double omega0, double c);
  static SpectralDensity tabulated(std::vector<std::pair<double, double>> pts);
};

struct Mode {
  double m = 1.0;  // mass
  double omega = 1.0;
  double c = 0.0;  // coupling constant
  double r = 0.0;  // real squeeze parameter
  double L = 0.0;  // real position displacement
};

struct ModeSet {
  std::vector<Mode> modes;

  std::size_t size() const { return modes.size(); }
  const Mode& operator[](std::size_t k) const { return modes[k]; }
  Mode& operator[](std::size_t k) { return modes[k]; }
};

// J(omega) for the continuous kinds; the point weight for single-mode-delta.
double evaluate_J(const SpectralDensity& spec, double omega);

// Point weight (pi/2) c_k^2/(m_k omega_k) carried by one discrete mode.
double mode_weight_J(const Mode& mode);

// Displacement density K: point weight (pi/2) c_k L_k e^{-2 r_k} at omega_k.
double mode_weight_K(const Mode& mode);

// Squeezed densities of App-G form: weight of curly-J and of its
// non-stationary companion Delta-curly-J for one mode.
struct SqueezedWeights {
  double J = 0.0;        // (pi/2) M_k c_k^2 / (m_k^2 omega_k), M_k = e^{-2 r_k} m_k
  double delta_J = 0.0;  // n_k * J, n_k = e^{4 r_k} - 1
};
SqueezedWeights squeezed_densities(const Mode& mode);

// Sum of point weights of all modes whose frequency equals omega (exact
// comparison; discrete densities are sums of point masses).
double evaluate_K(const ModeSet& modes, double omega);
SqueezedWeights squeezed_densities(const ModeSet& modes, double omega);

// Discretize a continuous density into `count` unit-mass modes on
// [0, omega_max]; couplings are chosen so each mode carries the density
// weight of its quadrature cell. Squeeze and displacement start at zero.
ModeSet discretize(const SpectralDensity& spec, std::size_t count, double omega_max,
                   Scheme scheme = Scheme::GaussLegendre);

// Gauss-Legendre nodes/weights on [a,b].
void gauss_legendre(std::size_t n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

}  // namespace necl::spectral

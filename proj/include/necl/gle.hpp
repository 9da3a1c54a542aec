#pragma once

#include <vector>

#include "necl/common.hpp"
#include "necl/microdyn.hpp"
#include "necl/reservoir.hpp"

namespace necl::gle {

enum class KernelRep { ModeSum, QuadratureOfDensity };

// Memory kernels and mean force of one reservoir. The quadrature-of-density
// representation discretizes J on Gauss-Legendre nodes, after which both
// representations are mode sums.
struct KernelSet {
  KernelRep representation = KernelRep::ModeSum;
  spectral::ModeSet modes;
  double beta = 1.0;

  double C1(double s) const;       // dissipation: sum c^2 sin(w s)/(m w)
  double C1_deriv(double s) const; // sum c^2 cos(w s)/m
  double C2(double s) const;       // equilibrium noise: sum c^2 cos(w s)/(m w^2 beta)
  double C2_squeezed(double t, double tp) const;  // non-stationary squeezed kernel
  double mean_force(double t) const;              // F_d(t) = -sum c L cos(w t)

  static KernelSet from_modes(spectral::ModeSet modes, double beta);
  static KernelSet from_density(const spectral::SpectralDensity& density, double beta,
                                std::size_t count, double omega_max);
};

double noise_kernel(const spectral::ModeSet& modes, double beta, double t, double tp,
                    bool squeezed);
double dissipation_kernel(const spectral::ModeSet& modes, double s);
double mean_force(const spectral::ModeSet& modes, double t);

// Free-evolution noise of one post-quench draw on a time grid:
// xi(t) = sum_k c_k [x_k(0) cos w t + p_k(0)/(m w) sin w t].
std::vector<double> sample_noise(const spectral::ModeSet& modes,
                                 const reservoir::PhaseSample& sample,
                                 const std::vector<double>& times);

// d(xi)/dt on the same grid; used by the discrete-exact heat bookkeeping.
std::vector<double> sample_noise_deriv(const spectral::ModeSet& modes,
                                       const reservoir::PhaseSample& sample,
                                       const std::vector<double>& times);

enum class MemoryMethod { Trapezoid, AuxiliaryModes };

struct GleOptions {
  MemoryMethod memory = MemoryMethod::Trapezoid;
  std::size_t record_stride = 0;
};

// Reduced integrator: m x'' = -V'(x) - sum_nu chi V_nu'(x) (xi_nu + R_nu),
// with R_nu the trapezoidal history convolution of C1 against chi V_nu(x).
// For matched draws it reproduces integrate_full step for step.
microdyn::TrajectoryRecord integrate_gle(const microdyn::SystemSpec& system,
                                         const std::vector<reservoir::ReservoirSpec>& reservoirs,
                                         const std::vector<reservoir::PhaseSample>& initial,
                                         double sys_x0, double sys_p0, double dt, double tau,
                                         const GleOptions& opts = {});

}  // namespace necl::gle

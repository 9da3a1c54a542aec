#pragma once

#include <cstdint>
#include <vector>

#include "necl/common.hpp"
#include "necl/reservoir.hpp"

namespace necl::microdyn {

enum class PotentialKind { Harmonic, Quartic, Polynomial };

struct Potential {
  PotentialKind kind = PotentialKind::Harmonic;
  double omega = 1.0;               // harmonic/quartic frequency
  double a4 = 0.0;                  // quartic coefficient
  std::vector<double> coeffs;       // polynomial: sum_i coeffs[i] x^i

  double value(double m, double x) const;
  double deriv(double m, double x) const;

  static Potential harmonic(double omega);
  static Potential quartic(double omega, double a4);
  static Potential polynomial(std::vector<double> coeffs);
};

enum class CouplingKind { Linear, Polynomial };

// Shape function V_nu(x) multiplying each mode coordinate (times c_k chi(t)).
struct CouplingShape {
  CouplingKind kind = CouplingKind::Linear;
  std::vector<double> coeffs;

  double value(double x) const;
  double deriv(double x) const;

  static CouplingShape linear();
  static CouplingShape polynomial(std::vector<double> coeffs);
};

enum class SystemInit { Point, Thermal };

struct SystemSpec {
  double mass = 1.0;
  Potential potential;
  std::vector<CouplingShape> couplings;  // one per reservoir
  SystemInit init = SystemInit::Point;
  double x0 = 0.0, p0 = 0.0;
  double beta_S = 1.0;  // thermal init (harmonic potential only)

  void validate(std::size_t n_reservoirs) const;
};

struct TrajectoryRecord {
  std::uint64_t seed = 0;
  std::uint64_t index = 0;

  // optional decimated path
  std::vector<double> times;
  std::vector<double> x, p;
  std::vector<std::vector<double>> energy_res;  // per reservoir, on `times`
  std::vector<double> energy_sys;
  std::vector<std::vector<double>> coupling;  // sum_k c_k V(x) x_k per reservoir

  // final phase-space point (system and bath), e.g. for reversal checks
  double final_x = 0.0, final_p = 0.0;
  std::vector<reservoir::PhaseSample> final_bath;

  double delta_E_S = 0.0;
  std::vector<double> delta_E_res;  // post-quench baseline
  std::vector<double> quench_sq;    // per reservoir, summed over modes
  std::vector<double> quench_dp;
  std::vector<double> heat;         // Q_nu = dE_nu + quench
  std::vector<double> switch_work;  // boundary jumps + bulk quadrature
  double delta_coupling = 0.0;      // 0^- -> tau^+; zero for valid protocols
  double energy_residual = 0.0;     // dE_S + sum dE_nu + dE_coupling - sum W
  double h_drift = 0.0;             // max work-corrected total-energy drift
};

struct IntegrateOptions {
  std::size_t record_stride = 0;  // 0: do not store the path
};

// Second-order symplectic kick-drift-kick split of the Zwanzig Hamiltonian.
// The bath's free quadratic flow is advanced exactly inside the drift;
// chi_nu is evaluated at step midpoints. Guard: dt * max omega_k <= 0.2.
TrajectoryRecord integrate_full(const SystemSpec& system,
                                const std::vector<reservoir::ReservoirSpec>& reservoirs,
                                const std::vector<reservoir::PhaseSample>& initial,
                                double sys_x0, double sys_p0, double dt, double tau,
                                const IntegrateOptions& opts = {});

struct EnergyFlows {
  double delta_E_S = 0.0;
  std::vector<double> delta_E_res;
  std::vector<double> switch_work;
};

EnergyFlows energy_flows(const TrajectoryRecord& record);

// Trapezoid-on-stored-grid cross-check of the switching work; the record
// must carry a path with stride 1.
std::vector<double> recompute_switch_work(const TrajectoryRecord& record,
                                          const std::vector<reservoir::ReservoirSpec>& reservoirs);

}  // namespace necl::microdyn

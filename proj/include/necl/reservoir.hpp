#pragma once

#include <string>
#include <utility>
#include <vector>

#include "necl/common.hpp"
#include "necl/rng.hpp"
#include "necl/spectral.hpp"

namespace necl::reservoir {

enum class SwitchKind { ConstantOnWindow, LinearRamp, Tabulated };

// Switching function chi(t). Identically zero outside [0, tau]; hard
// switching is represented by the boundary values chi(0+), chi(tau-) which
// the integrators turn into explicit boundary work terms instead of
// numerical delta functions.
struct SwitchingProtocol {
  SwitchKind kind = SwitchKind::ConstantOnWindow;
  double amplitude = 0.0;
  double ramp_time = 0.0;
  double tau = 0.0;
  std::vector<std::pair<double, double>> table;  // (t, chi) nodes, ascending t

  double value(double t) const;
  double derivative(double t) const;  // bulk part only, no delta terms
  double on_jump() const { return value_inside(0.0); }
  double off_jump() const { return value_inside(tau); }

  static SwitchingProtocol constant(double chi, double tau);
  static SwitchingProtocol linear_ramp(double chi, double ramp_time, double tau);
  static SwitchingProtocol tabulated(std::vector<std::pair<double, double>> table, double tau);

 private:
  double value_inside(double t) const;
};

struct ReservoirSpec {
  std::string name;
  double beta = 1.0;
  spectral::ModeSet modes;
  SwitchingProtocol switching;

  void validate() const;
};

enum class QuenchStage { PreQuench, PostQuench };

struct PhaseSample {
  std::vector<double> x;
  std::vector<double> p;
  QuenchStage stage = QuenchStage::PreQuench;
};

// Gibbs draw of the bare modes: x_k ~ N(0, 1/(beta m w^2)), p_k ~ N(0, m/beta).
PhaseSample sample_thermal(const ReservoirSpec& spec, RngStream& rng);

// Squeeze then displace: x <- e^r x + L, p <- e^{-r} p. Unit Jacobian.
PhaseSample apply_quench(const PhaseSample& sample, const spectral::ModeSet& modes);

struct QuenchEnergy {
  std::vector<double> squeeze;   // per mode
  std::vector<double> displace;  // per mode
  double total_squeeze = 0.0;
  double total_displace = 0.0;
};

// Energy injected by the initial operations, expressed through the
// post-quench coordinates. Summed over modes this equals
// H_res(post) - H_res(pre) exactly, per realization.
QuenchEnergy quench_energy(const PhaseSample& pre, const PhaseSample& post,
                           const spectral::ModeSet& modes);

double reservoir_energy(const PhaseSample& s, const spectral::ModeSet& modes);

}  // namespace necl::reservoir

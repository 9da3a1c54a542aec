#include "necl/reservoir.hpp"

#include <algorithm>
#include <cmath>

namespace necl::reservoir {

SwitchingProtocol SwitchingProtocol::constant(double chi, double tau) {
  if (tau <= 0.0) throw ConfigError("switching: tau must be > 0");
  SwitchingProtocol s;
  s.kind = SwitchKind::ConstantOnWindow;
  s.amplitude = chi;
  s.tau = tau;
  return s;
}

SwitchingProtocol SwitchingProtocol::linear_ramp(double chi, double ramp_time, double tau) {
  if (tau <= 0.0) throw ConfigError("switching: tau must be > 0");
  if (ramp_time <= 0.0 || 2.0 * ramp_time > tau)
    throw ConfigError("switching: need 0 < ramp_time <= tau/2");
  SwitchingProtocol s;
  s.kind = SwitchKind::LinearRamp;
  s.amplitude = chi;
  s.ramp_time = ramp_time;
  s.tau = tau;
  return s;
}

SwitchingProtocol SwitchingProtocol::tabulated(std::vector<std::pair<double, double>> table,
                                               double tau) {
  if (tau <= 0.0) throw ConfigError("switching: tau must be > 0");
  if (table.size() < 2) throw ConfigError("switching: table needs at least two nodes");
  for (std::size_t i = 1; i < table.size(); ++i)
    if (table[i].first <= table[i - 1].first)
      throw ConfigError("switching: table times must be strictly increasing");
  SwitchingProtocol s;
  s.kind = SwitchKind::Tabulated;
  s.table = std::move(table);
  s.tau = tau;
  return s;
}

double SwitchingProtocol::value_inside(double t) const {
  switch (kind) {
    case SwitchKind::ConstantOnWindow:
      return amplitude;
    case SwitchKind::LinearRamp:
      if (t < ramp_time) return amplitude * t / ramp_time;
      if (t > tau - ramp_time) return amplitude * (tau - t) / ramp_time;
      return amplitude;
    case SwitchKind::Tabulated: {
      if (t <= table.front().first) return table.front().second;
      if (t >= table.back().first) return table.back().second;
      auto it = std::upper_bound(table.begin(), table.end(), t,
                                 [](double w, const auto& p) { return w < p.first; });
      auto lo = *(it - 1);
      auto hi = *it;
      double f = (t - lo.first) / (hi.first - lo.first);
      return lo.second + f * (hi.second - lo.second);
    }
  }
  return 0.0;
}

double SwitchingProtocol::value(double t) const {
  if (t < 0.0 || t > tau) return 0.0;
  return value_inside(t);
}

double SwitchingProtocol::derivative(double t) const {
  if (t < 0.0 || t > tau) return 0.0;
  switch (kind) {
    case SwitchKind::ConstantOnWindow:
      return 0.0;
    case SwitchKind::LinearRamp:
      if (t < ramp_time) return amplitude / ramp_time;
      if (t > tau - ramp_time) return -amplitude / ramp_time;
      return 0.0;
    case SwitchKind::Tabulated: {
      if (t <= table.front().first || t >= table.back().first) return 0.0;
      auto it = std::upper_bound(table.begin(), table.end(), t,
                                 [](double w, const auto& p) { return w < p.first; });
      auto lo = *(it - 1);
      auto hi = *it;
      return (hi.second - lo.second) / (hi.first - lo.first);
    }
  }
  return 0.0;
}

void ReservoirSpec::validate() const {
  if (beta <= 0.0) throw ConfigError("reservoir " + name + ": beta must be > 0");
  if (modes.size() == 0) throw ConfigError("reservoir " + name + ": no modes");
  for (const auto& m : modes.modes)
    if (m.m <= 0.0 || m.omega <= 0.0)
      throw ConfigError("reservoir " + name + ": modes need m > 0, omega > 0");
}

PhaseSample sample_thermal(const ReservoirSpec& spec, RngStream& rng) {
  if (spec.beta <= 0.0) throw ConfigError("sample_thermal: beta must be > 0");
  PhaseSample s;
  const std::size_t n = spec.modes.size();
  s.x.resize(n);
  s.p.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& m = spec.modes[k];
    double sx = 1.0 / std::sqrt(spec.beta * m.m) / m.omega;
    double sp = std::sqrt(m.m / spec.beta);
    s.x[k] = sx * rng.normal();
    s.p[k] = sp * rng.normal();
  }
  s.stage = QuenchStage::PreQuench;
  return s;
}

PhaseSample apply_quench(const PhaseSample& sample, const spectral::ModeSet& modes) {
  if (sample.stage != QuenchStage::PreQuench)
    throw StateError("apply_quench: sample is already post-quench");
  if (sample.x.size() != modes.size())
    throw DomainError("apply_quench: mode count mismatch");
  PhaseSample out;
  out.x.resize(sample.x.size());
  out.p.resize(sample.p.size());
  for (std::size_t k = 0; k < modes.size(); ++k) {
    double er = std::exp(modes[k].r);
    out.x[k] = er * sample.x[k] + modes[k].L;
    out.p[k] = sample.p[k] / er;
  }
  out.stage = QuenchStage::PostQuench;
  return out;
}

QuenchEnergy quench_energy(const PhaseSample& pre, const PhaseSample& post,
                           const spectral::ModeSet& modes) {
  if (pre.stage != QuenchStage::PreQuench || post.stage != QuenchStage::PostQuench)
    throw StateError("quench_energy: need a matched pre/post pair");
  if (pre.x.size() != modes.size() || post.x.size() != modes.size())
    throw DomainError("quench_energy: mode count mismatch");
  QuenchEnergy q;
  q.squeeze.resize(modes.size());
  q.displace.resize(modes.size());
  KahanSum tot_sq, tot_dp;
  for (std::size_t k = 0; k < modes.size(); ++k) {
    const auto& m = modes[k];
    double e2r = std::exp(2.0 * m.r);
    double x0 = post.x[k];  // post-quench coordinates throughout
    double p0 = post.p[k];
    double sq = 0.5 * (1.0 - 1.0 / e2r) * m.m * m.omega * m.omega * x0 * x0 +
                (1.0 - e2r) * p0 * p0 / (2.0 * m.m);
    double dp = (1.0 / e2r) * m.m * m.omega * m.omega * (x0 * m.L - 0.5 * m.L * m.L);
    q.squeeze[k] = sq;
    q.displace[k] = dp;
    tot_sq.add(sq);
    tot_dp.add(dp);
  }
  q.total_squeeze = tot_sq.value();
  q.total_displace = tot_dp.value();
  return q;
}

double reservoir_energy(const PhaseSample& s, const spectral::ModeSet& modes) {
  KahanSum e;
  for (std::size_t k = 0; k < modes.size(); ++k) {
    const auto& m = modes[k];
    e.add(0.5 * s.p[k] * s.p[k] / m.m);
    e.add(0.5 * m.m * m.omega * m.omega * s.x[k] * s.x[k]);
  }
  return e.value();
}

}  // namespace necl::reservoir

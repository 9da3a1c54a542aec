#include "necl/microdyn.hpp"

#include <cmath>

namespace necl::microdyn {

Potential Potential::harmonic(double omega) {
  Potential v;
  v.kind = PotentialKind::Harmonic;
  v.omega = omega;
  return v;
}

Potential Potential::quartic(double omega, double a4) {
  Potential v;
  v.kind = PotentialKind::Quartic;
  v.omega = omega;
  v.a4 = a4;
  return v;
}

Potential Potential::polynomial(std::vector<double> coeffs) {
  Potential v;
  v.kind = PotentialKind::Polynomial;
  v.coeffs = std::move(coeffs);
  return v;
}

double Potential::value(double m, double x) const {
  switch (kind) {
    case PotentialKind::Harmonic:
      return 0.5 * m * omega * omega * x * x;
    case PotentialKind::Quartic:
      return 0.5 * m * omega * omega * x * x + a4 * x * x * x * x;
    case PotentialKind::Polynomial: {
      double v = 0.0;
      for (std::size_t i = coeffs.size(); i-- > 0;) v = v * x + coeffs[i];
      return v;
    }
  }
  return 0.0;
}

double Potential::deriv(double m, double x) const {
  switch (kind) {
    case PotentialKind::Harmonic:
      return m * omega * omega * x;
    case PotentialKind::Quartic:
      return m * omega * omega * x + 4.0 * a4 * x * x * x;
    case PotentialKind::Polynomial: {
      double v = 0.0;
      for (std::size_t i = coeffs.size(); i-- > 1;) v = v * x + static_cast<double>(i) * coeffs[i];
      return v;
    }
  }
  return 0.0;
}

CouplingShape CouplingShape::linear() { return CouplingShape{}; }

CouplingShape CouplingShape::polynomial(std::vector<double> coeffs) {
  CouplingShape s;
  s.kind = CouplingKind::Polynomial;
  s.coeffs = std::move(coeffs);
  return s;
}

double CouplingShape::value(double x) const {
  if (kind == CouplingKind::Linear) return x;
  double v = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;) v = v * x + coeffs[i];
  return v;
}

double CouplingShape::deriv(double x) const {
  if (kind == CouplingKind::Linear) return 1.0;
  double v = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 1;) v = v * x + static_cast<double>(i) * coeffs[i];
  return v;
}

void SystemSpec::validate(std::size_t n_reservoirs) const {
  if (mass <= 0.0) throw ConfigError("system: mass must be > 0");
  if (!couplings.empty() && couplings.size() != n_reservoirs)
    throw ConfigError("system: coupling-shape count must match reservoir count");
  if (init == SystemInit::Thermal) {
    if (beta_S <= 0.0) throw ConfigError("system: thermal init needs beta_S > 0");
    if (potential.kind != PotentialKind::Harmonic)
      throw ConfigError("system: thermal init implemented for harmonic potential");
  }
}

namespace {

struct BathState {
  std::vector<double> x, p;
  // per-mode rotation for the exact drift
  std::vector<double> cos_th, sin_th, momega;
};

inline double coupling_sum(const reservoir::ReservoirSpec& res, const BathState& b) {
  KahanSum s;
  for (std::size_t k = 0; k < res.modes.size(); ++k) s.add(res.modes[k].c * b.x[k]);
  return s.value();
}

inline double bath_energy(const reservoir::ReservoirSpec& res, const BathState& b) {
  KahanSum e;
  for (std::size_t k = 0; k < res.modes.size(); ++k) {
    const auto& m = res.modes[k];
    e.add(0.5 * b.p[k] * b.p[k] / m.m);
    e.add(0.5 * m.m * m.omega * m.omega * b.x[k] * b.x[k]);
  }
  return e.value();
}

}  // namespace

TrajectoryRecord integrate_full(const SystemSpec& system,
                                const std::vector<reservoir::ReservoirSpec>& reservoirs,
                                const std::vector<reservoir::PhaseSample>& initial,
                                double sys_x0, double sys_p0, double dt, double tau,
                                const IntegrateOptions& opts) {
  if (dt <= 0.0 || tau <= 0.0) throw ConfigError("integrate_full: need dt > 0, tau > 0");
  if (initial.size() != reservoirs.size())
    throw ConfigError("integrate_full: one initial sample per reservoir required");
  system.validate(reservoirs.size());

  double omega_max = 0.0;
  for (const auto& res : reservoirs) {
    res.validate();
    for (const auto& m : res.modes.modes) omega_max = std::max(omega_max, m.omega);
  }
  if (dt * omega_max > 0.2)
    throw ConfigError("integrate_full: stability guard dt*max(omega_k) <= 0.2 violated");

  const std::size_t n_res = reservoirs.size();
  const auto n_steps = static_cast<std::size_t>(std::llround(tau / dt));
  if (n_steps == 0 || std::abs(static_cast<double>(n_steps) * dt - tau) > 1e-9 * tau)
    throw ConfigError("integrate_full: tau must be an integer multiple of dt");

  // bath state and exact per-mode rotations over one step
  std::vector<BathState> bath(n_res);
  for (std::size_t r = 0; r < n_res; ++r) {
    const auto& modes = reservoirs[r].modes;
    if (initial[r].stage != reservoir::QuenchStage::PostQuench)
      throw StateError("integrate_full: initial samples must be post-quench");
    if (initial[r].x.size() != modes.size())
      throw ConfigError("integrate_full: sample/mode count mismatch");
    auto& b = bath[r];
    b.x = initial[r].x;
    b.p = initial[r].p;
    b.cos_th.resize(modes.size());
    b.sin_th.resize(modes.size());
    b.momega.resize(modes.size());
    for (std::size_t k = 0; k < modes.size(); ++k) {
      b.cos_th[k] = std::cos(modes[k].omega * dt);
      b.sin_th[k] = std::sin(modes[k].omega * dt);
      b.momega[k] = modes[k].m * modes[k].omega;
    }
  }

  double x = sys_x0, p = sys_p0;
  const double m_s = system.mass;
  auto shape = [&](std::size_t r) -> const CouplingShape& {
    static const CouplingShape lin = CouplingShape::linear();
    return system.couplings.empty() ? lin : system.couplings[r];
  };

  TrajectoryRecord rec;
  rec.delta_E_res.assign(n_res, 0.0);
  rec.quench_sq.assign(n_res, 0.0);
  rec.quench_dp.assign(n_res, 0.0);
  rec.heat.assign(n_res, 0.0);
  rec.switch_work.assign(n_res, 0.0);

  const double e_sys0 = 0.5 * p * p / m_s + system.potential.value(m_s, x);
  std::vector<double> e_res0(n_res);
  for (std::size_t r = 0; r < n_res; ++r) e_res0[r] = bath_energy(reservoirs[r], bath[r]);

  std::vector<KahanSum> work(n_res);
  std::vector<double> chi_prev(n_res, 0.0);  // chi is 0 at 0^-
  KahanSum drift_sum;
  double max_drift = 0.0;

  const bool record = opts.record_stride > 0;
  auto maybe_record = [&](std::size_t step) {
    if (!record || step % opts.record_stride != 0) return;
    rec.times.push_back(static_cast<double>(step) * dt);
    rec.x.push_back(x);
    rec.p.push_back(p);
    rec.energy_sys.push_back(0.5 * p * p / m_s + system.potential.value(m_s, x));
    if (rec.energy_res.empty()) {
      rec.energy_res.resize(n_res);
      rec.coupling.resize(n_res);
    }
    for (std::size_t r = 0; r < n_res; ++r) {
      rec.energy_res[r].push_back(bath_energy(reservoirs[r], bath[r]));
      rec.coupling[r].push_back(shape(r).value(x) * coupling_sum(reservoirs[r], bath[r]));
    }
  };
  maybe_record(0);

  std::vector<double> chi_mid(n_res), csum(n_res);
  for (std::size_t step = 0; step < n_steps; ++step) {
    const double t_mid = (static_cast<double>(step) + 0.5) * dt;

    // switching work picked up when chi changes between steps (plus the
    // initial on-jump at step 0)
    for (std::size_t r = 0; r < n_res; ++r) {
      chi_mid[r] = reservoirs[r].switching.value(t_mid);
      csum[r] = coupling_sum(reservoirs[r], bath[r]);
      if (chi_mid[r] != chi_prev[r])
        work[r].add((chi_mid[r] - chi_prev[r]) * shape(r).value(x) * csum[r]);
      chi_prev[r] = chi_mid[r];
    }

    // energy (with current chi) before the step, for the drift diagnostic
    double e_before = 0.5 * p * p / m_s + system.potential.value(m_s, x);
    for (std::size_t r = 0; r < n_res; ++r)
      e_before += bath_energy(reservoirs[r], bath[r]) + chi_mid[r] * shape(r).value(x) * csum[r];

    // half kick
    double force = -system.potential.deriv(m_s, x);
    for (std::size_t r = 0; r < n_res; ++r)
      force -= chi_mid[r] * shape(r).deriv(x) * csum[r];
    p += 0.5 * dt * force;
    for (std::size_t r = 0; r < n_res; ++r) {
      const double g = chi_mid[r] * shape(r).value(x);
      auto& b = bath[r];
      const auto& modes = reservoirs[r].modes;
      for (std::size_t k = 0; k < modes.size(); ++k) b.p[k] -= 0.5 * dt * g * modes[k].c;
    }

    // drift: free system translation, exact bath rotation
    x += dt * p / m_s;
    for (std::size_t r = 0; r < n_res; ++r) {
      auto& b = bath[r];
      const std::size_t nk = b.x.size();
      for (std::size_t k = 0; k < nk; ++k) {
        double xk = b.x[k], pk = b.p[k];
        b.x[k] = xk * b.cos_th[k] + pk / b.momega[k] * b.sin_th[k];
        b.p[k] = pk * b.cos_th[k] - xk * b.momega[k] * b.sin_th[k];
      }
    }

    // half kick at the new positions, same midpoint chi
    for (std::size_t r = 0; r < n_res; ++r) csum[r] = coupling_sum(reservoirs[r], bath[r]);
    force = -system.potential.deriv(m_s, x);
    for (std::size_t r = 0; r < n_res; ++r)
      force -= chi_mid[r] * shape(r).deriv(x) * csum[r];
    p += 0.5 * dt * force;
    for (std::size_t r = 0; r < n_res; ++r) {
      const double g = chi_mid[r] * shape(r).value(x);
      auto& b = bath[r];
      const auto& modes = reservoirs[r].modes;
      for (std::size_t k = 0; k < modes.size(); ++k) b.p[k] -= 0.5 * dt * g * modes[k].c;
    }

    if (!std::isfinite(x) || !std::isfinite(p))
      throw StateError("integrate_full: non-finite state at t=" +
                       format_double(static_cast<double>(step + 1) * dt));

    double e_after = 0.5 * p * p / m_s + system.potential.value(m_s, x);
    for (std::size_t r = 0; r < n_res; ++r)
      e_after += bath_energy(reservoirs[r], bath[r]) +
                 chi_mid[r] * shape(r).value(x) * coupling_sum(reservoirs[r], bath[r]);
    drift_sum.add(e_after - e_before);
    max_drift = std::max(max_drift, std::abs(drift_sum.value()));

    maybe_record(step + 1);
  }

  // switch-off jump back to chi = 0 at tau^+
  for (std::size_t r = 0; r < n_res; ++r) {
    if (chi_prev[r] != 0.0)
      work[r].add((0.0 - chi_prev[r]) * shape(r).value(x) * coupling_sum(reservoirs[r], bath[r]));
    rec.switch_work[r] = work[r].value();
  }

  rec.delta_E_S = 0.5 * p * p / m_s + system.potential.value(m_s, x) - e_sys0;
  for (std::size_t r = 0; r < n_res; ++r)
    rec.delta_E_res[r] = bath_energy(reservoirs[r], bath[r]) - e_res0[r];
  rec.delta_coupling = 0.0;  // chi vanishes at 0^- and tau^+ by construction

  rec.final_x = x;
  rec.final_p = p;
  rec.final_bath.resize(n_res);
  for (std::size_t r = 0; r < n_res; ++r) {
    rec.final_bath[r].x = bath[r].x;
    rec.final_bath[r].p = bath[r].p;
    rec.final_bath[r].stage = reservoir::QuenchStage::PostQuench;
  }

  KahanSum res;
  res.add(rec.delta_E_S);
  for (std::size_t r = 0; r < n_res; ++r) res.add(rec.delta_E_res[r]);
  res.add(rec.delta_coupling);
  for (std::size_t r = 0; r < n_res; ++r) res.add(-rec.switch_work[r]);
  rec.energy_residual = res.value();
  rec.h_drift = std::max(max_drift, std::abs(drift_sum.value()));
  return rec;
}

EnergyFlows energy_flows(const TrajectoryRecord& record) {
  EnergyFlows f;
  f.delta_E_S = record.delta_E_S;
  f.delta_E_res = record.delta_E_res;
  f.switch_work = record.switch_work;
  return f;
}

std::vector<double> recompute_switch_work(const TrajectoryRecord& record,
                                          const std::vector<reservoir::ReservoirSpec>& reservoirs) {
  if (record.times.size() < 2 || record.coupling.size() != reservoirs.size())
    throw StateError("recompute_switch_work: record carries no full path");
  std::vector<double> out(reservoirs.size(), 0.0);
  for (std::size_t r = 0; r < reservoirs.size(); ++r) {
    const auto& sw = reservoirs[r].switching;
    const auto& c = record.coupling[r];
    const auto& t = record.times;
    KahanSum w;
    w.add(sw.on_jump() * c.front());
    w.add(-sw.off_jump() * c.back());
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
      double f0 = sw.derivative(t[i]) * c[i];
      double f1 = sw.derivative(t[i + 1]) * c[i + 1];
      w.add(0.5 * (t[i + 1] - t[i]) * (f0 + f1));
    }
    out[r] = w.value();
  }
  return out;
}

}  // namespace necl::microdyn

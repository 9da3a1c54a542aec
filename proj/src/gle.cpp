#include "necl/gle.hpp"

#include <cmath>

namespace necl::gle {

using microdyn::CouplingShape;
using microdyn::SystemSpec;
using microdyn::TrajectoryRecord;
using reservoir::PhaseSample;
using reservoir::ReservoirSpec;
using spectral::ModeSet;

double noise_kernel(const ModeSet& modes, double beta, double t, double tp, bool squeezed) {
  KahanSum s;
  for (const auto& m : modes.modes) {
    if (!squeezed) {
      s.add(m.c * m.c * std::cos(m.omega * (t - tp)) / (m.m * m.omega * m.omega * beta));
    } else {
      const double M = std::exp(-2.0 * m.r) * m.m;
      const double n = std::exp(4.0 * m.r) - 1.0;
      const double pref = M * m.c * m.c / (m.m * m.m * m.omega * m.omega * beta);
      s.add(pref * (std::cos(m.omega * (t - tp)) +
                    n * std::cos(m.omega * t) * std::cos(m.omega * tp)));
    }
  }
  return s.value();
}

double dissipation_kernel(const ModeSet& modes, double s) {
  KahanSum acc;
  for (const auto& m : modes.modes) acc.add(m.c * m.c * std::sin(m.omega * s) / (m.m * m.omega));
  return acc.value();
}

double mean_force(const ModeSet& modes, double t) {
  KahanSum acc;
  for (const auto& m : modes.modes) acc.add(m.c * m.L * std::cos(m.omega * t));
  return -acc.value();
}

double KernelSet::C1(double s) const { return dissipation_kernel(modes, s); }

double KernelSet::C1_deriv(double s) const {
  KahanSum acc;
  for (const auto& m : modes.modes) acc.add(m.c * m.c * std::cos(m.omega * s) / m.m);
  return acc.value();
}

double KernelSet::C2(double s) const { return noise_kernel(modes, beta, s, 0.0, false); }

double KernelSet::C2_squeezed(double t, double tp) const {
  return noise_kernel(modes, beta, t, tp, true);
}

double KernelSet::mean_force(double t) const { return gle::mean_force(modes, t); }

KernelSet KernelSet::from_modes(ModeSet modes, double beta) {
  if (beta <= 0.0) throw ConfigError("KernelSet: beta must be > 0");
  KernelSet k;
  k.modes = std::move(modes);
  k.beta = beta;
  return k;
}

KernelSet KernelSet::from_density(const spectral::SpectralDensity& density, double beta,
                                  std::size_t count, double omega_max) {
  KernelSet k = from_modes(spectral::discretize(density, count, omega_max), beta);
  k.representation = KernelRep::QuadratureOfDensity;
  return k;
}

std::vector<double> sample_noise(const ModeSet& modes, const PhaseSample& sample,
                                 const std::vector<double>& times) {
  if (sample.stage != reservoir::QuenchStage::PostQuench)
    throw StateError("sample_noise: need a post-quench sample");
  if (sample.x.size() != modes.size()) throw DomainError("sample_noise: mode count mismatch");
  std::vector<double> xi(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    KahanSum s;
    for (std::size_t k = 0; k < modes.size(); ++k) {
      const auto& m = modes[k];
      s.add(m.c * (sample.x[k] * std::cos(m.omega * times[i]) +
                   sample.p[k] / (m.m * m.omega) * std::sin(m.omega * times[i])));
    }
    xi[i] = s.value();
  }
  return xi;
}

std::vector<double> sample_noise_deriv(const ModeSet& modes, const PhaseSample& sample,
                                       const std::vector<double>& times) {
  if (sample.stage != reservoir::QuenchStage::PostQuench)
    throw StateError("sample_noise_deriv: need a post-quench sample");
  std::vector<double> v(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    KahanSum s;
    for (std::size_t k = 0; k < modes.size(); ++k) {
      const auto& m = modes[k];
      s.add(m.c * (-sample.x[k] * m.omega * std::sin(m.omega * times[i]) +
                   sample.p[k] / m.m * std::cos(m.omega * times[i])));
    }
    v[i] = s.value();
  }
  return v;
}

TrajectoryRecord integrate_gle(const SystemSpec& system,
                               const std::vector<ReservoirSpec>& reservoirs,
                               const std::vector<PhaseSample>& initial, double sys_x0,
                               double sys_p0, double dt, double tau, const GleOptions& opts) {
  if (dt <= 0.0 || tau <= 0.0) throw ConfigError("integrate_gle: need dt > 0, tau > 0");
  if (initial.size() != reservoirs.size())
    throw ConfigError("integrate_gle: one initial sample per reservoir required");
  system.validate(reservoirs.size());

  double omega_max = 0.0;
  for (const auto& res : reservoirs) {
    res.validate();
    for (const auto& m : res.modes.modes) omega_max = std::max(omega_max, m.omega);
  }
  if (dt * omega_max > 0.2)
    throw ConfigError("integrate_gle: stability guard dt*max(omega_k) <= 0.2 violated");

  const std::size_t n_res = reservoirs.size();
  const auto n_steps = static_cast<std::size_t>(std::llround(tau / dt));
  if (n_steps == 0 || std::abs(static_cast<double>(n_steps) * dt - tau) > 1e-9 * tau)
    throw ConfigError("integrate_gle: tau must be an integer multiple of dt");
  const std::size_t n_grid = n_steps + 1;

  auto shape = [&](std::size_t r) -> const CouplingShape& {
    static const CouplingShape lin = CouplingShape::linear();
    return system.couplings.empty() ? lin : system.couplings[r];
  };

  std::vector<double> times(n_grid);
  for (std::size_t i = 0; i < n_grid; ++i) times[i] = static_cast<double>(i) * dt;

  // per-reservoir precomputation
  struct ResData {
    std::vector<double> xi, xi_dot;    // free noise and its derivative on the grid
    std::vector<double> c1, c1d;       // kernel tables C1(j dt), C1'(j dt)
    double s2 = 0.0;                   // sum c^2/m  (= C1'(0))
    std::vector<double> chi_mid;       // chi at step midpoints
    std::vector<double> weight;        // merged kick weights per grid point
    std::vector<double> v;             // chi-free coupling shape V(x_j)
    std::vector<double> r_hist;        // R(t_j), filled as we march
    // auxiliary-mode state (response-only oscillators)
    std::vector<double> ax, ap, cth, sth, momega, c;
  };
  std::vector<ResData> rd(n_res);
  const bool aux = opts.memory == MemoryMethod::AuxiliaryModes;
  for (std::size_t r = 0; r < n_res; ++r) {
    auto& d = rd[r];
    const auto& modes = reservoirs[r].modes;
    d.xi = sample_noise(modes, initial[r], times);
    d.xi_dot = sample_noise_deriv(modes, initial[r], times);
    d.c1.resize(n_grid);
    d.c1d.resize(n_grid);
    for (std::size_t j = 0; j < n_grid; ++j) {
      d.c1[j] = dissipation_kernel(modes, times[j]);
      KahanSum cd;
      for (const auto& m : modes.modes) cd.add(m.c * m.c * std::cos(m.omega * times[j]) / m.m);
      d.c1d[j] = cd.value();
    }
    d.s2 = d.c1d[0];
    d.chi_mid.resize(n_steps);
    for (std::size_t n = 0; n < n_steps; ++n)
      d.chi_mid[n] = reservoirs[r].switching.value((static_cast<double>(n) + 0.5) * dt);
    d.weight.resize(n_grid);
    d.weight[0] = 0.5 * dt * d.chi_mid[0];
    for (std::size_t j = 1; j < n_steps; ++j)
      d.weight[j] = 0.5 * dt * (d.chi_mid[j - 1] + d.chi_mid[j]);
    d.weight[n_steps] = 0.5 * dt * d.chi_mid[n_steps - 1];
    d.v.assign(n_grid, 0.0);
    d.r_hist.assign(n_grid, 0.0);
    if (aux) {
      const std::size_t nk = modes.size();
      d.ax.assign(nk, 0.0);
      d.ap.assign(nk, 0.0);
      d.cth.resize(nk);
      d.sth.resize(nk);
      d.momega.resize(nk);
      d.c.resize(nk);
      for (std::size_t k = 0; k < nk; ++k) {
        d.cth[k] = std::cos(modes[k].omega * dt);
        d.sth[k] = std::sin(modes[k].omega * dt);
        d.momega[k] = modes[k].m * modes[k].omega;
        d.c[k] = modes[k].c;
      }
    }
  }

  double x = sys_x0, p = sys_p0;
  const double m_s = system.mass;
  const double e_sys0 = 0.5 * p * p / m_s + system.potential.value(m_s, x);

  TrajectoryRecord rec;
  rec.delta_E_res.assign(n_res, 0.0);
  rec.quench_sq.assign(n_res, 0.0);
  rec.quench_dp.assign(n_res, 0.0);
  rec.heat.assign(n_res, 0.0);
  rec.switch_work.assign(n_res, 0.0);

  std::vector<KahanSum> heat(n_res), work(n_res);
  std::vector<double> chi_prev(n_res, 0.0);

  // R(t_n): trapezoidal history convolution, or the per-mode recursion
  auto compute_R = [&](std::size_t r, std::size_t n) -> double {
    auto& d = rd[r];
    if (aux) {
      double s = 0.0;
      for (std::size_t k = 0; k < d.ax.size(); ++k) s += d.c[k] * d.ax[k];
      return s;
    }
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += d.weight[j] * d.v[j] * d.c1[n - j];
    return -s;
  };

  // momentum-kernel convolution for the per-kick heat bookkeeping
  auto compute_Rdot = [&](std::size_t r, std::size_t n) -> double {
    auto& d = rd[r];
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += d.weight[j] * d.v[j] * d.c1d[n - j];
    return -s;
  };

  const bool record = opts.record_stride > 0;
  auto maybe_record = [&](std::size_t step) {
    if (!record || step % opts.record_stride != 0) return;
    rec.times.push_back(times[step]);
    rec.x.push_back(x);
    rec.p.push_back(p);
    rec.energy_sys.push_back(0.5 * p * p / m_s + system.potential.value(m_s, x));
  };
  maybe_record(0);

  for (std::size_t n = 0; n < n_steps; ++n) {
    // record V(x_n) and the bath force at t_n
    std::vector<double> bath_force(n_res);
    for (std::size_t r = 0; r < n_res; ++r) {
      rd[r].v[n] = shape(r).value(x);
      double R = (n == 0) ? compute_R(r, 0) : rd[r].r_hist[n];
      rd[r].r_hist[n] = R;
      bath_force[r] = rd[r].xi[n] + R;
      // heat: merged kick at t_n (weight[n] covers both adjacent half kicks)
      double pdot = rd[r].xi_dot[n] + compute_Rdot(r, n);
      double w = rd[r].weight[n];
      heat[r].add(-w * rd[r].v[n] * pdot);
      heat[r].add(0.5 * w * w * rd[r].v[n] * rd[r].v[n] * rd[r].s2);
      // switching work bookkeeping, matching integrate_full
      double chi_now = rd[r].chi_mid[n];
      if (chi_now != chi_prev[r]) work[r].add((chi_now - chi_prev[r]) * rd[r].v[n] * bath_force[r]);
      chi_prev[r] = chi_now;
    }

    double force = -system.potential.deriv(m_s, x);
    for (std::size_t r = 0; r < n_res; ++r)
      force -= rd[r].chi_mid[n] * shape(r).deriv(x) * bath_force[r];
    p += 0.5 * dt * force;

    if (aux) {
      // auxiliary response oscillators: same kick, then exact rotation
      for (std::size_t r = 0; r < n_res; ++r) {
        auto& d = rd[r];
        const double g = rd[r].chi_mid[n] * d.v[n];
        for (std::size_t k = 0; k < d.ax.size(); ++k) {
          d.ap[k] -= 0.5 * dt * g * d.c[k];
          double xk = d.ax[k], pk = d.ap[k];
          d.ax[k] = xk * d.cth[k] + pk / d.momega[k] * d.sth[k];
          d.ap[k] = pk * d.cth[k] - xk * d.momega[k] * d.sth[k];
        }
      }
    }

    x += dt * p / m_s;

    // closing half kick at t_{n+1}, same midpoint chi
    double vnext;
    force = -system.potential.deriv(m_s, x);
    for (std::size_t r = 0; r < n_res; ++r) {
      vnext = shape(r).value(x);
      if (aux) {
        auto& d = rd[r];
        const double g = rd[r].chi_mid[n] * vnext;
        for (std::size_t k = 0; k < d.ax.size(); ++k) d.ap[k] -= 0.5 * dt * g * d.c[k];
      }
      rd[r].v[n + 1] = vnext;  // provisional; overwritten at the next loop head
      double R = compute_R(r, n + 1);
      rd[r].r_hist[n + 1] = R;
      force -= rd[r].chi_mid[n] * shape(r).deriv(x) * (rd[r].xi[n + 1] + R);
    }
    p += 0.5 * dt * force;

    if (!std::isfinite(x) || !std::isfinite(p))
      throw StateError("integrate_gle: non-finite state at t=" + format_double(times[n + 1]));
    maybe_record(n + 1);
  }

  // final kick at t_N (weight chi_mid[N-1] dt/2) and the off-jump
  for (std::size_t r = 0; r < n_res; ++r) {
    auto& d = rd[r];
    d.v[n_steps] = shape(r).value(x);
    double pdot = d.xi_dot[n_steps] + compute_Rdot(r, n_steps);
    double w = d.weight[n_steps];
    heat[r].add(-w * d.v[n_steps] * pdot);
    heat[r].add(0.5 * w * w * d.v[n_steps] * d.v[n_steps] * d.s2);
    double bath_force = d.xi[n_steps] + d.r_hist[n_steps];
    if (chi_prev[r] != 0.0) work[r].add(-chi_prev[r] * d.v[n_steps] * bath_force);
    rec.switch_work[r] = work[r].value();
    rec.delta_E_res[r] = heat[r].value();
  }

  rec.delta_E_S = 0.5 * p * p / m_s + system.potential.value(m_s, x) - e_sys0;
  rec.delta_coupling = 0.0;
  rec.final_x = x;
  rec.final_p = p;

  KahanSum res;
  res.add(rec.delta_E_S);
  for (std::size_t r = 0; r < n_res; ++r) res.add(rec.delta_E_res[r]);
  for (std::size_t r = 0; r < n_res; ++r) res.add(-rec.switch_work[r]);
  rec.energy_residual = res.value();
  rec.h_drift = std::abs(rec.energy_residual);
  return rec;
}

}  // namespace necl::gle

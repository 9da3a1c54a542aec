#include "necl/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace necl::spectral {

SpectralDensity SpectralDensity::ohmic(double eta, double omega_c) {
  if (eta < 0.0 || omega_c <= 0.0) throw ConfigError("ohmic density needs eta >= 0, omega_c > 0");
  SpectralDensity s;
  s.kind = DensityKind::OhmicExpCutoff;
  s.eta = eta;
  s.omega_c = omega_c;
  return s;
}

SpectralDensity SpectralDensity::single_mode(double m, double omega0, double c) {
  if (m <= 0.0 || omega0 <= 0.0) throw ConfigError("single mode needs m > 0, omega0 > 0");
  SpectralDensity s;
  s.kind = DensityKind::SingleModeDelta;
  s.mode_mass = m;
  s.mode_omega = omega0;
  s.mode_coupling = c;
  return s;
}

SpectralDensity SpectralDensity::tabulated(std::vector<std::pair<double, double>> pts) {
  if (pts.size() < 2) throw ConfigError("tabulated density needs at least two points");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].first < 0.0) throw ConfigError("tabulated density: omega must be >= 0");
    if (pts[i].second < 0.0) throw ConfigError("tabulated density: J must be >= 0");
    if (i > 0 && pts[i].first <= pts[i - 1].first)
      throw ConfigError("tabulated density: omega column must be strictly increasing");
  }
  SpectralDensity s;
  s.kind = DensityKind::Tabulated;
  s.table = std::move(pts);
  return s;
}

double evaluate_J(const SpectralDensity& spec, double omega) {
  if (omega < 0.0) throw DomainError("evaluate_J: omega must be >= 0");
  switch (spec.kind) {
    case DensityKind::OhmicExpCutoff:
      return spec.eta * omega * std::exp(-omega / spec.omega_c);
    case DensityKind::SingleModeDelta:
      // point weight associated with omega0
      return 0.5 * kPi * spec.mode_coupling * spec.mode_coupling /
             (spec.mode_mass * spec.mode_omega);
    case DensityKind::Tabulated: {
      const auto& t = spec.table;
      if (omega <= t.front().first) return t.front().second;
      if (omega >= t.back().first) return t.back().second;
      auto it = std::upper_bound(t.begin(), t.end(), omega,
                                 [](double w, const auto& p) { return w < p.first; });
      auto lo = *(it - 1);
      auto hi = *it;
      double f = (omega - lo.first) / (hi.first - lo.first);
      return lo.second + f * (hi.second - lo.second);
    }
  }
  return 0.0;
}

double mode_weight_J(const Mode& mode) {
  return 0.5 * kPi * mode.c * mode.c / (mode.m * mode.omega);
}

double mode_weight_K(const Mode& mode) {
  return 0.5 * kPi * mode.c * mode.L * std::exp(-2.0 * mode.r);
}

SqueezedWeights squeezed_densities(const Mode& mode) {
  double M = std::exp(-2.0 * mode.r) * mode.m;
  SqueezedWeights w;
  w.J = 0.5 * kPi * M * mode.c * mode.c / (mode.m * mode.m * mode.omega);
  double n = std::exp(4.0 * mode.r) - 1.0;  // m^2/M^2 - 1
  w.delta_J = n * w.J;
  return w;
}

double evaluate_K(const ModeSet& modes, double omega) {
  double sum = 0.0;
  for (const auto& m : modes.modes)
    if (m.omega == omega) sum += mode_weight_K(m);
  return sum;
}

SqueezedWeights squeezed_densities(const ModeSet& modes, double omega) {
  SqueezedWeights acc;
  for (const auto& m : modes.modes)
    if (m.omega == omega) {
      auto w = squeezed_densities(m);
      acc.J += w.J;
      acc.delta_J += w.delta_J;
    }
  return acc;
}

void gauss_legendre(std::size_t n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const std::size_t m = (n + 1) / 2;
  for (std::size_t i = 0; i < m; ++i) {
    // Newton on P_n, Chebyshev-like initial guess
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * static_cast<double>(j) + 1.0) * x * p1 - static_cast<double>(j) * p2) /
             (static_cast<double>(j) + 1.0);
      }
      pp = static_cast<double>(n) * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    nodes[i] = x;
    nodes[n - 1 - i] = -x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  // map [-1,1] -> [a,b], ascending
  double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  for (std::size_t i = 0; i < n; ++i) {
    nodes[i] = mid - half * nodes[i];
    weights[i] *= half;
  }
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return nodes[i] < nodes[j]; });
  std::vector<double> xs(n), ws(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = nodes[idx[i]];
    ws[i] = weights[idx[i]];
  }
  nodes.swap(xs);
  weights.swap(ws);
}

ModeSet discretize(const SpectralDensity& spec, std::size_t count, double omega_max,
                   Scheme scheme) {
  if (count == 0) throw DomainError("discretize: count must be >= 1");
  if (omega_max <= 0.0) throw DomainError("discretize: omega_max must be > 0");

  ModeSet set;
  if (spec.kind == DensityKind::SingleModeDelta) {
    Mode m;
    m.m = spec.mode_mass;
    m.omega = spec.mode_omega;
    m.c = spec.mode_coupling;
    set.modes.push_back(m);
    return set;
  }

  std::vector<double> nodes, weights;
  if (scheme == Scheme::GaussLegendre) {
    gauss_legendre(count, 0.0, omega_max, nodes, weights);
  } else {
    nodes.resize(count);
    weights.assign(count, omega_max / static_cast<double>(count));
    for (std::size_t k = 0; k < count; ++k)
      nodes[k] = (static_cast<double>(k) + 0.5) * omega_max / static_cast<double>(count);
  }

  set.modes.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Mode m;
    m.m = 1.0;
    m.omega = nodes[k];
    // weight of the cell: (pi/2) c^2/(m w) = J(w) * dw
    double Jw = evaluate_J(spec, nodes[k]) * weights[k];
    m.c = std::sqrt(2.0 * Jw * m.m * m.omega / kPi);
    set.modes.push_back(m);
  }
  return set;
}

}  // namespace necl::spectral

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "necl/microdyn.hpp"
#include "oracles.hpp"

using namespace necl;
using namespace necl::microdyn;
using reservoir::PhaseSample;
using reservoir::ReservoirSpec;
using reservoir::SwitchingProtocol;
using spectral::Mode;

namespace {

ReservoirSpec one_mode_res(double beta, Mode m, SwitchingProtocol sw) {
  ReservoirSpec r;
  r.name = "bath";
  r.beta = beta;
  r.modes.modes = {m};
  r.switching = sw;
  return r;
}

PhaseSample post_sample(std::vector<double> x, std::vector<double> p) {
  PhaseSample s;
  s.x = std::move(x);
  s.p = std::move(p);
  s.stage = reservoir::QuenchStage::PostQuench;
  return s;
}

SystemSpec harmonic_system(double m, double omega) {
  SystemSpec s;
  s.mass = m;
  s.potential = Potential::harmonic(omega);
  return s;
}

}  // namespace

TEST_CASE("decoupled evolution conserves every energy") {
  auto sys = harmonic_system(1.0, 1.3);
  auto res = one_mode_res(1.0, Mode{1.0, 2.0, 0.5, 0.0, 0.0}, SwitchingProtocol::constant(0.0, 5.0));
  auto rec = integrate_full(sys, {res}, {post_sample({0.7}, {-0.2})}, 0.4, 0.1, 1e-3, 5.0);
  CHECK(std::abs(rec.delta_E_S) < 1e-10);
  CHECK(std::abs(rec.delta_E_res[0]) < 1e-10);
  CHECK(std::abs(rec.switch_work[0]) < 1e-15);
  CHECK(std::abs(rec.energy_residual) < 1e-10);
}

TEST_CASE("two-oscillator closed form, deviation < 1e-6 at dt=1e-3 over tau=10") {
  const double m1 = 1.0, w1 = 1.0, m2 = 1.0, w2 = 1.4, chi = 0.2, c = 1.0;
  auto sys = harmonic_system(m1, w1);
  auto res = one_mode_res(1.0, Mode{m2, w2, c, 0.0, 0.0}, SwitchingProtocol::constant(chi, 10.0));
  const double x1 = 0.3, p1 = 0.0, x2 = -0.2, p2 = 0.1;

  IntegrateOptions opts;
  opts.record_stride = 100;
  auto rec = integrate_full(sys, {res}, {post_sample({x2}, {p2})}, x1, p1, 1e-3, 10.0, opts);

  oracles::TwoOscillator oracle(m1, w1, m2, w2, chi * c);
  double max_err = 0.0;
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    auto z = oracle.evolve(x1, p1, x2, p2, rec.times[i]);
    max_err = std::max(max_err, std::abs(rec.x[i] - z[0]));
  }
  CHECK(max_err < 1e-6);
}

TEST_CASE("second-order convergence against the oracle") {
  const double m1 = 1.0, w1 = 1.0, m2 = 1.0, w2 = 1.7, chi = 0.3, c = 1.0;
  auto sys = harmonic_system(m1, w1);
  oracles::TwoOscillator oracle(m1, w1, m2, w2, chi * c);
  double errs[2];
  double dts[2] = {2e-3, 1e-3};
  for (int i = 0; i < 2; ++i) {
    auto res = one_mode_res(1.0, Mode{m2, w2, c, 0.0, 0.0}, SwitchingProtocol::constant(chi, 5.0));
    auto rec = integrate_full(sys, {res}, {post_sample({0.5}, {0.0})}, 0.2, 0.3, dts[i], 5.0);
    auto z = oracle.evolve(0.2, 0.3, 0.5, 0.0, 5.0);
    // final-point deviation
    IntegrateOptions o;
    o.record_stride = static_cast<std::size_t>(std::llround(5.0 / dts[i]));
    auto rec2 = integrate_full(sys, {res}, {post_sample({0.5}, {0.0})}, 0.2, 0.3, dts[i], 5.0, o);
    errs[i] = std::abs(rec2.x.back() - z[0]);
  }
  CHECK(errs[0] / errs[1] > 3.0);
  CHECK(errs[0] / errs[1] < 5.0);
}

TEST_CASE("time reversal returns the initial state within 1e-10") {
  auto sys = harmonic_system(1.0, 1.1);
  auto sw = SwitchingProtocol::constant(0.4, 1.0);
  auto res = one_mode_res(1.0, Mode{1.0, 1.9, 0.7, 0.0, 0.0}, sw);
  auto fwd = integrate_full(sys, {res}, {post_sample({0.4}, {-0.3})}, 0.1, 0.2, 1e-3, 1.0);

  auto flipped = fwd.final_bath[0];
  for (auto& pk : flipped.p) pk = -pk;
  auto back = integrate_full(sys, {res}, {flipped}, fwd.final_x, -fwd.final_p, 1e-3, 1.0);
  CHECK(std::abs(back.final_x - 0.1) < 1e-10);
  CHECK(std::abs(-back.final_p - 0.2) < 1e-10);
  CHECK(std::abs(back.final_bath[0].x[0] - 0.4) < 1e-10);
  CHECK(std::abs(-back.final_bath[0].p[0] - (-0.3)) < 1e-10);
}

TEST_CASE("hard-switch boundary work closes the first law") {
  auto sys = harmonic_system(1.0, 1.0);
  auto res = one_mode_res(1.0, Mode{1.0, 1.5, 0.8, 0.0, 0.0}, SwitchingProtocol::constant(0.5, 3.0));
  auto rec = integrate_full(sys, {res}, {post_sample({0.6}, {0.1})}, 0.3, -0.2, 1e-3, 3.0);
  CHECK(std::abs(rec.energy_residual) <= 10.0 * rec.h_drift + 1e-12);
  CHECK(rec.h_drift < 1e-5);
  CHECK(std::abs(rec.switch_work[0]) > 1e-3);  // boundary jumps are real work
}

TEST_CASE("ramp switching closes the first law too") {
  auto sys = harmonic_system(1.0, 1.0);
  auto res = one_mode_res(1.0, Mode{1.0, 1.2, 0.6, 0.0, 0.0},
                          SwitchingProtocol::linear_ramp(0.5, 0.5, 3.0));
  auto rec = integrate_full(sys, {res}, {post_sample({0.5}, {0.2})}, 0.2, 0.0, 1e-3, 3.0);
  CHECK(std::abs(rec.energy_residual) <= 10.0 * rec.h_drift + 1e-12);
}

TEST_CASE("trapezoid recomputation of the switching work agrees") {
  auto sys = harmonic_system(1.0, 1.0);
  auto res = one_mode_res(1.0, Mode{1.0, 1.2, 0.6, 0.0, 0.0},
                          SwitchingProtocol::linear_ramp(0.5, 0.5, 2.0));
  IntegrateOptions all;
  all.record_stride = 1;
  auto rec = integrate_full(sys, {res}, {post_sample({0.5}, {0.2})}, 0.2, 0.0, 1e-3, 2.0, all);
  auto w = recompute_switch_work(rec, {res});
  CHECK(w[0] == doctest::Approx(rec.switch_work[0]).epsilon(1e-4));
}

TEST_CASE("symplectic drift is bounded and non-secular") {
  auto sys = harmonic_system(1.0, 1.0);
  auto res = one_mode_res(1.0, Mode{1.0, 1.8, 0.5, 0.0, 0.0}, SwitchingProtocol::constant(0.4, 50.0));
  auto short_run = integrate_full(sys, {res}, {post_sample({0.5}, {0.1})}, 0.4, 0.0, 5e-3, 5.0);
  auto long_run = integrate_full(sys, {res}, {post_sample({0.5}, {0.1})}, 0.4, 0.0, 5e-3, 50.0);
  CHECK(long_run.h_drift < 20.0 * short_run.h_drift);  // no linear-in-t growth
  CHECK(long_run.h_drift < 1e-4);
}

TEST_CASE("stability guard and divergence") {
  auto sys = harmonic_system(1.0, 1.0);
  auto res = one_mode_res(1.0, Mode{1.0, 30.0, 0.5, 0.0, 0.0}, SwitchingProtocol::constant(0.1, 1.0));
  CHECK_THROWS_AS(integrate_full(sys, {res}, {post_sample({0.0}, {0.0})}, 0.0, 0.0, 0.01, 1.0),
                  ConfigError);
}

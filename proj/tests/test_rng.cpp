#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "necl/rng.hpp"

using necl::Philox4x32;
using necl::RngStream;

TEST_CASE("philox4x32-10 known-answer vectors") {
  // Random123 kat_vectors (Salmon et al.)
  auto o1 = Philox4x32::block({0, 0, 0, 0}, {0, 0});
  CHECK(o1[0] == 0x6627e8d5u);
  CHECK(o1[1] == 0xe169c58du);
  CHECK(o1[2] == 0xbc57ac4cu);
  CHECK(o1[3] == 0x9b00dbd8u);

  auto o2 = Philox4x32::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                              {0xffffffffu, 0xffffffffu});
  CHECK(o2[0] == 0x408f276du);
  CHECK(o2[1] == 0x41c83b0eu);
  CHECK(o2[2] == 0xa20bc7c6u);
  CHECK(o2[3] == 0x6d5451fdu);

  auto o3 = Philox4x32::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                              {0xa4093822u, 0x299f31d0u});
  CHECK(o3[0] == 0xd16cfe09u);
  CHECK(o3[1] == 0x94fdccebu);
  CHECK(o3[2] == 0x5001e420u);
  CHECK(o3[3] == 0x24126ea1u);
}

TEST_CASE("streams are reproducible and independent") {
  RngStream a(42, 7, 3), b(42, 7, 3), c(42, 7, 4), d(42, 8, 3);
  double ref = 0.0;
  for (int i = 0; i < 100; ++i) ref = a.uniform();
  double again = 0.0;
  for (int i = 0; i < 100; ++i) again = b.uniform();
  CHECK(ref == again);
  CHECK(c.uniform() != b.uniform());
  CHECK(d.uniform() != ref);
}

TEST_CASE("normal moments") {
  RngStream g(123, 0, 0);
  const int n = 1000000;
  double s = 0.0, s2 = 0.0, s3 = 0.0;
  for (int i = 0; i < n; ++i) {
    double z = g.normal();
    s += z;
    s2 += z * z;
    s3 += z * z * z;
  }
  double mean = s / n;
  double var = s2 / n - mean * mean;
  CHECK(std::abs(mean) < 5.0 / std::sqrt(double(n)));
  CHECK(var == doctest::Approx(1.0).epsilon(0.01));
  CHECK(std::abs(s3 / n) < 15.0 / std::sqrt(double(n)));
}

TEST_CASE("uniforms stay inside the open unit interval") {
  RngStream g(9, 1, 1);
  for (int i = 0; i < 10000; ++i) {
    double u = g.uniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

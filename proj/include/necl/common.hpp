#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace necl {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Error hierarchy. The C API maps these onto status codes, the CLI onto
// exit codes (config -> 2, precision -> 3).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};
struct StateError : Error {
  using Error::Error;
};
struct PrecisionError : Error {
  using Error::Error;
};
struct ValidityError : Error {
  using Error::Error;
};

// Compensated (Kahan) accumulator. Reductions over trajectories must not
// depend on thread count, so partial sums are always combined in a fixed
// order using this.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  void merge(const KahanSum& other) {
    add(other.s_);
    add(-other.c_);
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

inline bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

// Round-trip exact float formatting used in every CSV/JSON emitter.
std::string format_double(double x);

// 64-bit FNV-1a, used for config hashes in run manifests.
std::uint64_t fnv1a64(const std::string& s);

}  // namespace necl

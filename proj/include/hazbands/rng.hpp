#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

#include "hazbands/errors.hpp"

namespace hazbands {

// SplitMix64 finalizer; used to turn arbitrary (seed, id...) tuples into
// well-mixed engine seeds so that parallel streams never overlap by accident.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> ids) {
  std::uint64_t x = splitmix64(seed);
  for (std::uint64_t id : ids) x = splitmix64(x ^ splitmix64(id));
  return x;
}

// Deterministic random stream. All distributions are implemented here rather
// than through std::*_distribution so that draws are bit-identical across
// standard libraries and platforms for a given seed.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(splitmix64(seed)) {}

  static RngStream derive(std::uint64_t seed, std::initializer_list<std::uint64_t> ids) {
    return RngStream(mix_seed(seed, ids));
  }

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on the open interval (0, 1); never returns an exact endpoint.
  double uniform() { return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Marsaglia's polar method with a cached spare.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

  double exponential() { return -std::log(uniform()); }

  // Gamma(shape, rate) via Marsaglia-Tsang, with the standard boost for
  // shape < 1.
  double gamma(double shape, double rate) {
    if (shape <= 0.0 || rate <= 0.0)
      throw InvalidParameter("gamma shape and rate must be positive");
    if (shape < 1.0) {
      const double u = uniform();
      return gamma(shape + 1.0, rate) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      const double x2 = x * x;
      if (u < 1.0 - 0.0331 * x2 * x2) return d * v / rate;
      if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v / rate;
    }
  }

  // Laplace with location mu and rate theta (density theta/2 * exp(-theta|x-mu|)).
  double laplace(double mu, double theta) {
    if (theta <= 0.0) throw InvalidParameter("laplace rate must be positive");
    const double u = uniform() - 0.5;
    const double sgn = (u < 0.0) ? -1.0 : 1.0;
    return mu - sgn * std::log(1.0 - 2.0 * std::fabs(u)) / theta;
  }

  double lognormal(double mu, double sdev) { return std::exp(mu + sdev * normal()); }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace hazbands

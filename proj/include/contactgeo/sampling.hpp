#pragma once

// Seeded random points, vectors and polynomial Hamiltonians. The default
// box keeps |q|, |p| >= 0.5 so that Lambda = q p and its reciprocal stay finite.

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

#include "contactgeo/expr.hpp"
#include "contactgeo/phase_space.hpp"

namespace contactgeo {

struct SamplerBox {
  double w_lo = -1.0;
  double w_hi = 1.0;
  double mag_lo = 0.5;  // |q|, |p| drawn from [mag_lo, mag_hi] with a random sign
  double mag_hi = 2.0;
};

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed, SamplerBox box = {}) : rng_(seed), box_(box) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  double signed_magnitude() {
    const double m = uniform(box_.mag_lo, box_.mag_hi);
    return uniform(0.0, 1.0) < 0.5 ? -m : m;
  }

  PhasePoint point(const PhaseSpace& s) {
    PhasePoint x;
    x.w = uniform(box_.w_lo, box_.w_hi);
    for (int a = 0; a < s.n(); ++a) x.q.push_back(signed_magnitude());
    for (int a = 0; a < s.n(); ++a) x.p.push_back(signed_magnitude());
    return x;
  }

  std::vector<PhasePoint> points(const PhaseSpace& s, std::size_t count) {
    std::vector<PhasePoint> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) out.push_back(point(s));
    return out;
  }

  Eigen::VectorXd vector(std::size_t dim) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = uniform(-1.0, 1.0);
    return v;
  }

  std::vector<double> in_box(const std::vector<std::pair<double, double>>& box) {
    std::vector<double> out;
    for (const auto& [lo, hi] : box) out.push_back(uniform(lo, hi));
    return out;
  }

  /// Sum of `terms` monomials c w^i prod q^j p^k with integer coefficients in
  /// [-3, 3] and total degree at most `max_degree`.
  Expr polynomial(const PhaseSpace& s, int terms = 4, int max_degree = 3) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(s.dim()) - 1);
    std::uniform_int_distribution<int> degree(0, max_degree);
    Expr out;
    for (int t = 0; t < terms; ++t) {
      int c = coeff(rng_);
      if (c == 0) c = 1;
      Expr term = Expr::constant(c);
      const int d = degree(rng_);
      for (int k = 0; k < d; ++k) term = term * var(s.coordinate_name(static_cast<std::size_t>(pick(rng_))));
      out += term;
    }
    return out;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  SamplerBox box_;
};

}  // namespace contactgeo

// Copyright 2026 The anisoap Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "anisoap/errors.hpp"
#include "anisoap/fields.hpp"

using namespace anisoap;
using std::numbers::pi;

namespace {

// Complex-step derivative of a component of the unnormalised field.
// Independent of the dual numbers used inside the library.
double cstep_dx(const DirectionField& b, int comp, double x, double y) {
  const double h = 1e-30;
  using C = std::complex<double>;
  return b.raw(C(x, h), C(y, 0.0))[comp].imag() / h;
}

double cstep_dy(const DirectionField& b, int comp, double x, double y) {
  const double h = 1e-30;
  using C = std::complex<double>;
  return b.raw(C(x, 0.0), C(y, h))[comp].imag() / h;
}

}  // namespace

TEST_CASE("constant b") {
  const DirectionField b = DirectionField::constant();
  const Vec2 v = b(0.3, 0.7);
  CHECK(v[0] == 1.0);
  CHECK(v[1] == 0.0);
  CHECK(b.divergence_raw(0.3, 0.7) == 0.0);
  CHECK(b.is_constant());
}

TEST_CASE("perturbed b at the centre") {
  const DirectionField b = DirectionField::variable(2.0, 1);
  const auto B = b.raw(0.5, 0.5);
  CHECK(B[0] == doctest::Approx(pi));
  CHECK(B[1] == doctest::Approx(-pi / 2));
  const Vec2 v = b(0.5, 0.5);
  CHECK(v[0] == doctest::Approx(2.0 / std::sqrt(5.0)).epsilon(1e-15));
  CHECK(v[1] == doctest::Approx(-1.0 / std::sqrt(5.0)).epsilon(1e-15));

  const DirectionField flat = DirectionField::variable(0.0, 9);
  const Vec2 w = flat(0.123, 0.77);
  CHECK(w[0] == 1.0);
  CHECK(w[1] == 0.0);
}

TEST_CASE("b field rejects alpha >= pi and m < 1") {
  CHECK_THROWS_AS(DirectionField::variable(pi, 1), ConfigError);
  CHECK_THROWS_AS(DirectionField::variable(-4.0, 1), ConfigError);
  CHECK_THROWS_AS(DirectionField::variable(2.0, 0), ConfigError);
}

TEST_CASE("B is divergence free") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int m : {1, 5, 20, 50}) {
    const DirectionField b = DirectionField::variable(2.0, m);
    for (int k = 0; k < 50; ++k) {
      const double x = u(rng), y = u(rng);
      const double oracle = cstep_dx(b, 0, x, y) + cstep_dy(b, 1, x, y);
      CHECK(std::abs(oracle) < 1e-12 * m);
      CHECK(std::abs(b.divergence_raw(x, y)) < 1e-12 * m);
    }
  }
}

TEST_CASE("unit length, periodicity and Jacobian") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int m : {1, 3, 10, 40}) {
    const DirectionField b = DirectionField::variable(2.0, m);
    for (int k = 0; k < 250; ++k) {
      const double x = u(rng), y = u(rng);
      const Vec2 v = b(x, y);
      CHECK(std::abs(std::hypot(v[0], v[1]) - 1.0) < 1e-14);

      const Vec2 w = b(x + 2.0 / m, y);
      // cos(m pi x) loses ~m ulps of the argument
      CHECK(std::abs(w[0] - v[0]) < 1e-14 * (1 + m));
      CHECK(std::abs(w[1] - v[1]) < 1e-14 * (1 + m));
    }
    // Jacobian of the unit field against a complex step (finite differences
    // are too coarse once m is large).
    for (int k = 0; k < 20; ++k) {
      const double x = 0.1 + 0.8 * u(rng), y = 0.1 + 0.8 * u(rng);
      const Mat2 J = b.jacobian(x, y);
      const double h = 1e-30;
      using C = std::complex<double>;
      const auto bx = b.eval(C(x, h), C(y, 0.0));
      const auto by = b.eval(C(x, 0.0), C(y, h));
      const double scale = 1.0 + m * m;
      for (int c = 0; c < 2; ++c) {
        CHECK(std::abs(J[2 * c] - bx[c].imag() / h) < 1e-13 * scale);
        CHECK(std::abs(J[2 * c + 1] - by[c].imag() / h) < 1e-13 * scale);
      }
    }
  }
}

TEST_CASE("stable tanh profile") {
  const EpsilonField e = EpsilonField::tanh_profile(1e-20, 50.0, 0.25);
  CHECK(e.value(-10.0) == doctest::Approx(1.0));
  CHECK(e.value(10.0) == doctest::Approx(1e-20).epsilon(1e-12));

  // 50-digit reference values of 0.5 (1 + t + eps_min (1 - t)), t = tanh(a (x0 - x)).
  CHECK(e.value(0.75) == doctest::Approx(1.0192874984796391778e-20).epsilon(1e-13));
  CHECK(e.value(0.75) / 1e-20 < 1.1);
  CHECK(e.value(0.25) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(e.value(0.3) == doctest::Approx(0.0066928509242848555693).epsilon(1e-13));

  const EpsilonField tiny = EpsilonField::tanh_profile(1e-300, 50.0, 0.25);
  CHECK(tiny.value(1.0) == doctest::Approx(2.6786369618080779441e-33).epsilon(1e-12));
  // the textbook form loses the tail: tanh rounds to -1 and only eps_min is left
  CHECK(tiny.naive_value(1.0) == doctest::Approx(1e-300));

  const EpsilonField mild = EpsilonField::tanh_profile(1e-3, 50.0, 0.25);
  CHECK(mild.value(0.1) == doctest::Approx(0.99999969440367530130).epsilon(1e-14));
  for (double x = 0.0; x <= 1.0; x += 0.05) {
    CHECK(std::abs(mild.value(x) - mild.naive_value(x)) < 1e-12);
    CHECK(mild.value(x) > 0.0);
    CHECK(mild.value(x) <= 1.0);
  }
}

TEST_CASE("tanh profile derivatives") {
  const EpsilonField e = EpsilonField::tanh_profile(1e-2, 50.0, 0.25);
  const double h = 1e-5;
  for (double x : {0.05, 0.2, 0.25, 0.31, 0.6}) {
    const double fd = (e.value(x + h) - e.value(x - h)) / (2 * h);
    CHECK(e.derivative_x(x) == doctest::Approx(fd).epsilon(1e-6));
    CHECK(e.log_derivative_x(x) == doctest::Approx(fd / e.value(x)).epsilon(1e-6));
  }
  // no 1/eps blow-up far into the small-eps region
  const EpsilonField t = EpsilonField::tanh_profile(1e-100, 50.0, 0.25);
  CHECK(std::isfinite(t.log_derivative_x(0.9)));
  CHECK(std::abs(t.log_derivative_x(0.9)) < 200.0);
}

TEST_CASE("eps validation") {
  CHECK_THROWS_AS(EpsilonField::tanh_profile(0.0, 50.0, 0.25), ConfigError);
  CHECK_THROWS_AS(EpsilonField::tanh_profile(-1e-3, 50.0, 0.25), ConfigError);
  CHECK_THROWS_AS(EpsilonField::tanh_profile(1e-3, 0.0, 0.25), ConfigError);
  CHECK_THROWS_AS(EpsilonField::tanh_profile(1e-3, 50.0, 1.0), ConfigError);
  CHECK_THROWS_AS(EpsilonField::constant(-1.0), ConfigError);
  CHECK_NOTHROW(EpsilonField::constant(10.0));
}

TEST_CASE("gradient splitting") {
  AnisotropySpec spec;
  auto s = split_gradient(spec, 0.2, 0.4, {3.0, 4.0});
  CHECK(s.par == Vec2{3.0, 0.0});
  CHECK(s.perp == Vec2{0.0, 4.0});
  s = split_gradient(spec, 0.2, 0.4, {2.5, 0.0});
  CHECK(s.perp == Vec2{0.0, 0.0});

  spec.b = DirectionField::variable(2.0, 1);
  s = split_gradient(spec, 0.5, 0.5, {1.0, 1.0});
  CHECK(s.par[0] == doctest::Approx(0.4));
  CHECK(s.par[1] == doctest::Approx(-0.2));
  CHECK(s.perp[0] == doctest::Approx(0.6));
  CHECK(s.perp[1] == doctest::Approx(1.2));

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0), g(-5.0, 5.0);
  spec.b = DirectionField::variable(2.0, 7);
  for (int k = 0; k < 200; ++k) {
    const double x = u(rng), y = u(rng);
    const Vec2 grad{g(rng), g(rng)};
    const auto sp = split_gradient(spec, x, y, grad);
    const double n2 = grad[0] * grad[0] + grad[1] * grad[1];
    CHECK(std::abs(sp.par[0] + sp.perp[0] - grad[0]) <= 1e-15 * std::sqrt(n2));
    CHECK(std::abs(sp.par[1] + sp.perp[1] - grad[1]) <= 1e-15 * std::sqrt(n2));
    CHECK(std::abs(sp.par[0] * sp.perp[0] + sp.par[1] * sp.perp[1]) <= 1e-14 * n2);
    const auto again = split_gradient(spec, x, y, sp.par);
    CHECK(std::abs(again.par[0] - sp.par[0]) < 1e-14 * std::sqrt(n2));
    CHECK(std::abs(again.perp[0]) < 1e-14 * std::sqrt(n2));
    CHECK(std::abs(again.perp[1]) < 1e-14 * std::sqrt(n2));
  }
}

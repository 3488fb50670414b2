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

#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <utility>

#include "anisoap/dual.hpp"

namespace anisoap {

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<double, 4>;  // row-major

// Unit anisotropy direction b = B/|B| with
//   B = (alpha (2y-1) cos(m pi x) + pi,  m pi alpha (y^2-y) sin(m pi x)).
// alpha = 0 gives the aligned field b = (1, 0). B is divergence free and
// |B| >= pi - |alpha| > 0 whenever |alpha| < pi.
class DirectionField {
 public:
  static DirectionField constant() { return DirectionField(0.0, 1); }
  // Throws ConfigError for |alpha| >= pi or m < 1.
  static DirectionField variable(double alpha, int m);

  double alpha() const { return alpha_; }
  int m() const { return m_; }
  bool is_constant() const { return alpha_ == 0.0; }

  template <class T>
  std::array<T, 2> raw(const T& x, const T& y) const {
    using std::cos;
    using std::sin;
    constexpr double pi = std::numbers::pi;
    const double mpi = m_ * pi;
    return {alpha_ * (2.0 * y - 1.0) * cos(mpi * x) + pi,
            mpi * alpha_ * (y * y - y) * sin(mpi * x)};
  }

  template <class T>
  std::array<T, 2> eval(const T& x, const T& y) const {
    using std::sqrt;
    if (alpha_ == 0.0) return {T(1.0), T(0.0)};
    auto B = raw(x, y);
    const T norm = sqrt(B[0] * B[0] + B[1] * B[1]);
    return {B[0] / norm, B[1] / norm};
  }

  Vec2 operator()(double x, double y) const { return eval(x, y); }

  // Divergence of the unnormalised field B (identically zero analytically).
  double divergence_raw(double x, double y) const;

  // Jacobian of the unit field: {db1/dx, db1/dy, db2/dx, db2/dy}.
  Mat2 jacobian(double x, double y) const;

 private:
  DirectionField(double alpha, int m) : alpha_(alpha), m_(m) {}

  double alpha_;
  int m_;
};

// Anisotropy intensity eps(x). Either a constant (>= 0; zero is the limit
// model) or the smooth step
//   eps(x) = 1/2 [1 + tanh(a(x0-x)) + eps_min (1 - tanh(a(x0-x)))],
// evaluated as sigma(2s) + eps_min sigma(-2s), s = a(x0-x), with a
// one-sided logistic sigma. This form reaches eps_min far below machine
// epsilon instead of stalling at the rounding level of 1 + tanh.
class EpsilonField {
 public:
  enum class Kind { Constant, Tanh };

  static EpsilonField constant(double value);
  static EpsilonField tanh_profile(double eps_min, double a, double x0);

  Kind kind() const { return kind_; }
  bool is_constant() const { return kind_ == Kind::Constant; }
  double constant_value() const { return value_; }
  double eps_min() const { return kind_ == Kind::Constant ? value_ : eps_min_; }
  double steepness() const { return a_; }
  double interface() const { return x0_; }

  template <class T>
  T value(const T& x) const {
    if (kind_ == Kind::Constant) return T(value_);
    const T s = a_ * (x0_ - x);
    return logistic(2.0 * s) + eps_min_ * logistic(-2.0 * s);
  }

  double operator()(double x, double /*y*/) const { return value(x); }

  // d(log eps)/dx in a form that never divides by a tiny eps; the y
  // derivative is zero for both kinds.
  template <class T>
  T log_derivative_x(const T& x) const {
    if (kind_ == Kind::Constant) return T(0.0);
    const T s = a_ * (x0_ - x);
    const T sp = logistic(2.0 * s);
    const T sm = logistic(-2.0 * s);
    return -2.0 * a_ * (1.0 - eps_min_) * sp * sm / (sp + eps_min_ * sm);
  }

  template <class T>
  T derivative_x(const T& x) const {
    if (kind_ == Kind::Constant) return T(0.0);
    const T s = a_ * (x0_ - x);
    return -2.0 * a_ * (1.0 - eps_min_) * logistic(2.0 * s) *
           logistic(-2.0 * s);
  }

  // The textbook expression, accurate only while eps_min is well above the
  // rounding level of 1 + tanh. Kept for cross-checks.
  double naive_value(double x) const;

 private:
  EpsilonField(Kind kind, double value, double eps_min, double a, double x0)
      : kind_(kind), value_(value), eps_min_(eps_min), a_(a), x0_(x0) {}

  template <class T>
  static T logistic(const T& z) {
    using std::exp;
    if (z >= T(0.0)) return 1.0 / (1.0 + exp(-z));
    const T e = exp(z);
    return e / (1.0 + e);
  }

  Kind kind_;
  double value_;
  double eps_min_;
  double a_;
  double x0_;
};

// Diffusion data. Empty coefficient functions mean the defaults
// A_par = 1 and A_perp = Id.
struct AnisotropySpec {
  DirectionField b = DirectionField::constant();
  EpsilonField eps = EpsilonField::constant(1.0);
  std::function<double(double, double)> a_par;
  std::function<Mat2(double, double)> a_perp;

  double a_par_at(double x, double y) const { return a_par ? a_par(x, y) : 1.0; }
  Mat2 a_perp_at(double x, double y) const {
    return a_perp ? a_perp(x, y) : Mat2{1.0, 0.0, 0.0, 1.0};
  }
};

struct SplitGradient {
  Vec2 par;
  Vec2 perp;
};

// grad = (b.grad) b + (Id - b b^T) grad.
SplitGradient split_gradient(const AnisotropySpec& spec, double x, double y,
                             const Vec2& grad);

}  // namespace anisoap

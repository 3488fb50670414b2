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

#include "anisoap/fields.hpp"

#include <cassert>
#include <string>

#include "anisoap/errors.hpp"

namespace anisoap {

DirectionField DirectionField::variable(double alpha, int m) {
  if (!std::isfinite(alpha) || std::abs(alpha) >= std::numbers::pi) {
    throw ConfigError("b field: |alpha| must be below pi so that B != 0");
  }
  if (m < 1) throw ConfigError("b field: m must be a positive integer");
  return DirectionField(alpha, m);
}

double DirectionField::divergence_raw(double x, double y) const {
  const auto bx = raw(Dual(x, 1.0), Dual(y, 0.0));
  const auto by = raw(Dual(x, 0.0), Dual(y, 1.0));
  return bx[0].d + by[1].d;
}

Mat2 DirectionField::jacobian(double x, double y) const {
  const auto dx = eval(Dual(x, 1.0), Dual(y, 0.0));
  const auto dy = eval(Dual(x, 0.0), Dual(y, 1.0));
  return {dx[0].d, dy[0].d, dx[1].d, dy[1].d};
}

EpsilonField EpsilonField::constant(double value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw ConfigError("eps: constant value must be finite and >= 0");
  }
  return EpsilonField(Kind::Constant, value, value, 0.0, 0.0);
}

EpsilonField EpsilonField::tanh_profile(double eps_min, double a, double x0) {
  if (!(eps_min > 0.0) || eps_min > 1.0) {
    throw ConfigError("eps: eps_min must lie in (0, 1]");
  }
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw ConfigError("eps: steepness a must be positive");
  }
  if (!(x0 > 0.0 && x0 < 1.0)) throw ConfigError("eps: x0 must lie in (0, 1)");
  EpsilonField field(Kind::Tanh, 0.0, eps_min, a, x0);
#ifndef NDEBUG
  if (eps_min >= 1e-8) {
    for (double x : {0.0, 0.25, 0.5, 1.0}) {
      assert(std::abs(field.value(x) - field.naive_value(x)) <= 1e-12);
    }
  }
#endif
  return field;
}

double EpsilonField::naive_value(double x) const {
  if (kind_ == Kind::Constant) return value_;
  const double t = std::tanh(a_ * (x0_ - x));
  return 0.5 * (1.0 + t + eps_min_ * (1.0 - t));
}

SplitGradient split_gradient(const AnisotropySpec& spec, double x, double y,
                             const Vec2& grad) {
  const Vec2 b = spec.b(x, y);
  const double bg = b[0] * grad[0] + b[1] * grad[1];
  const Vec2 par{bg * b[0], bg * b[1]};
  return {par, {grad[0] - par[0], grad[1] - par[1]}};
}

}  // namespace anisoap

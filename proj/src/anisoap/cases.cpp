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

#include "anisoap/cases.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "anisoap/dual.hpp"
#include "anisoap/errors.hpp"

namespace anisoap {

namespace {

constexpr double kPi = std::numbers::pi;

template <class T>
struct Sample {
  T value;
  std::array<T, 2> grad;
};

// Phase of the limit solution; its level sets are the field lines of b.
template <class T>
Sample<T> phase(const CaseParams& p, const T& x, const T& y) {
  using std::cos;
  using std::sin;
  const double mpi = p.m * kPi;
  const T c = cos(mpi * x);
  return {kPi * y + p.alpha * (y * y - y) * c,
          {-p.alpha * (y * y - y) * mpi * sin(mpi * x),
           kPi + p.alpha * (2.0 * y - 1.0) * c}};
}

template <class T>
Sample<T> limit_t(const CaseParams& p, const T& x, const T& y) {
  using std::cos;
  using std::sin;
  const auto ph = phase(p, x, y);
  const T c = cos(ph.value);
  return {sin(ph.value), {c * ph.grad[0], c * ph.grad[1]}};
}

template <class T>
Sample<T> micro_t(const T& x, const T& y) {
  using std::cos;
  using std::sin;
  const T cx = cos(2.0 * kPi * x);
  const T sy = sin(kPi * y);
  return {cx * sy, {-2.0 * kPi * sin(2.0 * kPi * x) * sy, kPi * cx * cos(kPi * y)}};
}

template <class T>
std::array<T, 2> flux_t(const TestCase& tc, const T& x, const T& y) {
  const auto& eps = tc.eps();
  const auto b = tc.spec().b.eval(x, y);
  const auto u0 = limit_t(tc.params(), x, y);
  const auto w = micro_t(x, y);
  const T e = eps.value(x);
  const T de = eps.derivative_x(x);
  const T dlog = eps.log_derivative_x(x);

  const std::array<T, 2> grad_u = {u0.grad[0] + e * w.grad[0] + w.value * de,
                                   u0.grad[1] + e * w.grad[1]};
  // (b.grad u) / eps with b.grad u_limit = 0 substituted exactly.
  const T par = b[0] * w.grad[0] + b[1] * w.grad[1] + w.value * b[0] * dlog;
  const T coef = (1.0 - e) * par;
  return {grad_u[0] + coef * b[0], grad_u[1] + coef * b[1]};
}

ScalarSample to_scalar(const Sample<double>& s) {
  return {s.value, {s.grad[0], s.grad[1]}};
}

}  // namespace

TestCase::TestCase(std::string name, CaseFamily family, CaseParams params)
    : name_(std::move(name)), family_(family), params_(params) {
  spec_.b = params_.alpha == 0.0
                ? DirectionField::constant()
                : DirectionField::variable(params_.alpha, params_.m);
  spec_.eps = params_.eps;
}

ScalarSample TestCase::u_limit(double x, double y) const {
  return to_scalar(limit_t(params_, x, y));
}

ScalarSample TestCase::micro(double x, double y) const {
  return to_scalar(micro_t(x, y));
}

ScalarSample TestCase::u_exact(double x, double y) const {
  const auto u0 = limit_t(params_, x, y);
  const auto w = micro_t(x, y);
  const double e = spec_.eps.value(x);
  const double de = spec_.eps.derivative_x(x);
  return {u0.value + e * w.value,
          {u0.grad[0] + e * w.grad[0] + w.value * de, u0.grad[1] + e * w.grad[1]}};
}

ScalarSample TestCase::q_exact(double x, double y) const {
  if (!has_q_exact()) {
    throw std::logic_error("q_exact: no closed form for variable eps");
  }
  // Foot y0 of the field line through (x, y) on x = 0 solves
  //   alpha y0^2 + (pi - alpha) y0 = phase(x, y).
  const auto ph = phase(params_, x, y);
  const double alpha = params_.alpha;
  const double beta = kPi - alpha;
  const double disc = std::max(0.0, beta * beta + 4.0 * alpha * ph.value);
  const double y0 = 2.0 * ph.value / (beta + std::sqrt(disc));
  const double dy0 = 1.0 / (2.0 * alpha * y0 + beta);
  const auto w = micro_t(x, y);
  const double s0 = std::sin(kPi * y0);
  const double c0 = kPi * std::cos(kPi * y0) * dy0;
  return {w.value - s0, {w.grad[0] - c0 * ph.grad[0], w.grad[1] - c0 * ph.grad[1]}};
}

Vec2 TestCase::flux(double x, double y) const { return flux_t(*this, x, y); }

double TestCase::forcing(double x, double y) const {
  const auto fx = flux_t(*this, Dual(x, 1.0), Dual(y, 0.0));
  const auto fy = flux_t(*this, Dual(x, 0.0), Dual(y, 1.0));
  return -(fx[0].d + fy[1].d);
}

double forcing_eval(const TestCase& tc, double x, double y) {
  return tc.forcing(x, y);
}

double forcing_eval_fd(const TestCase& tc, double x, double y, double h_fd) {
  auto d4 = [h_fd](auto&& g) {
    return (-g(2.0 * h_fd) + 8.0 * g(h_fd) - 8.0 * g(-h_fd) + g(-2.0 * h_fd)) /
           (12.0 * h_fd);
  };
  const double dfx = d4([&](double s) { return tc.flux(x + s, y)[0]; });
  const double dfy = d4([&](double s) { return tc.flux(x, y + s)[1]; });
  return -(dfx + dfy);
}

TestCase case_constant_b(const EpsilonField& eps) {
  const auto family =
      eps.is_constant() ? CaseFamily::ConstB : CaseFamily::ConstBVarEps;
  return TestCase(eps.is_constant() ? "const_b" : "const_b_var_eps", family,
                  {0.0, 1, eps});
}

TestCase case_variable_b(double alpha, int m, const EpsilonField& eps) {
  if (!std::isfinite(alpha) || std::abs(alpha) >= kPi) {
    throw ConfigError("case: |alpha| must be below pi");
  }
  if (m < 1) throw ConfigError("case: m must be a positive integer");
  CaseFamily family;
  std::string name;
  if (!eps.is_constant()) {
    family = CaseFamily::VarBVarEps;
    name = "var_b_var_eps";
  } else if (m == 1) {
    family = CaseFamily::VarB;
    name = "var_b";
  } else {
    family = CaseFamily::OscB;
    name = "osc_b";
  }
  return TestCase(name, family, {alpha, m, eps});
}

const std::vector<std::string>& case_names() {
  static const std::vector<std::string> names = {
      "const_b", "var_b", "osc_b", "const_b_var_eps", "var_b_var_eps"};
  return names;
}

bool is_variable_eps_case(std::string_view name) {
  return name == "const_b_var_eps" || name == "var_b_var_eps";
}

TestCase make_case(const CaseRequest& r) {
  if (r.name == "const_b") {
    return case_constant_b(EpsilonField::constant(r.eps));
  }
  if (r.name == "var_b") {
    auto tc = case_variable_b(r.alpha, 1, EpsilonField::constant(r.eps));
    return TestCase("var_b", CaseFamily::VarB, tc.params());
  }
  if (r.name == "osc_b") {
    auto tc = case_variable_b(r.alpha, r.m, EpsilonField::constant(r.eps));
    return TestCase("osc_b", CaseFamily::OscB, tc.params());
  }
  if (r.name == "const_b_var_eps") {
    return case_constant_b(EpsilonField::tanh_profile(r.eps_min, r.a, r.x0));
  }
  if (r.name == "var_b_var_eps") {
    return case_variable_b(r.alpha, r.m,
                           EpsilonField::tanh_profile(r.eps_min, r.a, r.x0));
  }
  throw ConfigError("unknown case '" + r.name + "'");
}

}  // namespace anisoap

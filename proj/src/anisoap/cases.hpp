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

#include <string>
#include <string_view>
#include <vector>

#include "anisoap/fields.hpp"

namespace anisoap {

struct ScalarSample {
  double value;
  Vec2 grad;
};

enum class CaseFamily { ConstB, VarB, OscB, ConstBVarEps, VarBVarEps };

struct CaseParams {
  double alpha = 0.0;
  int m = 1;
  EpsilonField eps = EpsilonField::constant(1.0);
};

// Manufactured solution family
//   u_limit = sin(pi y + alpha (y^2 - y) cos(m pi x))     (constant along b)
//   w       = cos(2 pi x) sin(pi y)
//   u_exact = u_limit + eps(x) w
// with b = B/|B| built from the same alpha, m and A_par = 1, A_perp = Id.
//
// The forcing is -div F with the flux written as
//   F = grad u + (1 - eps) [b.grad w + w b.grad(log eps)] b,
// which is the exact flux A grad u once b.grad u_limit = 0 is used, and
// contains no 1/eps factor. Its divergence is taken with dual numbers.
class TestCase {
 public:
  TestCase(std::string name, CaseFamily family, CaseParams params);

  const std::string& name() const { return name_; }
  CaseFamily family() const { return family_; }
  const CaseParams& params() const { return params_; }
  const AnisotropySpec& spec() const { return spec_; }
  const EpsilonField& eps() const { return spec_.eps; }

  ScalarSample u_exact(double x, double y) const;
  ScalarSample u_limit(double x, double y) const;
  // w in u_exact = u_limit + eps w.
  ScalarSample micro(double x, double y) const;

  // The micro unknown of the two-field scheme: q with eps b.grad q =
  // b.grad u and q = 0 on the inflow side, i.e. q = w - w(foot of the field
  // line on x = 0). Closed form exists for constant eps only.
  bool has_q_exact() const { return spec_.eps.is_constant(); }
  ScalarSample q_exact(double x, double y) const;

  Vec2 flux(double x, double y) const;
  double forcing(double x, double y) const;

 private:
  std::string name_;
  CaseFamily family_;
  CaseParams params_;
  AnisotropySpec spec_;
};

TestCase case_constant_b(const EpsilonField& eps);
TestCase case_variable_b(double alpha, int m, const EpsilonField& eps);

// f at (x, y) via the cancellation-free flux.
double forcing_eval(const TestCase& tc, double x, double y);

// Same quantity with the divergence taken by 4th-order central differences
// of step h_fd. Independent cross-check of the dual-number route.
double forcing_eval_fd(const TestCase& tc, double x, double y,
                       double h_fd = 1e-3);

// Registry used by the CLI: const_b, var_b, osc_b, const_b_var_eps,
// var_b_var_eps. Parameters not used by a family are ignored.
struct CaseRequest {
  std::string name;
  double eps = 1.0;        // constant-eps families
  double eps_min = 1.0;    // variable-eps families
  double a = 50.0;
  double x0 = 0.25;
  double alpha = 2.0;      // ignored by const_b*
  int m = 1;               // used by osc_b and var_b_var_eps
};

const std::vector<std::string>& case_names();
bool is_variable_eps_case(std::string_view name);
TestCase make_case(const CaseRequest& request);

}  // namespace anisoap

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

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "anisoap/assembly.hpp"
#include "anisoap/cases.hpp"
#include "anisoap/schemes.hpp"
#include "dense_oracle.hpp"

using namespace anisoap;
using namespace anisoap::oracle;
using std::numbers::pi;

namespace {

DirectionEval direction_of(const AnisotropySpec& spec) {
  return [&spec](double x, double y) { return spec.b(x, y); };
}

DofMap all_free(const Grid& g) {
  DofMap m;
  for (int n = 0; n < g.num_nodes(); ++n) {
    m.node_to_dof.push_back(n);
    m.dof_to_node.push_back(n);
  }
  return m;
}

double max_diff(const SparseMatrix& S, const Eigen::MatrixXd& D) {
  REQUIRE(S.rows == D.rows());
  REQUIRE(S.cols == D.cols());
  double worst = 0.0;
  for (int i = 0; i < S.rows; ++i) {
    for (int j = 0; j < S.cols; ++j) {
      worst = std::max(worst, std::abs(S.at(i, j) - D(i, j)));
    }
  }
  return worst;
}

std::vector<AnisotropySpec> specs() {
  std::vector<AnisotropySpec> out(3);
  out[1].b = DirectionField::variable(2.0, 1);
  out[1].eps = EpsilonField::constant(1e-3);
  out[2].b = DirectionField::variable(2.0, 3);
  out[2].eps = EpsilonField::tanh_profile(1e-6, 50.0, 0.25);
  return out;
}

}  // namespace

TEST_CASE("dof counts") {
  const auto unit_x = [](double, double) { return std::array<double, 2>{1.0, 0.0}; };
  const Grid g(100, 100);
  const BoundaryClass bc = classify_boundary(g, unit_x);
  CHECK(build_dofmap(g, bc, Space::V).free_count() == 9999);
  CHECK(build_dofmap(g, bc, Space::L).free_count() == 9900);

  const Grid g2(2, 2);
  const DofMap v2 = build_dofmap(g2, classify_boundary(g2, unit_x), Space::V);
  CHECK(v2.free_count() == 3);
  CHECK(v2.dof_to_node == std::vector<int>{3, 4, 5});

  const Grid other(4, 4);
  CHECK_THROWS_AS(build_dofmap(other, bc, Space::V), std::logic_error);
}

TEST_CASE("every form matches the dense oracle on 2x2 and 4x4 grids") {
  const QuadRule rule = gauss_rule();
  for (const AnisotropySpec& spec : specs()) {
    for (int n : {2, 4}) {
      const Grid g(n, n);
      const BoundaryClass bc = classify_boundary(g, direction_of(spec));
      const DofMap V = build_dofmap(g, bc, Space::V);
      const DofMap L = build_dofmap(g, bc, Space::L);
      const auto fv = free_nodes(g, bc, Space::V);
      const auto fl = free_nodes(g, bc, Space::L);
      CHECK(V.dof_to_node == fv);
      CHECK(L.dof_to_node == fl);
      for (FormKind kind : {FormKind::Perp, FormKind::Par, FormKind::ParEpsWeighted,
                            FormKind::ParInvEpsWeighted, FormKind::Mass, FormKind::Laplace}) {
        const Eigen::MatrixXd D = dense_global(g, spec, kind);
        double scale = std::max(1.0, D.cwiseAbs().maxCoeff());
        for (const auto& [rm, rows] : {std::pair{&V, &fv}, std::pair{&L, &fl}}) {
          for (const auto& [cm, cols] : {std::pair{&V, &fv}, std::pair{&L, &fl}}) {
            const SparseMatrix S = assemble_form(g, spec, rule, *rm, *cm, kind);
            Eigen::MatrixXd sub(rows->size(), cols->size());
            for (std::size_t i = 0; i < rows->size(); ++i)
              for (std::size_t j = 0; j < cols->size(); ++j) sub(i, j) = D((*rows)[i], (*cols)[j]);
            CHECK(max_diff(S, sub) <= 1e-13 * scale);
          }
        }
      }
    }
  }
}

TEST_CASE("aligned parallel form is a Kronecker product") {
  // b = (1,0): K_par = K1(x) (x) M1(y) with 1D quadratic stiffness and mass.
  const Grid g(4, 4);
  AnisotropySpec spec;
  const DofMap all = all_free(g);
  const SparseMatrix S = assemble_form(g, spec, gauss_rule(), all, all, FormKind::Par);
  auto one_d = [](int n, double h, bool stiff) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n + 1, n + 1);
    Eigen::Matrix3d k, m;
    k << 7, -8, 1, -8, 16, -8, 1, -8, 7;
    k /= 6.0 * h;
    m << 4, 2, -1, 2, 16, 2, -1, 2, 4;
    m *= h / 15.0;
    for (int e = 0; e < n / 2; ++e) M.block(2 * e, 2 * e, 3, 3) += stiff ? k : m;
    return M;
  };
  const Eigen::MatrixXd Kx = one_d(4, g.hx(), true);
  const Eigen::MatrixXd My = one_d(4, g.hy(), false);
  Eigen::MatrixXd ref(25, 25);
  for (int jr = 0; jr < 5; ++jr)
    for (int ir = 0; ir < 5; ++ir)
      for (int jc = 0; jc < 5; ++jc)
        for (int ic = 0; ic < 5; ++ic) ref(5 * jr + ir, 5 * jc + ic) = Kx(ir, ic) * My(jr, jc);
  CHECK(max_diff(S, ref) <= 1e-13);
}

TEST_CASE("parallel and perpendicular forms add up to the Laplacian") {
  const QuadRule rule = gauss_rule();
  for (const AnisotropySpec& spec : specs()) {
    const Grid g(12, 8);
    const BoundaryClass bc = classify_boundary(g, direction_of(spec));
    const DofMap V = build_dofmap(g, bc, Space::V);
    const SparseMatrix par = assemble_form(g, spec, rule, V, V, FormKind::Par);
    const SparseMatrix perp = assemble_form(g, spec, rule, V, V, FormKind::Perp);
    const SparseMatrix lap = assemble_form(g, spec, rule, V, V, FormKind::Laplace);
    const SparseMatrix diff = add(add(par, 1.0, perp, 1.0), 1.0, lap, -1.0);
    double worst = 0.0;
    for (double v : diff.values) worst = std::max(worst, std::abs(v));
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("mass rows sum to the basis integrals") {
  const Grid g(6, 4);
  const DofMap all = all_free(g);
  const SparseMatrix M = assemble_form(g, AnisotropySpec{}, gauss_rule(), all, all, FormKind::Mass);
  double total = 0.0;
  for (double v : M.values) total += v;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  const auto load = assemble_load(g, [](double, double) { return 1.0; }, gauss_rule(), all);
  for (int i = 0; i < M.rows; ++i) {
    double row = 0.0;
    for (auto k = M.row_ptr[i]; k < M.row_ptr[i + 1]; ++k) row += M.values[k];
    CHECK(row == doctest::Approx(load[i]).epsilon(1e-13));
  }
}

TEST_CASE("stiffness forms are positive semidefinite and symmetric") {
  const QuadRule rule = gauss_rule();
  std::mt19937_64 rng(17);
  std::normal_distribution<double> nd;
  for (const AnisotropySpec& spec : specs()) {
    const Grid g(8, 8);
    const BoundaryClass bc = classify_boundary(g, direction_of(spec));
    const DofMap V = build_dofmap(g, bc, Space::V);
    for (FormKind kind : {FormKind::Par, FormKind::Perp, FormKind::ParEpsWeighted}) {
      const SparseMatrix S = assemble_form(g, spec, rule, V, V, kind);
      CHECK(S.symmetric);
      CHECK(S.max_abs_asymmetry() <= 1e-15);
      const Eigen::MatrixXd D = to_dense(S);
      Eigen::MatrixXd shifted = D + 1e-10 * Eigen::MatrixXd::Identity(D.rows(), D.cols());
      CHECK(Eigen::LLT<Eigen::MatrixXd>(shifted).info() == Eigen::Success);
      for (int t = 0; t < 100; ++t) {
        Eigen::VectorXd x(D.rows());
        for (int i = 0; i < x.size(); ++i) x(i) = nd(rng);
        CHECK(x.dot(D * x) >= -1e-10);
      }
    }
  }
}

TEST_CASE("load vector") {
  const Grid g2(2, 2);
  const auto unit_x = [](double, double) { return std::array<double, 2>{1.0, 0.0}; };
  const DofMap V2 = build_dofmap(g2, classify_boundary(g2, unit_x), Space::V);
  const auto ones = assemble_load(g2, [](double, double) { return 1.0; }, gauss_rule(), V2);
  // free nodes are the middle row; 1D basis integrals are 1/6, 2/3, 1/6
  REQUIRE(ones.size() == 3);
  CHECK(ones[0] == doctest::Approx(1.0 / 9.0).epsilon(1e-13));
  CHECK(ones[1] == doctest::Approx(4.0 / 9.0).epsilon(1e-13));
  CHECK(ones[2] == doctest::Approx(ones[0]).epsilon(1e-13));

  const auto zeros = assemble_load(g2, [](double, double) { return 0.0; }, gauss_rule(), V2);
  for (double v : zeros) CHECK(v == 0.0);

  // f = pi^2 sin(pi y) on 4x4 against a hand-rolled quadrature loop
  const Grid g4(4, 4);
  const DofMap V4 = build_dofmap(g4, classify_boundary(g4, unit_x), Space::V);
  auto f = [](double, double y) { return pi * pi * std::sin(pi * y); };
  const auto load = assemble_load(g4, f, gauss_rule(), V4);
  const double r = std::sqrt(0.6);
  const double qp[3] = {-r, 0.0, r};
  const double qw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  std::vector<double> ref(g4.num_nodes(), 0.0);
  const double h = g4.hx();
  for (int ey = 0; ey < 2; ++ey)
    for (int ex = 0; ex < 2; ++ex)
      for (int qj = 0; qj < 3; ++qj)
        for (int qi = 0; qi < 3; ++qi)
          for (int A = 0; A < 9; ++A) {
            const double y = (2 * ey + 1 + qp[qj]) * h;
            ref[g4.node(2 * ex + A % 3, 2 * ey + A / 3)] +=
                qw[qi] * qw[qj] * h * h * f(0.0, y) * lag(A % 3, qp[qi]) * lag(A / 3, qp[qj]);
          }
  for (int d = 0; d < V4.free_count(); ++d) {
    CHECK(std::abs(load[d] - ref[V4.dof_to_node[d]]) <= 1e-13);
  }
}

TEST_CASE("sparsity counts match the element connectivity") {
  // Count coupled free pairs by brute force and compare with stored entries.
  const TestCase tc = case_constant_b(EpsilonField::constant(1e-6));
  const Grid g(20, 20);
  const SchemeSystem mm = assemble_scheme(SchemeKind::MM, g, tc, gauss_rule());
  const SchemeSystem p = assemble_scheme(SchemeKind::P, g, tc, gauss_rule());
  auto pairs = [&](const DofMap& r, const DofMap& c) {
    std::set<std::pair<int, int>> s;
    for (int ey = 0; ey < g.elements_y(); ++ey)
      for (int ex = 0; ex < g.elements_x(); ++ex) {
        const auto e = g.element_nodes(ex, ey);
        for (int a : e)
          for (int b : e)
            if (r.is_free(a) && c.is_free(b)) s.insert({a, b});
      }
    return static_cast<std::int64_t>(s.size());
  };
  const auto vv = pairs(mm.v_map, mm.v_map);
  const auto vl = pairs(mm.v_map, mm.l_map);
  const auto ll = pairs(mm.l_map, mm.l_map);
  CHECK(p.matrix->nnz() == vv);
  CHECK(mm.matrix->nnz() == vv + 2 * vl + ll);
  CHECK(mm.matrix->rows == mm.v_map.free_count() + mm.l_map.free_count());

  // no stray entries: every stored column index is sorted within its row
  for (int i = 0; i < mm.matrix->rows; ++i) {
    for (auto k = mm.matrix->row_ptr[i] + 1; k < mm.matrix->row_ptr[i + 1]; ++k) {
      CHECK(mm.matrix->col_idx[k - 1] < mm.matrix->col_idx[k]);
    }
  }
}

TEST_CASE("expand_to_nodes") {
  const Grid g(2, 2);
  const auto unit_x = [](double, double) { return std::array<double, 2>{1.0, 0.0}; };
  const DofMap V = build_dofmap(g, classify_boundary(g, unit_x), Space::V);
  const std::vector<double> d{1.0, 2.0, 3.0};
  const auto nodal = expand_to_nodes(V, d);
  CHECK(nodal == std::vector<double>{0, 0, 0, 1, 2, 3, 0, 0, 0});
  CHECK_THROWS_AS(expand_to_nodes(V, std::vector<double>{1.0}), std::logic_error);
}

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

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "anisoap/assembly.hpp"

namespace anisoap::oracle {

// Brute-force reference: global dense matrix over all nodes, then rows and
// columns picked out of it. Basis, quadrature and the coefficient algebra
// are written out here independently of the library.
inline double lag(int a, double t) {
  return a == 0 ? 0.5 * t * (t - 1) : a == 1 ? (1 - t) * (1 + t) : 0.5 * t * (t + 1);
}
inline double dlag(int a, double t) { return a == 0 ? t - 0.5 : a == 1 ? -2 * t : t + 0.5; }

inline Eigen::MatrixXd dense_global(const Grid& g, const AnisotropySpec& spec, FormKind kind) {
  const int N = g.num_nodes();
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(N, N);
  const double r = std::sqrt(0.6);
  const double qp[3] = {-r, 0.0, r};
  const double qw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  const double hx = g.hx(), hy = g.hy();
  for (int ey = 0; ey < g.ny() / 2; ++ey) {
    for (int ex = 0; ex < g.nx() / 2; ++ex) {
      for (int qj = 0; qj < 3; ++qj) {
        for (int qi = 0; qi < 3; ++qi) {
          const double xi = qp[qi], eta = qp[qj];
          const double x = (2 * ex + 1 + xi) * hx, y = (2 * ey + 1 + eta) * hy;
          const double w = qw[qi] * qw[qj] * hx * hy;
          const Vec2 b = spec.b(x, y);
          const double e = spec.eps(x, y);
          for (int A = 0; A < 9; ++A) {
            const int ia = 2 * ex + A % 3, ja = 2 * ey + A / 3;
            const double va = lag(A % 3, xi) * lag(A / 3, eta);
            const double gax = dlag(A % 3, xi) * lag(A / 3, eta) / hx;
            const double gay = lag(A % 3, xi) * dlag(A / 3, eta) / hy;
            for (int B = 0; B < 9; ++B) {
              const int ib = 2 * ex + B % 3, jb = 2 * ey + B / 3;
              const double vb = lag(B % 3, xi) * lag(B / 3, eta);
              const double gbx = dlag(B % 3, xi) * lag(B / 3, eta) / hx;
              const double gby = lag(B % 3, xi) * dlag(B / 3, eta) / hy;
              const double pa = b[0] * gax + b[1] * gay;
              const double pb = b[0] * gbx + b[1] * gby;
              double val = 0.0;
              switch (kind) {
                case FormKind::Mass: val = va * vb; break;
                case FormKind::Laplace: val = gax * gbx + gay * gby; break;
                case FormKind::Par: val = pa * pb; break;
                case FormKind::ParEpsWeighted: val = e * pa * pb; break;
                case FormKind::ParInvEpsWeighted: val = pa * pb / e; break;
                case FormKind::Perp:
                  val = (gax - pa * b[0]) * (gbx - pb * b[0]) +
                        (gay - pa * b[1]) * (gby - pb * b[1]);
                  break;
              }
              K(g.node(ia, ja), g.node(ib, jb)) += w * val;
            }
          }
        }
      }
    }
  }
  return K;
}

inline std::vector<int> free_nodes(const Grid& g, const BoundaryClass& bc, Space s) {
  std::vector<int> out;
  for (int n = 0; n < g.num_nodes(); ++n) {
    const auto k = bc.node[n];
    if (k == BoundaryKind::Dirichlet) continue;
    if (s == Space::L && k == BoundaryKind::Inflow) continue;
    out.push_back(n);
  }
  return out;
}

inline Eigen::MatrixXd to_dense(const SparseMatrix& S) {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(S.rows, S.cols);
  for (int i = 0; i < S.rows; ++i) {
    for (auto k = S.row_ptr[i]; k < S.row_ptr[i + 1]; ++k) D(i, S.col_idx[k]) += S.values[k];
  }
  return D;
}

}  // namespace anisoap::oracle

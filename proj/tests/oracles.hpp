// Brute-force reference implementations used only by tests.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "ctxembed/graph.hpp"

namespace oracle {

// One-sided (Hestenes) Jacobi SVD. Returns singular values in decreasing order.
inline Eigen::VectorXd jacobi_singular_values(Eigen::MatrixXd a) {
  if (a.rows() < a.cols()) a.transposeInPlace();
  const Eigen::Index n = a.cols();
  const double eps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const double alpha = a.col(i).squaredNorm();
        const double beta = a.col(j).squaredNorm();
        const double gamma = a.col(i).dot(a.col(j));
        if (std::abs(gamma) <= eps * std::sqrt(alpha * beta) || gamma == 0.0) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        Eigen::VectorXd ci = a.col(i);
        a.col(i) = c * ci - s * a.col(j);
        a.col(j) = s * ci + c * a.col(j);
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sv(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) sv[static_cast<std::size_t>(i)] = a.col(i).norm();
  std::sort(sv.rbegin(), sv.rend());
  return Eigen::Map<Eigen::VectorXd>(sv.data(), n);
}

// Eckart-Young: best rank-d Frobenius residual.
inline double optimal_residual(const Eigen::MatrixXd& c, Eigen::Index d) {
  const Eigen::VectorXd s = jacobi_singular_values(c);
  double tail = 0.0;
  for (Eigen::Index i = d; i < s.size(); ++i) tail += s[i] * s[i];
  return std::sqrt(tail);
}

// Katz closed form (I - beta A)^-1 - I.
inline Eigen::MatrixXd katz_closed_form(const ctxembed::Graph& g, double beta) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (ctxembed::NodeId u = 0; u < g.node_count(); ++u) {
    for (ctxembed::NodeId v : g.out_neighbors(u)) a(u, v) = g.edge_weight(u, v);
  }
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  return (id - beta * a).inverse() - id;
}

// Floyd-Warshall diameter of the largest component of the undirected view.
inline int apsp_diameter(const ctxembed::Graph& g) {
  const std::size_t n = g.node_count();
  const int inf = std::numeric_limits<int>::max() / 4;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (std::size_t u = 0; u < n; ++u) {
    d[u][u] = 0;
    for (auto v : g.out_neighbors(static_cast<ctxembed::NodeId>(u))) d[u][v] = d[v][u] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  // Largest component by reachability counts.
  std::size_t best = 0, best_size = 0;
  for (std::size_t u = 0; u < n; ++u) {
    std::size_t size = 0;
    for (std::size_t v = 0; v < n; ++v) size += d[u][v] < inf;
    if (size > best_size) best_size = size, best = u;
  }
  int diam = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (d[best][i] >= inf) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (d[best][j] < inf) diam = std::max(diam, d[i][j]);
  }
  return diam;
}

}  // namespace oracle

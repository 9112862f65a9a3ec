#pragma once

#include <Eigen/Dense>

#include "routeq/network.hpp"

namespace routeq {

// Path-space cost model C(f) = A f + beta assembled from a network and its
// path list. A = B^T Q B where B is the edge-path incidence matrix and Q the
// diagonal of edge cost slopes, so A is symmetric positive semi-definite.
struct PathCostModel {
  std::vector<Path> paths;
  Eigen::MatrixXd A;            // n x n, A(p,r) = sum of alpha over shared edges
  Eigen::VectorXd beta;         // n, beta(p) = sum of beta over edges of p
  Eigen::MatrixXd incidence;    // q x n, 0/1 edge-path incidence (B)
  Eigen::VectorXd edge_slopes;  // q, diagonal of Q

  int path_count() const { return static_cast<int>(paths.size()); }
  int edge_count() const { return static_cast<int>(incidence.rows()); }

  Eigen::VectorXd costs(const Eigen::VectorXd& f) const { return A * f + beta; }
};

PathCostModel build_cost_model(const Network& net, const std::vector<Path>& paths);

// Edge flow B f induced by a path flow f.
Eigen::VectorXd edge_flow(const PathCostModel& model, const Eigen::VectorXd& f);

// Index of the path with the given edge sequence, or -1.
int find_path(const PathCostModel& model, const std::vector<int>& edges);

}  // namespace routeq

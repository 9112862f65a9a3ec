#include "routeq/cost_model.hpp"

namespace routeq {

PathCostModel build_cost_model(const Network& net, const std::vector<Path>& paths) {
  const int n = static_cast<int>(paths.size());
  const int q = static_cast<int>(net.edges.size());
  PathCostModel m;
  m.paths = paths;
  m.incidence = Eigen::MatrixXd::Zero(q, n);
  m.edge_slopes = Eigen::VectorXd::Zero(q);
  m.beta = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < q; ++k) m.edge_slopes(k) = net.edges[k].alpha;
  for (int p = 0; p < n; ++p) {
    for (int k : paths[p].edges) {
      m.incidence(k, p) = 1.0;
      m.beta(p) += net.edges[k].beta;
    }
  }
  m.A = m.incidence.transpose() * m.edge_slopes.asDiagonal() * m.incidence;
  // Symmetrize away the last bits of rounding; downstream code assumes
  // A == A^T exactly.
  m.A = ((m.A + m.A.transpose()) * 0.5).eval();
  return m;
}

Eigen::VectorXd edge_flow(const PathCostModel& model, const Eigen::VectorXd& f) {
  if (f.size() != model.path_count())
    throw DimensionMismatch("edge_flow: flow vector has length " +
                            std::to_string(f.size()) + ", expected " +
                            std::to_string(model.path_count()));
  return model.incidence * f;
}

int find_path(const PathCostModel& model, const std::vector<int>& edges) {
  for (int p = 0; p < model.path_count(); ++p)
    if (model.paths[p].edges == edges) return p;
  return -1;
}

}  // namespace routeq

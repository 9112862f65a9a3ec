#pragma once

#include "routeq/cost_model.hpp"
#include "routeq/network.hpp"

// The four bundled example networks, defined in code for unit tests (the
// acceptance suite loads the same networks from data files). Each fixture
// resolves its conventional path labels against the enumeration order so
// tests never hardcode enumeration indices.

namespace fixtures {

struct Net {
  routeq::Network network;
  routeq::PathCostModel model;
  // Conventional labels: index of the path with the given edge sequence.
  int p1 = -1, p2 = -1, p3 = -1, p4 = -1;
};

// Diamond with a zero-cost shortcut: e1:0->1 (z), e2:1->3 (1), e3:0->2 (1),
// e4:2->3 (z), e5:1->2 (0). p1=(e1,e2), p2=(e3,e4), p3=(e1,e5,e4).
inline Net wheatstone() {
  Net f;
  f.network.vertex_count = 4;
  f.network.edges = {
      {0, 1, 1.0, 0.0}, {1, 3, 0.0, 1.0}, {0, 2, 0.0, 1.0},
      {2, 3, 1.0, 0.0}, {1, 2, 0.0, 0.0},
  };
  f.network.origin = 0;
  f.network.destination = 3;
  f.model = routeq::build_cost_model(f.network, routeq::enumerate_paths(f.network));
  f.p1 = routeq::find_path(f.model, {0, 1});
  f.p2 = routeq::find_path(f.model, {2, 3});
  f.p3 = routeq::find_path(f.model, {0, 4, 3});
  return f;
}

// Same costs with the two middle vertices fused: two parallel arcs on each
// of the two hops, four paths, non-unique equilibria.
inline Net merged() {
  Net f;
  f.network.vertex_count = 3;
  f.network.edges = {
      {0, 1, 1.0, 0.0}, {1, 2, 0.0, 1.0}, {0, 1, 0.0, 1.0}, {1, 2, 1.0, 0.0},
  };
  f.network.origin = 0;
  f.network.destination = 2;
  f.model = routeq::build_cost_model(f.network, routeq::enumerate_paths(f.network));
  f.p1 = routeq::find_path(f.model, {0, 1});
  f.p2 = routeq::find_path(f.model, {2, 3});
  f.p3 = routeq::find_path(f.model, {0, 3});
  f.p4 = routeq::find_path(f.model, {2, 1});
  return f;
}

// Wheatstone plus a constant-cost bypass edge e6:0->3 (2.1), p4=(e6).
inline Net parallel_path() {
  Net f;
  f.network.vertex_count = 4;
  f.network.edges = {
      {0, 1, 1.0, 0.0}, {1, 3, 0.0, 1.0}, {0, 2, 0.0, 1.0},
      {2, 3, 1.0, 0.0}, {1, 2, 0.0, 0.0}, {0, 3, 0.0, 2.1},
  };
  f.network.origin = 0;
  f.network.destination = 3;
  f.model = routeq::build_cost_model(f.network, routeq::enumerate_paths(f.network));
  f.p1 = routeq::find_path(f.model, {0, 1});
  f.p2 = routeq::find_path(f.model, {2, 3});
  f.p3 = routeq::find_path(f.model, {0, 4, 3});
  f.p4 = routeq::find_path(f.model, {5});
  return f;
}

// Seven-edge network with a path that drops out of use and comes back:
// e1:0->1 (2z), e2:1->4 (z+1), e3:0->2 (z+1), e4:3->4 (2z), e5:1->3 (0),
// e6:2->4 (z+5), e7:2->3 (z). p1=(e1,e2), p2=(e3,e7,e4), p3=(e1,e5,e4),
// p4=(e3,e6).
inline Net seven_edge() {
  Net f;
  f.network.vertex_count = 5;
  f.network.edges = {
      {0, 1, 2.0, 0.0}, {1, 4, 1.0, 1.0}, {0, 2, 1.0, 1.0}, {3, 4, 2.0, 0.0},
      {1, 3, 0.0, 0.0}, {2, 4, 1.0, 5.0}, {2, 3, 1.0, 0.0},
  };
  f.network.origin = 0;
  f.network.destination = 4;
  f.model = routeq::build_cost_model(f.network, routeq::enumerate_paths(f.network));
  f.p1 = routeq::find_path(f.model, {0, 1});
  f.p2 = routeq::find_path(f.model, {2, 6, 3});
  f.p3 = routeq::find_path(f.model, {0, 4, 3});
  f.p4 = routeq::find_path(f.model, {2, 5});
  return f;
}

// Flow vector from (label, value) pairs in enumeration order.
inline Eigen::VectorXd flow_of(const Net& net, std::initializer_list<std::pair<int, double>> parts) {
  Eigen::VectorXd f = Eigen::VectorXd::Zero(net.model.path_count());
  for (auto [p, v] : parts) f(p) = v;
  return f;
}

}  // namespace fixtures

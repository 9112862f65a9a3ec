#pragma once

#include <vector>

#include "routeq/errors.hpp"
#include "routeq/types.hpp"

namespace routeq {

// Directed edge with affine traversal cost alpha * flow + beta.
struct Edge {
  int tail = 0;
  int head = 0;
  double alpha = 0.0;
  double beta = 0.0;
};

// Directed network with one origin-destination pair. Immutable after
// validation; safe to share across threads.
struct Network {
  int vertex_count = 0;
  std::vector<Edge> edges;
  int origin = 0;
  int destination = 0;
};

// Origin-destination path as an ordered list of edge indices. Always simple:
// consecutive edges chain head-to-tail and no vertex repeats.
struct Path {
  std::vector<int> edges;

  bool operator==(const Path&) const = default;
};

// Throws ValidationError on negative cost coefficients, dangling vertex ids,
// self-loops, or origin == destination. Parallel edges are fine.
void validate_network(const Network& net);

// All simple origin->destination paths in lexicographic order of their edge
// index sequences. Throws PathExplosion if more than `cap` paths exist and
// NoPath if there are none.
std::vector<Path> enumerate_paths(const Network& net, long cap = 10000);

// Re-walks a path through the network and checks simplicity; used by tests
// and input validation of externally supplied path lists.
bool is_simple_od_path(const Network& net, const Path& path);

}  // namespace routeq

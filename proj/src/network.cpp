#include "routeq/network.hpp"

#include <algorithm>
#include <string>

namespace routeq {

void validate_network(const Network& net) {
  if (net.vertex_count <= 0) throw ValidationError("network has no vertices");
  auto check_vertex = [&](int v, const char* what) {
    if (v < 0 || v >= net.vertex_count)
      throw ValidationError(std::string(what) + " vertex id " + std::to_string(v) +
                            " out of range [0," + std::to_string(net.vertex_count - 1) + "]");
  };
  check_vertex(net.origin, "origin");
  check_vertex(net.destination, "destination");
  if (net.origin == net.destination)
    throw ValidationError("origin and destination coincide");
  if (net.edges.empty()) throw ValidationError("network has no edges");
  for (size_t k = 0; k < net.edges.size(); ++k) {
    const Edge& e = net.edges[k];
    check_vertex(e.tail, "edge tail");
    check_vertex(e.head, "edge head");
    if (e.tail == e.head)
      throw ValidationError("edge " + std::to_string(k) +
                            " is a self-loop; it can never lie on a simple path");
    if (e.alpha < 0.0)
      throw ValidationError("edge " + std::to_string(k) + " has negative cost slope");
    if (e.beta < 0.0)
      throw ValidationError("edge " + std::to_string(k) + " has negative cost offset");
  }
}

namespace {

struct PathDfs {
  const Network& net;
  long cap;
  std::vector<std::vector<int>> out_edges;  // per vertex, ascending edge index
  std::vector<char> visited;
  std::vector<int> stack;
  std::vector<Path> found;

  explicit PathDfs(const Network& n, long c) : net(n), cap(c) {
    out_edges.resize(net.vertex_count);
    for (size_t k = 0; k < net.edges.size(); ++k)
      out_edges[net.edges[k].tail].push_back(static_cast<int>(k));
    visited.assign(net.vertex_count, 0);
  }

  void run(int v) {
    if (v == net.destination) {
      if (static_cast<long>(found.size()) >= cap)
        throw PathExplosion(static_cast<long>(found.size()) + 1, cap);
      found.push_back(Path{stack});
      return;
    }
    visited[v] = 1;
    for (int k : out_edges[v]) {
      int w = net.edges[k].head;
      if (visited[w]) continue;
      stack.push_back(k);
      run(w);
      stack.pop_back();
    }
    visited[v] = 0;
  }
};

}  // namespace

std::vector<Path> enumerate_paths(const Network& net, long cap) {
  validate_network(net);
  PathDfs dfs(net, cap);
  dfs.visited[net.destination] = 0;
  dfs.run(net.origin);
  if (dfs.found.empty()) throw NoPath("no origin->destination path exists");
  // DFS explores out-edges in ascending index order, so the result is already
  // lexicographic in the edge index sequences.
  return dfs.found;
}

bool is_simple_od_path(const Network& net, const Path& path) {
  if (path.edges.empty()) return false;
  std::vector<char> seen(net.vertex_count, 0);
  int at = net.origin;
  seen[at] = 1;
  for (int k : path.edges) {
    if (k < 0 || k >= static_cast<int>(net.edges.size())) return false;
    const Edge& e = net.edges[k];
    if (e.tail != at) return false;
    at = e.head;
    if (seen[at]) return false;
    seen[at] = 1;
  }
  return at == net.destination;
}

}  // namespace routeq

#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace routeq {

// Two-tier tolerances: kkt/feas govern the solvers, classify governs
// combinatorial decisions (active/used membership) so solver noise cannot
// flip a classification.
struct Tolerances {
  double kkt = 1e-9;
  double feas = 1e-9;
  double classify = 1e-7;
};

// Sorted list of path indices (0-based). Used for active/used/removed sets.
using PathSet = std::vector<int>;

inline bool contains(const PathSet& s, int p) {
  return std::binary_search(s.begin(), s.end(), p);
}

inline PathSet complement(const PathSet& s, int n) {
  PathSet out;
  out.reserve(n - s.size());
  for (int p = 0; p < n; ++p)
    if (!contains(s, p)) out.push_back(p);
  return out;
}

inline PathSet set_union(const PathSet& a, const PathSet& b) {
  PathSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline PathSet set_minus(const PathSet& a, const PathSet& b) {
  PathSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool is_subset(const PathSet& a, const PathSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Human-readable 1-based path labels, e.g. "{p1,p3}".
inline std::string format_path_set(const PathSet& s) {
  std::string out = "{";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += "p" + std::to_string(s[i] + 1);
  }
  return out + "}";
}

}  // namespace routeq

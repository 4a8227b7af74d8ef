#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rce/codec.hpp"
#include "rce/weights.hpp"

namespace rce {

// Simple undirected graph on vertices [0, num_vertices).
class Graph {
 public:
  explicit Graph(std::size_t num_vertices = 0) : num_vertices_(num_vertices) {}
  // Throws PreconditionError on self-loops, duplicates or out-of-range endpoints.
  Graph(std::size_t num_vertices, std::vector<std::pair<std::size_t, std::size_t>> edges);

  std::size_t num_vertices() const noexcept { return num_vertices_; }
  // Edges as (u, v) with u < v, sorted.
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }
  std::size_t degree(std::size_t v) const;
  bool adjacent(std::size_t u, std::size_t v) const;

 private:
  std::size_t num_vertices_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

// Graph file: a line with the vertex count, then one "u v" edge per line.
Graph parse_graph(std::string_view text);
std::string format_graph(const Graph& g);

inline constexpr std::size_t kMaxIndependentSetVertices = 24;

// Exhaustive bitmask search; refuses (BudgetExceeded) above 24 vertices.
bool has_independent_set(const Graph& g, std::size_t kappa);

struct ReductionOutput {
  RceInstance instance;
  std::vector<CandidateId> vertex_candidates;  // vertex -> candidate
  std::vector<CandidateId> dummies;            // D, |D| = kappa
  std::vector<CandidateId> padding;            // F, s - 1 universally approved candidates
  std::size_t t = 0;                           // voters per group unit, ceil(2 / (1 - alpha))
  std::size_t s_pad = 0;                       // s - 1
};

// Independent-set instance (g, kappa) -> RCE instance whose committee F ∪ D
// wins in `after` iff g has no independent set of size kappa. Candidates are
// numbered vertices first, then D, then F. `after` drops the approval of the
// lowest-index dummy from the first voter approving it together with vertex 0.
// Throws ConfigError for AV weights; the weight vector must cover k = kappa + s - 1
// and lambda(s + 1).
ReductionOutput reduce_is_to_rce(const Graph& g, std::size_t kappa, const OwaWeights& w,
                                 std::size_t ell = 0);

}  // namespace rce

#include "rce/reductions.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>

#include "rce/errors.hpp"

namespace rce {

Graph::Graph(std::size_t num_vertices, std::vector<std::pair<std::size_t, std::size_t>> edges)
    : num_vertices_(num_vertices), edges_(std::move(edges)) {
  for (auto& [u, v] : edges_) {
    if (u >= num_vertices_ || v >= num_vertices_) throw PreconditionError("edge endpoint out of range");
    if (u == v) throw PreconditionError("self-loop on vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw PreconditionError("duplicate edge");
  }
}

std::size_t Graph::degree(std::size_t v) const {
  return static_cast<std::size_t>(std::count_if(edges_.begin(), edges_.end(), [v](const auto& e) {
    return e.first == v || e.second == v;
  }));
}

bool Graph::adjacent(std::size_t u, std::size_t v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(u, v));
}

Graph parse_graph(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t num_vertices = 0;
  bool have_header = false;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    std::vector<std::size_t> values;
    std::size_t i = 0;
    while (i < line.size()) {
      if (line[i] == ' ' || line[i] == '\t') {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      std::size_t value = 0;
      auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, value);
      if (ec != std::errc{} || ptr != line.data() + j) {
        throw ParseError(line_no, "non-numeric token '" + std::string(line.substr(i, j - i)) + "'");
      }
      values.push_back(value);
      i = j;
    }
    if (!have_header) {
      if (values.size() != 1) throw ParseError(line_no, "first line must hold the vertex count");
      num_vertices = values[0];
      have_header = true;
    } else {
      if (values.size() != 2) throw ParseError(line_no, "edge lines must be 'u v'");
      edges.emplace_back(values[0], values[1]);
    }
  }
  if (!have_header) throw ParseError(0, "missing vertex count");
  try {
    return Graph(num_vertices, std::move(edges));
  } catch (const PreconditionError& err) {
    throw ParseError(0, err.what());
  }
}

std::string format_graph(const Graph& g) {
  std::string out = std::to_string(g.num_vertices()) + "\n";
  for (const auto& [u, v] : g.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

bool has_independent_set(const Graph& g, std::size_t kappa) {
  const std::size_t nv = g.num_vertices();
  if (nv > kMaxIndependentSetVertices) {
    throw BudgetExceeded("independent-set oracle supports at most " +
                         std::to_string(kMaxIndependentSetVertices) + " vertices");
  }
  if (kappa == 0) return true;
  if (kappa > nv) return false;
  std::vector<std::uint32_t> neighbours(nv, 0);
  for (const auto& [u, v] : g.edges()) {
    neighbours[u] |= std::uint32_t{1} << v;
    neighbours[v] |= std::uint32_t{1} << u;
  }
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << nv); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != kappa) continue;
    bool independent = true;
    for (std::size_t v = 0; v < nv && independent; ++v) {
      if ((mask >> v) & 1u) independent = (neighbours[v] & mask) == 0;
    }
    if (independent) return true;
  }
  return false;
}

ReductionOutput reduce_is_to_rce(const Graph& g, std::size_t kappa, const OwaWeights& w,
                                 std::size_t ell) {
  const std::size_t s = w.unit_prefix();
  if (s == w.size()) {
    throw ConfigError(w.is_av() && w.size() > 1
                          ? "reduction undefined for AV"
                          : "reduction undefined for AV (or the weight vector is too short to tell)");
  }
  if (kappa == 0) throw PreconditionError("kappa must be at least 1");
  const std::size_t nv = g.num_vertices();
  if (nv == 0) throw PreconditionError("graph must have at least one vertex");
  const std::size_t k = kappa + s - 1;
  if (w.size() < k) throw ConfigError("weight vector shorter than the committee size");
  if (ell > k) throw PreconditionError("ell exceeds k");

  // t = ceil(2 / (1 - alpha)) with alpha = lambda(s + 1) < 1.
  const Rational gap = Rational(1) - w.weight(s + 1);
  const std::int64_t num = 2 * gap.denominator();
  const std::int64_t den = gap.numerator();
  const auto t = static_cast<std::size_t>((num + den - 1) / den);

  ReductionOutput out;
  out.t = t;
  out.s_pad = s - 1;
  for (std::size_t v = 0; v < nv; ++v) out.vertex_candidates.push_back(static_cast<CandidateId>(v));
  for (std::size_t i = 0; i < kappa; ++i) out.dummies.push_back(static_cast<CandidateId>(nv + i));
  for (std::size_t i = 0; i + 1 < s; ++i) out.padding.push_back(static_cast<CandidateId>(nv + kappa + i));
  const std::size_t m = nv + kappa + s - 1;

  std::vector<Ballot> ballots;
  auto add_voters = [&](std::size_t count, Ballot ballot) {
    ballot.insert(ballot.end(), out.padding.begin(), out.padding.end());
    for (std::size_t i = 0; i < count; ++i) ballots.push_back(ballot);
  };
  for (const auto& [u, v] : g.edges()) add_voters(t, {out.vertex_candidates[u], out.vertex_candidates[v]});
  for (std::size_t v = 0; v < nv; ++v) add_voters((nv - g.degree(v)) * t, {out.vertex_candidates[v]});
  const std::size_t removed_voter = ballots.size();
  for (CandidateId d : out.dummies) {
    for (std::size_t v = 0; v < nv; ++v) add_voters(t, {out.vertex_candidates[v], d});
  }
  for (CandidateId d : out.dummies) add_voters(kappa * t, {d});

  std::vector<Ballot> after = ballots;
  Ballot& changed = after[removed_voter];
  changed.erase(std::find(changed.begin(), changed.end(), out.dummies.front()));

  std::vector<CandidateId> committee = out.dummies;
  committee.insert(committee.end(), out.padding.begin(), out.padding.end());
  out.instance.before = Election(m, std::move(ballots));
  out.instance.after = Election(m, std::move(after));
  out.instance.k = k;
  out.instance.committee = Committee(std::move(committee));
  out.instance.ell = ell;
  return out;
}

}  // namespace rce

#include "rce/marginals.hpp"

#include <algorithm>

#include "rce/errors.hpp"

namespace rce {

MarginalTracker::MarginalTracker(const Election& e, const OwaWeights& w)
    : election_(&e),
      capacity_(w.size()),
      counts_(e.num_voters(), 0),
      marginals_(e.num_candidates(), 0),
      selected_(e.num_candidates(), 0) {
  steps_.assign(w.size() + 1, 0);
  for (std::size_t j = 1; j <= w.size(); ++j) steps_[j] = w.scaled(j);
  for (CandidateId c = 0; c < e.num_candidates(); ++c) {
    marginals_[c] = static_cast<std::int64_t>(e.approvers(c).size()) * steps_[1];
  }
}

void MarginalTracker::add(CandidateId c) {
  if (selected_[c]) throw PreconditionError("candidate already selected");
  if (size_ >= capacity_) throw ConfigError("selection exceeds the OWA vector length");
  const Election& e = *election_;
  for (VoterId v : e.approvers(c)) {
    std::uint32_t count = counts_[v]++;
    score_ += step(count + 1);
    std::int64_t delta = step(count + 2) - step(count + 1);
    if (delta == 0) continue;
    for (CandidateId d : e.ballot(v)) marginals_[d] += delta;
  }
  selected_[c] = 1;
  ++size_;
}

void MarginalTracker::remove(CandidateId c) {
  if (!selected_[c]) throw PreconditionError("candidate not selected");
  const Election& e = *election_;
  for (VoterId v : e.approvers(c)) {
    std::uint32_t count = --counts_[v];
    score_ -= step(count + 1);
    std::int64_t delta = step(count + 2) - step(count + 1);
    if (delta == 0) continue;
    for (CandidateId d : e.ballot(v)) marginals_[d] -= delta;
  }
  selected_[c] = 0;
  --size_;
}

std::int64_t MarginalTracker::max_marginal() const {
  std::int64_t best = 0;
  bool any = false;
  for (CandidateId c = 0; c < marginals_.size(); ++c) {
    if (selected_[c]) continue;
    if (!any || marginals_[c] > best) best = marginals_[c];
    any = true;
  }
  return best;
}

std::vector<CandidateId> MarginalTracker::argmax() const {
  std::vector<CandidateId> result;
  std::int64_t best = 0;
  for (CandidateId c = 0; c < marginals_.size(); ++c) {
    if (selected_[c]) continue;
    if (result.empty() || marginals_[c] > best) {
      best = marginals_[c];
      result.assign(1, c);
    } else if (marginals_[c] == best) {
      result.push_back(c);
    }
  }
  return result;
}

}  // namespace rce

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rce/election.hpp"
#include "rce/weights.hpp"

namespace rce {

// Incrementally maintained selection state: per-voter count of selected
// approved candidates and every candidate's scaled marginal contribution.
// add/remove cost O(sum of ballot sizes over the candidate's approvers).
class MarginalTracker {
 public:
  MarginalTracker(const Election& e, const OwaWeights& w);

  // c must not be selected and size() < weight vector length.
  void add(CandidateId c);
  // c must be selected.
  void remove(CandidateId c);

  std::int64_t score() const noexcept { return score_; }
  // Marginal w.r.t. the current selection; meaningless for selected candidates.
  std::int64_t marginal(CandidateId c) const { return marginals_[c]; }
  bool selected(CandidateId c) const { return selected_[c] != 0; }
  std::size_t size() const noexcept { return size_; }
  const Election& election() const noexcept { return *election_; }

  // Largest marginal over unselected candidates (0 if none remain).
  std::int64_t max_marginal() const;
  // Unselected candidates attaining max_marginal(), ascending.
  std::vector<CandidateId> argmax() const;

 private:
  // lambda(j) scaled, with zeros past the end of the weight vector.
  std::int64_t step(std::size_t j) const { return j < steps_.size() ? steps_[j] : 0; }

  const Election* election_;
  std::vector<std::int64_t> steps_;  // steps_[j] = L*lambda(j), steps_[0] unused
  std::size_t capacity_;
  std::vector<std::uint32_t> counts_;
  std::vector<std::int64_t> marginals_;
  std::vector<std::uint8_t> selected_;
  std::size_t size_ = 0;
  std::int64_t score_ = 0;
};

}  // namespace rce

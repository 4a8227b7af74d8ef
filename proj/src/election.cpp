#include "rce/election.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "rce/errors.hpp"

namespace rce {

Committee::Committee(std::vector<CandidateId> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw PreconditionError("committee has duplicate members");
  }
}

bool Committee::contains(CandidateId c) const noexcept {
  return std::binary_search(members_.begin(), members_.end(), c);
}

Election::Election(std::size_t num_candidates, std::vector<Ballot> ballots, bool allow_empty)
    : num_candidates_(num_candidates), ballots_(std::move(ballots)), allow_empty_(allow_empty) {
  if (ballots_.empty()) throw PreconditionError("election needs at least one voter");
  if (num_candidates_ >= std::numeric_limits<CandidateId>::max()) {
    throw PreconditionError("too many candidates");
  }
  std::vector<std::size_t> degree(num_candidates_ + 1, 0);
  for (std::size_t v = 0; v < ballots_.size(); ++v) {
    const Ballot& b = ballots_[v];
    if (b.empty() && !allow_empty_) {
      throw PreconditionError("voter " + std::to_string(v) + " has an empty ballot");
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b[i] >= num_candidates_) {
        throw PreconditionError("voter " + std::to_string(v) + " approves candidate " +
                                std::to_string(b[i]) + " >= m");
      }
      if (i > 0 && b[i - 1] >= b[i]) {
        throw PreconditionError("ballot of voter " + std::to_string(v) +
                                " is not strictly ascending");
      }
      ++degree[b[i]];
    }
    total_approvals_ += b.size();
  }

  approver_offsets_.assign(num_candidates_ + 1, 0);
  for (std::size_t c = 0; c < num_candidates_; ++c) {
    approver_offsets_[c + 1] = approver_offsets_[c] + degree[c];
  }
  approver_ids_.resize(total_approvals_);
  std::vector<std::size_t> fill(approver_offsets_.begin(), approver_offsets_.end() - 1);
  words_per_voter_ = (num_candidates_ + 63) / 64;
  bits_.assign(words_per_voter_ * ballots_.size(), 0);
  for (std::size_t v = 0; v < ballots_.size(); ++v) {
    for (CandidateId c : ballots_[v]) {
      approver_ids_[fill[c]++] = static_cast<VoterId>(v);
      bits_[v * words_per_voter_ + c / 64] |= std::uint64_t{1} << (c % 64);
    }
  }
}

std::size_t committee_distance(const Committee& s, const Committee& t) {
  if (s.size() != t.size()) throw PreconditionError("committees differ in size");
  std::size_t common = 0;
  auto i = s.begin();
  auto j = t.begin();
  while (i != s.end() && j != t.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return s.size() - common;
}

std::size_t election_distance(const Election& e, const Election& f) {
  if (e.num_candidates() != f.num_candidates() || e.num_voters() != f.num_voters()) {
    return kInfiniteDistance;
  }
  std::size_t dist = 0;
  for (std::size_t v = 0; v < e.num_voters(); ++v) {
    const Ballot& a = e.ballot(static_cast<VoterId>(v));
    const Ballot& b = f.ballot(static_cast<VoterId>(v));
    std::size_t common = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
      if (*i < *j) {
        ++i;
      } else if (*j < *i) {
        ++j;
      } else {
        ++common;
        ++i;
        ++j;
      }
    }
    dist += a.size() + b.size() - 2 * common;
  }
  return dist;
}

std::vector<CandidateClass> candidate_classes(const Election& e) {
  std::map<std::vector<VoterId>, std::size_t> index;
  std::vector<CandidateClass> classes;
  for (CandidateId c = 0; c < e.num_candidates(); ++c) {
    auto approvers = e.approvers(c);
    std::vector<VoterId> key(approvers.begin(), approvers.end());
    auto [it, inserted] = index.try_emplace(key, classes.size());
    if (inserted) classes.push_back({std::move(key), {}});
    classes[it->second].members.push_back(c);
  }
  return classes;
}

}  // namespace rce

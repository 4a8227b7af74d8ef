#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

namespace rce {

using CandidateId = std::uint32_t;
using VoterId = std::uint32_t;

// Strictly ascending candidate indices.
using Ballot = std::vector<CandidateId>;

// Size-k set of candidates kept in canonical (ascending) order.
class Committee {
 public:
  Committee() = default;
  // Sorts the members; throws PreconditionError on duplicates.
  explicit Committee(std::vector<CandidateId> members);
  Committee(std::initializer_list<CandidateId> members)
      : Committee(std::vector<CandidateId>(members)) {}

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(CandidateId c) const noexcept;
  std::span<const CandidateId> members() const noexcept { return members_; }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }
  CandidateId operator[](std::size_t i) const { return members_[i]; }

  friend bool operator==(const Committee&, const Committee&) = default;
  friend auto operator<=>(const Committee&, const Committee&) = default;

 private:
  std::vector<CandidateId> members_;
};

// Approval election over candidates [0, m). Immutable after construction.
// Keeps the ballots, a per-candidate approver index and a per-voter bitset.
class Election {
 public:
  Election() = default;
  // Throws PreconditionError if n == 0, a ballot is not strictly ascending,
  // an index is >= m, or a ballot is empty while allow_empty is false.
  Election(std::size_t num_candidates, std::vector<Ballot> ballots, bool allow_empty = false);

  std::size_t num_candidates() const noexcept { return num_candidates_; }
  std::size_t num_voters() const noexcept { return ballots_.size(); }
  bool allow_empty() const noexcept { return allow_empty_; }
  std::size_t total_approvals() const noexcept { return total_approvals_; }

  const Ballot& ballot(VoterId v) const { return ballots_[v]; }
  std::span<const Ballot> ballots() const noexcept { return ballots_; }

  // Voters approving c, ascending.
  std::span<const VoterId> approvers(CandidateId c) const noexcept {
    return {approver_ids_.data() + approver_offsets_[c],
            approver_offsets_[c + 1] - approver_offsets_[c]};
  }
  bool approves(VoterId v, CandidateId c) const noexcept {
    return (bits_[v * words_per_voter_ + c / 64] >> (c % 64)) & 1u;
  }

  // Ballots and m only; the allow_empty flag is a policy, not part of the profile.
  friend bool operator==(const Election& a, const Election& b) {
    return a.num_candidates_ == b.num_candidates_ && a.ballots_ == b.ballots_;
  }

 private:
  std::size_t num_candidates_ = 0;
  std::vector<Ballot> ballots_;
  bool allow_empty_ = false;
  std::size_t total_approvals_ = 0;
  std::vector<std::size_t> approver_offsets_;
  std::vector<VoterId> approver_ids_;
  std::size_t words_per_voter_ = 0;
  std::vector<std::uint64_t> bits_;
};

// k - |S ∩ T|. Throws PreconditionError when sizes differ.
std::size_t committee_distance(const Committee& s, const Committee& t);

inline constexpr std::size_t kInfiniteDistance = std::numeric_limits<std::size_t>::max();

// Number of single-approval Add/Remove operations turning e into f, or
// kInfiniteDistance when the candidate or voter counts differ.
std::size_t election_distance(const Election& e, const Election& f);

// Candidate classes: groups of candidates with identical approver sets.
// Classes are ordered by their smallest member; members ascend.
struct CandidateClass {
  std::vector<VoterId> approvers;
  std::vector<CandidateId> members;
};
std::vector<CandidateClass> candidate_classes(const Election& e);

}  // namespace rce

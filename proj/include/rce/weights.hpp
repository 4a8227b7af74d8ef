#pragma once

#include <boost/rational.hpp>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rce/election.hpp"

namespace rce {

using Rational = boost::rational<std::int64_t>;

// OWA weight vector lambda(1..k_max) of a Thiele rule. Scores are compared as
// integers after scaling by L = lcm of the weight denominators.
class OwaWeights {
 public:
  // Throws ConfigError unless lambda(1) = 1, weights are in [0,1] and
  // non-increasing, and L * lambda fits comfortably in 64 bits.
  explicit OwaWeights(std::vector<Rational> weights);

  static OwaWeights av(std::size_t k_max);
  static OwaWeights pav(std::size_t k_max);
  static OwaWeights cc(std::size_t k_max);

  std::size_t size() const noexcept { return weights_.size(); }
  // 1-based, j in [1, size()].
  const Rational& weight(std::size_t j) const { return weights_[j - 1]; }
  std::int64_t scaled(std::size_t j) const { return scaled_[j - 1]; }
  std::int64_t scale() const noexcept { return scale_; }
  std::span<const Rational> weights() const noexcept { return weights_; }
  std::span<const std::int64_t> scaled_weights() const noexcept { return scaled_; }

  // cumulative()[j] = L * (lambda(1) + ... + lambda(j)); cumulative()[0] = 0.
  std::span<const std::int64_t> cumulative() const noexcept { return cumulative_; }

  bool is_av() const noexcept;
  bool is_cc() const noexcept;
  // Largest s with lambda(1) = ... = lambda(s) = 1.
  std::size_t unit_prefix() const noexcept;

  friend bool operator==(const OwaWeights& a, const OwaWeights& b) { return a.weights_ == b.weights_; }

 private:
  std::vector<Rational> weights_;
  std::int64_t scale_ = 1;
  std::vector<std::int64_t> scaled_;
  std::vector<std::int64_t> cumulative_;
};

// Parses "p/q" or an integer.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

// Rule spec: [greedy-](av|pav|cc|owa=<q1,q2,...>).
class Rule {
 public:
  enum class Family { kAv, kPav, kCc, kCustom };

  static Rule parse(std::string_view spec);
  Rule(Family family, bool greedy, std::vector<Rational> custom = {});

  Family family() const noexcept { return family_; }
  bool greedy() const noexcept { return greedy_; }
  // Weight vector long enough for committees of size k. Custom vectors
  // shorter than k are rejected with ConfigError.
  OwaWeights weights(std::size_t k) const;
  std::string to_string() const;

 private:
  Family family_;
  bool greedy_;
  std::vector<Rational> custom_;
};

// Exact lambda-score of committee s: integer-scaled value and the rational it stands for.
struct Score {
  std::int64_t scaled = 0;
  std::int64_t scale = 1;
  Rational value() const { return Rational(scaled, scale); }
};

// Throws ConfigError if |s| > w.size(), PreconditionError if s names a candidate >= m.
Score thiele_score(const Election& e, const Committee& s, const OwaWeights& w);

// thiele_score(s ∪ {c}) - thiele_score(s), scaled. O(approvers of c + |s|).
// Throws PreconditionError if c ∈ s.
std::int64_t marginal_contribution(const Election& e, const Committee& s, CandidateId c,
                                   const OwaWeights& w);

}  // namespace rce

#include "rce/weights.hpp"

#include <charconv>
#include <limits>
#include <numeric>

#include "rce/errors.hpp"

namespace rce {
namespace {

// Keeps n * L * (k_max) well inside int64 for any realistic n.
constexpr std::int64_t kMaxScale = std::int64_t{1} << 40;

}  // namespace

OwaWeights::OwaWeights(std::vector<Rational> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw ConfigError("OWA weight vector is empty");
  if (weights_.front() != Rational(1)) throw ConfigError("OWA weights must start with 1");
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    const Rational& w = weights_[j];
    if (w < Rational(0) || w > Rational(1)) throw ConfigError("OWA weight outside [0,1]");
    if (j > 0 && w > weights_[j - 1]) throw ConfigError("OWA weights must be non-increasing");
    std::int64_t next = std::lcm(scale_, w.denominator());
    if (next > kMaxScale) throw ConfigError("OWA weight denominators too large");
    scale_ = next;
  }
  scaled_.reserve(weights_.size());
  cumulative_.assign(1, 0);
  for (const Rational& w : weights_) {
    scaled_.push_back(w.numerator() * (scale_ / w.denominator()));
    cumulative_.push_back(cumulative_.back() + scaled_.back());
  }
}

OwaWeights OwaWeights::av(std::size_t k_max) {
  return OwaWeights(std::vector<Rational>(std::max<std::size_t>(k_max, 1), Rational(1)));
}

OwaWeights OwaWeights::pav(std::size_t k_max) {
  std::vector<Rational> w;
  for (std::size_t j = 1; j <= std::max<std::size_t>(k_max, 1); ++j) {
    w.emplace_back(1, static_cast<std::int64_t>(j));
  }
  return OwaWeights(std::move(w));
}

OwaWeights OwaWeights::cc(std::size_t k_max) {
  std::vector<Rational> w(std::max<std::size_t>(k_max, 1), Rational(0));
  w[0] = 1;
  return OwaWeights(std::move(w));
}

bool OwaWeights::is_av() const noexcept { return unit_prefix() == weights_.size(); }

bool OwaWeights::is_cc() const noexcept {
  for (std::size_t j = 1; j < weights_.size(); ++j) {
    if (weights_[j] != Rational(0)) return false;
  }
  return true;
}

std::size_t OwaWeights::unit_prefix() const noexcept {
  std::size_t s = 0;
  while (s < weights_.size() && weights_[s] == Rational(1)) ++s;
  return s;
}

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view part) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size()) {
      throw ConfigError("not a rational number: '" + std::string(text) + "'");
    }
    return value;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  std::int64_t num = parse_int(text.substr(0, slash));
  std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw ConfigError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rule::Rule(Family family, bool greedy, std::vector<Rational> custom)
    : family_(family), greedy_(greedy), custom_(std::move(custom)) {
  if (family_ == Family::kCustom) OwaWeights check(custom_);
}

Rule Rule::parse(std::string_view spec) {
  bool greedy = false;
  constexpr std::string_view kGreedy = "greedy-";
  if (spec.substr(0, kGreedy.size()) == kGreedy) {
    greedy = true;
    spec.remove_prefix(kGreedy.size());
  }
  if (spec == "av") return Rule(Family::kAv, greedy);
  if (spec == "pav") return Rule(Family::kPav, greedy);
  if (spec == "cc") return Rule(Family::kCc, greedy);
  constexpr std::string_view kOwa = "owa=";
  if (spec.substr(0, kOwa.size()) == kOwa) {
    spec.remove_prefix(kOwa.size());
    std::vector<Rational> weights;
    while (true) {
      auto comma = spec.find(',');
      weights.push_back(parse_rational(spec.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      spec.remove_prefix(comma + 1);
    }
    return Rule(Family::kCustom, greedy, std::move(weights));
  }
  throw ConfigError("unknown rule '" + std::string(spec) +
                    "' (expected [greedy-]av|pav|cc|owa=<q1,q2,...>)");
}

OwaWeights Rule::weights(std::size_t k) const {
  switch (family_) {
    case Family::kAv:
      return OwaWeights::av(k);
    case Family::kPav:
      return OwaWeights::pav(k);
    case Family::kCc:
      return OwaWeights::cc(k);
    case Family::kCustom:
      break;
  }
  if (custom_.size() < k) {
    throw ConfigError("OWA vector has " + std::to_string(custom_.size()) +
                      " weights but committee size is " + std::to_string(k));
  }
  return OwaWeights(custom_);
}

std::string Rule::to_string() const {
  std::string base;
  switch (family_) {
    case Family::kAv:
      base = "av";
      break;
    case Family::kPav:
      base = "pav";
      break;
    case Family::kCc:
      base = "cc";
      break;
    case Family::kCustom:
      base = "owa=";
      for (std::size_t i = 0; i < custom_.size(); ++i) {
        if (i > 0) base += ",";
        base += rce::to_string(custom_[i]);
      }
      break;
  }
  return (greedy_ ? "greedy-" : "") + base;
}

Score thiele_score(const Election& e, const Committee& s, const OwaWeights& w) {
  if (s.size() > w.size()) {
    throw ConfigError("committee of size " + std::to_string(s.size()) +
                      " exceeds the OWA vector length " + std::to_string(w.size()));
  }
  if (!s.empty() && s.members().back() >= e.num_candidates()) {
    throw PreconditionError("committee member out of range");
  }
  auto cumulative = w.cumulative();
  Score score{0, w.scale()};
  for (const Ballot& b : e.ballots()) {
    std::size_t common = 0;
    auto i = b.begin();
    auto j = s.begin();
    while (i != b.end() && j != s.end()) {
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
    score.scaled += cumulative[common];
  }
  return score;
}

std::int64_t marginal_contribution(const Election& e, const Committee& s, CandidateId c,
                                   const OwaWeights& w) {
  if (s.contains(c)) throw PreconditionError("candidate already in committee");
  if (c >= e.num_candidates() || (!s.empty() && s.members().back() >= e.num_candidates())) {
    throw PreconditionError("candidate out of range");
  }
  if (s.size() + 1 > w.size()) throw ConfigError("committee would exceed the OWA vector length");
  std::int64_t delta = 0;
  for (VoterId v : e.approvers(c)) {
    std::size_t common = 0;
    for (CandidateId member : s) common += e.approves(v, member);
    delta += w.scaled(common + 1);
  }
  return delta;
}

}  // namespace rce

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "rce/election.hpp"

namespace rce {

struct RceInstance {
  Election before;
  Election after;
  std::size_t k = 0;
  Committee committee;
  std::size_t ell = 0;

  // Structural checks only (equal m, |committee| = k, ell <= k, members < m).
  // Whether the committee wins in `before` depends on the rule; see validate_instance.
  void check() const;

  friend bool operator==(const RceInstance&, const RceInstance&) = default;
};

// ".app" format: optional '#' comment lines, header "m n", then n lines of
// ascending 0-based indices. An empty ballot line sets allow_empty.
Election parse_election(std::string_view text);
std::string format_election(const Election& e);
Election load_election(const std::filesystem::path& path);
void save_election(const Election& e, const std::filesystem::path& path);

// JSON document {k, ell, committee, before: {m, ballots}, after: {m, ballots}}.
RceInstance parse_instance(std::string_view text);
std::string format_instance(const RceInstance& inst);
RceInstance load_instance(const std::filesystem::path& path);
void save_instance(const RceInstance& inst, const std::filesystem::path& path);

// Comma or space separated candidate indices, e.g. "0,3,5".
Committee parse_committee(std::string_view text);
std::string format_committee(const Committee& c);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace rce

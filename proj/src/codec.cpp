#include "rce/codec.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "rce/errors.hpp"

namespace rce {
namespace {

using nlohmann::json;

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    auto nl = text.find('\n');
    if (nl == std::string_view::npos) {
      lines.push_back(text);
      break;
    }
    lines.push_back(text.substr(0, nl));
    text.remove_prefix(nl + 1);
  }
  for (auto& line : lines) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  }
  return lines;
}

std::vector<std::uint64_t> parse_numbers(std::string_view line, std::size_t line_no) {
  std::vector<std::uint64_t> values;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, value);
    if (ec != std::errc{} || ptr != line.data() + j) {
      throw ParseError(line_no, "non-numeric token '" + std::string(line.substr(i, j - i)) + "'");
    }
    values.push_back(value);
    i = j;
  }
  return values;
}

Ballot to_ballot(const std::vector<std::uint64_t>& values, std::size_t m, std::size_t line_no) {
  Ballot ballot;
  ballot.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= m) {
      throw ParseError(line_no, "candidate index " + std::to_string(values[i]) + " >= m = " +
                                    std::to_string(m));
    }
    if (i > 0 && values[i] == values[i - 1]) {
      throw ParseError(line_no, "duplicate candidate index " + std::to_string(values[i]));
    }
    if (i > 0 && values[i] < values[i - 1]) {
      throw ParseError(line_no, "candidate indices must be ascending");
    }
    ballot.push_back(static_cast<CandidateId>(values[i]));
  }
  return ballot;
}

json election_to_json(const Election& e) {
  json ballots = json::array();
  for (const Ballot& b : e.ballots()) ballots.push_back(b);
  return json{{"m", e.num_candidates()}, {"ballots", std::move(ballots)}};
}

Election election_from_json(const json& j, const char* field) {
  const std::string where = std::string("field '") + field + "': ";
  if (!j.is_object() || !j.contains("m") || !j.contains("ballots")) {
    throw ParseError(0, where + "expected an object with 'm' and 'ballots'");
  }
  const auto m = j.at("m").get<std::uint64_t>();
  std::vector<Ballot> ballots;
  bool has_empty = false;
  for (const json& jb : j.at("ballots")) {
    auto values = jb.get<std::vector<std::uint64_t>>();
    try {
      ballots.push_back(to_ballot(values, m, 0));
    } catch (const ParseError& err) {
      throw ParseError(0, where + "voter " + std::to_string(ballots.size()) + ": " + err.what());
    }
    has_empty |= ballots.back().empty();
  }
  if (ballots.empty()) throw ParseError(0, where + "election has no voters");
  return Election(m, std::move(ballots), has_empty);
}

}  // namespace

void RceInstance::check() const {
  if (before.num_candidates() != after.num_candidates()) {
    throw PreconditionError("elections have different candidate counts");
  }
  if (committee.size() != k) throw PreconditionError("committee size differs from k");
  if (k > before.num_candidates()) throw PreconditionError("k exceeds the number of candidates");
  if (ell > k) throw PreconditionError("ell exceeds k");
  if (!committee.empty() && committee.members().back() >= before.num_candidates()) {
    throw PreconditionError("committee member out of range");
  }
}

Election parse_election(std::string_view text) {
  auto lines = split_lines(text);
  std::size_t i = 0;
  while (i < lines.size() && !lines[i].empty() && lines[i].front() == '#') ++i;
  if (i == lines.size()) throw ParseError(0, "missing header 'm n'");
  auto header = parse_numbers(lines[i], i + 1);
  if (header.size() != 2) throw ParseError(i + 1, "header must be 'm n'");
  const std::size_t m = header[0];
  const std::size_t n = header[1];
  if (n == 0) throw ParseError(i + 1, "election needs at least one voter");
  ++i;
  std::vector<Ballot> ballots;
  ballots.reserve(n);
  bool has_empty = false;
  for (; i < lines.size() && ballots.size() < n; ++i) {
    if (!lines[i].empty() && lines[i].front() == '#') continue;
    ballots.push_back(to_ballot(parse_numbers(lines[i], i + 1), m, i + 1));
    has_empty |= ballots.back().empty();
  }
  if (ballots.size() < n) {
    throw ParseError(lines.size(), "expected " + std::to_string(n) + " ballots, found " +
                                       std::to_string(ballots.size()));
  }
  for (; i < lines.size(); ++i) {
    if (!lines[i].empty() && lines[i].front() != '#') {
      throw ParseError(i + 1, "unexpected content after the last ballot");
    }
  }
  return Election(m, std::move(ballots), has_empty);
}

std::string format_election(const Election& e) {
  std::string out = std::to_string(e.num_candidates()) + " " + std::to_string(e.num_voters()) + "\n";
  for (const Ballot& b : e.ballots()) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i > 0) out += ' ';
      out += std::to_string(b[i]);
    }
    out += '\n';
  }
  return out;
}

Election load_election(const std::filesystem::path& path) { return parse_election(read_file(path)); }

void save_election(const Election& e, const std::filesystem::path& path) {
  write_file(path, format_election(e));
}

RceInstance parse_instance(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ParseError(0, std::string("instance is not valid JSON: ") + err.what());
  }
  try {
    RceInstance inst;
    inst.k = j.at("k").get<std::size_t>();
    inst.ell = j.at("ell").get<std::size_t>();
    inst.committee = Committee(j.at("committee").get<std::vector<CandidateId>>());
    inst.before = election_from_json(j.at("before"), "before");
    inst.after = election_from_json(j.at("after"), "after");
    inst.check();
    return inst;
  } catch (const json::exception& err) {
    throw ParseError(0, std::string("malformed instance: ") + err.what());
  } catch (const PreconditionError& err) {
    throw ParseError(0, std::string("invalid instance: ") + err.what());
  }
}

std::string format_instance(const RceInstance& inst) {
  json j;
  j["k"] = inst.k;
  j["ell"] = inst.ell;
  j["committee"] = std::vector<CandidateId>(inst.committee.begin(), inst.committee.end());
  j["before"] = election_to_json(inst.before);
  j["after"] = election_to_json(inst.after);
  return j.dump() + "\n";
}

RceInstance load_instance(const std::filesystem::path& path) { return parse_instance(read_file(path)); }

void save_instance(const RceInstance& inst, const std::filesystem::path& path) {
  write_file(path, format_instance(inst));
}

Committee parse_committee(std::string_view text) {
  std::string normalized(text);
  for (char& ch : normalized) {
    if (ch == ',') ch = ' ';
  }
  auto values = parse_numbers(normalized, 0);
  std::vector<CandidateId> members;
  for (auto v : values) {
    if (v > std::numeric_limits<CandidateId>::max()) throw ParseError(0, "candidate index too large");
    members.push_back(static_cast<CandidateId>(v));
  }
  try {
    return Committee(std::move(members));
  } catch (const PreconditionError& err) {
    throw ParseError(0, err.what());
  }
}

std::string format_committee(const Committee& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(c[i]);
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(0, "cannot write '" + path.string() + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw ParseError(0, "write failed for '" + path.string() + "'");
}

}  // namespace rce

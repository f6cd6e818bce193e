#include "llpmatch/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "llpmatch/errors.hpp"

namespace llpmatch {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_words(std::string_view s) {
  std::vector<std::string_view> words;
  std::size_t pos = 0;
  while (pos < s.size()) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\r')) ++pos;
    const std::size_t start = pos;
    while (pos < s.size() && s[pos] != ' ' && s[pos] != '\t' && s[pos] != '\r') ++pos;
    if (pos > start) words.push_back(s.substr(start, pos - start));
  }
  return words;
}

int to_int(std::string_view word, std::size_t line) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
  if (ec != std::errc{} || ptr != word.data() + word.size()) {
    throw ParseError(line, "expected an integer, got '" + std::string(word) + "'");
  }
  return value;
}

PreferenceList parse_groups(std::string_view body, std::size_t line) {
  PreferenceList groups;
  std::size_t pos = 0;
  while (true) {
    const std::size_t bar = body.find('|', pos);
    const auto chunk = body.substr(pos, bar == std::string_view::npos ? body.size() - pos : bar - pos);
    TieGroup group;
    for (auto word : split_words(chunk)) group.push_back(to_int(word, line) - 1);
    if (group.empty()) throw ParseError(line, "empty tie-group");
    groups.push_back(std::move(group));
    if (bar == std::string_view::npos) break;
    pos = bar + 1;
  }
  return groups;
}

void check_agent(int id, int n, const char* what, std::size_t line) {
  if (id < 0 || id >= n) {
    throw ValidationError("line " + std::to_string(line) + ": " + what + " " + std::to_string(id + 1) +
                          " out of range");
  }
}

void check_rank(int r, int n, std::size_t line) {
  if (r < 1 || r > n) {
    throw ValidationError("line " + std::to_string(line) + ": rank " + std::to_string(r) + " out of range");
  }
}

std::string format_groups(const PreferenceList& list) {
  std::string out;
  for (std::size_t g = 0; g < list.size(); ++g) {
    if (g > 0) out += " |";
    for (AgentId a : list[g]) out += " " + std::to_string(a + 1);
  }
  return out;
}

}  // namespace

Instance parse_instance(std::string_view text) {
  std::optional<int> n;
  std::vector<std::optional<PreferenceList>> men;
  std::vector<std::optional<PreferenceList>> women;
  std::vector<Constraint> constraints;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view raw = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;

    const auto words = split_words(line);
    const std::string_view keyword = words.front();

    if (!n) {
      if (keyword != "n" || words.size() != 2) throw ParseError(line_no, "first line must be 'n <count>'");
      const int count = to_int(words[1], line_no);
      if (count < 1) throw ValidationError("n must be positive");
      n = count;
      men.resize(count);
      women.resize(count);
      continue;
    }

    if (keyword == "m" || keyword == "w") {
      const auto colon = line.find(':');
      if (colon == std::string_view::npos) throw ParseError(line_no, "missing ':' after agent id");
      const auto head = split_words(line.substr(0, colon));
      if (head.size() != 2) throw ParseError(line_no, "expected '<m|w> <id>:'");
      const int id = to_int(head[1], line_no) - 1;
      auto& side = keyword == "m" ? men : women;
      check_agent(id, *n, keyword == "m" ? "man" : "woman", line_no);
      if (side[id]) {
        throw ValidationError("line " + std::to_string(line_no) + ": duplicate list for " +
                              std::string(keyword) + " " + std::to_string(id + 1));
      }
      side[id] = parse_groups(line.substr(colon + 1), line_no);
      continue;
    }

    auto arity = [&](std::size_t expected) {
      if (words.size() != expected + 1) {
        throw ParseError(line_no, "'" + std::string(keyword) + "' takes " + std::to_string(expected) +
                                      " arguments");
      }
    };
    if (keyword == "regret_le") {
      arity(2);
      RegretLE c{to_int(words[1], line_no) - 1, to_int(words[2], line_no) - 1};
      check_agent(c.lower, *n, "man", line_no);
      check_agent(c.upper, *n, "man", line_no);
      constraints.emplace_back(c);
    } else if (keyword == "forbid") {
      arity(2);
      ForbiddenPair c{to_int(words[1], line_no) - 1, to_int(words[2], line_no) - 1};
      check_agent(c.man, *n, "man", line_no);
      check_agent(c.woman, *n, "woman", line_no);
      constraints.emplace_back(c);
    } else if (keyword == "floor") {
      arity(static_cast<std::size_t>(*n));
      LowerBound c;
      for (std::size_t k = 1; k < words.size(); ++k) {
        const int v = to_int(words[k], line_no);
        if (v < 0 || v > *n) throw ValidationError("line " + std::to_string(line_no) + ": floor out of range");
        c.floor.push_back(v);
      }
      constraints.emplace_back(std::move(c));
    } else if (keyword == "edge") {
      arity(4);
      RawEdge c{to_int(words[1], line_no) - 1, to_int(words[2], line_no), to_int(words[3], line_no) - 1,
                to_int(words[4], line_no)};
      check_agent(c.before_man, *n, "man", line_no);
      check_agent(c.after_man, *n, "man", line_no);
      check_rank(c.before_rank, *n, line_no);
      check_rank(c.after_rank, *n, line_no);
      constraints.emplace_back(c);
    } else {
      throw ParseError(line_no, "unknown directive '" + std::string(keyword) + "'");
    }
  }

  if (!n) throw ParseError(line_no, "missing 'n <count>' line");
  std::vector<PreferenceList> men_lists;
  std::vector<PreferenceList> women_lists;
  for (int a = 0; a < *n; ++a) {
    if (!men[a]) throw ValidationError("missing list for man " + std::to_string(a + 1));
    if (!women[a]) throw ValidationError("missing list for woman " + std::to_string(a + 1));
    men_lists.push_back(std::move(*men[a]));
    women_lists.push_back(std::move(*women[a]));
  }
  return Instance{PreferenceProfile(std::move(men_lists), std::move(women_lists)), std::move(constraints)};
}

std::string serialize_constraint(const Constraint& constraint) {
  struct Visitor {
    std::string operator()(const RegretLE& c) const {
      return "regret_le " + std::to_string(c.lower + 1) + " " + std::to_string(c.upper + 1);
    }
    std::string operator()(const ForbiddenPair& c) const {
      return "forbid " + std::to_string(c.man + 1) + " " + std::to_string(c.woman + 1);
    }
    std::string operator()(const LowerBound& c) const {
      std::string out = "floor";
      for (Rank r : c.floor) out += " " + std::to_string(r);
      return out;
    }
    std::string operator()(const RawEdge& c) const {
      return "edge " + std::to_string(c.before_man + 1) + " " + std::to_string(c.before_rank) + " " +
             std::to_string(c.after_man + 1) + " " + std::to_string(c.after_rank);
    }
  };
  return std::visit(Visitor{}, constraint);
}

std::string serialize_instance(const Instance& instance) {
  const auto& p = instance.profile;
  std::string out = "n " + std::to_string(p.size()) + "\n";
  for (int m = 0; m < p.size(); ++m) {
    out += "m " + std::to_string(m + 1) + ":" + format_groups(p.man_list(m)) + "\n";
  }
  for (int w = 0; w < p.size(); ++w) {
    out += "w " + std::to_string(w + 1) + ":" + format_groups(p.woman_list(w)) + "\n";
  }
  for (const auto& c : instance.constraints) out += serialize_constraint(c) + "\n";
  return out;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

}  // namespace llpmatch

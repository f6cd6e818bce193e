#include "llpmatch/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "llpmatch/errors.hpp"

namespace llpmatch::oracle {

namespace {

// rank[a][b]: 1-based position of b's tie-group in a's list.
std::vector<std::vector<int>> rank_table(int n, bool men_side, const PreferenceProfile& profile) {
  std::vector<std::vector<int>> table(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int a = 0; a < n; ++a) {
    const auto& list = men_side ? profile.man_list(a) : profile.woman_list(a);
    int position = 0;
    for (const auto& group : list) {
      ++position;
      for (int b : group) table[a][b] = position;
    }
  }
  return table;
}

struct Tables {
  std::vector<std::vector<int>> mrank;
  std::vector<std::vector<int>> wrank;
  bool strict = true;

  explicit Tables(const PreferenceProfile& profile)
      : mrank(rank_table(profile.size(), true, profile)), wrank(rank_table(profile.size(), false, profile)) {
    for (int a = 0; a < profile.size(); ++a) {
      for (const auto& g : profile.man_list(a)) strict = strict && g.size() == 1;
      for (const auto& g : profile.woman_list(a)) strict = strict && g.size() == 1;
    }
  }
};

bool check_constraints(const std::vector<int>& regret, const Matching& matching,
                       std::span<const Constraint> constraints) {
  for (const auto& constraint : constraints) {
    if (const auto* c = std::get_if<RegretLE>(&constraint)) {
      if (regret[c->lower] > regret[c->upper]) return false;
    } else if (const auto* c = std::get_if<ForbiddenPair>(&constraint)) {
      if (matching.wife(c->man) == c->woman) return false;
    } else if (const auto* c = std::get_if<LowerBound>(&constraint)) {
      for (std::size_t m = 0; m < regret.size(); ++m) {
        if (regret[m] < c->floor[m]) return false;
      }
    } else if (const auto* c = std::get_if<RawEdge>(&constraint)) {
      if (regret[c->after_man] >= c->after_rank && regret[c->before_man] < c->before_rank) return false;
    }
  }
  return true;
}

StabilityClass classify_with(const Tables& t, const Matching& matching, std::span<const Constraint> constraints) {
  const int n = matching.size();
  std::vector<int> husband(static_cast<std::size_t>(n), -1);
  for (int m = 0; m < n; ++m) husband[matching.wife(m)] = m;

  bool weak_block = false;
  bool super_block = false;
  bool strong_block = false;
  for (int m = 0; m < n; ++m) {
    for (int w = 0; w < n; ++w) {
      if (matching.wife(m) == w) continue;
      const int man_new = t.mrank[m][w];
      const int man_cur = t.mrank[m][matching.wife(m)];
      const int woman_new = t.wrank[w][m];
      const int woman_cur = t.wrank[w][husband[w]];
      if (man_new < man_cur && woman_new < woman_cur) weak_block = true;
      if (man_new <= man_cur && woman_new <= woman_cur) super_block = true;
      if ((man_new <= man_cur && woman_new < woman_cur) || (man_new < man_cur && woman_new <= woman_cur)) {
        strong_block = true;
      }
    }
  }

  std::vector<int> regret(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) regret[m] = t.mrank[m][matching.wife(m)];

  StabilityClass out;
  out.weakly_stable = !weak_block;
  out.classic_stable = t.strict && !weak_block;
  out.super_stable = !super_block;
  out.strongly_stable = !strong_block;
  out.satisfies_constraints = check_constraints(regret, matching, constraints);
  return out;
}

bool member(const StabilityClass& c, StabilityKind kind) {
  if (!c.satisfies_constraints) return false;
  switch (kind) {
    case StabilityKind::Classic:
      return c.classic_stable;
    case StabilityKind::Weak:
      return c.weakly_stable;
    case StabilityKind::Super:
      return c.super_stable;
    case StabilityKind::Strong:
      return c.strongly_stable;
  }
  return false;
}

}  // namespace

const char* to_string(StabilityKind kind) {
  switch (kind) {
    case StabilityKind::Classic:
      return "classic";
    case StabilityKind::Weak:
      return "weak";
    case StabilityKind::Super:
      return "super";
    case StabilityKind::Strong:
      return "strong";
  }
  return "unknown";
}

void for_each_matching(int n, const std::function<void(const Matching&)>& visit) {
  if (n > kMaxAgents) throw TooLarge("exhaustive enumeration is limited to n <= " + std::to_string(kMaxAgents));
  if (n < 0) throw TooLarge("negative size");
  std::vector<AgentId> wives(static_cast<std::size_t>(n));
  std::iota(wives.begin(), wives.end(), 0);
  do {
    visit(Matching(wives));
  } while (std::next_permutation(wives.begin(), wives.end()));
}

std::vector<Matching> enumerate_matchings(int n) {
  std::vector<Matching> out;
  for_each_matching(n, [&](const Matching& m) { out.push_back(m); });
  return out;
}

StabilityClass classify(const Matching& matching, const PreferenceProfile& profile,
                        std::span<const Constraint> constraints) {
  return classify_with(Tables(profile), matching, constraints);
}

std::vector<int> oracle_rank_vector(const PreferenceProfile& profile, const Matching& matching) {
  const Tables t(profile);
  std::vector<int> out(static_cast<std::size_t>(matching.size()));
  for (int m = 0; m < matching.size(); ++m) out[m] = t.mrank[m][matching.wife(m)];
  return out;
}

std::vector<Matching> all_stable(const PreferenceProfile& profile, std::span<const Constraint> constraints,
                                 StabilityKind kind) {
  const Tables t(profile);
  std::vector<Matching> out;
  for_each_matching(profile.size(), [&](const Matching& m) {
    if (member(classify_with(t, m, constraints), kind)) out.push_back(m);
  });
  return out;
}

std::optional<Matching> minimum_stable(const PreferenceProfile& profile, std::span<const Constraint> constraints,
                                       StabilityKind kind) {
  const auto members = all_stable(profile, constraints, kind);
  if (members.empty()) return std::nullopt;
  const Tables t(profile);
  const int n = profile.size();
  std::vector<int> low(static_cast<std::size_t>(n), n + 1);
  for (const auto& m : members) {
    for (int i = 0; i < n; ++i) low[i] = std::min(low[i], t.mrank[i][m.wife(i)]);
  }
  for (const auto& m : members) {
    bool minimal = true;
    for (int i = 0; i < n && minimal; ++i) minimal = t.mrank[i][m.wife(i)] == low[i];
    if (minimal) return m;
  }
  throw LatticeViolation(std::string("no componentwise minimum among ") + to_string(kind) + " matchings");
}

}  // namespace llpmatch::oracle

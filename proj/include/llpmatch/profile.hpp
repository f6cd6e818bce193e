#pragma once

// Instance model shared by every solver, the simulator and the oracle.
//
// Agents are 0-based internally (man i, woman w in [0, n)); the file format
// and all printed output use 1-based ids. Ranks are 1-based: rank r is the
// r-th tie-group of an agent's list.

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace llpmatch {

using AgentId = int;
using Rank = int;
using TieGroup = std::vector<AgentId>;
using PreferenceList = std::vector<TieGroup>;

/// Per man, the rank (tie-group index) he is currently considering.
using ProposalVector = std::vector<Rank>;

class PreferenceProfile {
 public:
  PreferenceProfile() = default;

  /// Validates that every list partitions the other side exactly and
  /// derives the rank tables. Throws ValidationError.
  PreferenceProfile(std::vector<PreferenceList> men, std::vector<PreferenceList> women);

  int size() const { return static_cast<int>(men_.size()); }

  const PreferenceList& man_list(AgentId m) const { return men_[m]; }
  const PreferenceList& woman_list(AgentId w) const { return women_[w]; }

  Rank man_rank(AgentId m, AgentId w) const { return mrank_[index(m, w)]; }
  Rank woman_rank(AgentId w, AgentId m) const { return wrank_[index(w, m)]; }

  /// Number of tie-groups in man m's list.
  Rank group_count(AgentId m) const { return static_cast<Rank>(men_[m].size()); }

  /// Women in man m's tie-group of rank r.
  std::span<const AgentId> man_group(AgentId m, Rank r) const { return men_[m][r - 1]; }

  /// The single woman at rank r; only meaningful when strict().
  AgentId man_choice(AgentId m, Rank r) const { return men_[m][r - 1].front(); }

  /// True when every tie-group on both sides is a singleton.
  bool strict() const { return strict_; }

  friend bool operator==(const PreferenceProfile& a, const PreferenceProfile& b) {
    return a.men_ == b.men_ && a.women_ == b.women_;
  }

 private:
  std::size_t index(AgentId a, AgentId b) const {
    return static_cast<std::size_t>(a) * men_.size() + static_cast<std::size_t>(b);
  }

  std::vector<PreferenceList> men_;
  std::vector<PreferenceList> women_;
  std::vector<Rank> mrank_;
  std::vector<Rank> wrank_;
  bool strict_ = true;
};

/// Partial assignment of men to women; wife(m) == kUnmatched when m is free.
class Matching {
 public:
  static constexpr AgentId kUnmatched = -1;

  Matching() = default;
  explicit Matching(int n) : wife_(static_cast<std::size_t>(n), kUnmatched) {}
  explicit Matching(std::vector<AgentId> wives) : wife_(std::move(wives)) {}

  int size() const { return static_cast<int>(wife_.size()); }
  AgentId wife(AgentId m) const { return wife_[m]; }
  AgentId husband(AgentId w) const;
  void assign(AgentId m, AgentId w) { wife_[m] = w; }

  /// Every man matched and no woman matched twice.
  bool is_perfect() const;
  const std::vector<AgentId>& wives() const { return wife_; }

  /// "P1:w4 P2:w3 ..." with 1-based ids.
  std::string to_string() const;

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  std::vector<AgentId> wife_;
};

/// Per-man rank of the assigned woman.
ProposalVector rank_vector(const PreferenceProfile& profile, const Matching& matching);

// External constraints. All ids 0-based, ranks 1-based.

/// Regret (rank of partner) of `lower` is at most that of `upper`.
struct RegretLE {
  AgentId lower = 0;
  AgentId upper = 0;
  friend bool operator==(const RegretLE&, const RegretLE&) = default;
};

struct ForbiddenPair {
  AgentId man = 0;
  AgentId woman = 0;
  friend bool operator==(const ForbiddenPair&, const ForbiddenPair&) = default;
};

/// Proposal vector is at least `floor` componentwise (0 means no floor).
struct LowerBound {
  std::vector<Rank> floor;
  friend bool operator==(const LowerBound&, const LowerBound&) = default;
};

/// Man `before_man`'s proposal at `before_rank` precedes man `after_man`'s
/// proposal at `after_rank`.
struct RawEdge {
  AgentId before_man = 0;
  Rank before_rank = 1;
  AgentId after_man = 0;
  Rank after_rank = 1;
  friend bool operator==(const RawEdge&, const RawEdge&) = default;
};

using Constraint = std::variant<RegretLE, ForbiddenPair, LowerBound, RawEdge>;

/// Constraints pinning man to woman: every other woman is forbidden to him.
std::vector<Constraint> forced_pair(const PreferenceProfile& profile, AgentId man, AgentId woman);

struct Instance {
  PreferenceProfile profile;
  std::vector<Constraint> constraints;
  friend bool operator==(const Instance&, const Instance&) = default;
};

}  // namespace llpmatch

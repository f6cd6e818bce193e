#include "llpmatch/profile.hpp"

#include <algorithm>
#include <sstream>

#include "llpmatch/errors.hpp"

namespace llpmatch {

namespace {

std::vector<Rank> derive_ranks(const std::vector<PreferenceList>& lists, int n, const char* side,
                               const char* other, bool& strict) {
  std::vector<Rank> ranks(static_cast<std::size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a) {
    const auto& list = lists[a];
    for (std::size_t g = 0; g < list.size(); ++g) {
      if (list[g].empty()) {
        throw ValidationError(std::string(side) + " " + std::to_string(a + 1) + " has an empty tie-group");
      }
      if (list[g].size() > 1) strict = false;
      for (AgentId b : list[g]) {
        if (b < 0 || b >= n) {
          throw ValidationError(std::string(side) + " " + std::to_string(a + 1) + " lists " + other +
                                " " + std::to_string(b + 1) + " out of range");
        }
        Rank& slot = ranks[static_cast<std::size_t>(a) * n + b];
        if (slot != 0) {
          throw ValidationError(std::string(side) + " " + std::to_string(a + 1) + " lists " + other +
                                " " + std::to_string(b + 1) + " twice");
        }
        slot = static_cast<Rank>(g + 1);
      }
    }
    for (int b = 0; b < n; ++b) {
      if (ranks[static_cast<std::size_t>(a) * n + b] == 0) {
        throw ValidationError(std::string(side) + " " + std::to_string(a + 1) + " does not rank " + other +
                              " " + std::to_string(b + 1));
      }
    }
  }
  return ranks;
}

}  // namespace

PreferenceProfile::PreferenceProfile(std::vector<PreferenceList> men, std::vector<PreferenceList> women)
    : men_(std::move(men)), women_(std::move(women)) {
  if (men_.size() != women_.size()) {
    throw ValidationError("numbers of men and women differ");
  }
  if (men_.empty()) throw ValidationError("instance is empty");
  const int n = size();
  mrank_ = derive_ranks(men_, n, "man", "woman", strict_);
  wrank_ = derive_ranks(women_, n, "woman", "man", strict_);
}

AgentId Matching::husband(AgentId w) const {
  auto it = std::find(wife_.begin(), wife_.end(), w);
  return it == wife_.end() ? kUnmatched : static_cast<AgentId>(it - wife_.begin());
}

bool Matching::is_perfect() const {
  std::vector<bool> taken(wife_.size(), false);
  for (AgentId w : wife_) {
    if (w < 0 || w >= size() || taken[w]) return false;
    taken[w] = true;
  }
  return true;
}

std::string Matching::to_string() const {
  std::ostringstream out;
  for (int m = 0; m < size(); ++m) {
    if (m > 0) out << ' ';
    out << 'P' << m + 1 << ':';
    if (wife_[m] == kUnmatched) {
      out << '-';
    } else {
      out << 'w' << wife_[m] + 1;
    }
  }
  return out.str();
}

ProposalVector rank_vector(const PreferenceProfile& profile, const Matching& matching) {
  ProposalVector ranks(static_cast<std::size_t>(matching.size()), 0);
  for (int m = 0; m < matching.size(); ++m) {
    if (matching.wife(m) != Matching::kUnmatched) ranks[m] = profile.man_rank(m, matching.wife(m));
  }
  return ranks;
}

std::vector<Constraint> forced_pair(const PreferenceProfile& profile, AgentId man, AgentId woman) {
  std::vector<Constraint> out;
  for (AgentId w = 0; w < profile.size(); ++w) {
    if (w != woman) out.emplace_back(ForbiddenPair{man, w});
  }
  return out;
}

}  // namespace llpmatch

#pragma once

// Line-oriented instance format:
//
//   n 4
//   m 1: 4 | 1 | 2 | 3      # tie-groups separated by '|'
//   ...
//   w 1: 4 1 | 3 | 2        # 4 and 1 tied
//   regret_le 2 1
//   forbid 1 3
//   floor 1 2 1 1
//   edge 1 2 3 1
//
// '#' starts a comment. Ids are 1-based.

#include <string>
#include <string_view>

#include "llpmatch/profile.hpp"

namespace llpmatch {

/// Throws ParseError on syntax errors, ValidationError on semantic ones.
Instance parse_instance(std::string_view text);

/// Canonical text; parse_instance(serialize_instance(x)) == x.
std::string serialize_instance(const Instance& instance);

std::string serialize_constraint(const Constraint& constraint);

Instance load_instance(const std::string& path);

}  // namespace llpmatch

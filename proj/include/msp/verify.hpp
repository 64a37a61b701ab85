#pragma once

#include <string>
#include <vector>

#include "msp/engines.hpp"

namespace msp {

// Result of the exhaustive blocking-property check. When ok is false the
// failing permutation is reported verbatim together with the sample size,
// the position of the missed element and a one-line clause.
struct ForbiddenPropertyReport {
  bool ok = true;
  std::string detail;
  std::vector<int> arrival;
  int sample_size = -1;
  int position = -1;  // 1-based position t of the offending arrival

  std::string to_string() const;
};

// Replays every arrival order and every sample size (guarded to n <= 8) and
// checks three things on each replay:
//   - the pick is independent and never touches the sample,
//   - every queried forbidden set has at most blocking_size_bound() members,
//   - whenever r_t is in OPT(R_t) and no intermediate arrival r_j lies in
//     forbidden_set(R_j, R_t, r_t), the replay selected r_t.
// Stops at the first violation.
ForbiddenPropertyReport verify_forbidden_property(const MarkingEngine& engine);

// Exhaustive checks of the neighbour-window monotonicity that the axis rules
// lean on: over every X, r* outside X and x in X, removing a member of the
// blocking window can only grow its enclosing interval, while removing any
// other element leaves window and interval unchanged. Guarded to n <= 10.
bool check_window_monotonicity(int n, std::string* why = nullptr);
bool check_representative_monotonicity(const LaminarMatroid& m, std::string* why = nullptr);

}  // namespace msp

#pragma once

// Closed-form tests for whether a monotonicity failure can be created from a
// normalized profile, and the has-happened verdicts they imply.

#include <string>
#include <string_view>
#include <vector>

#include "rcvmono/profile.hpp"

namespace rcvmono {

enum class ConditionKind { UpwardCreatable, DownwardCreatable };

std::string_view to_string(ConditionKind k);

/// Slack of one strict inequality, in doubled-vote units. The inequality
/// holds iff value >= 1.
struct Margin {
  std::string name;
  Count value = 0;

  friend bool operator==(const Margin&, const Margin&) = default;
};

struct ConditionReport {
  ConditionKind direction = ConditionKind::UpwardCreatable;
  bool holds = false;
  std::vector<Margin> margins;

  friend bool operator==(const ConditionReport&, const ConditionReport&) = default;
};

/// 2δ: 1 for an odd electorate, 2 for an even one.
Count doubled_delta(Count voters);

/// Upward failure creatable iff C + b2 > V/2 and C > V/4.
/// Margins: 2(C+b2) − V and 4C − V.
ConditionReport upward_creatable(const NormalizedProfile& np);

/// Downward failure creatable iff A − C < min(b2, B − A − 1, B + a1 − V/2 − δ).
/// Margins: 2(b2 − (A−C)), 2((B−A−1) − (A−C)), 2(B+a1) − V − 2δ − 2(A−C).
ConditionReport downward_creatable(const NormalizedProfile& np);

bool holds_from_margins(const ConditionReport& r);

struct ClassificationReport {
  NormalizedProfile normalized;
  ConditionReport upward;
  ConditionReport downward;
  bool upward_creatable = false;
  bool downward_creatable = false;
  /// Some P' → P lowered the winner and made it win: mirrors upward_creatable.
  bool downward_has_happened_possible = false;
  /// Some P' → P raised the old winner and made it lose: mirrors downward_creatable.
  bool upward_has_happened_possible = false;
  bool any_failure_possible = false;
};

/// Throws TieError for profiles that cannot be normalized.
ClassificationReport classify(const BallotProfile& p);

}  // namespace rcvmono

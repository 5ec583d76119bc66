#include "rcvmono/conditions.hpp"

#include <algorithm>

namespace rcvmono {

std::string_view to_string(ConditionKind k) {
  return k == ConditionKind::UpwardCreatable ? "UpwardCreatable" : "DownwardCreatable";
}

Count doubled_delta(Count voters) {
#ifdef RCVMONO_INJECT_DELTA_FAULT
  // Deliberately wrong parity, for exercising the verification harness.
  return voters % 2 != 0 ? 2 : 1;
#else
  return voters % 2 != 0 ? 1 : 2;
#endif
}

bool holds_from_margins(const ConditionReport& r) {
  return std::all_of(r.margins.begin(), r.margins.end(), [](const Margin& m) { return m.value >= 1; });
}

ConditionReport upward_creatable(const NormalizedProfile& np) {
  const BallotProfile& p = np.profile();
  const Count v = np.voters();
  const Count c = np.c();

  ConditionReport r;
  r.direction = ConditionKind::UpwardCreatable;
  r.margins = {
      {"C+b2>V/2", 2 * (c + p[Ranking::b2]) - v},
      {"C>V/4", 4 * c - v},
  };
  r.holds = 2 * (c + p[Ranking::b2]) > v && 4 * c > v;
  return r;
}

ConditionReport downward_creatable(const NormalizedProfile& np) {
  const BallotProfile& p = np.profile();
  const Count v = np.voters();
  const Count lead = np.a() - np.c();
  const Count b2 = p[Ranking::b2];
  const Count gap = np.b() - np.a() - 1;
  const Count doubled_b_after_a = 2 * (np.b() + p[Ranking::a1]);

  ConditionReport r;
  r.direction = ConditionKind::DownwardCreatable;
  r.margins = {
      {"A-C<b2", 2 * (b2 - lead)},
      {"A-C<B-A-1", 2 * (gap - lead)},
      {"A-C<B+a1-V/2-delta", doubled_b_after_a - v - doubled_delta(v) - 2 * lead},
  };
  r.holds = lead < b2 && lead < gap && 2 * lead < doubled_b_after_a - v - doubled_delta(v);
  return r;
}

ClassificationReport classify(const BallotProfile& p) {
  NormalizedProfile np = normalize(p);
  ConditionReport up = upward_creatable(np);
  ConditionReport down = downward_creatable(np);
  ClassificationReport out{np, up, down};
  out.upward_creatable = up.holds;
  out.downward_creatable = down.holds;
  out.downward_has_happened_possible = up.holds;
  out.upward_has_happened_possible = down.holds;
  out.any_failure_possible = up.holds || down.holds;
  return out;
}

}  // namespace rcvmono

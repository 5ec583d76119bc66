#include "rcvmono/witness.hpp"

#include <algorithm>
#include <functional>

namespace rcvmono {

namespace {

FailureDirection direction_for(ShiftDirection d) {
  return d == ShiftDirection::DemoteB ? FailureDirection::DownwardCreated
                                      : FailureDirection::UpwardCreated;
}

// Visits every capacity-respecting shift moving exactly `total` voters, in
// slot-lexicographic order, until `visit` returns true.
bool visit_shifts_with_total(const BallotProfile& p, ShiftDirection d, Count total,
                             const std::function<bool(const ShiftVector&)>& visit) {
  const auto types = move_types(d);
  std::array<Count, kRankingCount> remaining = p.counts();
  std::array<Count, 6> moves{};

  // Most the slots from `slot` on could still absorb.
  auto headroom = [&](std::size_t slot) {
    std::array<bool, kRankingCount> counted{};
    Count room = 0;
    for (std::size_t i = slot; i < types.size(); ++i) {
      const int src = index_of(types[i].from);
      if (!counted[src]) {
        counted[src] = true;
        room += remaining[src];
      }
    }
    return room;
  };

  std::function<bool(std::size_t, Count)> rec = [&](std::size_t slot, Count left) -> bool {
    if (slot == types.size()) {
      return left == 0 && visit(ShiftVector(d, moves));
    }
    if (headroom(slot) < left) return false;
    const int src = index_of(types[slot].from);
    const Count upper = std::min(left, remaining[src]);
    for (Count m = 0; m <= upper; ++m) {
      moves[slot] = m;
      remaining[src] -= m;
      const bool done = rec(slot + 1, left - m);
      remaining[src] += m;
      if (done) return true;
    }
    moves[slot] = 0;
    return false;
  };
  return rec(0, total);
}

}  // namespace

std::string_view to_string(FailureDirection d) {
  return d == FailureDirection::UpwardCreated ? "UpwardCreated" : "DownwardCreated";
}

std::string_view to_string(FailureKind k) { return k == FailureKind::Upward ? "Upward" : "Downward"; }

WitnessRecord make_witness(const BallotProfile& original, const ShiftVector& shift) {
  const BallotProfile modified = apply_shift(original, shift);
  return WitnessRecord{original,
                       shift,
                       modified,
                       direction_for(shift.direction()),
                       tabulate(original),
                       tabulate(modified)};
}

WitnessRecord construct_downward_witness(const NormalizedProfile& np) {
  if (!downward_creatable(np).holds) {
    throw ConditionNotSatisfied("downward failure condition does not hold for " +
                                to_string(np.profile()));
  }
  const Count moved = np.a() - np.c() + 1;
  return make_witness(np.profile(), ShiftVector::demote_b({.b2_to_c2 = moved}));
}

std::optional<WitnessRecord> search_upward_witness(const NormalizedProfile& np) {
  const BallotProfile& p = np.profile();
  const Count max_total = p[Ranking::b1] + p[Ranking::b2] + p[Ranking::c1] + p[Ranking::c2];
  std::optional<WitnessRecord> found;
  for (Count total = 1; total <= max_total && !found; ++total) {
    visit_shifts_with_total(p, ShiftDirection::PromoteA, total, [&](const ShiftVector& s) {
      const BallotProfile q = apply_shift(p, s);
      const auto trace = try_tabulate(q);
      if (!trace || trace->winner == Candidate::A) return false;
      found = make_witness(p, s);
      return true;
    });
  }
  return found;
}

FailureCheck exhibits_failure(const BallotProfile& before, const PreferenceChange& change) {
  FailureCheck out;
  if (change.moves.empty()) {
    out.reasons.emplace_back("no preference change");
    return out;
  }

  const bool all_raise = std::all_of(change.moves.begin(), change.moves.end(), [&](const Move& m) {
    return raises(change.subject, m.from, m.to);
  });
  const bool all_lower = std::all_of(change.moves.begin(), change.moves.end(), [&](const Move& m) {
    return lowers(change.subject, m.from, m.to);
  });
  if (!all_raise && !all_lower) {
    out.reasons.emplace_back(std::string("moves are not a one-way change for ") +
                             label(change.subject));
    return out;
  }

  BallotProfile after;
  try {
    after = apply_moves(before, change.moves);
  } catch (const ShiftCapacityError& e) {
    out.reasons.emplace_back(e.what());
    return out;
  }

  const auto t_before = try_tabulate(before);
  const auto t_after = try_tabulate(after);
  if (!t_before) out.reasons.emplace_back("profile before the change is tied");
  if (!t_after) out.reasons.emplace_back("profile after the change is tied");
  if (!t_before || !t_after) return out;

  const bool won_before = t_before->winner == change.subject;
  const bool wins_after = t_after->winner == change.subject;
  if (all_raise) {
    if (won_before && !wins_after) {
      out.kind = FailureKind::Upward;
    } else {
      out.reasons.emplace_back(won_before ? "winner unchanged" : "raised candidate did not win before");
    }
  } else {
    if (!won_before && wins_after) {
      out.kind = FailureKind::Downward;
    } else {
      out.reasons.emplace_back(won_before ? "lowered candidate already won"
                                          : "lowered candidate does not win after");
    }
  }
  return out;
}

ReversedWitness reverse(const WitnessRecord& w) {
  const auto forward = to_moves(w.shift);
  PreferenceChange change{w.shift.subject(), inverse_moves(forward)};
  BallotProfile after = apply_moves(w.modified, change.moves);
  return ReversedWitness{w.modified, std::move(change), after};
}

VerificationResult verify_witness(const WitnessRecord& w) {
  VerificationResult out;
  auto fail = [&](std::string reason) { out.reasons.push_back(std::move(reason)); };

  if (w.direction != direction_for(w.shift.direction())) {
    fail("direction does not match shift");
  }

  std::optional<BallotProfile> recomputed;
  try {
    recomputed = apply_shift(w.original, w.shift);
  } catch (const ShiftCapacityError& e) {
    fail(e.what());
  }
  if (recomputed && *recomputed != w.modified) fail("modified profile does not match shift");

  const auto before = try_tabulate(w.original);
  const auto after = try_tabulate(w.modified);
  if (!before) {
    fail("original profile is tied");
  } else {
    if (before->winner != Candidate::A) fail("original winner is not A");
    if (!(*before == w.trace_before)) fail("stale trace_before");
  }
  if (!after) {
    fail("modified profile is tied");
  } else {
    if (!(*after == w.trace_after)) fail("stale trace_after");
    if (after->winner == Candidate::A) {
      fail("winner unchanged");
    } else if (w.direction == FailureDirection::DownwardCreated && after->winner != Candidate::B) {
      fail("modified winner is not B");
    }
  }

  if (recomputed) {
    const FailureCheck generic = exhibits_failure(w.original, {w.shift.subject(), to_moves(w.shift)});
    const FailureKind expected = w.direction == FailureDirection::UpwardCreated ? FailureKind::Upward
                                                                                 : FailureKind::Downward;
    if (!generic || *generic.kind != expected) {
      for (const auto& r : generic.reasons) {
        if (std::find(out.reasons.begin(), out.reasons.end(), r) == out.reasons.end()) fail(r);
      }
      if (generic.reasons.empty()) fail("change does not exhibit the stated failure");
    }
  }

  out.ok = out.reasons.empty();
  return out;
}

}  // namespace rcvmono

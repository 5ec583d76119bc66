#pragma once

// Brute-force ground truth: every legal shift from a profile, every profile
// of a given size, and an exhaustive comparison against the closed forms.

#include <chrono>
#include <functional>
#include <optional>
#include <vector>

#include "rcvmono/profile.hpp"
#include "rcvmono/witness.hpp"

namespace rcvmono {

/// Streams every capacity-respecting ShiftVector of a direction, zero shift
/// first, in slot-lexicographic order.
class ShiftEnumerator {
 public:
  ShiftEnumerator(const BallotProfile& p, ShiftDirection d);
  std::optional<ShiftVector> next();

 private:
  BallotProfile profile_;
  ShiftDirection direction_;
  std::array<Count, 6> moves_{};
  bool started_ = false;
  bool done_ = false;
};

/// Streams all compositions of `voters` into six ordered parts, each once,
/// in lexicographic order.
class ProfileEnumerator {
 public:
  explicit ProfileEnumerator(Count voters);
  std::optional<BallotProfile> next();

 private:
  Count voters_;
  std::array<Count, kRankingCount> counts_{};
  bool started_ = false;
  bool done_ = false;
};

enum class OracleMode {
  Minimal,     // scan everything, return the first witness in search order
  AnyWitness,  // stop at the first one encountered
};

/// Normalizes `p` (TieError propagates) and scans every shift of the
/// direction. A tied modified profile is never a winner change.
std::optional<WitnessRecord> creatable_bruteforce(const BallotProfile& p, ShiftDirection d,
                                                  OracleMode mode = OracleMode::Minimal);

/// Verdict of the closed-form condition matching a shift direction.
bool formula_verdict(const NormalizedProfile& np, ShiftDirection d);

struct Mismatch {
  BallotProfile profile;
  ShiftDirection direction;
  bool formula_verdict;
  bool oracle_verdict;

  friend bool operator==(const Mismatch&, const Mismatch&) = default;
};

struct MismatchReport {
  Count max_voters = 0;
  ShiftDirection direction = ShiftDirection::DemoteB;
  Count checked_profiles = 0;
  Count skipped_tied = 0;
  /// Sorted by voters, then counts.
  std::vector<Mismatch> mismatches;
  std::chrono::duration<double> elapsed{};

  bool ok() const { return mismatches.empty(); }
};

/// Every tie-free profile with 1..max_voters voters. `threads` = 0 picks the
/// hardware concurrency; the report does not depend on it.
MismatchReport exhaustive_verify(Count max_voters, ShiftDirection d, unsigned threads = 0);

/// Runs `body(i)` for i in [0, n) on worker threads; `threads` = 0 means
/// hardware concurrency.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace rcvmono

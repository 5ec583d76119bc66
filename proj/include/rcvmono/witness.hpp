#pragma once

// Explicit P → P′ pairs that exhibit a monotonicity failure, and an
// independent re-tabulating checker for them.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rcvmono/conditions.hpp"
#include "rcvmono/profile.hpp"

namespace rcvmono {

enum class FailureDirection { UpwardCreated, DownwardCreated };

std::string_view to_string(FailureDirection d);

/// All profiles are in the normalized frame of `original`.
struct WitnessRecord {
  BallotProfile original;
  ShiftVector shift;
  BallotProfile modified;
  FailureDirection direction;
  TabulationTrace trace_before;
  TabulationTrace trace_after;

  friend bool operator==(const WitnessRecord&, const WitnessRecord&) = default;
};

/// Fills in the modified profile, direction and both traces. Throws
/// ShiftCapacityError or TieError.
WitnessRecord make_witness(const BallotProfile& original, const ShiftVector& shift);

class ConditionNotSatisfied : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Moves A−C+1 voters from B>C>A to C>B>A. Throws ConditionNotSatisfied
/// unless downward_creatable(np) holds.
WitnessRecord construct_downward_witness(const NormalizedProfile& np);

/// Smallest legal A-promotion (total moved voters, then slot order) after
/// which A no longer wins; nullopt when none exists. Exhaustive, so the cost
/// grows with the shift space.
std::optional<WitnessRecord> search_upward_witness(const NormalizedProfile& np);

struct VerificationResult {
  bool ok = false;
  std::vector<std::string> reasons;

  explicit operator bool() const { return ok; }
};

/// Re-tabulates everything from raw counts; stored traces are only compared,
/// never trusted.
VerificationResult verify_witness(const WitnessRecord& w);

// ---------------------------------------------------------------------------
// Failures over arbitrary one-candidate preference changes, used to check
// the reverse direction of a witness.

enum class FailureKind { Upward, Downward };

std::string_view to_string(FailureKind k);

struct PreferenceChange {
  Candidate subject;
  std::vector<Move> moves;
};

struct FailureCheck {
  std::optional<FailureKind> kind;
  std::vector<std::string> reasons;

  explicit operator bool() const { return kind.has_value(); }
};

/// Upward: every move raises `subject`, which wins before and not after.
/// Downward: every move lowers `subject`, which loses before and wins after.
FailureCheck exhibits_failure(const BallotProfile& before, const PreferenceChange& change);

struct ReversedWitness {
  BallotProfile before;  // the witness's modified profile
  PreferenceChange change;
  BallotProfile after;
};

/// Undo every move of the witness, starting from its modified profile.
ReversedWitness reverse(const WitnessRecord& w);

}  // namespace rcvmono

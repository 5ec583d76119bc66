#pragma once

// Ballot profiles for three-candidate instant-runoff elections, their
// tabulation, the winner-is-A / last-is-C relabeling, and legal preference
// shifts between profiles.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rcvmono {

using Count = std::int64_t;

enum class Candidate : std::uint8_t { A = 0, B = 1, C = 2 };

inline constexpr std::array<Candidate, 3> kCandidates{Candidate::A, Candidate::B, Candidate::C};

constexpr int index_of(Candidate c) { return static_cast<int>(c); }
char label(Candidate c);

/// The six complete strict rankings, in ballot-column order.
enum class Ranking : std::uint8_t { a1 = 0, a2, b1, b2, c1, c2 };

inline constexpr int kRankingCount = 6;
inline constexpr std::array<Ranking, kRankingCount> kRankings{
    Ranking::a1, Ranking::a2, Ranking::b1, Ranking::b2, Ranking::c1, Ranking::c2};

constexpr int index_of(Ranking r) { return static_cast<int>(r); }

/// Candidates from most to least preferred.
std::array<Candidate, 3> order_of(Ranking r);
Ranking ranking_from_order(const std::array<Candidate, 3>& order);
Candidate first_choice(Ranking r);
/// Position of `c` on the ballot, 0 = first.
int place_of(Ranking r, Candidate c);
bool prefers(Ranking r, Candidate x, Candidate y);
std::string_view column_name(Ranking r);

using CandidateNames = std::array<std::string, 3>;
CandidateNames default_names();

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Accepts "ABC" (single-character names only) or "A>B>C".
Ranking parse_ranking(std::string_view text, const CandidateNames& names = default_names());
std::string format_ranking(Ranking r, const CandidateNames& names = default_names());

class BallotProfile {
 public:
  BallotProfile() = default;
  explicit BallotProfile(const std::array<Count, kRankingCount>& counts);
  BallotProfile(Count a1, Count a2, Count b1, Count b2, Count c1, Count c2);

  Count operator[](Ranking r) const { return counts_[index_of(r)]; }
  const std::array<Count, kRankingCount>& counts() const { return counts_; }

  Count first_place(Candidate c) const;
  Count voters() const;

  friend bool operator==(const BallotProfile&, const BallotProfile&) = default;
  friend auto operator<=>(const BallotProfile&, const BallotProfile&) = default;

 private:
  std::array<Count, kRankingCount> counts_{};
};

std::string to_string(const BallotProfile& p);

/// First-round tallies plus the closed-form transfer tallies X(Y).
struct TallySheet {
  std::array<Count, 3> first_round{};
  Count voters = 0;
  std::array<Count, kRankingCount> columns{};

  Count first(Candidate c) const { return first_round[index_of(c)]; }
  /// Tally of `x` once `eliminated` is out: first-place votes plus the
  /// ballots ranking `eliminated` first and `x` second.
  Count transfer(Candidate x, Candidate eliminated) const;
};

TallySheet tally(const BallotProfile& p);

enum class TiePolicy { ErrorOnTie, LexicographicElimination };

class TieError : public std::runtime_error {
 public:
  explicit TieError(int round);
  int round() const { return round_; }

 private:
  int round_;
};

struct TabulationTrace {
  TallySheet tallies;
  /// Descending first-round tally; equal tallies keep label order.
  std::array<Candidate, 3> round1_order{};
  Candidate eliminated_round1 = Candidate::C;
  /// The two finalists, round-2 leader first.
  std::array<Candidate, 2> round2_order{};
  std::array<Count, 2> round2_tallies{};
  Candidate winner = Candidate::A;
  bool had_tie = false;

  friend bool operator==(const TabulationTrace& l, const TabulationTrace& r) {
    return l.tallies.columns == r.tallies.columns && l.round1_order == r.round1_order &&
           l.eliminated_round1 == r.eliminated_round1 && l.round2_order == r.round2_order &&
           l.round2_tallies == r.round2_tallies && l.winner == r.winner && l.had_tie == r.had_tie;
  }
};

/// Instant-runoff count. A tie for last place is immaterial when another
/// candidate already has a strict first-round majority; any other tie for last
/// place, and any round-2 tie, is resolved by `policy`.
TabulationTrace tabulate(const BallotProfile& p, TiePolicy policy = TiePolicy::ErrorOnTie);
/// ErrorOnTie tabulation that reports a tie as nullopt instead of throwing.
std::optional<TabulationTrace> try_tabulate(const BallotProfile& p);

/// Relabeling of candidates: image[original] = new label.
class CandidatePermutation {
 public:
  constexpr CandidatePermutation() = default;
  explicit CandidatePermutation(const std::array<Candidate, 3>& image);

  Candidate operator()(Candidate c) const { return image_[index_of(c)]; }
  Ranking operator()(Ranking r) const;
  CandidatePermutation inverse() const;
  const std::array<Candidate, 3>& image() const { return image_; }
  bool is_identity() const;

  friend bool operator==(const CandidatePermutation&, const CandidatePermutation&) = default;

 private:
  std::array<Candidate, 3> image_{Candidate::A, Candidate::B, Candidate::C};
};

/// Moves every ballot column along the induced action on rankings.
BallotProfile relabel(const BallotProfile& p, const CandidatePermutation& perm);

/// A profile in the frame where A wins and C goes out first. Only
/// `normalize` builds one, so holding a NormalizedProfile means the frame
/// holds.
class NormalizedProfile {
 public:
  const BallotProfile& profile() const { return profile_; }
  /// original label -> normalized label
  const CandidatePermutation& permutation() const { return permutation_; }
  const TabulationTrace& trace() const { return trace_; }
  BallotProfile original() const { return relabel(profile_, permutation_.inverse()); }

  Count a() const { return profile_.first_place(Candidate::A); }
  Count b() const { return profile_.first_place(Candidate::B); }
  Count c() const { return profile_.first_place(Candidate::C); }
  Count voters() const { return profile_.voters(); }

 private:
  friend NormalizedProfile normalize(const BallotProfile& p);
  NormalizedProfile(BallotProfile profile, CandidatePermutation perm, TabulationTrace trace)
      : profile_(profile), permutation_(perm), trace_(std::move(trace)) {}

  BallotProfile profile_;
  CandidatePermutation permutation_;
  TabulationTrace trace_;
};

/// Throws TieError when the count is not decided without a tie-break.
NormalizedProfile normalize(const BallotProfile& p);

struct PlayoutPattern {
  std::array<Candidate, 3> round1_order{};
  std::array<Candidate, 2> round2_order{};

  Candidate eliminated_round1() const { return round1_order[2]; }
  Candidate winner() const { return round2_order[0]; }

  friend bool operator==(const PlayoutPattern&, const PlayoutPattern&) = default;
  friend auto operator<=>(const PlayoutPattern&, const PlayoutPattern&) = default;
};

PlayoutPattern playout_pattern(const TabulationTrace& trace);
/// Throws TieError on tied profiles.
PlayoutPattern playout_pattern(const BallotProfile& p);

/// Arrow notation, e.g. "BAC → A(C)B(C) → A(BC)"; `primed` marks every
/// candidate token with ' as done for modified profiles.
std::string format_playout(const PlayoutPattern& pattern, bool primed = false,
                           const CandidateNames& names = default_names());

// ---------------------------------------------------------------------------
// Preference shifts

enum class ShiftDirection { DemoteB, PromoteA };

std::string_view to_string(ShiftDirection d);

struct MoveType {
  Ranking from;
  Ranking to;
};

/// The six single-voter moves of a direction, in ShiftVector slot order.
/// DemoteB: b1→a1, b1→a2, b2→c1, b2→c2, a1→a2, c2→c1.
/// PromoteA: b1→a1, b2→b1, b2→a1, c1→a2, c2→c1, c2→a2.
std::span<const MoveType, 6> move_types(ShiftDirection d);

struct DemoteBMoves {
  Count b1_to_a1 = 0;
  Count b1_to_a2 = 0;
  Count b2_to_c1 = 0;
  Count b2_to_c2 = 0;
  Count a1_to_a2 = 0;
  Count c2_to_c1 = 0;
};

struct PromoteAMoves {
  Count b1_to_a1 = 0;
  Count b2_to_b1 = 0;
  Count b2_to_a1 = 0;
  Count c1_to_a2 = 0;
  Count c2_to_c1 = 0;
  Count c2_to_a2 = 0;
};

class ShiftVector {
 public:
  ShiftVector(ShiftDirection direction, const std::array<Count, 6>& moves);
  static ShiftVector demote_b(const DemoteBMoves& m);
  static ShiftVector promote_a(const PromoteAMoves& m);
  static ShiftVector zero(ShiftDirection direction) { return {direction, {}}; }

  ShiftDirection direction() const { return direction_; }
  const std::array<Count, 6>& moves() const { return moves_; }
  Count total() const;
  /// Candidate whose standing the shift changes (B or A).
  Candidate subject() const;

  friend bool operator==(const ShiftVector&, const ShiftVector&) = default;

 private:
  ShiftDirection direction_;
  std::array<Count, 6> moves_{};
};

/// Search order: total moved voters, then slot-wise lexicographic.
bool shift_precedes(const ShiftVector& l, const ShiftVector& r);

/// Per-column Δx = x − x′.
std::array<Count, kRankingCount> column_deltas(const ShiftVector& s);

class ShiftCapacityError : public std::invalid_argument {
 public:
  explicit ShiftCapacityError(Ranking column);
  Ranking column() const { return column_; }

 private:
  Ranking column_;
};

/// Throws ShiftCapacityError naming the first over-drawn source column.
BallotProfile apply_shift(const BallotProfile& p, const ShiftVector& s);

/// A block of voters changing ballot, used for change sets that are not in
/// the normalized frame (e.g. the inverse of a shift).
struct Move {
  Ranking from;
  Ranking to;
  Count voters;

  friend bool operator==(const Move&, const Move&) = default;
};

std::vector<Move> to_moves(const ShiftVector& s);
std::vector<Move> inverse_moves(std::span<const Move> moves);
BallotProfile apply_moves(const BallotProfile& p, std::span<const Move> moves);

/// `to` is `from` with `subject` moved strictly up, the other two keeping
/// their relative order.
bool raises(Candidate subject, Ranking from, Ranking to);
bool lowers(Candidate subject, Ranking from, Ranking to);

}  // namespace rcvmono

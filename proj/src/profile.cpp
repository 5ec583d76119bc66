#include "rcvmono/profile.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace rcvmono {

namespace {

constexpr std::array<std::array<Candidate, 3>, kRankingCount> kOrders{{
    {Candidate::A, Candidate::B, Candidate::C},
    {Candidate::A, Candidate::C, Candidate::B},
    {Candidate::B, Candidate::A, Candidate::C},
    {Candidate::B, Candidate::C, Candidate::A},
    {Candidate::C, Candidate::A, Candidate::B},
    {Candidate::C, Candidate::B, Candidate::A},
}};

constexpr std::array<MoveType, 6> kDemoteB{{
    {Ranking::b1, Ranking::a1},
    {Ranking::b1, Ranking::a2},
    {Ranking::b2, Ranking::c1},
    {Ranking::b2, Ranking::c2},
    {Ranking::a1, Ranking::a2},
    {Ranking::c2, Ranking::c1},
}};

constexpr std::array<MoveType, 6> kPromoteA{{
    {Ranking::b1, Ranking::a1},
    {Ranking::b2, Ranking::b1},
    {Ranking::b2, Ranking::a1},
    {Ranking::c1, Ranking::a2},
    {Ranking::c2, Ranking::c1},
    {Ranking::c2, Ranking::a2},
}};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

Candidate other_than(Candidate x, Candidate y) {
  for (Candidate c : kCandidates) {
    if (c != x && c != y) return c;
  }
  throw std::logic_error("other_than: candidates not distinct");
}

}  // namespace

char label(Candidate c) { return static_cast<char>('A' + index_of(c)); }

std::array<Candidate, 3> order_of(Ranking r) { return kOrders[index_of(r)]; }

Ranking ranking_from_order(const std::array<Candidate, 3>& order) {
  for (Ranking r : kRankings) {
    if (kOrders[index_of(r)] == order) return r;
  }
  throw std::invalid_argument("ranking_from_order: not a permutation of A, B, C");
}

Candidate first_choice(Ranking r) { return kOrders[index_of(r)][0]; }

int place_of(Ranking r, Candidate c) {
  const auto& o = kOrders[index_of(r)];
  return static_cast<int>(std::find(o.begin(), o.end(), c) - o.begin());
}

bool prefers(Ranking r, Candidate x, Candidate y) { return place_of(r, x) < place_of(r, y); }

std::string_view column_name(Ranking r) {
  static constexpr std::array<std::string_view, kRankingCount> kNames{"a1", "a2", "b1",
                                                                      "b2", "c1", "c2"};
  return kNames[index_of(r)];
}

CandidateNames default_names() { return {"A", "B", "C"}; }

Ranking parse_ranking(std::string_view text, const CandidateNames& names) {
  text = trim(text);
  if (text.empty()) throw ParseError("empty ranking");

  std::vector<std::string_view> tokens;
  if (text.find('>') != std::string_view::npos) {
    std::size_t start = 0;
    while (true) {
      std::size_t pos = text.find('>', start);
      tokens.push_back(trim(text.substr(start, pos - start)));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
  } else {
    bool single_char = std::all_of(names.begin(), names.end(),
                                   [](const std::string& n) { return n.size() == 1; });
    if (!single_char) {
      throw ParseError("ranking '" + std::string(text) + "' must be '>'-separated");
    }
    for (std::size_t i = 0; i < text.size(); ++i) tokens.push_back(text.substr(i, 1));
  }
  if (tokens.size() != 3) {
    throw ParseError("ranking '" + std::string(text) + "' must name exactly 3 candidates");
  }

  std::array<Candidate, 3> order{};
  std::array<bool, 3> seen{};
  for (std::size_t i = 0; i < 3; ++i) {
    auto it = std::find(names.begin(), names.end(), tokens[i]);
    if (it == names.end()) {
      throw ParseError("unknown candidate '" + std::string(tokens[i]) + "'");
    }
    auto idx = static_cast<std::size_t>(it - names.begin());
    if (seen[idx]) throw ParseError("repeated candidate '" + std::string(tokens[i]) + "'");
    seen[idx] = true;
    order[i] = static_cast<Candidate>(idx);
  }
  return ranking_from_order(order);
}

std::string format_ranking(Ranking r, const CandidateNames& names) {
  const auto o = order_of(r);
  return names[index_of(o[0])] + ">" + names[index_of(o[1])] + ">" + names[index_of(o[2])];
}

BallotProfile::BallotProfile(const std::array<Count, kRankingCount>& counts) : counts_(counts) {
  for (Count c : counts_) {
    if (c < 0) throw std::invalid_argument("ballot counts must be non-negative");
  }
}

BallotProfile::BallotProfile(Count a1, Count a2, Count b1, Count b2, Count c1, Count c2)
    : BallotProfile(std::array<Count, kRankingCount>{a1, a2, b1, b2, c1, c2}) {}

Count BallotProfile::first_place(Candidate c) const {
  const auto i = static_cast<std::size_t>(2 * index_of(c));
  return counts_[i] + counts_[i + 1];
}

Count BallotProfile::voters() const { return std::accumulate(counts_.begin(), counts_.end(), Count{0}); }

std::string to_string(const BallotProfile& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < p.counts().size(); ++i) {
    if (i) os << ", ";
    os << p.counts()[i];
  }
  os << ')';
  return os.str();
}

Count TallySheet::transfer(Candidate x, Candidate eliminated) const {
  if (x == eliminated) throw std::invalid_argument("transfer: candidate is the eliminated one");
  const Ranking inherited = ranking_from_order({eliminated, x, other_than(x, eliminated)});
  return first(x) + columns[index_of(inherited)];
}

TallySheet tally(const BallotProfile& p) {
  TallySheet t;
  t.columns = p.counts();
  for (Candidate c : kCandidates) t.first_round[index_of(c)] = p.first_place(c);
  t.voters = p.voters();
  return t;
}

TieError::TieError(int round)
    : std::runtime_error("tie in round " + std::to_string(round)), round_(round) {}

namespace {

// Returns nullopt and sets tie_round when ErrorOnTie meets a tie.
std::optional<TabulationTrace> count_rounds(const BallotProfile& p, TiePolicy policy, int& tie_round) {
  TabulationTrace trace;
  trace.tallies = tally(p);
  const TallySheet& t = trace.tallies;
  if (t.voters < 1) throw std::invalid_argument("tabulate: profile has no voters");

  trace.round1_order = kCandidates;
  std::stable_sort(trace.round1_order.begin(), trace.round1_order.end(),
                   [&](Candidate x, Candidate y) { return t.first(x) > t.first(y); });

  const Count lowest = t.first(trace.round1_order[2]);
  if (t.first(trace.round1_order[1]) == lowest) {
    const bool majority = 2 * t.first(trace.round1_order[0]) > t.voters;
    if (!majority) {
      if (policy == TiePolicy::ErrorOnTie) {
        tie_round = 1;
        return std::nullopt;
      }
      trace.had_tie = true;
    }
  }
  // Equal tallies keep label order, so the last slot is the latest-labelled
  // of the lowest.
  trace.eliminated_round1 = trace.round1_order[2];

  const Candidate x = std::min(trace.round1_order[0], trace.round1_order[1]);
  const Candidate y = std::max(trace.round1_order[0], trace.round1_order[1]);
  const Count tx = t.transfer(x, trace.eliminated_round1);
  const Count ty = t.transfer(y, trace.eliminated_round1);
  if (tx == ty) {
    if (policy == TiePolicy::ErrorOnTie) {
      tie_round = 2;
      return std::nullopt;
    }
    trace.had_tie = true;
  }
  if (tx >= ty) {
    trace.round2_order = {x, y};
    trace.round2_tallies = {tx, ty};
  } else {
    trace.round2_order = {y, x};
    trace.round2_tallies = {ty, tx};
  }
  trace.winner = trace.round2_order[0];
  return trace;
}

}  // namespace

TabulationTrace tabulate(const BallotProfile& p, TiePolicy policy) {
  int tie_round = 0;
  auto trace = count_rounds(p, policy, tie_round);
  if (!trace) throw TieError(tie_round);
  return *trace;
}

std::optional<TabulationTrace> try_tabulate(const BallotProfile& p) {
  int tie_round = 0;
  return count_rounds(p, TiePolicy::ErrorOnTie, tie_round);
}

CandidatePermutation::CandidatePermutation(const std::array<Candidate, 3>& image) : image_(image) {
  std::array<bool, 3> seen{};
  for (Candidate c : image_) {
    if (index_of(c) < 0 || index_of(c) > 2 || seen[index_of(c)]) {
      throw std::invalid_argument("CandidatePermutation: image is not a permutation");
    }
    seen[index_of(c)] = true;
  }
}

Ranking CandidatePermutation::operator()(Ranking r) const {
  auto o = order_of(r);
  for (Candidate& c : o) c = (*this)(c);
  return ranking_from_order(o);
}

CandidatePermutation CandidatePermutation::inverse() const {
  std::array<Candidate, 3> inv{};
  for (Candidate c : kCandidates) inv[index_of((*this)(c))] = c;
  return CandidatePermutation(inv);
}

bool CandidatePermutation::is_identity() const { return image_ == kCandidates; }

BallotProfile relabel(const BallotProfile& p, const CandidatePermutation& perm) {
  std::array<Count, kRankingCount> out{};
  for (Ranking r : kRankings) out[index_of(perm(r))] = p[r];
  return BallotProfile(out);
}

NormalizedProfile normalize(const BallotProfile& p) {
  const TabulationTrace trace = tabulate(p, TiePolicy::ErrorOnTie);
  std::array<Candidate, 3> image{};
  const Candidate middle = other_than(trace.winner, trace.eliminated_round1);
  image[index_of(trace.winner)] = Candidate::A;
  image[index_of(middle)] = Candidate::B;
  image[index_of(trace.eliminated_round1)] = Candidate::C;
  const CandidatePermutation perm(image);
  const BallotProfile relabeled = relabel(p, perm);
  return NormalizedProfile(relabeled, perm, tabulate(relabeled, TiePolicy::ErrorOnTie));
}

PlayoutPattern playout_pattern(const TabulationTrace& trace) {
  return PlayoutPattern{trace.round1_order, trace.round2_order};
}

PlayoutPattern playout_pattern(const BallotProfile& p) {
  return playout_pattern(tabulate(p, TiePolicy::ErrorOnTie));
}

std::string format_playout(const PlayoutPattern& pattern, bool primed, const CandidateNames& names) {
  const std::string mark = primed ? "'" : "";
  auto name = [&](Candidate c) { return names[index_of(c)]; };

  std::string out;
  for (Candidate c : pattern.round1_order) out += name(c) + mark;
  out += " → ";
  const Candidate gone = pattern.eliminated_round1();
  for (Candidate c : pattern.round2_order) out += name(c) + "(" + name(gone) + ")" + mark;
  out += " → ";
  Candidate first_out = gone;
  Candidate second_out = pattern.round2_order[1];
  if (second_out < first_out) std::swap(first_out, second_out);
  out += name(pattern.winner()) + "(" + name(first_out) + name(second_out) + ")" + mark;
  return out;
}

std::string_view to_string(ShiftDirection d) {
  return d == ShiftDirection::DemoteB ? "DemoteB" : "PromoteA";
}

std::span<const MoveType, 6> move_types(ShiftDirection d) {
  return d == ShiftDirection::DemoteB ? std::span<const MoveType, 6>(kDemoteB)
                                      : std::span<const MoveType, 6>(kPromoteA);
}

ShiftVector::ShiftVector(ShiftDirection direction, const std::array<Count, 6>& moves)
    : direction_(direction), moves_(moves) {
  for (Count m : moves_) {
    if (m < 0) throw std::invalid_argument("shift move counts must be non-negative");
  }
}

ShiftVector ShiftVector::demote_b(const DemoteBMoves& m) {
  return {ShiftDirection::DemoteB,
          {m.b1_to_a1, m.b1_to_a2, m.b2_to_c1, m.b2_to_c2, m.a1_to_a2, m.c2_to_c1}};
}

ShiftVector ShiftVector::promote_a(const PromoteAMoves& m) {
  return {ShiftDirection::PromoteA,
          {m.b1_to_a1, m.b2_to_b1, m.b2_to_a1, m.c1_to_a2, m.c2_to_c1, m.c2_to_a2}};
}

Count ShiftVector::total() const { return std::accumulate(moves_.begin(), moves_.end(), Count{0}); }

Candidate ShiftVector::subject() const {
  return direction_ == ShiftDirection::DemoteB ? Candidate::B : Candidate::A;
}

bool shift_precedes(const ShiftVector& l, const ShiftVector& r) {
  const Count lt = l.total();
  const Count rt = r.total();
  if (lt != rt) return lt < rt;
  return l.moves() < r.moves();
}

std::array<Count, kRankingCount> column_deltas(const ShiftVector& s) {
  std::array<Count, kRankingCount> delta{};
  const auto types = move_types(s.direction());
  for (std::size_t i = 0; i < types.size(); ++i) {
    delta[index_of(types[i].from)] += s.moves()[i];
    delta[index_of(types[i].to)] -= s.moves()[i];
  }
  return delta;
}

ShiftCapacityError::ShiftCapacityError(Ranking column)
    : std::invalid_argument("shift draws more voters than column " + std::string(column_name(column)) +
                            " holds"),
      column_(column) {}

std::vector<Move> to_moves(const ShiftVector& s) {
  std::vector<Move> out;
  const auto types = move_types(s.direction());
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (s.moves()[i] > 0) out.push_back({types[i].from, types[i].to, s.moves()[i]});
  }
  return out;
}

std::vector<Move> inverse_moves(std::span<const Move> moves) {
  std::vector<Move> out;
  out.reserve(moves.size());
  for (const Move& m : moves) out.push_back({m.to, m.from, m.voters});
  return out;
}

BallotProfile apply_moves(const BallotProfile& p, std::span<const Move> moves) {
  std::array<Count, kRankingCount> outgoing{};
  std::array<Count, kRankingCount> counts = p.counts();
  for (const Move& m : moves) {
    if (m.voters < 0) throw std::invalid_argument("move voter counts must be non-negative");
    outgoing[index_of(m.from)] += m.voters;
  }
  for (Ranking r : kRankings) {
    if (outgoing[index_of(r)] > p[r]) throw ShiftCapacityError(r);
  }
  for (const Move& m : moves) {
    counts[index_of(m.from)] -= m.voters;
    counts[index_of(m.to)] += m.voters;
  }
  return BallotProfile(counts);
}

BallotProfile apply_shift(const BallotProfile& p, const ShiftVector& s) {
  const auto moves = to_moves(s);
  return apply_moves(p, moves);
}

bool raises(Candidate subject, Ranking from, Ranking to) {
  if (place_of(to, subject) >= place_of(from, subject)) return false;
  const auto f = order_of(from);
  std::array<Candidate, 2> rest_from{};
  std::array<Candidate, 2> rest_to{};
  std::size_t i = 0;
  for (Candidate c : f) {
    if (c != subject) rest_from[i++] = c;
  }
  i = 0;
  for (Candidate c : order_of(to)) {
    if (c != subject) rest_to[i++] = c;
  }
  return rest_from == rest_to;
}

bool lowers(Candidate subject, Ranking from, Ranking to) { return raises(subject, to, from); }

}  // namespace rcvmono

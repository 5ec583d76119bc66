#pragma once

// Fixtures and a ballot-by-ballot instant-runoff count that shares no code
// with the library.

#include <algorithm>
#include <array>
#include <optional>
#include <vector>

#include "rcvmono/profile.hpp"

namespace fixture {

inline const rcvmono::BallotProfile kRaiseBefore{18, 20, 7, 25, 20, 10};
inline const rcvmono::BallotProfile kRaiseAfter{25, 20, 0, 25, 20, 10};
inline const rcvmono::BallotProfile kLowerBefore{25, 5, 25, 20, 25, 0};
inline const rcvmono::BallotProfile kLowerAfter{25, 5, 25, 13, 25, 7};

}  // namespace fixture

namespace naive {

// Ballot orders in column order a1..c2, as letters.
inline constexpr std::array<std::array<int, 3>, 6> kOrders{{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

struct Count {
  std::array<long long, 3> first{};
  int eliminated = -1;
  std::array<long long, 3> second{};  // tally of the two survivors, 0 for the eliminated
  int winner = -1;
  bool tie = false;
};

// Strict rules: any tie at the bottom of round 1 or at the top of round 2
// counts as a tie, except when someone already holds a strict majority.
inline Count irv(const rcvmono::BallotProfile& p) {
  std::vector<std::array<int, 3>> ballots;
  for (int col = 0; col < 6; ++col)
    for (long long k = 0; k < p.counts()[col]; ++k) ballots.push_back(kOrders[col]);
  Count r;
  for (const auto& b : ballots) ++r.first[b[0]];
  const long long v = static_cast<long long>(ballots.size());
  for (int c = 0; c < 3; ++c) {
    if (2 * r.first[c] > v) {
      r.winner = c;
      // elimination is still well defined: the later-labelled minimum
      long long lo = *std::min_element(r.first.begin(), r.first.end());
      for (int e = 2; e >= 0; --e)
        if (r.first[e] == lo) { r.eliminated = e; break; }
    }
  }
  long long lo = *std::min_element(r.first.begin(), r.first.end());
  int at_lo = static_cast<int>(std::count(r.first.begin(), r.first.end(), lo));
  if (r.winner < 0 && at_lo > 1) {
    r.tie = true;
    return r;
  }
  if (r.eliminated < 0)
    for (int c = 0; c < 3; ++c)
      if (r.first[c] == lo) r.eliminated = c;
  for (const auto& b : ballots) {
    int top = b[0] == r.eliminated ? b[1] : b[0];
    ++r.second[top];
  }
  if (r.winner >= 0) return r;
  std::array<int, 2> fin{};
  int n = 0;
  for (int c = 0; c < 3; ++c)
    if (c != r.eliminated) fin[n++] = c;
  if (r.second[fin[0]] == r.second[fin[1]]) {
    r.tie = true;
    return r;
  }
  r.winner = r.second[fin[0]] > r.second[fin[1]] ? fin[0] : fin[1];
  return r;
}

}  // namespace naive

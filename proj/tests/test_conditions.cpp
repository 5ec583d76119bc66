#include "doctest.h"
#include "rcvmono/conditions.hpp"
#include "rcvmono/oracle.hpp"
#include "support.hpp"

using namespace rcvmono;

namespace {

// The inequalities evaluated directly in halves; every quantity is a
// multiple of 1/4 so doubles are exact here.
bool upward_direct(const BallotProfile& p) {
  double c = static_cast<double>(p.first_place(Candidate::C));
  double v = static_cast<double>(p.voters());
  double b2 = static_cast<double>(p[Ranking::b2]);
  return c + b2 > v / 2 && c > v / 4;
}

bool downward_direct(const BallotProfile& p) {
  double a = static_cast<double>(p.first_place(Candidate::A));
  double b = static_cast<double>(p.first_place(Candidate::B));
  double c = static_cast<double>(p.first_place(Candidate::C));
  double v = static_cast<double>(p.voters());
  double delta = p.voters() % 2 == 1 ? 0.5 : 1.0;
  double bound = std::min({static_cast<double>(p[Ranking::b2]), b - a - 1,
                           b + static_cast<double>(p[Ranking::a1]) - v / 2 - delta});
  return a - c < bound;
}

template <class F>
void for_each_normalized(Count max_v, F f) {
  for (Count v = 1; v <= max_v; ++v) {
    ProfileEnumerator e(v);
    while (auto p = e.next()) {
      auto t = try_tabulate(*p);
      if (!t || t->winner != Candidate::A || t->eliminated_round1 != Candidate::C) continue;
      f(normalize(*p));
    }
  }
}

}  // namespace

TEST_CASE("doubled delta") {
  CHECK(doubled_delta(99) == 1);
  CHECK(doubled_delta(100) == 2);
  CHECK(doubled_delta(1) == 1);
}

TEST_CASE("upward condition examples") {
  auto t2 = upward_creatable(normalize(fixture::kRaiseBefore));
  CHECK(t2.holds);
  CHECK(t2.direction == ConditionKind::UpwardCreatable);
  REQUIRE(t2.margins.size() == 2);
  CHECK(t2.margins[0].value == 10);
  CHECK(t2.margins[1].value == 20);

  auto small = normalize(BallotProfile(10, 10, 5, 5, 3, 2));
  CHECK(small.c() == 5);
  CHECK(small.voters() == 35);
  CHECK_FALSE(upward_creatable(small).holds);

  auto t4 = upward_creatable(normalize(fixture::kLowerBefore));
  CHECK_FALSE(t4.holds);
  CHECK(t4.margins[1].value == 0);
}

TEST_CASE("downward condition examples") {
  auto t4 = downward_creatable(normalize(fixture::kLowerBefore));
  CHECK(t4.holds);
  REQUIRE(t4.margins.size() == 3);
  // A-C = 5 against bounds 20, 14, 19
  CHECK(t4.margins[0].value == 2 * (20 - 5));
  CHECK(t4.margins[1].value == 2 * (14 - 5));
  CHECK(t4.margins[2].value == 2 * (19 - 5));

  auto t2 = downward_creatable(normalize(fixture::kRaiseBefore));
  CHECK_FALSE(t2.holds);
  CHECK(t2.margins[1].value == 2 * (-7 - 8));

  for_each_normalized(9, [](const NormalizedProfile& np) {
    if (np.profile()[Ranking::b2] == 0) CHECK_FALSE(downward_creatable(np).holds);
  });
}

TEST_CASE("classify") {
  auto r2 = classify(fixture::kRaiseBefore);
  CHECK(r2.upward_creatable);
  CHECK_FALSE(r2.downward_creatable);
  CHECK(r2.downward_has_happened_possible);
  CHECK_FALSE(r2.upward_has_happened_possible);
  CHECK(r2.any_failure_possible);

  auto r4 = classify(fixture::kLowerBefore);
  CHECK(r4.downward_creatable);
  CHECK_FALSE(r4.upward_creatable);
  CHECK(r4.upward_has_happened_possible);
  CHECK_FALSE(r4.downward_has_happened_possible);

  auto one = classify(BallotProfile(1, 0, 0, 0, 0, 0));
  CHECK_FALSE(one.upward_creatable);
  CHECK_FALSE(one.downward_creatable);
  CHECK_FALSE(one.any_failure_possible);

  CHECK_THROWS_AS(classify(BallotProfile(1, 0, 1, 0, 1, 0)), TieError);

  // classify normalizes first, so relabeled inputs give the same verdicts
  CandidatePermutation perm{{Candidate::C, Candidate::A, Candidate::B}};
  auto moved = classify(relabel(fixture::kLowerBefore, perm));
  CHECK(moved.downward == r4.downward);
  CHECK(moved.normalized.permutation() == perm.inverse());
}

TEST_CASE("flags are tied together and margins decide holds") {
  for (Count v = 1; v <= 10; ++v) {
    ProfileEnumerator e(v);
    while (auto p = e.next()) {
      if (!try_tabulate(*p)) continue;
      auto r = classify(*p);
      CHECK(r.downward_has_happened_possible == r.upward_creatable);
      CHECK(r.upward_has_happened_possible == r.downward_creatable);
      CHECK(r.any_failure_possible == (r.upward_creatable || r.downward_creatable));
      CHECK(holds_from_margins(r.upward) == r.upward.holds);
      CHECK(holds_from_margins(r.downward) == r.downward.holds);
    }
  }
}

TEST_CASE("closed forms match a direct half-integer evaluation") {
  for_each_normalized(12, [](const NormalizedProfile& np) {
    CHECK(upward_creatable(np).holds == upward_direct(np.profile()));
    CHECK(downward_creatable(np).holds == downward_direct(np.profile()));
  });
  for (Count v = 17; v <= 18; ++v) {
    ProfileEnumerator e(v);
    while (auto p = e.next()) {
      auto t = try_tabulate(*p);
      if (!t || t->winner != Candidate::A || t->eliminated_round1 != Candidate::C) continue;
      CHECK(downward_creatable(normalize(*p)).holds == downward_direct(*p));
    }
  }
}

TEST_CASE("downward holds only when B leads round one") {
  const PlayoutPattern bac{{Candidate::B, Candidate::A, Candidate::C}, {Candidate::A, Candidate::B}};
  for (Count v = 17; v <= 19; ++v) {
    ProfileEnumerator e(v);
    while (auto p = e.next()) {
      auto t = try_tabulate(*p);
      if (!t || t->winner != Candidate::A || t->eliminated_round1 != Candidate::C) continue;
      auto np = normalize(*p);
      if (downward_creatable(np).holds) CHECK(playout_pattern(np.trace()) == bac);
    }
  }
}

TEST_CASE("scaling by an odd factor") {
  auto scaled = [](const BallotProfile& p, Count k) {
    auto c = p.counts();
    for (auto& x : c) x *= k;
    return BallotProfile(c);
  };
  for (Count k : {3, 5}) {
    for (const auto& p : {fixture::kRaiseBefore, fixture::kLowerBefore}) {
      auto np = normalize(p);
      auto sp = normalize(scaled(p, k));
      CHECK(upward_creatable(np).holds == upward_creatable(sp).holds);
      CHECK(downward_creatable(np).holds == downward_creatable(sp).holds);
    }
    for_each_normalized(10, [&](const NormalizedProfile& np) {
      auto sp = normalize(scaled(np.profile(), k));
      CHECK(upward_creatable(np).holds == upward_creatable(sp).holds);
      if (downward_creatable(np).holds) CHECK(downward_creatable(sp).holds);
    });
  }
  // The unit terms in the downward bounds do not scale, so a near miss can
  // become creatable in a larger electorate.
  auto near = normalize(BallotProfile(2, 2, 0, 6, 3, 0));
  CHECK_FALSE(downward_creatable(near).holds);
  CHECK(downward_creatable(normalize(scaled(near.profile(), 3))).holds);
}

TEST_CASE("upward closed form agrees with brute force through V = 10") {
  for_each_normalized(10, [](const NormalizedProfile& np) {
    bool oracle = creatable_bruteforce(np.profile(), ShiftDirection::PromoteA,
                                       OracleMode::AnyWitness)
                      .has_value();
    CHECK(upward_creatable(np).holds == oracle);
  });
}

TEST_CASE("literal upward inequalities overshoot at V = 11") {
  // A and B tie at 4 on first preferences, C has 3. Both inequalities hold,
  // yet no A-promotion lets B or C win.
  auto np = normalize(BallotProfile(0, 4, 0, 4, 2, 1));
  CHECK(np.permutation().is_identity());
  CHECK(upward_creatable(np).holds);
  CHECK_FALSE(creatable_bruteforce(np.profile(), ShiftDirection::PromoteA).has_value());
  CHECK_FALSE(search_upward_witness(np).has_value());
}

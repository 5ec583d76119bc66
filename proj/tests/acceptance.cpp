// Acceptance suite: one PASS/FAIL line per criterion, then a few wider
// checks marked "extended". Exit status is 0 only when the set of failing
// lines equals the set named with --known-red.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rcvmono/cli/report.hpp"
#include "rcvmono/conditions.hpp"
#include "rcvmono/montecarlo.hpp"
#include "rcvmono/oracle.hpp"
#include "rcvmono/witness.hpp"

using namespace rcvmono;
using Clock = std::chrono::steady_clock;

namespace {

struct Line {
  std::string id;
  bool pass;
  std::string detail;
  double seconds;
};

std::vector<Line> lines;

void report(std::string id, bool pass, std::string detail, Clock::time_point start) {
  double s = std::chrono::duration<double>(Clock::now() - start).count();
  std::printf("%s  %-28s %s  [%.2f s]\n", pass ? "PASS" : "FAIL", id.c_str(), detail.c_str(), s);
  std::fflush(stdout);
  lines.push_back({std::move(id), pass, std::move(detail), s});
}

bool in_frame(const TabulationTrace& t) {
  return t.winner == Candidate::A && t.eliminated_round1 == Candidate::C;
}

// Witnesses collected along the way for the reversibility line.
std::vector<WitnessRecord> found;

void fixtures() {
  auto start = Clock::now();
  struct Case {
    BallotProfile p;
    std::array<Count, 3> round1;
    Candidate eliminated;
    std::array<Candidate, 2> finalists;
    std::array<Count, 2> round2;
  };
  const Case cases[] = {
      {{18, 20, 7, 25, 20, 10}, {38, 32, 30}, Candidate::C, {Candidate::A, Candidate::B}, {58, 42}},
      {{25, 20, 0, 25, 20, 10}, {45, 25, 30}, Candidate::B, {Candidate::C, Candidate::A}, {55, 45}},
      {{25, 5, 25, 20, 25, 0}, {30, 45, 25}, Candidate::C, {Candidate::A, Candidate::B}, {55, 45}},
      {{25, 5, 25, 13, 25, 7}, {30, 38, 32}, Candidate::A, {Candidate::B, Candidate::C}, {63, 37}},
  };
  int ok = 0;
  for (const auto& c : cases) {
    auto t = tabulate(c.p);
    ok += t.tallies.first_round == c.round1 && t.eliminated_round1 == c.eliminated &&
          t.round2_order == c.finalists && t.round2_tallies == c.round2 &&
          t.winner == c.finalists[0];
  }
  bool fast = std::chrono::duration<double>(Clock::now() - start).count() < 1.0;
  report("fixture_exactness", ok == 4 && fast,
         std::to_string(ok) + "/4 worked examples reproduced exactly", start);
}

void verify_line(const std::string& id, Count max_v, ShiftDirection d, double budget) {
  auto start = Clock::now();
  auto r = exhaustive_verify(max_v, d);
  std::ostringstream detail;
  detail << "V<=" << max_v << " " << to_string(d) << ": " << r.checked_profiles << " checked, "
         << r.skipped_tied << " tied skipped, " << r.mismatches.size() << " mismatches";
  if (!r.mismatches.empty()) {
    std::set<BallotProfile> distinct;
    for (const auto& m : r.mismatches) distinct.insert(normalize(m.profile).profile());
    detail << " (" << distinct.size() << " up to relabeling; first " << to_string(r.mismatches[0].profile)
           << ")";
  }
  report(id, r.ok() && r.elapsed.count() < budget, detail.str(), start);
}

struct SoundnessTally {
  Count total = 0;
  Count verified = 0;
  Count right_size = 0;
};

void check_constructed(const NormalizedProfile& np, SoundnessTally& s) {
  auto w = construct_downward_witness(np);
  ++s.total;
  s.verified += verify_witness(w).ok;
  s.right_size += w.shift.total() == np.a() - np.c() + 1;
  found.push_back(std::move(w));
}

void soundness(std::uint64_t seed) {
  auto start = Clock::now();
  SoundnessTally small;
  for (Count v = 1; v <= 12; ++v) {
    ProfileEnumerator e(v);
    while (auto p = e.next()) {
      auto t = try_tabulate(*p);
      if (!t || !in_frame(*t)) continue;
      auto np = normalize(*p);
      if (downward_creatable(np).holds) check_constructed(np, small);
    }
  }

  // Random electorates, kept only when the condition holds.
  SoundnessTally big;
  std::mt19937_64 pick(seed);
  std::uniform_int_distribution<Count> voters(50, 2000);
  Count drawn = 0;
  for (std::uint64_t trial = 0; big.total < 10000; ++trial) {
    auto rng = trial_stream(seed, trial);
    auto p = sample_profile(CultureModel::ImpartialAnonymousCulture, voters(pick), rng);
    ++drawn;
    auto t = try_tabulate(p);
    if (!t) continue;
    auto np = normalize(p);
    if (downward_creatable(np).holds) check_constructed(np, big);
  }
  bool pass = small.verified == small.total && small.right_size == small.total &&
              big.verified == big.total && big.right_size == big.total;
  std::ostringstream detail;
  detail << "V<=12: " << small.verified << "/" << small.total << " verified; random V in [50,2000]: "
         << big.verified << "/" << big.total << " verified, " << big.right_size
         << " with |shift|=A-C+1 (" << drawn << " drawn)";
  report("witness_soundness", pass, detail.str(), start);
}

// Nothing is upward-creatable at small V, so the search runs a little
// further to give the reversal check upward witnesses as well.
void upward_witnesses(Count max_v) {
  for (Count v = 1; v <= max_v; ++v) {
    ProfileEnumerator e(v);
    while (auto p = e.next()) {
      auto t = try_tabulate(*p);
      if (!t || !in_frame(*t)) continue;
      auto np = normalize(*p);
      if (!upward_creatable(np).holds) continue;
      if (auto w = search_upward_witness(np)) found.push_back(std::move(*w));
    }
  }
}

void reversibility() {
  auto start = Clock::now();
  Count exact = 0, opposite = 0, up = 0;
  for (const auto& w : found) {
    auto rev = reverse(w);
    exact += apply_moves(w.modified, inverse_moves(to_moves(w.shift))) == w.original &&
             rev.after == w.original;
    auto check = exhibits_failure(rev.before, rev.change);
    auto want = w.direction == FailureDirection::DownwardCreated ? FailureKind::Upward
                                                                  : FailureKind::Downward;
    opposite += check.kind == want;
    up += w.direction == FailureDirection::UpwardCreated;
  }
  Count n = static_cast<Count>(found.size());
  std::ostringstream detail;
  detail << n << " witnesses (" << n - up << " downward, " << up << " upward): " << exact
         << " restore the original, " << opposite << " verify as the opposite failure";
  report("equivalence_reversibility", n > 0 && exact == n && opposite == n, detail.str(), start);
}

void playout_closure(Count max_v) {
  auto start = Clock::now();
  const std::set<std::string> allowed{
      "A'B'C' → A(C)'B(C)' → A(BC)'", "B'A'C' → A(C)'B(C)' → A(BC)'",
      "A'C'B' → A(B)'C(B)' → A(BC)'", "A'C'B' → C(B)'A(B)' → C(AB)'",
      "C'A'B' → A(B)'C(B)' → A(BC)'", "C'A'B' → C(B)'A(B)' → C(AB)'",
      "B'C'A' → B(A)'C(A)' → B(AC)'", "B'C'A' → C(A)'B(A)' → C(AB)'",
      "C'B'A' → B(A)'C(A)' → B(AC)'", "C'B'A' → C(A)'B(A)' → C(AB)'",
  };
  const std::set<std::string> b_wins{"B'C'A' → B(A)'C(A)' → B(AC)'",
                                     "C'B'A' → B(A)'C(A)' → B(AC)'"};
  const PlayoutPattern option2{{Candidate::B, Candidate::A, Candidate::C},
                               {Candidate::A, Candidate::B}};
  Count profiles = 0, shifts = 0, outside = 0, bad_b = 0;
  std::set<std::string> seen;
  for (Count v = 1; v <= max_v; ++v) {
    ProfileEnumerator e(v);
    while (auto p = e.next()) {
      auto t = try_tabulate(*p);
      if (!t || !in_frame(*t) || playout_pattern(*t) != option2) continue;
      ++profiles;
      ShiftEnumerator se(*p, ShiftDirection::DemoteB);
      while (auto s = se.next()) {
        auto after = try_tabulate(apply_shift(*p, *s));
        if (!after) continue;
        ++shifts;
        auto text = format_playout(playout_pattern(*after), true);
        seen.insert(text);
        outside += !allowed.contains(text);
        bad_b += after->winner == Candidate::B && !b_wins.contains(text);
      }
    }
  }
  std::ostringstream detail;
  detail << profiles << " profiles, " << shifts << " tie-free shifts, " << seen.size()
         << "/10 patterns seen, " << outside << " outside the list, " << bad_b
         << " B wins elsewhere";
  report("playout_closure", outside == 0 && bad_b == 0, detail.str(), start);
}

void calibration(const std::string& id, Count voters, Count trials, int seeds) {
  auto start = Clock::now();
  auto ex = exact_iac_frequencies(voters);
  const double exact[4] = {ex.fraction_upward(), ex.fraction_downward(), ex.fraction_any(),
                           ex.fraction_tied()};
  int covered[4] = {0, 0, 0, 0};
  double slowest = 0;
  for (int s = 1; s <= seeds; ++s) {
    auto r = estimate(CultureModel::ImpartialAnonymousCulture, voters, trials,
                      static_cast<std::uint64_t>(s), 0, 0.99);
    slowest = std::max(slowest, r.elapsed.count());
    const Proportion* ps[4] = {&r.upward_creatable, &r.downward_creatable, &r.any_failure_possible,
                               &r.tied_discarded};
    for (int k = 0; k < 4; ++k) covered[k] += ps[k]->low <= exact[k] && exact[k] <= ps[k]->high;
  }

  // byte-identical output across thread counts
  bool identical = true;
  for (std::uint64_t s : {1ULL, 77ULL}) {
    std::string ref;
    for (unsigned th : {1u, 2u, 4u, 0u}) {
      auto r = estimate(CultureModel::ImpartialAnonymousCulture, voters, trials, s, th, 0.99);
      auto text = rcvmono::cli::to_json(r).dump();
      if (ref.empty()) ref = text;
      identical = identical && text == ref;
    }
  }
  bool pass = identical && slowest < 120.0;
  std::ostringstream detail;
  const char* names[4] = {"upward", "downward", "any", "tied"};
  detail << "IAC V=" << voters << ", " << trials << " trials: ";
  for (int k = 0; k < 4; ++k) {
    pass = pass && covered[k] >= seeds * 95 / 100;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s %.6f in %d/%d, ", names[k], exact[k], covered[k], seeds);
    detail << buf;
  }
  detail << (identical ? "thread-independent" : "THREAD-DEPENDENT") << ", slowest run "
         << slowest << " s";
  report(id, pass, detail.str(), start);
}

void extended_soundness(Count from, Count to) {
  auto start = Clock::now();
  SoundnessTally t;
  Count oracle_agree = 0;
  for (Count v = from; v <= to; ++v) {
    ProfileEnumerator e(v);
    while (auto p = e.next()) {
      auto tr = try_tabulate(*p);
      if (!tr || !in_frame(*tr)) continue;
      auto np = normalize(*p);
      if (!downward_creatable(np).holds) continue;
      check_constructed(np, t);
      oracle_agree +=
          creatable_bruteforce(*p, ShiftDirection::DemoteB, OracleMode::AnyWitness).has_value();
    }
  }
  std::ostringstream detail;
  detail << "V in [" << from << "," << to << "]: " << t.verified << "/" << t.total
         << " constructed witnesses verified, " << t.right_size << " with |shift|=A-C+1, "
         << oracle_agree << " confirmed by brute force";
  report("extended_soundness", t.total > 0 && t.verified == t.total && t.right_size == t.total &&
                                   oracle_agree == t.total,
         detail.str(), start);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance suite"};
  std::vector<std::string> known_red;
  bool quick = false;
  std::uint64_t seed = 20240611;
  app.add_option("--known-red", known_red, "criteria expected to fail");
  app.add_flag("--skip-extended", quick, "only the core criteria");
  app.add_option("--seed", seed, "seed for the random soundness profiles");
  CLI11_PARSE(app, argc, argv);

  fixtures();
  verify_line("downward_verify", 12, ShiftDirection::DemoteB, 600.0);
  verify_line("upward_verify", 12, ShiftDirection::PromoteA, 600.0);
  soundness(seed);
  upward_witnesses(20);
  reversibility();
  playout_closure(12);
  calibration("montecarlo_calibration", 12, 200000, 100);

  if (!quick) {
    std::printf("-- extended\n");
    verify_line("extended_downward_verify", 20, ShiftDirection::DemoteB, 600.0);
    extended_soundness(17, 20);
    calibration("extended_calibration", 20, 200000, 100);
  }

  std::set<std::string> red;
  for (const auto& l : lines)
    if (!l.pass) red.insert(l.id);
  std::set<std::string> expected(known_red.begin(), known_red.end());
  int passed = static_cast<int>(lines.size() - red.size());
  std::printf("%d/%zu passed\n", passed, lines.size());
  if (!expected.empty()) {
    for (const auto& id : expected)
      if (!red.contains(id)) std::printf("note: %s was expected to fail but passed\n", id.c_str());
    return red == expected ? 0 : 1;
  }
  return red.empty() ? 0 : 1;
}

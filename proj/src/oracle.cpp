#include "rcvmono/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "rcvmono/conditions.hpp"

namespace rcvmono {

ShiftEnumerator::ShiftEnumerator(const BallotProfile& p, ShiftDirection d)
    : profile_(p), direction_(d) {}

std::optional<ShiftVector> ShiftEnumerator::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    return ShiftVector(direction_, moves_);
  }
  const auto types = move_types(direction_);
  auto drawn_from = [&](Ranking source) {
    Count sum = 0;
    for (std::size_t i = 0; i < types.size(); ++i) {
      if (types[i].from == source) sum += moves_[i];
    }
    return sum;
  };
  // Odometer: bump the last slot that still has room, zero everything after.
  for (std::size_t slot = types.size(); slot-- > 0;) {
    ++moves_[slot];
    if (drawn_from(types[slot].from) <= profile_[types[slot].from]) {
      return ShiftVector(direction_, moves_);
    }
    moves_[slot] = 0;
  }
  done_ = true;
  return std::nullopt;
}

ProfileEnumerator::ProfileEnumerator(Count voters) : voters_(voters) {
  if (voters < 0) throw std::invalid_argument("ProfileEnumerator: negative voter count");
  counts_.back() = voters;
}

std::optional<BallotProfile> ProfileEnumerator::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    return BallotProfile(counts_);
  }
  // Lexicographic successor of a composition: find the rightmost position
  // before the last with a nonzero tail, bump it, push the rest to the end.
  for (std::size_t i = counts_.size() - 1; i-- > 0;) {
    Count tail = 0;
    for (std::size_t j = i + 1; j < counts_.size(); ++j) tail += counts_[j];
    if (tail > 0) {
      ++counts_[i];
      for (std::size_t j = i + 1; j < counts_.size(); ++j) counts_[j] = 0;
      counts_.back() = tail - 1;
      return BallotProfile(counts_);
    }
  }
  done_ = true;
  return std::nullopt;
}

std::optional<WitnessRecord> creatable_bruteforce(const BallotProfile& p, ShiftDirection d,
                                                  OracleMode mode) {
  const NormalizedProfile np = normalize(p);
  const BallotProfile& base = np.profile();
  auto is_failure = [d](Candidate winner) {
    return d == ShiftDirection::DemoteB ? winner == Candidate::B : winner != Candidate::A;
  };

  std::optional<ShiftVector> best;
  ShiftEnumerator shifts(base, d);
  while (auto s = shifts.next()) {
    if (best && !shift_precedes(*s, *best)) continue;
    const auto trace = try_tabulate(apply_shift(base, *s));
    if (!trace || !is_failure(trace->winner)) continue;
    best = *s;
    if (mode == OracleMode::AnyWitness) break;
  }
  if (!best) return std::nullopt;
  return make_witness(base, *best);
}

bool formula_verdict(const NormalizedProfile& np, ShiftDirection d) {
  return d == ShiftDirection::DemoteB ? downward_creatable(np).holds : upward_creatable(np).holds;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (std::size_t i = cursor++; i < n; i = cursor++) body(i);
  };
  if (threads <= 1) {
    worker();
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
}

MismatchReport exhaustive_verify(Count max_voters, ShiftDirection d, unsigned threads) {
  if (max_voters < 1) throw std::invalid_argument("exhaustive_verify: max_voters must be >= 1");
  const auto start = std::chrono::steady_clock::now();

  std::vector<BallotProfile> profiles;
  for (Count v = 1; v <= max_voters; ++v) {
    ProfileEnumerator e(v);
    while (auto p = e.next()) profiles.push_back(*p);
  }

  enum class Outcome : std::uint8_t { Tied, Agree, Disagree };
  std::vector<Outcome> outcome(profiles.size(), Outcome::Tied);
  std::vector<char> formula(profiles.size(), 0);
  parallel_for(profiles.size(), threads, [&](std::size_t i) {
    if (!try_tabulate(profiles[i])) return;
    const NormalizedProfile np = normalize(profiles[i]);
    const bool by_formula = formula_verdict(np, d);
    const bool by_oracle = creatable_bruteforce(profiles[i], d, OracleMode::AnyWitness).has_value();
    formula[i] = by_formula;
    outcome[i] = by_formula == by_oracle ? Outcome::Agree : Outcome::Disagree;
  });

  MismatchReport report;
  report.max_voters = max_voters;
  report.direction = d;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    if (outcome[i] == Outcome::Tied) {
      ++report.skipped_tied;
      continue;
    }
    ++report.checked_profiles;
    if (outcome[i] == Outcome::Disagree) {
      report.mismatches.push_back({profiles[i], d, formula[i] != 0, formula[i] == 0});
    }
  }
  std::sort(report.mismatches.begin(), report.mismatches.end(), [](const Mismatch& l, const Mismatch& r) {
    if (l.profile.voters() != r.profile.voters()) return l.profile.voters() < r.profile.voters();
    return l.profile < r.profile;
  });
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

}  // namespace rcvmono

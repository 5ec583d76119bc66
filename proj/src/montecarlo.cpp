#include "rcvmono/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <tuple>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "rcvmono/conditions.hpp"
#include "rcvmono/oracle.hpp"

namespace rcvmono {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct Counters {
  Count tied = 0;
  Count upward = 0;
  Count downward = 0;
  Count any = 0;

  Counters& operator+=(const Counters& o) {
    tied += o.tied;
    upward += o.upward;
    downward += o.downward;
    any += o.any;
    return *this;
  }
};

// Uniform 5-subset of {0..voters+4} (Floyd), read as bar positions.
BallotProfile sample_iac(Count voters, SplitMix64& rng) {
  const Count slots = voters + 5;
  std::array<Count, 5> bars{};
  std::size_t chosen = 0;
  for (Count j = slots - 5; j < slots; ++j) {
    std::uniform_int_distribution<Count> pick(0, j);
    const Count t = pick(rng);
    const bool taken = std::find(bars.begin(), bars.begin() + static_cast<std::ptrdiff_t>(chosen), t) !=
                       bars.begin() + static_cast<std::ptrdiff_t>(chosen);
    bars[chosen++] = taken ? j : t;
  }
  std::sort(bars.begin(), bars.end());
  std::array<Count, kRankingCount> counts{};
  Count prev = -1;
  for (std::size_t i = 0; i < bars.size(); ++i) {
    counts[i] = bars[i] - prev - 1;
    prev = bars[i];
  }
  counts[5] = slots - 1 - prev;
  return BallotProfile(counts);
}

BallotProfile sample_ic(Count voters, SplitMix64& rng) {
  std::uniform_int_distribution<int> pick(0, kRankingCount - 1);
  std::array<Count, kRankingCount> counts{};
  for (Count v = 0; v < voters; ++v) ++counts[static_cast<std::size_t>(pick(rng))];
  return BallotProfile(counts);
}

}  // namespace

std::string_view to_string(CultureModel m) {
  return m == CultureModel::ImpartialCulture ? "ic" : "iac";
}

SplitMix64::result_type SplitMix64::operator()() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix64(state_);
}

SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t trial) {
  return SplitMix64(mix64(seed ^ mix64(trial + 0x632be59bd9b4e019ULL)));
}

BallotProfile sample_profile(CultureModel model, Count voters, SplitMix64& rng) {
  if (voters < 1) throw std::invalid_argument("sample_profile: voters must be >= 1");
  return model == CultureModel::ImpartialCulture ? sample_ic(voters, rng) : sample_iac(voters, rng);
}

std::pair<double, double> score_interval(Count successes, Count trials, double confidence) {
  if (successes < 0 || successes > trials) {
    throw std::invalid_argument("score_interval: need 0 <= successes <= trials");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("score_interval: confidence must be in (0, 1)");
  }
  if (trials == 0) return {0.0, 1.0};

  const double z = boost::math::quantile(boost::math::normal(), 0.5 + confidence / 2.0);
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  double low = std::clamp(center - half, 0.0, 1.0);
  double high = std::clamp(center + half, 0.0, 1.0);
  if (successes == 0) low = 0.0;
  if (successes == trials) high = 1.0;
  return {std::min(low, p), std::max(high, p)};
}

Proportion proportion(Count successes, Count trials, double confidence) {
  Proportion out;
  out.successes = successes;
  out.trials = trials;
  out.estimate = trials > 0 ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0;
  std::tie(out.low, out.high) = score_interval(successes, trials, confidence);
  return out;
}

FrequencyReport estimate(CultureModel model, Count voters, Count trials, std::uint64_t seed,
                         unsigned threads, double confidence) {
  if (trials < 1) throw std::invalid_argument("estimate: trials must be >= 1");
  if (voters < 1) throw std::invalid_argument("estimate: voters must be >= 1");
  const auto start = std::chrono::steady_clock::now();

  // Fixed blocks so the partition never depends on the thread count.
  constexpr Count kBlock = 4096;
  const auto blocks = static_cast<std::size_t>((trials + kBlock - 1) / kBlock);
  std::vector<Counters> partial(blocks);
  parallel_for(blocks, threads, [&](std::size_t b) {
    Counters c;
    const Count first = static_cast<Count>(b) * kBlock;
    const Count last = std::min(trials, first + kBlock);
    for (Count trial = first; trial < last; ++trial) {
      SplitMix64 rng = trial_stream(seed, static_cast<std::uint64_t>(trial));
      const BallotProfile p = sample_profile(model, voters, rng);
      if (!try_tabulate(p)) {
        ++c.tied;
        continue;
      }
      const ClassificationReport r = classify(p);
      c.upward += r.upward_creatable;
      c.downward += r.downward_creatable;
      c.any += r.any_failure_possible;
    }
    partial[b] = c;
  });

  Counters total;
  for (const Counters& c : partial) total += c;

  FrequencyReport report;
  report.model = model;
  report.voters = voters;
  report.trials = trials;
  report.seed = seed;
  report.confidence = confidence;
  const Count tie_free = trials - total.tied;
  report.upward_creatable = proportion(total.upward, tie_free, confidence);
  report.downward_creatable = proportion(total.downward, tie_free, confidence);
  report.any_failure_possible = proportion(total.any, tie_free, confidence);
  report.tied_discarded = proportion(total.tied, trials, confidence);
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

double ExactFrequencies::fraction_tied() const {
  return static_cast<double>(tied) / static_cast<double>(profiles);
}
double ExactFrequencies::fraction_upward() const {
  return static_cast<double>(upward) / static_cast<double>(profiles - tied);
}
double ExactFrequencies::fraction_downward() const {
  return static_cast<double>(downward) / static_cast<double>(profiles - tied);
}
double ExactFrequencies::fraction_any() const {
  return static_cast<double>(any) / static_cast<double>(profiles - tied);
}

ExactFrequencies exact_iac_frequencies(Count voters) {
  ExactFrequencies out;
  ProfileEnumerator e(voters);
  while (auto p = e.next()) {
    ++out.profiles;
    if (!try_tabulate(*p)) {
      ++out.tied;
      continue;
    }
    const ClassificationReport r = classify(*p);
    out.upward += r.upward_creatable;
    out.downward += r.downward_creatable;
    out.any += r.any_failure_possible;
  }
  return out;
}

}  // namespace rcvmono

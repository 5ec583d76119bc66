#pragma once

// Frequency of failure-susceptible profiles under random ballot cultures.

#include <chrono>
#include <cstdint>
#include <limits>
#include <string_view>
#include <utility>

#include "rcvmono/profile.hpp"

namespace rcvmono {

enum class CultureModel {
  ImpartialCulture,           // each voter uniform over the six rankings
  ImpartialAnonymousCulture,  // uniform over all count vectors summing to V
};

std::string_view to_string(CultureModel m);

/// SplitMix64; small state so every trial can own a stream.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

 private:
  std::uint64_t state_;
};

/// Independent stream for one trial; depends only on (seed, trial).
SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t trial);

BallotProfile sample_profile(CultureModel model, Count voters, SplitMix64& rng);

/// Wilson score interval, clamped to [0, 1]. Zero trials give (0, 1).
std::pair<double, double> score_interval(Count successes, Count trials, double confidence);

struct Proportion {
  Count successes = 0;
  Count trials = 0;
  double estimate = 0.0;
  double low = 0.0;
  double high = 1.0;

  friend bool operator==(const Proportion&, const Proportion&) = default;
};

Proportion proportion(Count successes, Count trials, double confidence);

struct FrequencyReport {
  CultureModel model = CultureModel::ImpartialAnonymousCulture;
  Count voters = 0;
  Count trials = 0;
  std::uint64_t seed = 0;
  double confidence = 0.99;
  /// Over tie-free samples only.
  Proportion upward_creatable;
  Proportion downward_creatable;
  Proportion any_failure_possible;
  /// Over all trials.
  Proportion tied_discarded;
  std::chrono::duration<double> elapsed{};

  Count tie_free() const { return trials - tied_discarded.successes; }
};

/// Classifies `trials` sampled profiles. The counts depend only on
/// (model, voters, trials, seed), not on `threads` (0 = hardware concurrency).
FrequencyReport estimate(CultureModel model, Count voters, Count trials, std::uint64_t seed,
                         unsigned threads = 0, double confidence = 0.99);

/// Exact IAC frequencies by enumerating every profile with `voters` voters.
struct ExactFrequencies {
  Count profiles = 0;
  Count tied = 0;
  Count upward = 0;
  Count downward = 0;
  Count any = 0;

  double fraction_tied() const;
  double fraction_upward() const;
  double fraction_downward() const;
  double fraction_any() const;
};

ExactFrequencies exact_iac_frequencies(Count voters);

}  // namespace rcvmono

#include "rcvmono/cli/report.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace rcvmono::cli {

namespace {

Candidate candidate_named(const std::string& name, const CandidateNames& names) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw std::invalid_argument("unknown candidate '" + name + "' in report");
  return static_cast<Candidate>(it - names.begin());
}

std::string slot_name(const MoveType& m) {
  return std::string(column_name(m.from)) + "_to_" + std::string(column_name(m.to));
}

ShiftDirection shift_direction_named(const std::string& s) {
  if (s == "DemoteB") return ShiftDirection::DemoteB;
  if (s == "PromoteA") return ShiftDirection::PromoteA;
  throw std::invalid_argument("unknown shift direction '" + s + "'");
}

Json to_json(const Proportion& p) {
  return Json{{"successes", p.successes},
              {"trials", p.trials},
              {"estimate", p.estimate},
              {"low", p.low},
              {"high", p.high}};
}

Proportion proportion_from_json(const Json& j) {
  return Proportion{j.at("successes").get<Count>(), j.at("trials").get<Count>(),
                    j.at("estimate").get<double>(), j.at("low").get<double>(),
                    j.at("high").get<double>()};
}

}  // namespace

Json envelope(std::string_view command, std::string_view input_digest, Json payload) {
  return Json{{"schema_version", kSchemaVersion},
              {"command", command},
              {"input_digest", input_digest},
              {"payload", std::move(payload)}};
}

Json to_json(const BallotProfile& p) {
  Json j = Json::object();
  for (Ranking r : kRankings) j[std::string(column_name(r))] = p[r];
  return j;
}

BallotProfile profile_from_json(const Json& j) {
  std::array<Count, kRankingCount> counts{};
  for (Ranking r : kRankings) counts[index_of(r)] = j.at(std::string(column_name(r))).get<Count>();
  return BallotProfile(counts);
}

Json to_json(const CandidatePermutation& perm, const CandidateNames& names) {
  Json j = Json::object();
  for (Candidate c : kCandidates) j[names[index_of(c)]] = std::string(1, label(perm(c)));
  return j;
}

Json to_json(const TabulationTrace& t, const CandidateNames& names) {
  auto name = [&](Candidate c) { return names[index_of(c)]; };
  Json round1 = Json::array();
  for (Candidate c : t.round1_order) round1.push_back({{"candidate", name(c)}, {"votes", t.tallies.first(c)}});
  Json round2 = Json::array();
  for (std::size_t i = 0; i < 2; ++i) {
    round2.push_back({{"candidate", name(t.round2_order[i])}, {"votes", t.round2_tallies[i]}});
  }
  return Json{{"voters", t.tallies.voters},
              {"profile", to_json(BallotProfile(t.tallies.columns))},
              {"round1", round1},
              {"eliminated", name(t.eliminated_round1)},
              {"round2", round2},
              {"winner", name(t.winner)},
              {"had_tie", t.had_tie},
              {"playout", format_playout(playout_pattern(t), false, names)}};
}

TabulationTrace trace_from_json(const Json& j, const CandidateNames& names) {
  TabulationTrace t;
  t.tallies = tally(profile_from_json(j.at("profile")));
  for (std::size_t i = 0; i < 3; ++i) {
    t.round1_order[i] = candidate_named(j.at("round1").at(i).at("candidate").get<std::string>(), names);
  }
  t.eliminated_round1 = candidate_named(j.at("eliminated").get<std::string>(), names);
  for (std::size_t i = 0; i < 2; ++i) {
    t.round2_order[i] = candidate_named(j.at("round2").at(i).at("candidate").get<std::string>(), names);
    t.round2_tallies[i] = j.at("round2").at(i).at("votes").get<Count>();
  }
  t.winner = candidate_named(j.at("winner").get<std::string>(), names);
  t.had_tie = j.at("had_tie").get<bool>();
  return t;
}

Json to_json(const ShiftVector& s) {
  Json moves = Json::object();
  const auto types = move_types(s.direction());
  for (std::size_t i = 0; i < types.size(); ++i) moves[slot_name(types[i])] = s.moves()[i];
  return Json{{"direction", to_string(s.direction())}, {"moves", moves}, {"total", s.total()}};
}

ShiftVector shift_from_json(const Json& j) {
  const ShiftDirection d = shift_direction_named(j.at("direction").get<std::string>());
  std::array<Count, 6> moves{};
  const auto types = move_types(d);
  for (std::size_t i = 0; i < types.size(); ++i) moves[i] = j.at("moves").at(slot_name(types[i])).get<Count>();
  return ShiftVector(d, moves);
}

Json to_json(const ConditionReport& r) {
  Json margins = Json::array();
  for (const Margin& m : r.margins) margins.push_back({{"inequality", m.name}, {"margin", m.value}});
  return Json{{"direction", to_string(r.direction)},
              {"holds", r.holds},
              {"units", kMarginUnits},
              {"margins", margins}};
}

ConditionReport condition_from_json(const Json& j) {
  ConditionReport r;
  const auto d = j.at("direction").get<std::string>();
  if (d == "UpwardCreatable") {
    r.direction = ConditionKind::UpwardCreatable;
  } else if (d == "DownwardCreatable") {
    r.direction = ConditionKind::DownwardCreatable;
  } else {
    throw std::invalid_argument("unknown condition direction '" + d + "'");
  }
  r.holds = j.at("holds").get<bool>();
  for (const auto& m : j.at("margins")) {
    r.margins.push_back({m.at("inequality").get<std::string>(), m.at("margin").get<Count>()});
  }
  return r;
}

Json to_json(const ClassificationReport& r, const CandidateNames& names) {
  const NormalizedProfile& np = r.normalized;
  return Json{
      {"normalization",
       {{"permutation", to_json(np.permutation(), names)}, {"profile", to_json(np.profile())}}},
      {"upward_creatable", r.upward_creatable},
      {"downward_creatable", r.downward_creatable},
      {"upward_has_happened_possible", r.upward_has_happened_possible},
      {"downward_has_happened_possible", r.downward_has_happened_possible},
      {"any_failure_possible", r.any_failure_possible},
      {"conditions", {{"upward", to_json(r.upward)}, {"downward", to_json(r.downward)}}},
      {"normalized_trace", to_json(np.trace())},
  };
}

Json to_json(const WitnessRecord& w, const CandidatePermutation& perm, const CandidateNames& names) {
  const CandidatePermutation back = perm.inverse();
  return Json{{"direction", to_string(w.direction)},
              {"permutation", to_json(perm, names)},
              {"original", to_json(w.original)},
              {"shift", to_json(w.shift)},
              {"modified", to_json(w.modified)},
              {"original_input_labels", to_json(relabel(w.original, back))},
              {"modified_input_labels", to_json(relabel(w.modified, back))},
              {"trace_before", to_json(w.trace_before)},
              {"trace_after", to_json(w.trace_after)},
              {"playout_before", format_playout(playout_pattern(w.trace_before))},
              {"playout_after", format_playout(playout_pattern(w.trace_after), true)}};
}

WitnessRecord witness_from_json(const Json& j) {
  const auto d = j.at("direction").get<std::string>();
  FailureDirection direction;
  if (d == "UpwardCreated") {
    direction = FailureDirection::UpwardCreated;
  } else if (d == "DownwardCreated") {
    direction = FailureDirection::DownwardCreated;
  } else {
    throw std::invalid_argument("unknown witness direction '" + d + "'");
  }
  return WitnessRecord{profile_from_json(j.at("original")),
                       shift_from_json(j.at("shift")),
                       profile_from_json(j.at("modified")),
                       direction,
                       trace_from_json(j.at("trace_before")),
                       trace_from_json(j.at("trace_after"))};
}

Json to_json(const MismatchReport& r) {
  Json list = Json::array();
  for (const Mismatch& m : r.mismatches) {
    list.push_back({{"profile", to_json(m.profile)},
                    {"voters", m.profile.voters()},
                    {"formula_verdict", m.formula_verdict},
                    {"oracle_verdict", m.oracle_verdict}});
  }
  return Json{{"direction", to_string(r.direction)},
              {"max_voters", r.max_voters},
              {"checked_profiles", r.checked_profiles},
              {"skipped_tied", r.skipped_tied},
              {"mismatch_count", r.mismatches.size()},
              {"mismatches", list}};
}

MismatchReport mismatch_from_json(const Json& j) {
  MismatchReport r;
  r.direction = shift_direction_named(j.at("direction").get<std::string>());
  r.max_voters = j.at("max_voters").get<Count>();
  r.checked_profiles = j.at("checked_profiles").get<Count>();
  r.skipped_tied = j.at("skipped_tied").get<Count>();
  for (const auto& m : j.at("mismatches")) {
    r.mismatches.push_back({profile_from_json(m.at("profile")), r.direction,
                            m.at("formula_verdict").get<bool>(), m.at("oracle_verdict").get<bool>()});
  }
  return r;
}

Json to_json(const FrequencyReport& r) {
  return Json{{"model", to_string(r.model)},
              {"voters", r.voters},
              {"trials", r.trials},
              {"seed", r.seed},
              {"confidence", r.confidence},
              {"tie_free", r.tie_free()},
              {"frequencies",
               {{"upward_creatable", to_json(r.upward_creatable)},
                {"downward_creatable", to_json(r.downward_creatable)},
                {"any_failure_possible", to_json(r.any_failure_possible)},
                {"tied_discarded", to_json(r.tied_discarded)}}}};
}

FrequencyReport frequency_from_json(const Json& j) {
  FrequencyReport r;
  const auto model = j.at("model").get<std::string>();
  if (model == "ic") {
    r.model = CultureModel::ImpartialCulture;
  } else if (model == "iac") {
    r.model = CultureModel::ImpartialAnonymousCulture;
  } else {
    throw std::invalid_argument("unknown culture model '" + model + "'");
  }
  r.voters = j.at("voters").get<Count>();
  r.trials = j.at("trials").get<Count>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.confidence = j.at("confidence").get<double>();
  const Json& f = j.at("frequencies");
  r.upward_creatable = proportion_from_json(f.at("upward_creatable"));
  r.downward_creatable = proportion_from_json(f.at("downward_creatable"));
  r.any_failure_possible = proportion_from_json(f.at("any_failure_possible"));
  r.tied_discarded = proportion_from_json(f.at("tied_discarded"));
  return r;
}

}  // namespace rcvmono::cli

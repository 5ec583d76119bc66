#pragma once

// JSON report envelope and the payload encodings the CLI emits. Margins are
// serialized in doubled-vote units, tagged "half-votes".

#include <string_view>

#include "json.hpp"
#include "rcvmono/conditions.hpp"
#include "rcvmono/montecarlo.hpp"
#include "rcvmono/oracle.hpp"
#include "rcvmono/witness.hpp"

namespace rcvmono::cli {

using Json = nlohmann::ordered_json;

/// Bump on any change to an envelope or payload shape.
inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kMarginUnits = "half-votes";

Json envelope(std::string_view command, std::string_view input_digest, Json payload);

Json to_json(const BallotProfile& p);
BallotProfile profile_from_json(const Json& j);

Json to_json(const CandidatePermutation& perm, const CandidateNames& names);

Json to_json(const TabulationTrace& t, const CandidateNames& names = default_names());
TabulationTrace trace_from_json(const Json& j, const CandidateNames& names = default_names());

Json to_json(const ShiftVector& s);
ShiftVector shift_from_json(const Json& j);

Json to_json(const ConditionReport& r);
ConditionReport condition_from_json(const Json& j);

Json to_json(const ClassificationReport& r, const CandidateNames& names);

/// The record stays in the normalized frame; `perm` and `names` add the
/// input-labelled profiles and the relabeling.
Json to_json(const WitnessRecord& w, const CandidatePermutation& perm, const CandidateNames& names);
WitnessRecord witness_from_json(const Json& j);

Json to_json(const MismatchReport& r);
MismatchReport mismatch_from_json(const Json& j);

Json to_json(const FrequencyReport& r);
FrequencyReport frequency_from_json(const Json& j);

}  // namespace rcvmono::cli

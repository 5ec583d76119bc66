#pragma once

// Ballot input: aggregated CSV ("ranking,count" header) or one ranking per
// line.

#include <stdexcept>
#include <string>
#include <string_view>

#include "rcvmono/profile.hpp"

namespace rcvmono::cli {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BallotFile {
  CandidateNames names;
  BallotProfile profile;
  std::string digest;  // "sha256:<hex>" of the raw bytes
};

/// Duplicate rankings are summed. Throws InputError on malformed rows and on
/// input without any ballot.
BallotProfile parse_ballots(std::string_view text, const CandidateNames& names = default_names());

BallotFile read_ballot_file(const std::string& path, const CandidateNames& names = default_names());

/// "Alice,Bob,Carol" -> {"Alice", "Bob", "Carol"}.
CandidateNames parse_candidate_names(std::string_view csv);

std::string sha256_digest(std::string_view bytes);

}  // namespace rcvmono::cli

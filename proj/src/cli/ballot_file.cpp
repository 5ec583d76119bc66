#include "rcvmono/cli/ballot_file.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

#include <openssl/sha.h>

namespace rcvmono::cli {

namespace {

std::string_view trim(std::string_view s) {
  auto space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && space(s.front())) s.remove_prefix(1);
  while (!s.empty() && space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    out.push_back(text.substr(start, end - start));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return out;
}

bool is_csv_header(std::string_view line) {
  std::string lowered;
  for (char c : line) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      lowered += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  return lowered == "ranking,count";
}

}  // namespace

BallotProfile parse_ballots(std::string_view text, const CandidateNames& names) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  const auto lines = lines_of(text);

  std::array<Count, kRankingCount> counts{};
  bool csv = false;
  bool seen_content = false;
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string_view line = trim(lines[n]);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(n + 1) + ": ";
    if (!seen_content) {
      seen_content = true;
      if (is_csv_header(line)) {
        csv = true;
        continue;
      }
    }
    try {
      if (csv) {
        const std::size_t comma = line.rfind(',');
        if (comma == std::string_view::npos) throw InputError("expected 'ranking,count'");
        const std::string_view count_text = trim(line.substr(comma + 1));
        Count value = 0;
        const auto [ptr, ec] =
            std::from_chars(count_text.data(), count_text.data() + count_text.size(), value);
        if (ec != std::errc() || ptr != count_text.data() + count_text.size() || count_text.empty()) {
          throw InputError("count '" + std::string(count_text) + "' is not an integer");
        }
        if (value < 0) throw InputError("count must be non-negative");
        counts[index_of(parse_ranking(line.substr(0, comma), names))] += value;
      } else {
        ++counts[index_of(parse_ranking(line, names))];
      }
    } catch (const InputError& e) {
      throw InputError(where + e.what());
    } catch (const ParseError& e) {
      throw InputError(where + e.what());
    }
  }

  BallotProfile profile(counts);
  if (profile.voters() == 0) throw InputError("no ballots in input");
  return profile;
}

BallotFile read_ballot_file(const std::string& path, const CandidateNames& names) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();
  return BallotFile{names, parse_ballots(bytes, names), sha256_digest(bytes)};
}

CandidateNames parse_candidate_names(std::string_view csv) {
  CandidateNames out;
  std::size_t i = 0;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = csv.find(',', start);
    const std::string_view name = trim(csv.substr(start, comma - start));
    if (i >= out.size()) throw InputError("exactly three candidate names are required");
    if (name.empty() || name.find('>') != std::string_view::npos) {
      throw InputError("invalid candidate name '" + std::string(name) + "'");
    }
    out[i++] = std::string(name);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (i != out.size()) throw InputError("exactly three candidate names are required");
  if (out[0] == out[1] || out[0] == out[2] || out[1] == out[2]) {
    throw InputError("candidate names must be distinct");
  }
  return out;
}

std::string sha256_digest(std::string_view bytes) {
  std::array<unsigned char, SHA256_DIGEST_LENGTH> hash{};
  SHA256(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(), hash.data());
  std::ostringstream os;
  os << "sha256:";
  for (unsigned char c : hash) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(c);
  return os.str();
}

}  // namespace rcvmono::cli

#include "rcvmono/cli/commands.hpp"

#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "rcvmono/cli/ballot_file.hpp"
#include "rcvmono/cli/report.hpp"

namespace rcvmono::cli {

namespace {

struct Options {
  std::string file;
  std::string tie_policy = "error";
  std::string candidates = "A,B,C";
  std::string direction;
  std::string model;
  Count max_voters = 12;
  Count voters = 0;
  Count trials = 0;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  double confidence = 0.99;
  bool json = false;
};

std::string profile_text(const BallotProfile& p) {
  std::ostringstream os;
  for (Ranking r : kRankings) {
    if (r != Ranking::a1) os << ' ';
    os << column_name(r) << '=' << p[r];
  }
  return os.str();
}

std::string permutation_text(const CandidatePermutation& perm, const CandidateNames& names) {
  std::ostringstream os;
  for (Candidate c : kCandidates) {
    if (c != Candidate::A) os << ' ';
    os << names[index_of(c)] << "->" << label(perm(c));
  }
  return os.str();
}

void print_trace(std::ostream& out, const TabulationTrace& t, const CandidateNames& names,
                 const std::string& indent = "") {
  auto name = [&](Candidate c) { return names[index_of(c)]; };
  out << indent << "round 1:";
  for (Candidate c : t.round1_order) out << ' ' << name(c) << '=' << t.tallies.first(c);
  out << '\n' << indent << "eliminated: " << name(t.eliminated_round1) << '\n';
  out << indent << "round 2:";
  for (std::size_t i = 0; i < 2; ++i) {
    out << ' ' << name(t.round2_order[i]) << '(' << name(t.eliminated_round1) << ")=" << t.round2_tallies[i];
  }
  out << '\n' << indent << "winner: " << name(t.winner) << (t.had_tie ? " (tie broken)" : "") << '\n';
}

void print_condition(std::ostream& out, std::string_view title, const ConditionReport& r) {
  out << title << ": " << (r.holds ? "true" : "false") << "  margins (" << kMarginUnits << "):";
  for (const Margin& m : r.margins) out << ' ' << m.name << '=' << m.value;
  out << '\n';
}

std::string params_digest(const std::string& canonical) { return sha256_digest(canonical); }

int cmd_tabulate(const Options& o, std::ostream& out) {
  const CandidateNames names = parse_candidate_names(o.candidates);
  const BallotFile file = read_ballot_file(o.file, names);
  TiePolicy policy = TiePolicy::ErrorOnTie;
  if (o.tie_policy == "lexicographic") policy = TiePolicy::LexicographicElimination;
  const TabulationTrace trace = tabulate(file.profile, policy);
  if (o.json) {
    out << envelope("tabulate", file.digest, to_json(trace, names)).dump(2) << '\n';
    return kOk;
  }
  out << "profile: " << profile_text(file.profile) << "  (V=" << file.profile.voters() << ")\n";
  print_trace(out, trace, names);
  out << "playout: " << format_playout(playout_pattern(trace), false, names) << '\n';
  return kOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  const CandidateNames names = parse_candidate_names(o.candidates);
  const BallotFile file = read_ballot_file(o.file, names);
  const ClassificationReport r = classify(file.profile);
  if (o.json) {
    out << envelope("check", file.digest, to_json(r, names)).dump(2) << '\n';
    return kOk;
  }
  const NormalizedProfile& np = r.normalized;
  out << "normalization: " << permutation_text(np.permutation(), names) << '\n';
  out << "normalized profile: " << profile_text(np.profile()) << "  (V=" << np.voters() << ")\n";
  out << "normalized playout: " << format_playout(playout_pattern(np.trace())) << '\n';
  print_condition(out, "upward_creatable", r.upward);
  print_condition(out, "downward_creatable", r.downward);
  auto flag = [](bool b) { return b ? "true" : "false"; };
  out << "upward_has_happened_possible: " << flag(r.upward_has_happened_possible) << '\n';
  out << "downward_has_happened_possible: " << flag(r.downward_has_happened_possible) << '\n';
  out << "any_failure_possible: " << flag(r.any_failure_possible) << '\n';
  return kOk;
}

int cmd_witness(const Options& o, std::ostream& out, std::ostream& err) {
  const CandidateNames names = parse_candidate_names(o.candidates);
  const BallotFile file = read_ballot_file(o.file, names);
  const NormalizedProfile np = normalize(file.profile);

  std::optional<WitnessRecord> w;
  if (o.direction == "downward") {
    if (!downward_creatable(np).holds) {
      err << "not creatable: the downward failure condition does not hold\n";
      return kWitnessUnavailable;
    }
    w = construct_downward_witness(np);
  } else {
    if (!upward_creatable(np).holds) {
      err << "not creatable: the upward failure condition does not hold\n";
      return kWitnessUnavailable;
    }
    w = search_upward_witness(np);
    if (!w) {
      err << "not creatable: the upward condition holds but no A-promotion changes the winner\n";
      return kWitnessUnavailable;
    }
  }
  const VerificationResult check = verify_witness(*w);

  if (o.json) {
    Json payload = to_json(*w, np.permutation(), names);
    payload["verified"] = check.ok;
    out << envelope("witness", file.digest, std::move(payload)).dump(2) << '\n';
  } else {
    out << "direction: " << to_string(w->direction) << '\n';
    out << "normalization: " << permutation_text(np.permutation(), names) << '\n';
    out << "original: " << profile_text(w->original) << '\n';
    out << "shift: " << to_string(w->shift.direction());
    const auto types = move_types(w->shift.direction());
    for (std::size_t i = 0; i < types.size(); ++i) {
      if (w->shift.moves()[i] > 0) {
        out << ' ' << column_name(types[i].from) << "_to_" << column_name(types[i].to) << '='
            << w->shift.moves()[i];
      }
    }
    out << "  (" << w->shift.total() << " voters)\n";
    out << "modified: " << profile_text(w->modified) << '\n';
    out << "before: " << format_playout(playout_pattern(w->trace_before)) << '\n';
    print_trace(out, w->trace_before, default_names(), "  ");
    out << "after: " << format_playout(playout_pattern(w->trace_after), true) << '\n';
    print_trace(out, w->trace_after, default_names(), "  ");
    out << "verified: " << (check.ok ? "yes" : "no") << '\n';
  }
  for (const auto& reason : check.reasons) err << "verification: " << reason << '\n';
  return check.ok ? kOk : kVerificationMismatch;
}

int cmd_verify(const Options& o, std::ostream& out) {
  if (o.max_voters < 1) throw InputError("--max-voters must be >= 1");
  std::vector<ShiftDirection> directions;
  if (o.direction == "both" || o.direction == "downward") directions.push_back(ShiftDirection::DemoteB);
  if (o.direction == "both" || o.direction == "upward") directions.push_back(ShiftDirection::PromoteA);

  std::vector<MismatchReport> reports;
  std::size_t total_mismatches = 0;
  for (ShiftDirection d : directions) {
    reports.push_back(exhaustive_verify(o.max_voters, d, o.threads));
    total_mismatches += reports.back().mismatches.size();
  }

  const std::string digest =
      params_digest("verify max_voters=" + std::to_string(o.max_voters) + " direction=" + o.direction);
  if (o.json) {
    Json list = Json::array();
    for (const auto& r : reports) list.push_back(to_json(r));
    out << envelope("verify", digest, Json{{"reports", list}, {"mismatch_count", total_mismatches}}).dump(2)
        << '\n';
  } else {
    for (const auto& r : reports) {
      out << to_string(r.direction) << ": V<=" << r.max_voters << ", " << r.checked_profiles
          << " profiles checked, " << r.skipped_tied << " tied skipped, " << r.mismatches.size()
          << " mismatches\n";
      for (const auto& m : r.mismatches) {
        out << "  mismatch V=" << m.profile.voters() << ' ' << profile_text(m.profile)
            << " formula=" << (m.formula_verdict ? "true" : "false")
            << " oracle=" << (m.oracle_verdict ? "true" : "false") << '\n';
      }
    }
  }
  return total_mismatches == 0 ? kOk : kVerificationMismatch;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  if (o.voters < 1) throw InputError("--voters must be >= 1");
  if (o.trials < 1) throw InputError("--trials must be >= 1");
  const CultureModel model =
      o.model == "ic" ? CultureModel::ImpartialCulture : CultureModel::ImpartialAnonymousCulture;
  const FrequencyReport r = estimate(model, o.voters, o.trials, o.seed, o.threads, o.confidence);

  std::ostringstream canonical;
  canonical << "simulate model=" << o.model << " voters=" << o.voters << " trials=" << o.trials
            << " seed=" << o.seed << " confidence=" << std::setprecision(17) << o.confidence;
  const std::string digest = params_digest(canonical.str());
  if (o.json) {
    out << envelope("simulate", digest, to_json(r)).dump(2) << '\n';
    return kOk;
  }
  out << "model: " << to_string(r.model) << "  voters: " << r.voters << "  trials: " << r.trials
      << "  seed: " << r.seed << '\n';
  out << "tie-free samples: " << r.tie_free() << "  (confidence " << r.confidence << ", Wilson)\n";
  auto line = [&](std::string_view name, const Proportion& p) {
    out << name << ": " << p.successes << '/' << p.trials << "  estimate=" << std::setprecision(17)
        << p.estimate << "  interval=[" << p.low << ", " << p.high << "]\n";
  };
  line("upward_creatable", r.upward_creatable);
  line("downward_creatable", r.downward_creatable);
  line("any_failure_possible", r.any_failure_possible);
  line("tied_discarded", r.tied_discarded);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monotonicity-failure analysis for three-candidate instant-runoff elections", "rcvmono"};
  app.require_subcommand(1);
  Options o;

  const std::vector<std::string> witness_dirs{"downward", "upward"};
  const std::vector<std::string> verify_dirs{"both", "downward", "upward"};
  const std::vector<std::string> models{"ic", "iac"};

  auto* tab = app.add_subcommand("tabulate", "Count the election round by round");
  tab->add_option("file", o.file, "Ballot file (CSV with 'ranking,count' header, or one ranking per line)")
      ->required();
  tab->add_option("--tie-policy", o.tie_policy, "error | lexicographic")
      ->check(CLI::IsMember({"error", "lexicographic"}));
  tab->add_option("--candidates", o.candidates, "Three comma-separated candidate names");
  tab->add_flag("--json", o.json, "Emit a JSON report envelope");

  auto* check = app.add_subcommand("check", "Decide which monotonicity failures are possible");
  check->add_option("file", o.file, "Ballot file")->required();
  check->add_option("--candidates", o.candidates, "Three comma-separated candidate names");
  check->add_flag("--json", o.json, "Emit a JSON report envelope");

  auto* wit = app.add_subcommand("witness", "Build an explicit profile change exhibiting a failure");
  wit->add_option("file", o.file, "Ballot file")->required();
  wit->add_option("--direction", o.direction, "downward | upward")
      ->required()
      ->check(CLI::IsMember(witness_dirs));
  wit->add_option("--candidates", o.candidates, "Three comma-separated candidate names");
  wit->add_flag("--json", o.json, "Emit a JSON report envelope");

  auto* ver = app.add_subcommand("verify", "Compare the closed-form conditions with brute force");
  o.direction = "both";
  ver->add_option("--max-voters", o.max_voters, "Check every profile with up to this many voters")
      ->required();
  ver->add_option("--direction", o.direction, "both | downward | upward")->check(CLI::IsMember(verify_dirs));
  ver->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  ver->add_flag("--json", o.json, "Emit a JSON report envelope");

  auto* sim = app.add_subcommand("simulate", "Estimate susceptibility frequencies by Monte Carlo");
  sim->add_option("--model", o.model, "ic | iac")->required()->check(CLI::IsMember(models));
  sim->add_option("--voters", o.voters, "Voters per election")->required();
  sim->add_option("--trials", o.trials, "Sampled elections")->required();
  sim->add_option("--seed", o.seed, "Seed")->required();
  sim->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  sim->add_option("--confidence", o.confidence, "Interval confidence level")->check(CLI::Range(0.5, 0.999999));
  sim->add_flag("--json", o.json, "Emit a JSON report envelope");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (tab->parsed()) return cmd_tabulate(o, out);
    if (check->parsed()) return cmd_check(o, out);
    if (wit->parsed()) return cmd_witness(o, out, err);
    if (ver->parsed()) return cmd_verify(o, out);
    if (sim->parsed()) return cmd_simulate(o, out);
  } catch (const TieError& e) {
    err << "error: " << e.what() << " (use --tie-policy lexicographic to break it, tabulate only)\n";
    return kTie;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace rcvmono::cli

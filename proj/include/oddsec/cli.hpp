#pragma once

// Command-line front end. run() is the whole program; main() only forwards argv.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oddsec/construct.hpp"
#include "oddsec/gamma.hpp"
#include "oddsec/io.hpp"
#include "oddsec/search.hpp"
#include "oddsec/verify.hpp"

namespace oddsec {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2 };

struct RunManifest {
  std::string command;
  Json config = Json::object();
  std::uint64_t seed = 0;
  std::string field;
  std::vector<std::string> input_hashes;
  bool reproducible = false;

  Json to_json() const {
    Json j;
    j["command"] = command;
    j["config"] = config;
    j["seed"] = seed;
    j["version"] = kVersion;
    j["field"] = field;
    j["input_hashes"] = input_hashes;
    if (!reproducible) {
      const std::time_t now = std::time(nullptr);
      std::tm tm{};
      gmtime_r(&now, &tm);
      std::ostringstream ts;
      ts << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
      j["timestamp"] = ts.str();
    }
    return j;
  }
};

namespace detail {

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(Errc::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(Errc::InvalidParams, "cannot write " + path);
  os << text;
}

/// Writes the report to --json if given, else to out.
inline void emit(const Json& report, const std::string& json_path, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (json_path.empty())
    out << text;
  else
    write_text(json_path, text);
}

inline std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, ',');)
    if (!part.empty()) out.push_back(part);
  return out;
}

inline int exit_for(const Error& e) {
  switch (e.code()) {
    case Errc::ParseError:
    case Errc::FieldMismatch:
    case Errc::InvalidField:
    case Errc::InvalidParams:
    case Errc::SizeMismatch:
      return kExitUsage;
    default:
      return kExitCheckFailed;
  }
}

struct Options {
  bool reproducible = false;
  std::string json;
  std::string out;
  std::string file;
  std::string kind;
  std::uint32_t q = 0;
  unsigned t = 1;
  std::uint32_t size = 0;
  std::string mode = "exhaustive";
  std::string suite;
  int trials = 0;
  std::uint64_t seed = 1;
  double budget = 600;
  bool no_symmetry = false;
  std::uint32_t restarts = 20;
  std::uint64_t moves = 20000;
  bool seed_construction = false;
};

inline std::shared_ptr<const Plane> plane_of_order(std::uint32_t q) {
  return std::make_shared<const Plane>(Field::of_order(q));
}

inline int cmd_analyze(const Options& o, std::ostream& out) {
  const std::string text = read_file(o.file);
  std::istringstream is(text);
  const auto loaded = read_point_set(is);
  const auto s = loaded.set();
  RunManifest m{"analyze", {{"file", o.file}, {"t", o.t}}, 0, field_spec(s.field()), {hex64(fnv1a(text))}, o.reproducible};
  Json report = analysis_json(s, o.t);
  report["manifest"] = m.to_json();
  emit(report, o.json, out);
  if (!o.json.empty()) out << "q=" << s.plane().q() << " size=" << s.size() << " odd_count=" << report["odd_count"] << "\n";
  return kExitOk;
}

inline int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const auto field = Field::of_order(o.q);
  if (!field->odd()) {
    err << "verify: q must be odd\n";
    return kExitUsage;
  }
  auto suites = o.suite.empty() ? suite_names() : split_csv(o.suite);
  for (const auto& s : suites)
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end()) {
      err << "verify: unknown suite '" << s << "'\n";
      return kExitUsage;
    }
  const VerifyContext ctx(std::make_shared<const Plane>(field), o.t);
  RunManifest m{"verify",
                {{"q", o.q}, {"t", o.t}, {"suite", suites}, {"trials", o.trials}},
                o.seed,
                field_spec(*field),
                {},
                o.reproducible};
  Json report;
  report["manifest"] = m.to_json();
  report["set"] = point_set_text(ctx.set());
  report["s_prime"] = ctx.classification().s_prime;
  Json results = Json::array();
  bool all = true;
  for (const auto& name : suites) {
    const auto r = ctx.run(name, o.trials, o.seed);
    all = all && r.result.passed;
    results.push_back(suite_json(r, !o.reproducible));
    out << std::left << std::setw(12) << name << (r.skipped ? "SKIP" : r.result.passed ? "PASS" : "FAIL") << "  cases="
        << r.cases;
    if (!r.result.passed) out << "  " << r.result.detail;
    out << "\n";
  }
  report["results"] = results;
  report["all_passed"] = all;
  if (!o.json.empty()) write_text(o.json, report.dump(2) + "\n");
  return all ? kExitOk : kExitCheckFailed;
}

inline int cmd_search(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.mode != "exhaustive" && o.mode != "local") {
    err << "search: --mode must be exhaustive or local\n";
    return kExitUsage;
  }
  const auto plane = plane_of_order(o.q);
  if (o.size == 0 || o.size > plane->size()) {
    err << "search: --size out of range\n";
    return kExitUsage;
  }
  SearchOutcome res;
  if (o.mode == "exhaustive") {
    res = exhaustive_min(*plane, o.size, !o.no_symmetry, o.budget);
    res.seed = o.seed;
  } else {
    LocalConfig cfg;
    cfg.restarts = o.restarts;
    cfg.moves = o.moves;
    cfg.seed = o.seed;
    cfg.seed_with_construction = o.seed_construction;
    res = local_min(*plane, o.size, cfg);
  }
  const std::string witness_path = o.out.empty() ? "-" : o.out;
  if (!o.out.empty()) save_point_set(o.out, PointSet(*plane, res.witness));
  std::ostringstream secs;
  secs << std::fixed << std::setprecision(3) << (o.reproducible ? 0.0 : res.seconds);
  out << "q,size,mode,min_o,exhaustive,witness,seed,seconds\n";
  out << o.q << ',' << o.size << ',' << o.mode << ',' << res.min_odd << ',' << (res.exhaustive ? "true" : "false") << ','
      << witness_path << ',' << o.seed << ',' << secs.str() << '\n';
  if (!o.json.empty()) {
    RunManifest m{"search",
                  {{"q", o.q}, {"size", o.size}, {"mode", o.mode}, {"symmetry", !o.no_symmetry}, {"budget", o.budget},
                   {"restarts", o.restarts}, {"moves", o.moves}, {"seed_construction", o.seed_construction}},
                  o.seed,
                  field_spec(plane->field()),
                  {},
                  o.reproducible};
    Json j{{"manifest", m.to_json()},
           {"min_o", res.min_odd},
           {"exhaustive", res.exhaustive},
           {"witness", res.witness},
           {"classes_visited", res.classes_visited},
           {"sets_evaluated", res.sets_evaluated}};
    if (!o.reproducible) j["seconds"] = res.seconds;
    write_text(o.json, j.dump(2) + "\n");
  }
  return kExitOk;
}

inline int cmd_construct(const Options& o, std::ostream& out, std::ostream& err) {
  static const std::map<std::string, ConstructionKind> kinds{{"conic-external", ConstructionKind::conic_plus_external},
                                                             {"conic-two-external", ConstructionKind::conic_plus_two_external},
                                                             {"arc", ConstructionKind::arc},
                                                             {"hyperoval", ConstructionKind::hyperoval}};
  const auto it = kinds.find(o.kind);
  if (it == kinds.end()) {
    err << "construct: unknown kind '" << o.kind << "'\n";
    return kExitUsage;
  }
  const auto plane = plane_of_order(o.q);
  const auto s = construct(*plane, {it->second, o.size});
  if (o.out.empty())
    out << point_set_text(s);
  else
    save_point_set(o.out, s);
  return kExitOk;
}

inline int cmd_gamma(const Options& o, std::ostream& out) {
  const std::string text = read_file(o.file);
  std::istringstream is(text);
  const auto loaded = read_point_set(is);
  const auto s = loaded.set();
  const auto prof = secant_profile(s);
  const auto cls = classify(s, prof, 1);
  RunManifest m{"gamma", {{"file", o.file}, {"trials", o.trials}}, o.seed, field_spec(s.field()), {hex64(fnv1a(text))},
                o.reproducible};
  Json report;
  report["manifest"] = m.to_json();
  report["s_prime"] = cls.s_prime;
  if (cls.s_prime.size() < kMinPsiPoints) {
    report["status"] = "skipped: |S'| below the psi threshold";
    emit(report, o.json, out);
    return kExitOk;
  }
  const auto sys = build_system_any_e(s, prof, cls.s_prime);
  const auto g = compute_gamma(sys, o.trials > 0 ? o.trials : 20, o.seed);
  report["psi_count"] = g.psi.size();
  report["gamma_degree"] = g.gamma.degree();
  report["gamma"] = g.gamma.to_text();
  report["degree_too_high"] = g.degree_too_high;
  report["line_components"] = g.line_components;
  report["s_prime_on_gamma"] = g.s_prime_on_gamma;
  if (g.conic) {
    report["conic"] = g.conic->to_text();
    report["conic_divides_gamma"] = g.conic_divides_gamma;
    report["conic_divides_all_psi"] = g.conic_divides_all_psi;
  }
  emit(report, o.json, out);
  if (!o.json.empty()) out << "deg Gamma = " << g.gamma.degree() << "\n";
  return kExitOk;
}

}  // namespace detail

/// Runs the tool on args (without the program name). Returns the exit code.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  detail::Options o;
  CLI::App app{"Odd-secant toolkit for point sets in PG(2,q)", "oddsec"};
  app.require_subcommand(1);
  app.add_flag("--reproducible", o.reproducible, "Omit timestamps and timings from reports");
  app.set_version_flag("--version", kVersion);

  auto* analyze = app.add_subcommand("analyze", "Secant profile, weights and classification of a point-set file");
  analyze->add_option("file", o.file, "Point-set file")->required();
  analyze->add_option("--t", o.t, "Classification parameter t");
  analyze->add_option("--json", o.json, "Write the JSON report here");

  auto* verify = app.add_subcommand("verify", "Run verification suites on the canonical constructions");
  verify->add_option("--q", o.q, "Field order")->required();
  verify->add_option("--suite", o.suite, "Comma-separated suites (default: all)");
  verify->add_option("--t", o.t, "t for the segret suite (1 or 2)");
  verify->add_option("--trials", o.trials, "Random sets for the szero suite");
  verify->add_option("--seed", o.seed, "Random seed");
  verify->add_option("--json", o.json, "Write the JSON report here");

  auto* search = app.add_subcommand("search", "Minimum number of odd secants over sets of a given size");
  search->add_option("--q", o.q, "Field order")->required();
  search->add_option("--size", o.size, "Set size")->required();
  search->add_option("--mode", o.mode, "exhaustive or local");
  search->add_option("--seed", o.seed, "Random seed");
  search->add_option("--budget", o.budget, "Time budget in seconds (exhaustive)");
  search->add_flag("--no-symmetry", o.no_symmetry, "Visit every subset instead of one per class");
  search->add_option("--restarts", o.restarts, "Annealing restarts (local)");
  search->add_option("--moves", o.moves, "Moves per restart (local)");
  search->add_flag("--seed-construction", o.seed_construction, "Start restart 0 from the conic construction");
  search->add_option("--out", o.out, "Witness file");
  search->add_option("--json", o.json, "Write the JSON report here");

  auto* construct_cmd = app.add_subcommand("construct", "Write a canonical point set");
  construct_cmd->add_option("kind", o.kind, "conic-external, conic-two-external, arc or hyperoval")->required();
  construct_cmd->add_option("--q", o.q, "Field order")->required();
  construct_cmd->add_option("--size", o.size, "Arc size");
  construct_cmd->add_option("--out", o.out, "Output file (default: standard output)");

  auto* gamma = app.add_subcommand("gamma", "Gcd of the psi span of a point set");
  gamma->add_option("file", o.file, "Point-set file")->required();
  gamma->add_option("--trials", o.trials, "Random combinations per gcd round");
  gamma->add_option("--seed", o.seed, "Random seed");
  gamma->add_option("--json", o.json, "Write the JSON report here");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*analyze) return detail::cmd_analyze(o, out);
    if (*verify) return detail::cmd_verify(o, out, err);
    if (*search) return detail::cmd_search(o, out, err);
    if (*construct_cmd) return detail::cmd_construct(o, out, err);
    if (*gamma) return detail::cmd_gamma(o, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return detail::exit_for(e);
  }
  return kExitUsage;
}

}  // namespace oddsec

#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "exotic/harness.hpp"

namespace exotic::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr const char* kSeedEnv = "EXOTIC_SEED";

namespace detail {

inline std::int64_t parse_int(std::string_view text, std::string_view what) {
  std::int64_t v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || end != text.data() + text.size())
    throw UsageError(std::string(what) + ": '" + std::string(text) + "' is not an integer");
  return v;
}

/// "-3,-1,1" -> {-3, -1, 1}.
inline std::vector<int> parse_k_list(std::string_view text) {
  std::vector<int> ks;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string_view item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    ks.push_back(static_cast<int>(parse_int(item, "--k")));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return ks;
}

/// "LO..HI" -> {LO, HI}.
inline std::pair<std::int64_t, std::int64_t> parse_h_range(std::string_view text) {
  const std::size_t dots = text.find("..");
  if (dots == std::string_view::npos) throw UsageError("--h-range: expected LO..HI, got '" + std::string(text) + "'");
  return {parse_int(text.substr(0, dots), "--h-range"), parse_int(text.substr(dots + 2), "--h-range")};
}

inline Algebra parse_algebra(std::string_view text) {
  if (text == "quaternion") return Algebra::Quaternion;
  if (text == "octonion") return Algebra::Octonion;
  throw UsageError("--algebra: expected quaternion or octonion, got '" + std::string(text) + "'");
}

/// Writes to the file if one was named, to `fallback` otherwise.
template <class Writer>
void emit(const std::string& path, std::ostream& fallback, Writer&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot open '" + path + "' for writing");
  write(file);
}

}  // namespace detail

/// Runs the command line and returns the process exit code: 0 when every
/// check passes, 1 on a failing check, 2 on usage errors.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verification harness for the Milnor-sphere equator quotients"};
  app.name("exotic");
  app.require_subcommand(1);

  std::uint64_t seed = 1;

  auto* verify = app.add_subcommand("verify", "Run a verification suite and print a JSON report");
  std::string suite = "all";
  std::vector<std::string> algebras;
  std::string k_text;
  std::optional<std::size_t> samples;
  std::optional<double> tol;
  unsigned threads = 1;
  std::string report_path;
  bool no_timing = false;
  bool quiet = false;
  verify->add_option("--suite", suite, "Suite id (" + [] {
    std::string s;
    for (const auto& id : harness::suite_ids()) s += (s.empty() ? "" : "|") + id;
    return s;
  }() + ")")->capture_default_str();
  verify->add_option("--algebra", algebras, "quaternion and/or octonion (default: both)");
  verify->add_option("--k", k_text, "Comma-separated odd k values (default -3,-1,1,3,5,7)");
  verify->add_option("--samples", samples, "Sample count for every check");
  verify->add_option("--seed", seed, "Seed")->envname(kSeedEnv)->capture_default_str();
  verify->add_option("--tol", tol, "Tolerance replacing every upper-bound check tolerance");
  verify->add_option("--threads", threads, "Worker threads (results do not depend on it)")->capture_default_str();
  verify->add_option("--out", report_path, "Write the JSON report to this file");
  verify->add_flag("--no-timing", no_timing, "Omit wall_time_s for byte-comparable reports");
  verify->add_flag("--quiet", quiet, "Suppress the per-check summary on stderr");

  auto* sample = app.add_subcommand("sample", "Export an orbit-space point cloud");
  std::string source_text;
  std::size_t n = 1000;
  std::string sample_path;
  std::string format = "csv";
  std::string sample_algebra = "quaternion";
  sample->add_option("--source", source_text, "round or exotic:<k>")->required();
  sample->add_option("--n", n, "Number of points")->capture_default_str();
  sample->add_option("--seed", seed, "Seed")->envname(kSeedEnv)->capture_default_str();
  sample->add_option("--out", sample_path, "Output file (default: stdout)");
  sample->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sample->add_option("--algebra", sample_algebra, "quaternion or octonion")->capture_default_str();

  auto* classify = app.add_subcommand("classify", "Tabulate bP16 parity of Sigma_k for k = 2h - 1");
  std::string h_range;
  std::string classify_format = "csv";
  classify->add_option("--h-range", h_range, "LO..HI (write --h-range=-5..5 for negative LO)")->required();
  classify->add_option("--format", classify_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  std::vector<std::string> argv_store{"exotic"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*verify) {
      harness::SuiteConfig cfg;
      cfg.suite = suite;
      cfg.seed = seed;
      cfg.samples = samples;
      cfg.tol_override = tol;
      cfg.threads = threads;
      if (!algebras.empty()) {
        cfg.algebras.clear();
        for (const auto& a : algebras) cfg.algebras.push_back(detail::parse_algebra(a));
      }
      if (!k_text.empty()) cfg.k_list = detail::parse_k_list(k_text);
      const harness::VerificationReport report = harness::run_suite(cfg);
      const std::string json = harness::to_json(report, !no_timing).dump(2) + "\n";
      detail::emit(report_path, out, [&](std::ostream& os) { os << json; });
      if (!quiet) {
        for (const auto& c : report.checks)
          err << (c.pass ? "PASS " : "FAIL ") << c.name << "  residual=" << c.max_residual
              << (c.bound == harness::Bound::Below ? " <= " : " > ") << c.tolerance << "\n";
        err << (report.pass ? "suite passed" : "suite FAILED") << " (" << report.checks.size() << " checks, "
            << report.wall_time_s << " s)\n";
      }
      return report.pass ? kExitPass : kExitFail;
    }

    if (*sample) {
      const harness::OrbitSource source = harness::OrbitSource::parse(source_text);
      const Algebra algebra = detail::parse_algebra(sample_algebra);
      const auto points = harness::sample_orbit_space(algebra, source, n, seed);
      detail::emit(sample_path, out, [&](std::ostream& os) {
        if (format == "csv")
          harness::write_csv(os, points);
        else
          os << harness::points_to_json(points, source, algebra, seed).dump() << "\n";
      });
      return kExitPass;
    }

    if (*classify) {
      const auto [lo, hi] = detail::parse_h_range(h_range);
      const auto rows = harness::classify_range(lo, hi);
      if (classify_format == "csv") {
        out << "h,k,odd_bP16\n";
        for (const auto& r : rows) out << r.h << "," << r.k << "," << (r.odd ? "true" : "false") << "\n";
      } else {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (const auto& r : rows) j.push_back({{"h", r.h}, {"k", r.k}, {"odd_bP16", r.odd}});
        out << j.dump(2) << "\n";
      }
      return kExitPass;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}

}  // namespace exotic::cli

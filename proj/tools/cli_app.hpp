#pragma once

// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 argument error, 3 enumeration cap exceeded.

#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qfiber/qfiber.hpp"

namespace qfiber::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCap = 3;

inline constexpr const char *kSchemaVersion = "1";
inline constexpr const char *kCapEnvVar = "QFIBER_MAX_ENUM";

enum class Format { table, csv, json };

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string str(const BigInt &v) { return v.str(); }
inline std::string str(std::int64_t v) { return std::to_string(v); }

inline Json string_array(const std::vector<BigInt> &values) {
  Json arr = Json::array();
  for (const auto &v : values)
    arr.push_back(v.str());
  return arr;
}

inline std::string join(const std::vector<BigInt> &values, const char *sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i)
      out += sep;
    out += values[i].str();
  }
  return out;
}

inline Json record(const std::string &command, Json parameters, Json result) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["parameters"] = std::move(parameters);
  j["result"] = std::move(result);
  return j;
}

inline void emit_json(std::ostream &out, const Json &j) { out << j.dump(2) << '\n'; }

/// Cap from QFIBER_MAX_ENUM, or the library default.
inline std::uint64_t cap_from_environment() {
  const char *raw = std::getenv(kCapEnvVar);
  if (raw == nullptr || *raw == '\0')
    return kDefaultEnumerationCap;
  std::uint64_t value = 0;
  std::istringstream in(raw);
  if (!(in >> value) || !in.eof())
    throw std::invalid_argument(std::string(kCapEnvVar) + " must be a nonnegative integer");
  return value;
}

inline std::string format_params(const Parameters &params) {
  std::string out;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i)
      out += ';';
    out += params[i].first + "=" + std::to_string(params[i].second);
  }
  return out;
}

} // namespace detail

inline void print_coeffs(std::ostream &out, Format fmt, std::int64_t m, std::int64_t n) {
  const auto poly = gaussian_coefficients(m, n);
  const std::vector<BigInt> coeffs(poly.coeffs().begin(), poly.coeffs().end());
  switch (fmt) {
  case Format::table:
    out << detail::join(coeffs, " ") << '\n';
    break;
  case Format::csv:
    out << "index,coefficient\n";
    for (std::size_t j = 0; j < coeffs.size(); ++j)
      out << j << ',' << coeffs[j] << '\n';
    break;
  case Format::json:
    detail::emit_json(out, detail::record("coeffs", {{"m", detail::str(m)}, {"n", detail::str(n)}},
                                          {{"coeffs", detail::string_array(coeffs)},
                                           {"total", detail::str(poly.sum())}}));
    break;
  }
}

inline void print_residue_sums(std::ostream &out, Format fmt, std::int64_t m, std::int64_t n,
                               std::int64_t r) {
  const auto sums = residue_sums(m, n, r);
  switch (fmt) {
  case Format::table:
    out << detail::join(sums.entries(), " ") << '\n';
    break;
  case Format::csv:
    out << "residue,sum\n";
    for (std::int64_t i = 0; i < r; ++i)
      out << i << ',' << sums[i] << '\n';
    break;
  case Format::json:
    detail::emit_json(out, detail::record("residue-sums",
                                          {{"m", detail::str(m)},
                                           {"n", detail::str(n)},
                                           {"r", detail::str(r)}},
                                          {{"sums", detail::string_array(sums.entries())},
                                           {"total", detail::str(sums.total())}}));
    break;
  }
}

inline void print_fibers(std::ostream &out, Format fmt, std::int64_t ring, std::int64_t r) {
  const auto fibers = delta_fiber_sizes(ring, r);
  const auto total = fibers.total();
  switch (fmt) {
  case Format::table:
    out << detail::join(fibers.entries(), " ") << '\n' << "total " << total << '\n';
    break;
  case Format::csv:
    out << "s,size\n";
    for (std::int64_t s = 0; s < r; ++s)
      out << s << ',' << fibers[s] << '\n';
    out << "total," << total << '\n';
    break;
  case Format::json:
    detail::emit_json(out, detail::record("fibers", {{"N", detail::str(ring)}, {"r", detail::str(r)}},
                                          {{"fibers", detail::string_array(fibers.entries())},
                                           {"total", detail::str(total)}}));
    break;
  }
}

inline void print_orbits(std::ostream &out, Format fmt, std::int64_t k, std::int64_t l,
                         GroupKind group, std::uint64_t cap) {
  const auto hist = orbit_size_histogram(k, l, group, cap);
  std::int64_t total = 0;
  for (auto [size, count] : hist)
    total += size * count;
  switch (fmt) {
  case Format::table:
    out << "orbit_size count\n";
    for (auto [size, count] : hist)
      out << size << ' ' << count << '\n';
    out << "total " << total << '\n';
    break;
  case Format::csv:
    out << "orbit_size,count\n";
    for (auto [size, count] : hist)
      out << size << ',' << count << '\n';
    out << "total," << total << '\n';
    break;
  case Format::json: {
    Json rows = Json::array();
    for (auto [size, count] : hist)
      rows.push_back({{"orbit_size", detail::str(size)}, {"count", detail::str(count)}});
    detail::emit_json(out, detail::record("orbits",
                                          {{"k", detail::str(k)},
                                           {"l", detail::str(l)},
                                           {"group", std::string(to_string(group))}},
                                          {{"histogram", std::move(rows)},
                                           {"total", detail::str(total)}}));
    break;
  }
  }
}

/// Prints every report and returns the number of failures.
inline std::size_t print_reports(std::ostream &out, Format fmt, const std::string &suite,
                                 const std::vector<CheckReport> &reports, bool timing) {
  std::size_t failed = 0;
  for (const auto &r : reports)
    failed += !r.passed();
  auto micros = [](const CheckReport &r) {
    return std::chrono::duration_cast<std::chrono::microseconds>(r.elapsed).count();
  };
  switch (fmt) {
  case Format::table:
    for (const auto &r : reports) {
      out << (r.passed() ? "PASS " : "FAIL ") << r.check_id;
      for (const auto &[name, value] : r.parameters)
        out << ' ' << name << '=' << value;
      out << " expected=[" << detail::join(r.expected, ", ") << "] actual=["
          << detail::join(r.actual, ", ") << ']';
      if (timing)
        out << ' ' << micros(r) << "us";
      out << '\n';
    }
    out << reports.size() << " checks, " << failed << " failed\n";
    break;
  case Format::csv:
    out << "check_id,parameters,status,expected,actual" << (timing ? ",elapsed_us" : "") << '\n';
    for (const auto &r : reports) {
      out << r.check_id << ',' << detail::format_params(r.parameters) << ','
          << (r.passed() ? "pass" : "fail") << ',' << detail::join(r.expected, ";") << ','
          << detail::join(r.actual, ";");
      if (timing)
        out << ',' << micros(r);
      out << '\n';
    }
    break;
  case Format::json: {
    Json rows = Json::array();
    for (const auto &r : reports) {
      Json params = Json::object();
      for (const auto &[name, value] : r.parameters)
        params[name] = detail::str(value);
      Json row = {{"check_id", r.check_id},
                  {"parameters", std::move(params)},
                  {"expected", detail::string_array(r.expected)},
                  {"actual", detail::string_array(r.actual)},
                  {"status", r.passed() ? "pass" : "fail"}};
      if (timing)
        row["elapsed_us"] = detail::str(static_cast<std::int64_t>(micros(r)));
      rows.push_back(std::move(row));
    }
    detail::emit_json(out, detail::record("verify", {{"suite", suite}},
                                          {{"checks", detail::str(static_cast<std::int64_t>(reports.size()))},
                                           {"failed", detail::str(static_cast<std::int64_t>(failed))},
                                           {"reports", std::move(rows)}}));
    break;
  }
  }
  return failed;
}

/// Parses argv and runs one subcommand, writing results to `out` and
/// diagnostics to `err`.
inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Gaussian polynomial residue sums, restricted partitions and Heisenberg-ring "
               "fiber counts",
               "qfiber"};
  app.require_subcommand(1);

  std::string format_name = "table";
  const std::map<std::string, Format> format_names{
      {"table", Format::table}, {"csv", Format::csv}, {"json", Format::json}};
  auto add_format = [&](CLI::App *sub) {
    sub->add_option("--format", format_name, "Output format")
        ->capture_default_str()
        ->check(CLI::IsMember({"table", "csv", "json"}));
  };

  std::int64_t a = 0, b = 0, c = 0;
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  const CLI::Range non_negative(std::int64_t{0}, kMax, "NONNEGATIVE");
  const CLI::Range positive(std::int64_t{1}, kMax, "POSITIVE");

  auto *coeffs = app.add_subcommand("coeffs", "Coefficients of [m+n choose n]_q");
  coeffs->add_option("m", a, "Box width (largest part)")->required()->check(non_negative);
  coeffs->add_option("n", b, "Box height (number of parts)")->required()->check(non_negative);
  add_format(coeffs);

  auto *sums = app.add_subcommand("residue-sums", "Coefficient sums of [m+n choose n]_q by exponent mod r");
  sums->add_option("m", a, "Box width")->required()->check(non_negative);
  sums->add_option("n", b, "Box height")->required()->check(non_negative);
  sums->add_option("r", c, "Modulus")->required()->check(positive);
  add_format(sums);

  auto *fibers = app.add_subcommand("fibers", "Sizes of the relative-position fibers for N nodes, r spins");
  fibers->add_option("N", a, "Ring size")->required()->check(positive);
  fibers->add_option("r", b, "Reversed spins")->required()->check(positive);
  add_format(fibers);

  std::string group_name;
  std::uint64_t cap_flag = 0;
  auto *orbit_cmd = app.add_subcommand("orbits", "Orbit-size histogram on step sequences");
  orbit_cmd->add_option("k", a, "Box width")->required()->check(non_negative);
  orbit_cmd->add_option("l", b, "Number of levels")->required()->check(positive);
  orbit_cmd->add_option("group", group_name, "cyclic, units or symmetric")
      ->required()
      ->check(CLI::IsMember({"cyclic", "units", "symmetric"}));
  auto *cap_opt = orbit_cmd->add_option("--max-enum", cap_flag,
                                        "Enumeration cap (default: $QFIBER_MAX_ENUM or 10000000)");
  add_format(orbit_cmd);

  std::string suite_name;
  VerifyBounds bounds;
  bool timing = false;
  auto *verify_cmd = app.add_subcommand("verify", "Check identities against independent counts");
  verify_cmd->add_option("suite", suite_name, "main1, therm, thmp, counterexamples, fibrations or all")
      ->required()
      ->check(CLI::IsMember({"main1", "therm", "thmp", "counterexamples", "fibrations", "all"}));
  verify_cmd->add_option("--k-max", bounds.k_max, "Largest k for main1")->capture_default_str();
  verify_cmd->add_option("--l-max", bounds.l_max, "Largest l for main1")->capture_default_str();
  verify_cmd->add_option("--primes", bounds.primes, "Odd primes for therm/thmp")
      ->delimiter(',')
      ->capture_default_str();
  verify_cmd->add_option("--m-max", bounds.m_max, "Largest M for therm/thmp")->capture_default_str();
  verify_cmd->add_option("--n-max", bounds.n_max, "Largest N for fibrations")->capture_default_str();
  verify_cmd->add_flag("--timing", timing, "Include per-check elapsed time");
  add_format(verify_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  const Format format = format_names.at(format_name);
  try {
    if (coeffs->parsed()) {
      print_coeffs(out, format, a, b);
    } else if (sums->parsed()) {
      print_residue_sums(out, format, a, b, c);
    } else if (fibers->parsed()) {
      if (b > a)
        throw std::invalid_argument("fibers: need r <= N");
      print_fibers(out, format, a, b);
    } else if (orbit_cmd->parsed()) {
      const std::uint64_t cap = cap_opt->count() ? cap_flag : detail::cap_from_environment();
      print_orbits(out, format, a, b, parse_group_kind(group_name), cap);
    } else if (verify_cmd->parsed()) {
      const auto suite = parse_suite(suite_name);
      validate(suite, bounds);
      const auto reports = run_suite(suite, bounds);
      return print_reports(out, format, suite_name, reports, timing) == 0 ? kExitOk
                                                                          : kExitVerifyFailed;
    }
  } catch (const EnumerationCapExceeded &e) {
    err << "error: " << e.what() << " (raise with --max-enum or " << kCapEnvVar << ")\n";
    return kExitCap;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }
  return kExitOk;
}

} // namespace qfiber::cli

#include "sqcert/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "sqcert/certificate.hpp"
#include "sqcert/errors.hpp"
#include "sqcert/replay.hpp"
#include "sqcert/solver.hpp"
#include "sqcert/three_squares.hpp"

namespace sqcert::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { Text, Json };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Each command fills both renderings from the same facts.
struct Outcome {
  bool ok = true;
  Json result = Json::object();
  std::ostringstream text;
};

std::string rep_list(const std::vector<Representation>& reps) {
  std::string s;
  for (const auto& r : reps) s += r.to_string() + "\n";
  return s;
}

Json class_json(const ThreeSquaresClass& cls) {
  Json j;
  j["class"] = class_tag(cls);
  j["description"] = describe(cls);
  std::visit(
      [&j](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, NonvanishingRepresentable>) {
          j["witness"] = {v.witness.a, v.witness.b, v.witness.c};
        } else if constexpr (std::is_same_v<T, TwoSquareOnly>) {
          j["parts"] = {v.a, v.b};
        } else if constexpr (std::is_same_v<T, PureSquareOnly>) {
          j["root"] = v.r;
        } else {
          j["s"] = v.s;
          j["t"] = v.t;
        }
      },
      cls);
  return j;
}

void require_positive(std::uint64_t n, const char* what) {
  if (n == 0) throw UsageError(std::string(what) + " must be positive");
}

void cmd_verify(std::uint64_t max, const std::string& out_path, Outcome& o) {
  require_positive(max, "--max");
  const auto start = std::chrono::steady_clock::now();
  VerifyResult r = verify_up_to(max);
  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  if (!out_path.empty()) write_certificate(out_path, r.certificate);

  const auto& h = r.summary.histogram;
  o.result["bound"] = max;
  o.result["steps"] = r.summary.steps;
  o.result["seconds"] = seconds;
  Json hist = Json::object();
  for (Branch b : {Branch::Direct, Branch::NotRepresentable, Branch::TwoSquare,
                   Branch::PureSquare}) {
    hist[branch_name(b)] = h[b];
  }
  o.result["branches"] = hist;
  o.result["two_square_scaled"] = h.two_square_scaled;
  o.result["two_square_five_power"] = h.two_square_five_power;
  if (!out_path.empty()) o.result["certificate"] = out_path;

  o.text << "f(n) = n for all n <= " << max << " (" << r.summary.steps
         << " steps)\n";
  o.text << "branches:\n";
  for (const auto& [name, count] : hist.items()) {
    o.text << "  " << name << " " << count.get<std::size_t>() << "\n";
  }
  o.text << "  (C) 5 does not divide n: " << h.two_square_scaled
         << ", 5 divides n: " << h.two_square_five_power << "\n";

  // Small runs show the whole table, auxiliaries included.
  if (max <= kBootstrapLimit) {
    Json table = Json::object();
    o.text << "values:\n";
    for (const auto& [n, v] : r.store.entries()) {
      table[std::to_string(n)] = v.to_display();
      o.text << "  f(" << n << ") = " << v.to_display() << "\n";
    }
    o.result["values"] = table;
  }
  if (!out_path.empty()) o.text << "certificate written to " << out_path << "\n";
}

void cmd_check(const std::string& path, Outcome& o) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const CheckReport report = check_text(buf.str());
  o.ok = report.valid;
  o.result["valid"] = report.valid;
  o.result["steps_checked"] = report.steps_checked;
  if (report.failing_step) {
    o.result["failing_step"] = *report.failing_step;
  } else {
    o.result["failing_step"] = nullptr;
  }
  o.result["reason"] = report.reason;
  if (report.valid) {
    o.text << "valid (" << report.steps_checked << " steps)\n";
  } else {
    o.text << "invalid";
    if (report.failing_step) o.text << " at step " << *report.failing_step;
    o.text << ": " << report.reason << "\n";
  }
}

void cmd_classify(std::uint64_t n, Outcome& o) {
  require_positive(n, "n");
  const auto cls = classify(n);
  o.result = class_json(cls);
  o.result["n"] = n;
  o.text << describe(cls) << "\n";
}

void cmd_represent(std::uint64_t n, bool nonvanishing, Outcome& o) {
  require_positive(n, "n");
  const auto reps = representations(n, nonvanishing);
  Json list = Json::array();
  for (const auto& r : reps) list.push_back({r.a, r.b, r.c});
  o.result["n"] = n;
  o.result["nonvanishing"] = nonvanishing;
  o.result["representations"] = list;
  if (reps.empty()) {
    o.text << "no representation\n";
  } else {
    o.text << rep_list(reps);
  }
}

void cmd_hurwitz(std::uint64_t limit, Outcome& o) {
  require_positive(limit, "--max");
  const auto found = verify_hurwitz(limit);
  const auto expected = hurwitz_exceptions(limit);
  o.ok = found == expected;
  o.result["limit"] = limit;
  o.result["exceptions"] = found;
  o.result["matches_expected"] = o.ok;
  o.text << "squares <= " << limit
         << " without a nonvanishing representation:";
  for (auto v : found) o.text << " " << v;
  o.text << "\n"
         << (o.ok ? "matches 4^s and 25*4^s\n"
                  : "differs from 4^s and 25*4^s\n");
}

std::size_t branch_cap_from_env() {
  const char* raw = std::getenv(kBranchCapEnv);
  if (raw == nullptr || *raw == '\0') return kDefaultBranchCap;
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(raw, &pos);
    if (pos != std::string(raw).size() || v == 0) throw std::invalid_argument("");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw UsageError(std::string(kBranchCapEnv) + " must be a positive integer");
  }
}

void cmd_minimal(std::uint64_t limit, std::uint64_t report,
                 const SearchOptions& options, Outcome& o) {
  const auto h = minimal_horizon(report, limit, options);
  o.ok = h.has_value();
  o.result["report"] = report;
  o.result["limit"] = limit;
  o.result["minimal_horizon"] = h ? Json(*h) : Json(nullptr);
  if (h) {
    o.text << "smallest horizon forcing f(n) for all n <= " << report << ": "
           << *h << "\n";
  } else {
    o.text << "no horizon up to " << limit << " forces f(n) for all n <= "
           << report << "\n";
  }
}

void cmd_search(std::uint64_t horizon, std::uint64_t report, bool minimal,
                Outcome& o) {
  if (horizon < 3) throw UsageError("--horizon must be at least 3");
  require_positive(report, "--report");
  if (report > horizon) throw UsageError("--report must not exceed --horizon");
  SearchOptions options;
  options.branch_cap = branch_cap_from_env();
  if (minimal) return cmd_minimal(horizon, report, options, o);
  const auto start = std::chrono::steady_clock::now();
  const SearchReport r = search(horizon, report, options);
  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  o.ok = r.unforced.empty();
  o.result["horizon"] = horizon;
  o.result["report"] = report;
  o.result["constraints"] = r.constraints;
  o.result["nodes"] = r.nodes;
  o.result["branch_points"] = r.branch_points;
  o.result["contradictions"] = r.contradictions;
  o.result["leaves"] = r.leaves.size();
  o.result["identity"] = r.all_identity();
  o.result["unforced"] = r.unforced;
  o.result["seconds"] = seconds;
  Json roots = Json::array();
  for (const auto& e : r.root_set_log) {
    Json ev;
    ev["slot"] = e.slot;
    ev["source"] = e.source ? Json(to_string(*e.source)) : Json(nullptr);
    Json rs = Json::array(), cs = Json::array();
    for (const auto& v : e.roots) rs.push_back(v.to_display());
    for (const auto& v : e.candidates) cs.push_back(v.to_display());
    ev["roots"] = rs;
    ev["candidates"] = cs;
    roots.push_back(ev);
  }
  o.result["root_sets"] = roots;

  o.text << r.constraints << " constraints up to " << horizon << ", "
         << r.nodes << " nodes, " << r.branch_points << " branch points, "
         << r.contradictions << " contradictions, " << r.leaves.size()
         << " leaves\n";
  for (const auto& ev : roots) {
    o.text << "  f(" << ev["slot"].get<std::uint64_t>() << ") in {";
    std::string sep;
    for (const auto& v : ev["roots"]) {
      o.text << sep << v.get<std::string>();
      sep = ", ";
    }
    o.text << "} -> {";
    sep.clear();
    for (const auto& v : ev["candidates"]) {
      o.text << sep << v.get<std::string>();
      sep = ", ";
    }
    o.text << "}";
    if (ev["source"].is_string()) o.text << "  from " << ev["source"].get<std::string>();
    o.text << "\n";
  }
  if (o.ok) {
    o.text << "forced for all n <= " << report << "; "
           << (r.all_identity() ? "f(n) = n throughout" : "not the identity")
           << "\n";
  } else {
    o.text << "unforced:";
    for (auto n : r.unforced) o.text << " " << n;
    o.text << "\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Verification engine for multiplicative functions that "
               "preserve sums of three squares",
               "sqcert"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", engine_version());

  std::string format = "text";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  std::uint64_t max = 10000;
  std::string out_path;
  auto* verify = app.add_subcommand("verify", "Replay the proof up to N");
  verify->add_option("--max", max, "Bound N")->capture_default_str();
  verify->add_option("--out", out_path, "Certificate output (.sqcert.jsonl)");

  std::string cert_path;
  auto* checkc = app.add_subcommand("check", "Validate a certificate");
  checkc->add_option("cert", cert_path, "Certificate file")->required();

  std::uint64_t n = 0;
  auto* classifyc = app.add_subcommand("classify", "Three-squares class of n");
  classifyc->add_option("n", n)->required();

  bool nonvanishing = false;
  auto* represent = app.add_subcommand("represent", "List a^2+b^2+c^2 = n");
  represent->add_option("n", n)->required();
  represent->add_flag("--nonvanishing", nonvanishing, "Parts >= 1 only");

  std::uint64_t hurwitz_max = 10000;
  auto* hurwitz = app.add_subcommand(
      "hurwitz", "Squares without a nonvanishing representation");
  hurwitz->add_option("--max", hurwitz_max, "Limit L")->capture_default_str();

  std::uint64_t horizon = 200, report = 100;
  auto* searchc = app.add_subcommand("search", "Exhaustive constraint search");
  searchc->add_option("--horizon", horizon)->capture_default_str();
  searchc->add_option("--report", report)->capture_default_str();
  bool minimal = false;
  searchc->add_flag("--minimal", minimal,
                    "Scan for the smallest horizon up to --horizon that "
                    "forces every value up to --report");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Outcome o;
  std::string command;
  try {
    if (verify->parsed()) {
      command = "verify";
      cmd_verify(max, out_path, o);
    } else if (checkc->parsed()) {
      command = "check";
      cmd_check(cert_path, o);
    } else if (classifyc->parsed()) {
      command = "classify";
      cmd_classify(n, o);
    } else if (represent->parsed()) {
      command = "represent";
      cmd_represent(n, nonvanishing, o);
    } else if (hurwitz->parsed()) {
      command = "hurwitz";
      cmd_hurwitz(hurwitz_max, o);
    } else {
      command = "search";
      cmd_search(horizon, report, minimal, o);
    }
  } catch (const UsageError& e) {
    err << "sqcert: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "sqcert " << command << ": " << e.what() << "\n";
    return kExitFailed;
  }

  if (format == "json") {
    Json doc;
    doc["command"] = command;
    doc["ok"] = o.ok;
    doc["result"] = o.result;
    out << doc.dump() << "\n";
  } else {
    out << o.text.str();
  }
  return o.ok ? kExitOk : kExitFailed;
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace sqcert::cli

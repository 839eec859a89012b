// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

// beaconcast command-line front end. Talks to the library only through the
// C interface in beaconcast.h.
//
// Exit codes: 0 success, 1 runtime failure, 2 unreadable or invalid input.

#include <CLI11.hpp>

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "beaconcast/beaconcast.h"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitInput = 2;

struct Owned {
  char* p = nullptr;
  ~Owned() { bc_string_free(p); }
  char** out() { return &p; }
  std::string str() const { return p ? p : ""; }
};

int report(bc_status st, const std::string& what) {
  std::cerr << "beaconcast: " << what << ": " << bc_status_string(st) << "\n";
  const std::string detail = bc_last_error();
  if (!detail.empty()) std::cerr << detail << "\n";
  const bool input = st == BC_ERR_PARSE || st == BC_ERR_SCHEMA || st == BC_ERR_IO ||
                     st == BC_ERR_INVALID_ARGUMENT || st == BC_ERR_CAPTURE_FORMAT;
  return input ? kExitInput : kExitRuntime;
}

bool emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return std::fflush(stdout) == 0;
  }
  std::ofstream f(out_path, std::ios::binary);
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  return static_cast<bool>(f);
}

// --seed wins; otherwise BEACONCAST_SEED; otherwise the document's own seed.
std::optional<std::uint64_t> resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return flag;
  if (const char* env = std::getenv("BEACONCAST_SEED"); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw CLI::ValidationError("BEACONCAST_SEED", "must be an unsigned integer");
    return v;
  }
  return std::nullopt;
}

bc_policy to_policy(const std::string& name) {
  return name == "strict" ? BC_POLICY_STRICT_SEQUENTIAL : BC_POLICY_ACCUMULATE;
}

struct Common {
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format;  // empty: json for run, csv for sweep
  std::string policy;
  unsigned jobs = 1;
};

int cmd_run(const std::string& path, const Common& c, const std::string& events_path) {
  bc_scenario* sc = nullptr;
  if (auto st = bc_scenario_load(path.c_str(), &sc); st != BC_OK) return report(st, path);
  std::unique_ptr<bc_scenario, decltype(&bc_scenario_free)> guard(sc, bc_scenario_free);
  if (auto seed = resolve_seed(c.seed)) bc_scenario_set_seed(sc, *seed);
  if (!c.policy.empty()) bc_scenario_set_policy(sc, to_policy(c.policy));

  const bool want_events = c.format == "csv" || !events_path.empty();
  bc_result* res = nullptr;
  if (auto st = bc_run(sc, want_events ? 1 : 0, &res); st != BC_OK) return report(st, "run");
  std::unique_ptr<bc_result, decltype(&bc_result_free)> rguard(res, bc_result_free);

  Owned json, csv;
  if (auto st = bc_result_json(res, json.out()); st != BC_OK) return report(st, "result");
  if (want_events) {
    if (auto st = bc_result_events_csv(res, csv.out()); st != BC_OK) return report(st, "events");
  }
  if (!events_path.empty() && !emit(csv.str(), events_path)) {
    std::cerr << "beaconcast: cannot write " << events_path << "\n";
    return kExitRuntime;
  }
  if (!emit(c.format == "csv" ? csv.str() : json.str(), c.out)) {
    std::cerr << "beaconcast: cannot write " << c.out << "\n";
    return kExitRuntime;
  }
  return 0;
}

int cmd_sweep(const std::string& path, const Common& c, bool quiet) {
  bc_sweep* sw = nullptr;
  if (auto st = bc_sweep_load(path.c_str(), &sw); st != BC_OK) return report(st, path);
  std::unique_ptr<bc_sweep, decltype(&bc_sweep_free)> guard(sw, bc_sweep_free);
  if (auto seed = resolve_seed(c.seed)) bc_sweep_set_seed(sw, *seed);
  if (!c.policy.empty()) bc_sweep_set_policy(sw, to_policy(c.policy));

  Owned out, summary;
  const bool as_json = c.format == "json";  // csv by default
  if (auto st = bc_sweep_run(sw, c.jobs, as_json ? 1 : 0, out.out(), summary.out()); st != BC_OK)
    return report(st, "sweep");
  if (!quiet) std::cerr << summary.str();
  if (!emit(out.str(), c.out)) {
    std::cerr << "beaconcast: cannot write " << c.out << "\n";
    return kExitRuntime;
  }
  return 0;
}

int cmd_capture(const std::string& path, const Common& c, const std::string& dump) {
  if (!dump.empty()) {
    Owned csv;
    if (auto st = bc_capture_dump_csv(dump.c_str(), csv.out()); st != BC_OK) return report(st, dump);
    return emit(csv.str(), c.out) ? 0 : kExitRuntime;
  }
  if (path.empty() || c.out.empty() || c.out == "-") {
    std::cerr << "beaconcast: capture needs a scenario and --out FILE (or --dump FILE)\n";
    return kExitInput;
  }
  bc_scenario* sc = nullptr;
  if (auto st = bc_scenario_load(path.c_str(), &sc); st != BC_OK) return report(st, path);
  std::unique_ptr<bc_scenario, decltype(&bc_scenario_free)> guard(sc, bc_scenario_free);
  if (auto seed = resolve_seed(c.seed)) bc_scenario_set_seed(sc, *seed);
  size_t records = 0;
  if (auto st = bc_capture_write(sc, c.out.c_str(), &records); st != BC_OK)
    return report(st, "capture");
  std::cerr << records << " beacon records written to " << c.out << "\n";
  return 0;
}

bc_service* g_service = nullptr;

void on_signal(int) {
  if (g_service) bc_service_stop(g_service);
}

int cmd_serve(const std::string& host, int port, const bc_service_options& opts) {
  bc_service* svc = nullptr;
  if (auto st = bc_service_create(&opts, &svc); st != BC_OK) return report(st, "serve");
  std::unique_ptr<bc_service, decltype(&bc_service_free)> guard(svc, bc_service_free);
  int bound = 0;
  if (auto st = bc_service_bind(svc, host.c_str(), port, &bound); st != BC_OK)
    return report(st, "bind");
  std::cerr << "listening on http://" << host << ":" << bound << "\n";
  g_service = svc;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  const bc_status st = bc_service_listen(svc);
  g_service = nullptr;
  return st == BC_OK ? 0 : report(st, "serve");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"beaconcast: beacon-stuffing codec, road simulator and experiment harness"};
  app.set_version_flag("--version", std::string(bc_version()));
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub, bool formats) {
    sub->add_option("--seed", common.seed, "RNG seed (falls back to $BEACONCAST_SEED)");
    sub->add_option("--out,-o", common.out, "Output file (default stdout)");
    sub->add_option("--policy", common.policy, "Reassembly policy")
        ->check(CLI::IsMember({"accumulate", "strict"}));
    if (formats)
      sub->add_option("--format", common.format, "Output format")
          ->check(CLI::IsMember({"json", "csv"}));
  };

  std::string scenario_path, events_path;
  auto* run = app.add_subcommand("run", "Simulate one scenario and print the result document");
  run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  run->add_option("--events", events_path, "Also write the per-frame event CSV here");
  add_common(run, true);

  std::string sweep_path;
  bool quiet = false;
  auto* sweep = app.add_subcommand("sweep", "Run a message size x loss probability grid");
  sweep->add_option("sweep", sweep_path, "Sweep JSON file")->required();
  sweep->add_option("--jobs,-j", common.jobs, "Parallel workers")->check(CLI::PositiveNumber);
  sweep->add_flag("--quiet,-q", quiet, "Suppress the summary table on stderr");
  add_common(sweep, true);

  double range_m = 90.0, speed_kmh = 60.0, interval_ms = 10.0;
  std::uint64_t size_bytes = 0;
  double loss_p = -1.0;
  auto* analytic = app.add_subcommand("analytic", "Dwell time and throughput arithmetic");
  analytic->add_option("--range-m", range_m, "Coverage radius")->check(CLI::PositiveNumber);
  analytic->add_option("--speed-kmh", speed_kmh, "Vehicle speed")->check(CLI::PositiveNumber);
  analytic->add_option("--interval-ms", interval_ms, "Beacon interval")->check(CLI::PositiveNumber);
  analytic->add_option("--size-bytes", size_bytes, "Message size for the loop-time block");
  analytic->add_option("--loss-p", loss_p, "Per-frame loss for the advisory estimate")
      ->check(CLI::Range(0.0, 1.0));
  analytic->add_option("--out,-o", common.out, "Output file (default stdout)");

  std::string capture_path, dump_path;
  auto* capture = app.add_subcommand("capture", "Write every emitted beacon to a BCAP file");
  capture->add_option("scenario", capture_path, "Scenario JSON file");
  capture->add_option("--dump", dump_path, "Print an existing BCAP file as CSV instead");
  capture->add_option("--seed", common.seed, "RNG seed (falls back to $BEACONCAST_SEED)");
  capture->add_option("--out,-o", common.out, "BCAP output file (CSV output with --dump)");

  std::string host = "127.0.0.1";
  int port = 8080;
  bc_service_options sopts{2, 64, 100};
  auto* serve = app.add_subcommand("serve", "Run the HTTP/JSON run-management service");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port (0 picks a free one)")->check(CLI::Range(0, 65535));
  serve->add_option("--workers", sopts.workers, "Simulation workers")->check(CLI::PositiveNumber);
  serve->add_option("--queue", sopts.queue_capacity, "Queued runs before 429")
      ->check(CLI::PositiveNumber);
  serve->add_option("--retain", sopts.retain, "Finished runs kept in memory")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    if (*run) return cmd_run(scenario_path, common, events_path);
    if (*sweep) return cmd_sweep(sweep_path, common, quiet);
    if (*capture) return cmd_capture(capture_path, common, dump_path);
    if (*serve) return cmd_serve(host, port, sopts);
    if (*analytic) {
      Owned json;
      if (auto st = bc_analytic_report_json(range_m, speed_kmh, interval_ms, size_bytes, loss_p,
                                            json.out());
          st != BC_OK)
        return report(st, "analytic");
      return emit(json.str(), common.out) ? 0 : kExitRuntime;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "beaconcast: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

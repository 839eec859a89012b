// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances are fixed below and never adjusted at run time.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "beaconcast/analytic.hpp"
#include "beaconcast/channel.hpp"
#include "beaconcast/codec.hpp"
#include "beaconcast/engine.hpp"
#include "beaconcast/metrics.hpp"
#include "beaconcast/mobility.hpp"
#include "beaconcast/rng.hpp"
#include "beaconcast/scenario_io.hpp"
#include "beaconcast/sweep.hpp"
#include "test_support.hpp"

namespace bc = beaconcast;

namespace {

// Pinned tolerances and budgets.
constexpr double kCodecBudgetS = 10.0;
constexpr double kTimeTolS = 0.005;        // for quoted two-decimal seconds
constexpr double kKbRelTol = 0.03;         // 158 / 316 KB
constexpr double kSweepBudgetS = 120.0;    // reference sweep, one worker
constexpr double kZeroLossPct = 1e-9;      // "0 %"
constexpr double kHighLossPct = 90.0;      // 112 KB at 10 % loss
constexpr int kOracleScenarios = 50;
constexpr int kDominanceScenarios = 100;
constexpr int kBoundScenarios = 100;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& why) {
    if (!ok && pass) detail << why;
    pass = pass && ok;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. Fragment/encode/decode/reassemble round trip.
void codec_round_trip(Verdict& v) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 g(2024);
  std::uniform_int_distribution<std::size_t> any_size(1, 1048576);
  for (int i = 0; i < 1000; ++i) {
    // Both extremes, a decade of small sizes, then uniform over 1 B .. 1 MB.
    const std::size_t size = i == 0 ? 1 : i == 1 ? 1048576 : i < 12 ? i - 1 : any_size(g);
    bc::Bytes payload(size);
    for (std::size_t k = 0; k < size; k += 8) {
      const std::uint64_t word = g();
      std::memcpy(payload.data() + k, &word, std::min<std::size_t>(8, size - k));
    }

    std::vector<bc::Bytes> fields;
    for (const auto& f : bc::codec::fragment(payload))
      fields.push_back(bc::codec::encode_vendor_field(f));

    std::vector<std::size_t> order(fields.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    const int variant = i % 3;  // in order, shuffled, duplicated + shuffled
    if (variant >= 1) std::shuffle(order.begin(), order.end(), g);
    if (variant == 2) {
      const std::size_t n = order.size();
      for (std::size_t k = 0; k < n; ++k) order.push_back(order[g() % n]);
      std::shuffle(order.begin(), order.end(), g);
    }
    bc::codec::ReassemblyBuffer buf("net", bc::codec::Policy::kAccumulate);
    for (std::size_t k : order) buf.on_frame(bc::codec::decode_vendor_view(fields[k]));
    v.require(buf.complete() && buf.payload() == payload,
              "payload " + std::to_string(i) + " (" + std::to_string(size) + " B) not recovered");
  }
  const double elapsed = seconds_since(t0);
  v.detail << "1000 payloads in " << elapsed << " s";
  v.require(elapsed < kCodecBudgetS, "; over budget");
}

// 2. 112 KB at 10 ms: 459 frames and a 4.59 s loop.
void loop_arithmetic(Verdict& v) {
  const auto frames = bc::analytic::frames_for_message(114688);
  const double loop = bc::analytic::loop_time(114688, 10);
  v.detail << frames << " frames, " << loop << " s";
  v.require(frames == 459, "; frame count");
  v.require(std::abs(loop - 4.59) <= kTimeTolS, "; loop time");
}

// 3. Dwell-time throughput at 90 m.
void analytic_throughput(Verdict& v) {
  const auto e50 = bc::analytic::estimate(90, 50, 10);
  const auto e70 = bc::analytic::estimate(90, 70, 10);
  const double kb_ap = static_cast<double>(e50.bytes_to_ap) / 1024.0;
  const double kb_total = static_cast<double>(e50.bytes_total) / 1024.0;
  v.detail << e50.time_to_ap_s << " s, " << kb_ap << " / " << kb_total << " KB, "
           << e70.time_to_ap_s << " s at 70 km/h";
  v.require(std::abs(e50.time_to_ap_s - 6.48) <= kTimeTolS, "; 50 km/h time");
  v.require(std::abs(kb_ap - 158) <= kKbRelTol * 158, "; KB to AP");
  v.require(std::abs(kb_total - 316) <= kKbRelTol * 316, "; KB total");
  v.require(std::abs(e70.time_to_ap_s - 4.63) <= kTimeTolS, "; 70 km/h time");
}

// 4. One second of beacons at 10 ms.
void emission_count(Verdict& v) {
  const auto times = bc::channel::emission_times({10, 0.0, 1.0});
  v.detail << times.size() << " emissions";
  v.require(times.size() == 100, "");
}

// 5. The reference sweep.
void reference_sweep(Verdict& v) {
  const auto spec = bc::sweep::parse_sweep(
      bc::read_text_file(BEACONCAST_SCENARIO_DIR "/reference_sweep.json"), BEACONCAST_SCENARIO_DIR);
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = bc::sweep::run_sweep(spec, 1);
  const double elapsed = seconds_since(t0);
  std::map<std::pair<double, std::uint64_t>, double> mean;
  for (const auto& p : bc::sweep::summarize(rows)) mean[{p.loss_p, p.size_bytes}] = p.mean_loss_pct;

  for (double loss : spec.loss_ps) {
    v.detail << "p=" << loss << ":";
    for (auto size : spec.message_sizes_bytes) v.detail << " " << mean[{loss, size}];
    v.detail << "; ";
  }
  v.detail << elapsed << " s";

  for (double loss : {0.05, 0.10})
    for (std::uint64_t size : {16384, 32768})
      v.require(mean.count({loss, size}) && mean[{loss, size}] <= kZeroLossPct,
                "; nonzero loss at small sizes");
  v.require(mean.count({0.10, 114688}) && mean[{0.10, 114688}] >= kHighLossPct,
            "; 112 KB at 10% below threshold");
  for (double loss : spec.loss_ps)
    for (std::size_t k = 1; k < spec.message_sizes_bytes.size(); ++k)
      v.require(mean[{loss, spec.message_sizes_bytes[k]}] >=
                    mean[{loss, spec.message_sizes_bytes[k - 1]}],
                "; not monotone in size");
  for (auto size : spec.message_sizes_bytes)
    v.require(mean[{0.10, size}] >= mean[{0.05, size}], "; 10% column below 5% column");
  v.require(elapsed < kSweepBudgetS, "; over time budget");
}

std::string capture_stdout(const std::string& cmd, int& exit_code) {
  std::string out;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) {
    exit_code = -1;
    return out;
  }
  std::array<char, 4096> buf;
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

// 6. Two separate processes, same scenario and seed.
void cross_process_determinism(Verdict& v) {
  const std::string cmd = "'" BEACONCAST_CLI_PATH "' run '" BEACONCAST_SCENARIO_DIR
                          "/reference.json' --seed 17 2>/dev/null";
  int rc_a = 0, rc_b = 0;
  const std::string a = capture_stdout(cmd, rc_a);
  const std::string b = capture_stdout(cmd, rc_b);
  v.detail << a.size() << " bytes, digest " << bc::sha256_hex(a).substr(0, 16);
  v.require(rc_a == 0 && rc_b == 0 && !a.empty(), "; cli failed");
  v.require(a == b, "; outputs differ");
}

// 7. Engine against the 1 ms brute-force stepper.
void oracle_equivalence(Verdict& v) {
  std::mt19937_64 g(777);
  std::size_t events = 0;
  for (int i = 0; i < kOracleScenarios; ++i) {
    const auto sc = bc::testing::random_small_scenario(g);
    const auto r = bc::engine::run(sc, {.record_events = true});
    const auto want =
        bc::testing::brute_force(sc, bc::derive_seed(sc.seed, bc::Stream::kChannel));
    bool same = r.events.size() == want.events.size();
    for (std::size_t k = 0; same && k < want.events.size(); ++k) {
      const auto& a = r.events[k];
      const auto& b = want.events[k];
      same = a.time_us == b.time_ms * 1000 && a.vehicle_id == b.vehicle_id &&
             a.ap_index == b.ap_index && a.seq_no == b.seq_no && a.delivered == b.delivered &&
             a.status == b.status;
    }
    for (const auto& pv : r.per_vehicle) {
      const auto it = want.completed.find(pv.id);
      same = same && pv.completed_messages == (it == want.completed.end() ? 0u : it->second);
    }
    events += want.events.size();
    v.require(same, "scenario " + std::to_string(i) + " diverges; ");
  }
  v.detail << kOracleScenarios << " scenarios, " << events << " offered frames compared";
}

// 8. ACCUMULATE never completes fewer messages than STRICT_SEQUENTIAL.
void policy_dominance(Verdict& v) {
  std::mt19937_64 g(4242);
  std::uint64_t acc_total = 0, strict_total = 0;
  for (int i = 0; i < kDominanceScenarios; ++i) {
    auto sc = bc::testing::random_fleet_scenario(g);
    sc.reassembly_policy = bc::codec::Policy::kAccumulate;
    const auto acc = bc::engine::run(sc);
    sc.reassembly_policy = bc::codec::Policy::kStrictSequential;
    const auto strict = bc::engine::run(sc);
    bool ok = acc.per_vehicle.size() == strict.per_vehicle.size();
    for (std::size_t k = 0; ok && k < acc.per_vehicle.size(); ++k) {
      ok = acc.per_vehicle[k].completed_messages >= strict.per_vehicle[k].completed_messages;
      acc_total += acc.per_vehicle[k].completed_messages;
      strict_total += strict.per_vehicle[k].completed_messages;
    }
    v.require(ok, "scenario " + std::to_string(i) + " violates dominance; ");
  }
  v.detail << kDominanceScenarios << " scenarios, completions " << acc_total << " vs "
           << strict_total;
}

// 9. Loss-free: a dwell of at least one loop plus one interval completes.
void lossfree_bound(Verdict& v) {
  std::mt19937_64 g(99);
  std::size_t qualifying = 0, completed = 0;
  for (int i = 0; i < kBoundScenarios; ++i) {
    const auto sc = bc::testing::random_lossfree_scenario(g);
    const auto& ap = sc.aps[0];
    const double need = bc::analytic::loop_time(ap.message.size_bytes, ap.schedule.interval_ms) +
                        ap.schedule.interval_ms / 1000.0;
    const auto r = bc::engine::run(sc);
    auto traffic_rng = bc::make_stream(sc.seed, bc::Stream::kTraffic);
    for (const auto& veh : bc::mobility::generate_vehicles(sc.traffic, traffic_rng)) {
      const auto d = bc::mobility::dwell_interval(sc.road, veh, ap.position, ap.channel.range_m);
      if (!d || d->width() < need) continue;
      ++qualifying;
      const auto it = std::find_if(r.per_vehicle.begin(), r.per_vehicle.end(),
                                   [&](const auto& s) { return s.id == veh.id; });
      const bool ok = it != r.per_vehicle.end() && it->completed_messages >= 1;
      completed += ok ? 1 : 0;
      v.require(ok, "scenario " + std::to_string(i) + " vehicle " + std::to_string(veh.id) +
                        " did not complete; ");
    }
  }
  v.detail << completed << "/" << qualifying << " qualifying vehicles completed";
  v.require(qualifying > 0, "; no qualifying vehicles");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Verdict&)>>> criteria = {
      {"codec-round-trip", codec_round_trip},
      {"loop-arithmetic", loop_arithmetic},
      {"analytic-throughput", analytic_throughput},
      {"emission-count", emission_count},
      {"reference-sweep", reference_sweep},
      {"cross-process-determinism", cross_process_determinism},
      {"oracle-equivalence", oracle_equivalence},
      {"policy-dominance", policy_dominance},
      {"lossfree-completion-bound", lossfree_bound},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      check(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("; threw: ") + e.what());
    }
    std::printf("%s %s: %s\n", v.pass ? "PASS" : "FAIL", name, v.detail.str().c_str());
    std::fflush(stdout);
    failures += v.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}

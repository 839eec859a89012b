// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

#include "beaconcast/engine.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <tuple>
#include <utility>

#include "beaconcast/error.hpp"
#include "beaconcast/rng.hpp"
#include "beaconcast/scenario_io.hpp"

namespace beaconcast::engine {

ApTransmitter::ApTransmitter(const AccessPointSpec& spec)
    : payload_(spec.message.build().payload),
      fragments_(codec::fragment(payload_)),
      phase_(spec.loop_phase) {
  encoded_.reserve(fragments_.size());
  for (const auto& f : fragments_) encoded_.push_back(codec::encode_vendor_field(f));
}

codec::FragmentRecord ap_fragment_at(const AccessPointSpec& ap, std::uint64_t emission_index) {
  return ApTransmitter(ap).fragment_at(emission_index);
}

namespace {

using codec::ReassemblyBuffer;
using metrics::EventStatus;

// Min-heap over pending emissions keyed by (time, AP index).
class EmissionQueue {
 public:
  explicit EmissionQueue(const std::vector<channel::EmissionClock>& clocks) : clocks_(clocks) {
    for (std::uint32_t a = 0; a < clocks_.size(); ++a)
      if (clocks_[a].count() > 0) heap_.push({clocks_[a].at(0), a, 0});
  }

  bool empty() const { return heap_.empty(); }

  Emission pop() {
    const Entry e = heap_.top();
    heap_.pop();
    if (e.k + 1 < clocks_[e.ap].count()) heap_.push({clocks_[e.ap].at(e.k + 1), e.ap, e.k + 1});
    return Emission{e.time, e.ap, e.k};
  }

 private:
  struct Entry {
    SimTime time;
    std::uint32_t ap;
    std::uint64_t k;
    bool operator>(const Entry& o) const { return std::tie(time, ap) > std::tie(o.time, o.ap); }
  };
  const std::vector<channel::EmissionClock>& clocks_;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap_;
};

std::vector<channel::EmissionClock> make_clocks(const Scenario& scenario) {
  std::vector<channel::EmissionClock> clocks;
  clocks.reserve(scenario.aps.size());
  for (const auto& ap : scenario.aps) clocks.emplace_back(ap.schedule);
  return clocks;
}

struct NetworkState {
  std::optional<ReassemblyBuffer> buffer;
  bool in_session = false;
  SimTime last_seen = 0;
  metrics::NetworkOutcome outcome;
};

struct VehicleState {
  mobility::Vehicle vehicle;
  metrics::VehicleStats stats;
  std::vector<NetworkState> nets;
  bool gone = false;
};

class Simulation {
 public:
  Simulation(const Scenario& scenario, const RunOptions& options)
      : scenario_(scenario),
        options_(options),
        channel_rng_(make_stream(scenario.seed, Stream::kChannel)) {
    std::map<std::string, std::uint32_t> by_name;
    for (std::uint32_t a = 0; a < scenario.aps.size(); ++a) {
      const auto& spec = scenario.aps[a];
      auto [it, fresh] = by_name.emplace(spec.ssid, static_cast<std::uint32_t>(networks_.size()));
      if (fresh) networks_.push_back({spec.ssid, {}});
      networks_[it->second].aps.push_back(a);
      ap_network_.push_back(it->second);
      transmitters_.emplace_back(spec);
    }
    for (auto& net : networks_) net.payload = &transmitters_[net.aps.front()].payload();

    auto traffic_rng = make_stream(scenario.seed, Stream::kTraffic);
    auto fleet = mobility::generate_vehicles(scenario.traffic, traffic_rng);
    std::stable_sort(fleet.begin(), fleet.end(), [](const auto& a, const auto& b) {
      return std::tie(a.spawn_time_s, a.id) < std::tie(b.spawn_time_s, b.id);
    });
    vehicles_.reserve(fleet.size());
    for (auto& v : fleet) {
      VehicleState st;
      st.stats.id = v.id;
      st.stats.spawn_time_s = v.spawn_time_s;
      st.stats.speed_mps = v.speed_mps;
      st.nets.resize(networks_.size());
      st.vehicle = std::move(v);
      vehicles_.push_back(std::move(st));
    }
  }

  metrics::RunResult execute() {
    const auto clocks = make_clocks(scenario_);
    std::vector<std::uint64_t> sent(scenario_.aps.size(), 0);
    EmissionQueue queue(clocks);
    while (!queue.empty()) {
      const Emission e = queue.pop();
      ++sent[e.ap_index];
      on_emission(e);
    }
    for (auto& v : vehicles_)
      for (std::uint32_t n = 0; n < networks_.size(); ++n)
        if (v.nets[n].in_session) close_session(v, n);

    metrics::RunResult result;
    result.scenario_digest = scenario_digest(scenario_);
    result.seed = scenario_.seed;
    result.policy = scenario_.reassembly_policy;
    for (std::uint32_t a = 0; a < scenario_.aps.size(); ++a) {
      const auto& spec = scenario_.aps[a];
      metrics::ApStats s;
      s.index = a;
      s.ssid = spec.ssid;
      s.bssid = spec.bssid.to_string();
      s.range_m = spec.channel.range_m;
      s.interval_ms = spec.schedule.interval_ms;
      s.message_size_bytes = transmitters_[a].payload().size();
      s.fragments = static_cast<std::uint32_t>(transmitters_[a].fragment_count());
      s.frames_sent = sent[a];
      s.complete_loops = transmitters_[a].complete_loops(sent[a]);
      s.time_running_s = sim_to_seconds(clocks[a].end() - clocks[a].start());
      result.per_ap.push_back(std::move(s));
    }
    std::vector<VehicleState*> order;
    for (auto& v : vehicles_) order.push_back(&v);
    std::sort(order.begin(), order.end(),
              [](const VehicleState* a, const VehicleState* b) { return a->stats.id < b->stats.id; });
    for (VehicleState* v : order) {
      for (auto& ns : v->nets)
        if (ns.outcome.passes > 0) v->stats.networks.push_back(std::move(ns.outcome));
      std::sort(v->stats.networks.begin(), v->stats.networks.end(),
                [](const auto& a, const auto& b) { return a.network < b.network; });
      result.per_vehicle.push_back(std::move(v->stats));
    }
    result.aggregate = metrics::aggregate(result.per_ap, result.per_vehicle);
    result.events = std::move(events_);
    return result;
  }

 private:
  struct Network {
    std::string name;
    std::vector<std::uint32_t> aps;
    const Bytes* payload = nullptr;
  };

  void on_emission(const Emission& e) {
    const double t_s = sim_to_seconds(e.time_us);
    while (next_spawn_ < vehicles_.size() && vehicles_[next_spawn_].vehicle.spawn_time_s <= t_s)
      active_.push_back(next_spawn_++);

    const auto& spec = scenario_.aps[e.ap_index];
    const std::uint32_t net = ap_network_[e.ap_index];
    bool any_gone = false;
    for (std::size_t idx : active_) {
      VehicleState& v = vehicles_[idx];
      const auto pos = mobility::position_at(scenario_.road, v.vehicle, t_s);
      if (!pos) {
        for (std::uint32_t n = 0; n < networks_.size(); ++n) {
          if (v.nets[n].in_session) close_session(v, n);
          v.nets[n].buffer.reset();
        }
        v.gone = any_gone = true;
        continue;
      }
      NetworkState& ns = v.nets[net];
      if (channel::in_range(spec.position, *pos, spec.channel.range_m)) {
        if (!ns.in_session) open_session(v, net, e.time_us);
        ns.last_seen = e.time_us;
        offer(v, net, e);
      } else if (ns.in_session && !covered_by_other(net, e.ap_index, *pos)) {
        close_session(v, net);
      }
    }
    if (any_gone)
      std::erase_if(active_, [this](std::size_t idx) { return vehicles_[idx].gone; });
  }

  bool covered_by_other(std::uint32_t net, std::uint32_t except, Point pos) const {
    for (std::uint32_t a : networks_[net].aps) {
      if (a == except) continue;
      const auto& spec = scenario_.aps[a];
      if (channel::in_range(spec.position, pos, spec.channel.range_m)) return true;
    }
    return false;
  }

  void open_session(VehicleState& v, std::uint32_t net, SimTime t) {
    NetworkState& ns = v.nets[net];
    ns.in_session = true;
    if (ns.outcome.passes++ == 0) {
      ns.outcome.network = networks_[net].name;
      ns.outcome.first_entry_s = sim_to_seconds(t);
    }
    if (!ns.buffer) ns.buffer.emplace(networks_[net].name, scenario_.reassembly_policy);
  }

  void close_session(VehicleState& v, std::uint32_t net) {
    NetworkState& ns = v.nets[net];
    ns.in_session = false;
    metrics::NetworkOutcome& o = ns.outcome;
    if (o.passes == 1) {
      o.first_exit_s = sim_to_seconds(ns.last_seen);
      const double midpoint = 0.5 * (o.first_entry_s + o.first_exit_s);
      o.completed_on_approach = o.completed_s && *o.completed_s <= midpoint;
    }
    o.distinct_fragments = static_cast<std::uint32_t>(ns.buffer->stored_count());
    if (!ns.buffer->complete()) ++v.stats.dropped_messages;
  }

  void offer(VehicleState& v, std::uint32_t net, const Emission& e) {
    NetworkState& ns = v.nets[net];
    const bool delivered =
        channel::delivery_draw(channel_rng_, scenario_.aps[e.ap_index].channel.loss_p);
    const ApTransmitter& tx = transmitters_[e.ap_index];
    metrics::FrameEvent ev{e.time_us, v.stats.id, static_cast<std::uint16_t>(e.ap_index),
                           tx.fragment_at(e.emission_index).seq_no, delivered, EventStatus::kLost};
    if (!delivered) {
      ++v.stats.frames_lost;
      ++ns.outcome.frames_lost;
    } else {
      ++v.stats.frames_received;
      ++ns.outcome.frames_received;
      ev.status = deliver(v, net, tx.vendor_field_at(e.emission_index), e.time_us);
    }
    if (options_.record_events) events_.push_back(ev);
  }

  EventStatus deliver(VehicleState& v, std::uint32_t net, const Bytes& field, SimTime t) {
    NetworkState& ns = v.nets[net];
    ReassemblyBuffer& buf = *ns.buffer;
    const std::uint64_t resets_before = buf.resets();
    codec::ReassemblyStatus status;
    try {
      status = buf.on_frame(codec::decode_vendor_view(field));
    } catch (const Error&) {
      ++v.stats.rejected_frames;
      ++v.stats.dropped_messages;
      return EventStatus::kConflict;
    }
    switch (status) {
      case codec::ReassemblyStatus::kIncomplete:
        ++v.stats.stored_fragments;
        break;
      case codec::ReassemblyStatus::kDuplicate:
        ++v.stats.duplicate_frames;
        break;
      case codec::ReassemblyStatus::kReset:
        ++v.stats.rejected_frames;
        if (buf.resets() > resets_before) ++v.stats.dropped_messages;
        break;
      case codec::ReassemblyStatus::kCompleted:
        ++v.stats.stored_fragments;
        ++v.stats.completed_messages;
        ns.outcome.completed_s = sim_to_seconds(t);
        if (buf.payload() != *networks_[net].payload) ++v.stats.corrupted_messages;
        if (!metrics::topic_filter(buf.payload(), v.vehicle)) ++v.stats.filtered_messages;
        break;
    }
    return metrics::from_reassembly(status);
  }

  const Scenario& scenario_;
  RunOptions options_;
  std::mt19937_64 channel_rng_;
  std::vector<Network> networks_;
  std::vector<std::uint32_t> ap_network_;
  std::vector<ApTransmitter> transmitters_;
  std::vector<VehicleState> vehicles_;
  std::vector<std::size_t> active_;
  std::size_t next_spawn_ = 0;
  std::vector<metrics::FrameEvent> events_;
};

}  // namespace

metrics::RunResult run(const Scenario& scenario, const RunOptions& options) {
  scenario.validate();
  return Simulation(scenario, options).execute();
}

void for_each_emission(const Scenario& scenario,
                       const std::function<void(const Emission&)>& visit) {
  scenario.validate();
  const auto clocks = make_clocks(scenario);
  EmissionQueue queue(clocks);
  while (!queue.empty()) visit(queue.pop());
}

}  // namespace beaconcast::engine

// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

// Discrete-event run of one scenario.
//
// Emissions from all APs are merged and processed in (time, AP index) order.
// At each emission the AP's current fragment is offered to every spawned
// vehicle inside its disk, in spawn order, with one channel draw per
// (frame, vehicle) pair. Delivered frames feed the vehicle's buffer for the
// AP's network name. A vehicle's session on a network ends when it is seen
// outside every disk of that network, when it leaves the road, or when the
// run ends; re-entry reopens the same buffer.

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "beaconcast/codec.hpp"
#include "beaconcast/metrics.hpp"
#include "beaconcast/scenario.hpp"

namespace beaconcast::engine {

// Loop transmitter for one AP: fragment k of the message goes out at
// emission (k - phase) mod N.
class ApTransmitter {
 public:
  explicit ApTransmitter(const AccessPointSpec& spec);

  std::size_t fragment_count() const noexcept { return fragments_.size(); }
  std::size_t index_at(std::uint64_t emission_index) const noexcept {
    return static_cast<std::size_t>((emission_index + phase_) % fragments_.size());
  }
  const codec::FragmentRecord& fragment_at(std::uint64_t emission_index) const noexcept {
    return fragments_[index_at(emission_index)];
  }
  const Bytes& vendor_field_at(std::uint64_t emission_index) const noexcept {
    return encoded_[index_at(emission_index)];
  }
  // Full N-frame cycles contained in `frames_sent` emissions.
  std::uint64_t complete_loops(std::uint64_t frames_sent) const noexcept {
    return frames_sent / fragments_.size();
  }
  const Bytes& payload() const noexcept { return payload_; }

 private:
  Bytes payload_;
  std::vector<codec::FragmentRecord> fragments_;
  std::vector<Bytes> encoded_;
  std::uint64_t phase_;
};

codec::FragmentRecord ap_fragment_at(const AccessPointSpec& ap, std::uint64_t emission_index);

struct RunOptions {
  bool record_events = false;
};

// Pure function of the scenario (seed included). Throws Error(kSchema)
// before processing any event when the scenario is invalid.
metrics::RunResult run(const Scenario& scenario, const RunOptions& options = {});

// Every beacon the scenario emits, in (time, AP index) order, regardless of
// receivers. Used by capture tooling.
struct Emission {
  SimTime time_us = 0;
  std::uint32_t ap_index = 0;
  std::uint64_t emission_index = 0;
};
void for_each_emission(const Scenario& scenario,
                       const std::function<void(const Emission&)>& visit);

}  // namespace beaconcast::engine

// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

#include "beaconcast/capture.hpp"

#include <algorithm>
#include <string>

#include "beaconcast/engine.hpp"
#include "beaconcast/error.hpp"

namespace beaconcast::capture {

namespace {

constexpr char kMagic[4] = {'B', 'C', 'A', 'P'};

void put_be(Bytes& out, std::uint64_t v, int width) {
  for (int i = width - 1; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_be(std::span<const std::uint8_t> in, std::size_t at, int width) {
  std::uint64_t v = 0;
  for (int i = 0; i < width; ++i) v = (v << 8) | in[at + static_cast<std::size_t>(i)];
  return v;
}

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::kCaptureFormat, what); }

}  // namespace

Bytes write_capture(std::span<const BeaconFrame> frames) {
  Bytes out(kMagic, kMagic + 4);
  out.push_back(kVersion);
  std::uint64_t last = 0;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const BeaconFrame& f = frames[i];
    if (i > 0 && f.timestamp_us < last) bad("record " + std::to_string(i) + " is out of timestamp order");
    if (f.ssid.size() > 0xFF || f.vendor.size() > 0xFF)
      bad("record " + std::to_string(i) + " has an ssid or vendor field longer than 255 bytes");
    last = f.timestamp_us;
    const std::size_t body = 8 + 6 + 1 + f.ssid.size() + 1 + f.vendor.size();
    put_be(out, body, 2);
    put_be(out, f.timestamp_us, 8);
    out.insert(out.end(), f.transmitter.octets.begin(), f.transmitter.octets.end());
    out.push_back(static_cast<std::uint8_t>(f.ssid.size()));
    out.insert(out.end(), f.ssid.begin(), f.ssid.end());
    out.push_back(static_cast<std::uint8_t>(f.vendor.size()));
    out.insert(out.end(), f.vendor.begin(), f.vendor.end());
  }
  return out;
}

std::vector<BeaconFrame> read_capture(std::span<const std::uint8_t> file) {
  if (file.size() < kFileHeaderSize || !std::equal(kMagic, kMagic + 4, file.begin()))
    bad("missing BCAP magic");
  if (file[4] != kVersion) bad("unsupported BCAP version " + std::to_string(file[4]));

  std::vector<BeaconFrame> frames;
  std::size_t pos = kFileHeaderSize;
  while (pos < file.size()) {
    const std::string where = "record at offset " + std::to_string(pos);
    if (file.size() - pos < 2) bad(where + ": truncated length");
    const std::size_t body = get_be(file, pos, 2);
    pos += 2;
    if (file.size() - pos < body) bad(where + ": truncated body");
    if (body < 16) bad(where + ": body shorter than its fixed fields");
    const std::size_t end = pos + body;

    BeaconFrame f;
    f.timestamp_us = get_be(file, pos, 8);
    pos += 8;
    std::copy_n(file.begin() + static_cast<std::ptrdiff_t>(pos), 6, f.transmitter.octets.begin());
    pos += 6;
    const std::size_t ssid_len = file[pos++];
    if (pos + ssid_len + 1 > end) bad(where + ": ssid overruns the record");
    f.ssid.assign(file.begin() + static_cast<std::ptrdiff_t>(pos),
                  file.begin() + static_cast<std::ptrdiff_t>(pos + ssid_len));
    pos += ssid_len;
    const std::size_t vendor_len = file[pos++];
    if (pos + vendor_len != end) bad(where + ": vendor length disagrees with the record length");
    f.vendor.assign(file.begin() + static_cast<std::ptrdiff_t>(pos),
                    file.begin() + static_cast<std::ptrdiff_t>(end));
    pos = end;
    if (!frames.empty() && f.timestamp_us < frames.back().timestamp_us)
      bad(where + ": timestamps go backwards");
    frames.push_back(std::move(f));
  }
  return frames;
}

std::vector<BeaconFrame> collect_beacons(const Scenario& scenario) {
  scenario.validate();
  std::vector<engine::ApTransmitter> tx;
  tx.reserve(scenario.aps.size());
  for (const auto& ap : scenario.aps) tx.emplace_back(ap);

  std::vector<BeaconFrame> out;
  engine::for_each_emission(scenario, [&](const engine::Emission& e) {
    const auto& ap = scenario.aps[e.ap_index];
    out.push_back({static_cast<std::uint64_t>(e.time_us), ap.bssid, ap.ssid,
                   tx[e.ap_index].vendor_field_at(e.emission_index)});
  });
  return out;
}

}  // namespace beaconcast::capture

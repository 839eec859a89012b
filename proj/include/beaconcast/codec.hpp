// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

// Vendor Specific beacon field layout and the fragmentation protocol on top
// of it.
//
//   +---------+---------+---------------------+
//   | seq u16 | tag u8  | data (1..250 bytes) |
//   +---------+---------+---------------------+
//
// The sequence number is big-endian. Tags: 0 middle, 1 first, 2 last,
// 3 single (a one-fragment message). The field is variable length, so a
// short final chunk is carried without padding.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "beaconcast/types.hpp"

namespace beaconcast::codec {

inline constexpr std::size_t kHeaderSize = 3;
inline constexpr std::size_t kChunkSize = 250;
inline constexpr std::size_t kMaxFieldSize = kHeaderSize + kChunkSize;  // 253
inline constexpr std::size_t kMinFieldSize = kHeaderSize + 1;
inline constexpr std::size_t kMaxFragments = 65536;
inline constexpr std::size_t kMaxMessageSize = kMaxFragments * kChunkSize;

enum class Tag : std::uint8_t {
  kMiddle = 0,
  kFirst = 1,
  kLast = 2,
  kSingle = 3,
};

const char* to_string(Tag tag) noexcept;

struct FragmentRecord {
  std::uint16_t seq_no = 0;
  Tag tag = Tag::kSingle;
  Bytes data;

  // Throws kInvalidArgument when the record invariants do not hold.
  void validate() const;

  friend bool operator==(const FragmentRecord&, const FragmentRecord&) = default;
};

// Non-owning decoded view; `data` aliases the buffer handed to decode.
struct FragmentView {
  std::uint16_t seq_no = 0;
  Tag tag = Tag::kSingle;
  std::span<const std::uint8_t> data;
};

std::size_t fragment_count(std::size_t payload_size) noexcept;

// Splits a payload into 250-byte chunks tagged first/middle/last (or single).
// Throws kInvalidMessage on an empty payload and kMessageTooLarge past
// 65536 fragments.
std::vector<FragmentRecord> fragment(std::span<const std::uint8_t> payload);

Bytes encode_vendor_field(const FragmentRecord& frag);
void encode_vendor_field(std::uint16_t seq_no, Tag tag,
                         std::span<const std::uint8_t> data, Bytes& out);

FragmentView decode_vendor_view(std::span<const std::uint8_t> buf);
FragmentRecord decode_vendor_field(std::span<const std::uint8_t> buf);

enum class Policy : std::uint8_t {
  kAccumulate,
  kStrictSequential,
};

const char* to_string(Policy policy) noexcept;
Policy parse_policy(std::string_view text);  // "accumulate" | "strict"

enum class ReassemblyStatus : std::uint8_t {
  kIncomplete,
  kDuplicate,
  kCompleted,
  kReset,
};

const char* to_string(ReassemblyStatus status) noexcept;

// Per-network fragment collection inside one receiver.
//
// ACCUMULATE keeps the union of chunks seen across loops and completes as
// soon as every index below the announced total is present.
// STRICT_SEQUENTIAL only extends a contiguous run that starts at a
// first/single tag; any gap discards what was collected and answers kReset.
// Once complete, every further frame is a duplicate.
class ReassemblyBuffer {
 public:
  ReassemblyBuffer(std::string network_id, Policy policy);

  // Throws kConflictingTotal (after clearing the buffer) when two last tags
  // disagree on the message length or a stored index lies past it.
  ReassemblyStatus on_frame(const FragmentView& frag);
  ReassemblyStatus on_frame(const FragmentRecord& frag);

  bool complete() const noexcept { return completed_; }
  // Concatenated payload; empty until complete().
  const Bytes& payload() const noexcept { return payload_; }

  const std::string& network_id() const noexcept { return network_id_; }
  Policy policy() const noexcept { return policy_; }
  std::optional<std::uint32_t> expected_total() const noexcept { return expected_total_; }
  std::optional<std::uint16_t> last_seq_seen() const noexcept { return last_seq_seen_; }
  std::size_t stored_count() const noexcept { return stored_; }
  bool has_fragment(std::uint16_t index) const noexcept;
  std::uint64_t duplicates() const noexcept { return duplicates_; }
  // Clears that discarded at least one stored chunk.
  std::uint64_t resets() const noexcept { return resets_; }

  void clear() noexcept;

 private:
  void store(const FragmentView& frag);
  bool try_complete();

  std::string network_id_;
  Policy policy_;
  std::vector<Bytes> chunks_;
  std::vector<bool> present_;
  std::size_t stored_ = 0;
  std::optional<std::uint32_t> expected_total_;
  std::optional<std::uint16_t> last_seq_seen_;
  std::uint64_t duplicates_ = 0;
  std::uint64_t resets_ = 0;
  bool completed_ = false;
  Bytes payload_;
};

}  // namespace beaconcast::codec

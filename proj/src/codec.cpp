// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

#include "beaconcast/codec.hpp"

#include <algorithm>
#include <utility>

#include "beaconcast/error.hpp"

namespace beaconcast::codec {

namespace {

bool is_start_tag(Tag tag) noexcept { return tag == Tag::kFirst || tag == Tag::kSingle; }
bool is_end_tag(Tag tag) noexcept { return tag == Tag::kLast || tag == Tag::kSingle; }

}  // namespace

const char* to_string(Tag tag) noexcept {
  switch (tag) {
    case Tag::kMiddle: return "MIDDLE";
    case Tag::kFirst: return "FIRST";
    case Tag::kLast: return "LAST";
    case Tag::kSingle: return "SINGLE";
  }
  return "?";
}

const char* to_string(Policy policy) noexcept {
  return policy == Policy::kAccumulate ? "accumulate" : "strict";
}

Policy parse_policy(std::string_view text) {
  if (text == "accumulate" || text == "ACCUMULATE") return Policy::kAccumulate;
  if (text == "strict" || text == "strict_sequential" || text == "STRICT_SEQUENTIAL")
    return Policy::kStrictSequential;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown reassembly policy '" + std::string(text) + "' (accumulate|strict)");
}

const char* to_string(ReassemblyStatus status) noexcept {
  switch (status) {
    case ReassemblyStatus::kIncomplete: return "INCOMPLETE";
    case ReassemblyStatus::kDuplicate: return "DUPLICATE";
    case ReassemblyStatus::kCompleted: return "COMPLETED";
    case ReassemblyStatus::kReset: return "RESET";
  }
  return "?";
}

void FragmentRecord::validate() const {
  if (data.empty() || data.size() > kChunkSize)
    throw Error(ErrorCode::kInvalidArgument,
                "fragment data must hold 1.." + std::to_string(kChunkSize) + " bytes");
  if ((seq_no == 0) != is_start_tag(tag))
    throw Error(ErrorCode::kInconsistentTag,
                std::string("sequence number ") + std::to_string(seq_no) +
                    " is inconsistent with tag " + to_string(tag));
}

std::size_t fragment_count(std::size_t payload_size) noexcept {
  return (payload_size + kChunkSize - 1) / kChunkSize;
}

std::vector<FragmentRecord> fragment(std::span<const std::uint8_t> payload) {
  if (payload.empty()) throw Error(ErrorCode::kInvalidMessage, "message payload is empty");
  const std::size_t n = fragment_count(payload.size());
  if (n > kMaxFragments)
    throw Error(ErrorCode::kMessageTooLarge,
                "message of " + std::to_string(payload.size()) + " bytes needs " +
                    std::to_string(n) + " fragments (max " + std::to_string(kMaxFragments) + ")");

  std::vector<FragmentRecord> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t begin = i * kChunkSize;
    const std::size_t len = std::min(kChunkSize, payload.size() - begin);
    FragmentRecord rec;
    rec.seq_no = static_cast<std::uint16_t>(i);
    if (n == 1)
      rec.tag = Tag::kSingle;
    else if (i == 0)
      rec.tag = Tag::kFirst;
    else if (i + 1 == n)
      rec.tag = Tag::kLast;
    else
      rec.tag = Tag::kMiddle;
    rec.data.assign(payload.begin() + static_cast<std::ptrdiff_t>(begin),
                    payload.begin() + static_cast<std::ptrdiff_t>(begin + len));
    out.push_back(std::move(rec));
  }
  return out;
}

void encode_vendor_field(std::uint16_t seq_no, Tag tag, std::span<const std::uint8_t> data,
                         Bytes& out) {
  out.resize(kHeaderSize + data.size());
  out[0] = static_cast<std::uint8_t>(seq_no >> 8);
  out[1] = static_cast<std::uint8_t>(seq_no & 0xFF);
  out[2] = static_cast<std::uint8_t>(tag);
  std::copy(data.begin(), data.end(), out.begin() + kHeaderSize);
}

Bytes encode_vendor_field(const FragmentRecord& frag) {
  Bytes out;
  encode_vendor_field(frag.seq_no, frag.tag, frag.data, out);
  return out;
}

FragmentView decode_vendor_view(std::span<const std::uint8_t> buf) {
  if (buf.size() < kMinFieldSize)
    throw Error(ErrorCode::kTruncatedField,
                "vendor field of " + std::to_string(buf.size()) + " bytes is truncated (min " +
                    std::to_string(kMinFieldSize) + ")");
  if (buf.size() > kMaxFieldSize)
    throw Error(ErrorCode::kOversizeField,
                "vendor field of " + std::to_string(buf.size()) + " bytes exceeds " +
                    std::to_string(kMaxFieldSize));
  if (buf[2] > static_cast<std::uint8_t>(Tag::kSingle))
    throw Error(ErrorCode::kUnknownTag, "unknown first/last tag " + std::to_string(buf[2]));

  FragmentView view;
  view.seq_no = static_cast<std::uint16_t>((buf[0] << 8) | buf[1]);
  view.tag = static_cast<Tag>(buf[2]);
  if ((view.seq_no == 0) != is_start_tag(view.tag))
    throw Error(ErrorCode::kInconsistentTag,
                std::string("sequence number ") + std::to_string(view.seq_no) +
                    " is inconsistent with tag " + to_string(view.tag));
  view.data = buf.subspan(kHeaderSize);
  return view;
}

FragmentRecord decode_vendor_field(std::span<const std::uint8_t> buf) {
  const FragmentView view = decode_vendor_view(buf);
  return FragmentRecord{view.seq_no, view.tag, Bytes(view.data.begin(), view.data.end())};
}

ReassemblyBuffer::ReassemblyBuffer(std::string network_id, Policy policy)
    : network_id_(std::move(network_id)), policy_(policy) {}

bool ReassemblyBuffer::has_fragment(std::uint16_t index) const noexcept {
  return index < present_.size() && present_[index];
}

void ReassemblyBuffer::clear() noexcept {
  chunks_.clear();
  present_.clear();
  stored_ = 0;
  expected_total_.reset();
  last_seq_seen_.reset();
  completed_ = false;
  payload_.clear();
}

void ReassemblyBuffer::store(const FragmentView& frag) {
  if (frag.seq_no >= present_.size()) {
    chunks_.resize(frag.seq_no + 1u);
    present_.resize(frag.seq_no + 1u, false);
  }
  chunks_[frag.seq_no].assign(frag.data.begin(), frag.data.end());
  present_[frag.seq_no] = true;
  ++stored_;
  last_seq_seen_ = frag.seq_no;
  if (is_end_tag(frag.tag)) expected_total_ = frag.seq_no + 1u;
}

bool ReassemblyBuffer::try_complete() {
  if (!expected_total_ || stored_ != *expected_total_) return false;
  std::size_t total = 0;
  for (const auto& c : chunks_) total += c.size();
  payload_.clear();
  payload_.reserve(total);
  for (auto& c : chunks_) {
    payload_.insert(payload_.end(), c.begin(), c.end());
    Bytes().swap(c);
  }
  completed_ = true;
  return true;
}

ReassemblyStatus ReassemblyBuffer::on_frame(const FragmentRecord& frag) {
  return on_frame(FragmentView{frag.seq_no, frag.tag, frag.data});
}

ReassemblyStatus ReassemblyBuffer::on_frame(const FragmentView& frag) {
  if (completed_) {
    ++duplicates_;
    return ReassemblyStatus::kDuplicate;
  }

  if (policy_ == Policy::kAccumulate) {
    if (is_end_tag(frag.tag)) {
      const std::uint32_t total = frag.seq_no + 1u;
      const bool conflicting =
          (expected_total_ && *expected_total_ != total) || present_.size() > total;
      if (conflicting) {
        const auto previous = expected_total_ ? *expected_total_ : present_.size();
        clear();
        throw Error(ErrorCode::kConflictingTotal,
                    "network '" + network_id_ + "': last fragment at index " +
                        std::to_string(frag.seq_no) + " conflicts with " +
                        std::to_string(previous) + " known fragments");
      }
    } else if (expected_total_ && frag.seq_no >= *expected_total_) {
      const auto previous = *expected_total_;
      clear();
      throw Error(ErrorCode::kConflictingTotal,
                  "network '" + network_id_ + "': index " + std::to_string(frag.seq_no) +
                      " lies past the announced total " + std::to_string(previous));
    }
    if (has_fragment(frag.seq_no)) {
      ++duplicates_;
      return ReassemblyStatus::kDuplicate;
    }
    store(frag);
    return try_complete() ? ReassemblyStatus::kCompleted : ReassemblyStatus::kIncomplete;
  }

  // Strict sequential.
  if (has_fragment(frag.seq_no)) {
    ++duplicates_;
    return ReassemblyStatus::kDuplicate;
  }
  const bool extends_run = frag.seq_no == 0 ||
                           (last_seq_seen_ && frag.seq_no == *last_seq_seen_ + 1u);
  if (!extends_run) {
    if (stored_ > 0) ++resets_;
    clear();
    return ReassemblyStatus::kReset;
  }
  store(frag);
  return try_complete() ? ReassemblyStatus::kCompleted : ReassemblyStatus::kIncomplete;
}

}  // namespace beaconcast::codec

// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

#include "beaconcast/beaconcast.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <memory>
#include <string>
#include <utility>

#include "beaconcast/analytic.hpp"
#include "beaconcast/capture.hpp"
#include "beaconcast/codec.hpp"
#include "beaconcast/engine.hpp"
#include "beaconcast/error.hpp"
#include "beaconcast/scenario_io.hpp"
#include "beaconcast/service.hpp"
#include "beaconcast/sweep.hpp"

using namespace beaconcast;

struct bc_fragments {
  std::vector<codec::FragmentRecord> records;
};

struct bc_reassembler {
  codec::ReassemblyBuffer buffer;
};

struct bc_scenario {
  Scenario scenario;
};

struct bc_result {
  metrics::RunResult result;
};

struct bc_sweep {
  sweep::SweepSpec spec;
};

struct bc_service {
  std::unique_ptr<service::RunService> runs;
  std::unique_ptr<service::HttpServer> http;
};

namespace {

thread_local std::string g_last_error;

bc_status map_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return BC_ERR_INVALID_ARGUMENT;
    case ErrorCode::kInvalidMessage: return BC_ERR_INVALID_MESSAGE;
    case ErrorCode::kMessageTooLarge: return BC_ERR_MESSAGE_TOO_LARGE;
    case ErrorCode::kTruncatedField: return BC_ERR_TRUNCATED_FIELD;
    case ErrorCode::kOversizeField: return BC_ERR_OVERSIZE_FIELD;
    case ErrorCode::kUnknownTag: return BC_ERR_UNKNOWN_TAG;
    case ErrorCode::kInconsistentTag: return BC_ERR_INCONSISTENT_TAG;
    case ErrorCode::kConflictingTotal: return BC_ERR_CONFLICTING_TOTAL;
    case ErrorCode::kParse: return BC_ERR_PARSE;
    case ErrorCode::kSchema: return BC_ERR_SCHEMA;
    case ErrorCode::kUndefinedMetric: return BC_ERR_UNDEFINED_METRIC;
    case ErrorCode::kIo: return BC_ERR_IO;
    case ErrorCode::kCaptureFormat: return BC_ERR_CAPTURE_FORMAT;
    case ErrorCode::kNotFound: return BC_ERR_NOT_FOUND;
  }
  return BC_ERR_INTERNAL;
}

bc_status fail(bc_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
bc_status guard(Fn&& fn) {
  g_last_error.clear();
  try {
    return fn();
  } catch (const Error& e) {
    return fail(map_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(BC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BC_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return out;
}

bc_fragment_view view_of(const codec::FragmentRecord& r) {
  return {r.seq_no, static_cast<bc_tag>(r.tag), r.data.data(), r.data.size()};
}

#define BC_REQUIRE(cond)                                                           \
  do {                                                                             \
    if (!(cond)) return fail(BC_ERR_INVALID_ARGUMENT, "null or invalid argument: " #cond); \
  } while (0)

}  // namespace

extern "C" {

const char* bc_version(void) { return "1.0.0"; }

const char* bc_status_string(bc_status status) {
  switch (status) {
    case BC_OK: return "ok";
    case BC_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case BC_ERR_INVALID_MESSAGE: return "invalid-message";
    case BC_ERR_MESSAGE_TOO_LARGE: return "message-too-large";
    case BC_ERR_TRUNCATED_FIELD: return "truncated-field";
    case BC_ERR_OVERSIZE_FIELD: return "oversize-field";
    case BC_ERR_UNKNOWN_TAG: return "unknown-tag";
    case BC_ERR_INCONSISTENT_TAG: return "inconsistent-tag";
    case BC_ERR_CONFLICTING_TOTAL: return "conflicting-total";
    case BC_ERR_PARSE: return "parse-error";
    case BC_ERR_SCHEMA: return "schema-violation";
    case BC_ERR_UNDEFINED_METRIC: return "undefined-metric";
    case BC_ERR_IO: return "io-error";
    case BC_ERR_CAPTURE_FORMAT: return "capture-format";
    case BC_ERR_NOT_FOUND: return "not-found";
    case BC_ERR_BUFFER_TOO_SMALL: return "buffer-too-small";
    case BC_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

const char* bc_last_error(void) { return g_last_error.c_str(); }

void bc_string_free(char* s) { std::free(s); }

bc_status bc_fragment_message(const uint8_t* payload, size_t len, bc_fragments** out) {
  BC_REQUIRE(out && (payload || len == 0));
  return guard([&] {
    auto f = std::make_unique<bc_fragments>();
    f->records = codec::fragment(std::span<const std::uint8_t>(payload, len));
    *out = f.release();
    return BC_OK;
  });
}

size_t bc_fragments_count(const bc_fragments* f) { return f ? f->records.size() : 0; }

bc_status bc_fragments_get(const bc_fragments* f, size_t index, bc_fragment_view* out) {
  BC_REQUIRE(f && out);
  if (index >= f->records.size()) return fail(BC_ERR_NOT_FOUND, "fragment index out of range");
  *out = view_of(f->records[index]);
  return BC_OK;
}

void bc_fragments_free(bc_fragments* f) { delete f; }

bc_status bc_encode_vendor_field(const bc_fragment_view* frag, uint8_t* out, size_t cap,
                                 size_t* written) {
  BC_REQUIRE(frag && written && (frag->data || frag->data_len == 0));
  return guard([&] {
    codec::FragmentRecord rec{frag->seq_no, static_cast<codec::Tag>(frag->tag),
                              Bytes(frag->data, frag->data + frag->data_len)};
    if (frag->tag > BC_TAG_SINGLE) return fail(BC_ERR_UNKNOWN_TAG, "unknown tag");
    rec.validate();
    const Bytes field = codec::encode_vendor_field(rec);
    *written = field.size();
    if (!out || cap < field.size())
      return fail(BC_ERR_BUFFER_TOO_SMALL, "need " + std::to_string(field.size()) + " bytes");
    std::memcpy(out, field.data(), field.size());
    return BC_OK;
  });
}

bc_status bc_decode_vendor_field(const uint8_t* buf, size_t len, bc_fragment_view* out) {
  BC_REQUIRE(out && (buf || len == 0));
  return guard([&] {
    const auto v = codec::decode_vendor_view(std::span<const std::uint8_t>(buf, len));
    *out = {v.seq_no, static_cast<bc_tag>(v.tag), v.data.data(), v.data.size()};
    return BC_OK;
  });
}

bc_status bc_reassembler_create(const char* network_id, bc_policy policy, bc_reassembler** out) {
  BC_REQUIRE(network_id && out);
  BC_REQUIRE(policy == BC_POLICY_ACCUMULATE || policy == BC_POLICY_STRICT_SEQUENTIAL);
  return guard([&] {
    *out = new bc_reassembler{codec::ReassemblyBuffer(
        network_id, policy == BC_POLICY_ACCUMULATE ? codec::Policy::kAccumulate
                                                   : codec::Policy::kStrictSequential)};
    return BC_OK;
  });
}

bc_status bc_reassembler_on_field(bc_reassembler* r, const uint8_t* field, size_t len,
                                  bc_reassembly_status* status) {
  BC_REQUIRE(r && status && (field || len == 0));
  return guard([&] {
    const auto view = codec::decode_vendor_view(std::span<const std::uint8_t>(field, len));
    *status = static_cast<bc_reassembly_status>(r->buffer.on_frame(view));
    return BC_OK;
  });
}

bc_status bc_reassembler_payload(const bc_reassembler* r, const uint8_t** data, size_t* len) {
  BC_REQUIRE(r && data && len);
  if (!r->buffer.complete()) return fail(BC_ERR_NOT_FOUND, "message not complete yet");
  *data = r->buffer.payload().data();
  *len = r->buffer.payload().size();
  return BC_OK;
}

uint64_t bc_reassembler_duplicates(const bc_reassembler* r) {
  return r ? r->buffer.duplicates() : 0;
}

void bc_reassembler_free(bc_reassembler* r) { delete r; }

bc_status bc_analytic_estimate(double range_m, double speed_kmh, double interval_ms,
                               bc_throughput_estimate* out) {
  BC_REQUIRE(out);
  return guard([&] {
    const auto e = analytic::estimate(range_m, speed_kmh, interval_ms);
    *out = {e.time_to_ap_s, e.time_total_s, e.frames_to_ap,
            e.frames_total, e.bytes_to_ap,  e.bytes_total};
    return BC_OK;
  });
}

bc_status bc_frames_for_message(uint64_t size_bytes, uint64_t* out) {
  BC_REQUIRE(out);
  return guard([&] {
    *out = analytic::frames_for_message(size_bytes);
    return BC_OK;
  });
}

bc_status bc_loop_time(uint64_t size_bytes, double interval_ms, double* out_s) {
  BC_REQUIRE(out_s);
  return guard([&] {
    *out_s = analytic::loop_time(size_bytes, interval_ms);
    return BC_OK;
  });
}

bc_status bc_analytic_report_json(double range_m, double speed_kmh, double interval_ms,
                                  uint64_t size_bytes, double loss_p, char** out_json) {
  BC_REQUIRE(out_json);
  return guard([&] {
    std::optional<std::uint64_t> size;
    if (size_bytes > 0) size = size_bytes;
    std::optional<double> loss;
    if (loss_p >= 0.0) {
      if (loss_p > 1.0) return fail(BC_ERR_INVALID_ARGUMENT, "loss_p must be within [0, 1]");
      loss = loss_p;
    }
    *out_json = dup_string(canonical_dump(analytic_report(range_m, speed_kmh, interval_ms, size, loss)));
    return BC_OK;
  });
}

bc_status bc_scenario_parse(const char* json, size_t len, bc_scenario** out) {
  BC_REQUIRE(json && out);
  return guard([&] {
    *out = new bc_scenario{parse_scenario(std::string_view(json, len))};
    return BC_OK;
  });
}

bc_status bc_scenario_load(const char* path, bc_scenario** out) {
  BC_REQUIRE(path && out);
  return guard([&] {
    *out = new bc_scenario{parse_scenario(read_text_file(path))};
    return BC_OK;
  });
}

bc_status bc_scenario_set_seed(bc_scenario* s, uint64_t seed) {
  BC_REQUIRE(s);
  s->scenario.seed = seed;
  return BC_OK;
}

bc_status bc_scenario_set_policy(bc_scenario* s, bc_policy policy) {
  BC_REQUIRE(s);
  BC_REQUIRE(policy == BC_POLICY_ACCUMULATE || policy == BC_POLICY_STRICT_SEQUENTIAL);
  s->scenario.reassembly_policy = policy == BC_POLICY_ACCUMULATE
                                      ? codec::Policy::kAccumulate
                                      : codec::Policy::kStrictSequential;
  return BC_OK;
}

bc_status bc_scenario_digest(const bc_scenario* s, char** out_hex) {
  BC_REQUIRE(s && out_hex);
  return guard([&] {
    *out_hex = dup_string(scenario_digest(s->scenario));
    return BC_OK;
  });
}

bc_status bc_scenario_json(const bc_scenario* s, char** out_json) {
  BC_REQUIRE(s && out_json);
  return guard([&] {
    *out_json = dup_string(canonical_dump(scenario_to_json(s->scenario)));
    return BC_OK;
  });
}

void bc_scenario_free(bc_scenario* s) { delete s; }

bc_status bc_run(const bc_scenario* s, int record_events, bc_result** out) {
  BC_REQUIRE(s && out);
  return guard([&] {
    *out = new bc_result{engine::run(s->scenario, {.record_events = record_events != 0})};
    return BC_OK;
  });
}

bc_status bc_result_json(const bc_result* r, char** out_json) {
  BC_REQUIRE(r && out_json);
  return guard([&] {
    *out_json = dup_string(canonical_dump(result_to_json(r->result)));
    return BC_OK;
  });
}

bc_status bc_result_events_csv(const bc_result* r, char** out_csv) {
  BC_REQUIRE(r && out_csv);
  return guard([&] {
    *out_csv = dup_string(events_to_csv(r->result.events));
    return BC_OK;
  });
}

bc_status bc_result_message_loss_pct(const bc_result* r, const char* network, double* out) {
  BC_REQUIRE(r && network && out);
  return guard([&] {
    *out = metrics::message_loss_pct(r->result, network);
    return BC_OK;
  });
}

void bc_result_free(bc_result* r) { delete r; }

bc_status bc_capture_write(const bc_scenario* s, const char* path, size_t* records) {
  BC_REQUIRE(s && path);
  return guard([&] {
    const auto frames = capture::collect_beacons(s->scenario);
    const Bytes file = capture::write_capture(frames);
    write_text_file(path, std::string_view(reinterpret_cast<const char*>(file.data()), file.size()));
    if (records) *records = frames.size();
    return BC_OK;
  });
}

bc_status bc_capture_dump_csv(const char* path, char** out_csv) {
  BC_REQUIRE(path && out_csv);
  return guard([&] {
    const std::string raw = read_text_file(path);
    const auto frames = capture::read_capture(
        std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(raw.data()), raw.size()));
    std::string csv = "timestamp_us,transmitter,ssid,seq_no,tag,data_len\n";
    for (const auto& f : frames) {
      const auto v = codec::decode_vendor_view(f.vendor);
      csv += std::to_string(f.timestamp_us) + ',' + f.transmitter.to_string() + ',' + f.ssid + ',' +
             std::to_string(v.seq_no) + ',' + codec::to_string(v.tag) + ',' +
             std::to_string(v.data.size()) + '\n';
    }
    *out_csv = dup_string(csv);
    return BC_OK;
  });
}

bc_status bc_sweep_parse(const char* json, size_t len, const char* base_dir, bc_sweep** out) {
  BC_REQUIRE(json && out);
  return guard([&] {
    *out = new bc_sweep{sweep::parse_sweep(std::string_view(json, len), base_dir ? base_dir : ".")};
    return BC_OK;
  });
}

bc_status bc_sweep_load(const char* path, bc_sweep** out) {
  BC_REQUIRE(path && out);
  return guard([&] {
    const std::string text = read_text_file(path);
    const auto dir = std::filesystem::path(path).parent_path();
    *out = new bc_sweep{sweep::parse_sweep(text, dir.empty() ? "." : dir.string())};
    return BC_OK;
  });
}

size_t bc_sweep_row_count(const bc_sweep* s) {
  if (!s) return 0;
  return s->spec.loss_ps.size() * s->spec.message_sizes_bytes.size() * s->spec.replications;
}

bc_status bc_sweep_set_seed(bc_sweep* s, uint64_t base_seed) {
  BC_REQUIRE(s);
  s->spec.base_seed = base_seed;
  return BC_OK;
}

bc_status bc_sweep_set_policy(bc_sweep* s, bc_policy policy) {
  BC_REQUIRE(s);
  BC_REQUIRE(policy == BC_POLICY_ACCUMULATE || policy == BC_POLICY_STRICT_SEQUENTIAL);
  s->spec.base.reassembly_policy = policy == BC_POLICY_ACCUMULATE
                                       ? codec::Policy::kAccumulate
                                       : codec::Policy::kStrictSequential;
  return BC_OK;
}

bc_status bc_sweep_run(const bc_sweep* s, unsigned jobs, int as_json, char** out,
                       char** out_summary) {
  BC_REQUIRE(s && out);
  return guard([&] {
    const auto rows = sweep::run_sweep(s->spec, jobs);
    *out = dup_string(as_json ? canonical_dump(sweep::sweep_to_json(rows)) : sweep::rows_to_csv(rows));
    if (out_summary) {
      std::string table = "loss_p  size_bytes  mean_message_loss_pct  replications\n";
      for (const auto& p : sweep::summarize(rows)) {
        char line[128];
        std::snprintf(line, sizeof line, "%-7.4g %-11llu %-22.2f %u\n", p.loss_p,
                      static_cast<unsigned long long>(p.size_bytes), p.mean_loss_pct, p.replications);
        table += line;
      }
      *out_summary = dup_string(table);
    }
    return BC_OK;
  });
}

void bc_sweep_free(bc_sweep* s) { delete s; }

bc_status bc_service_create(const bc_service_options* options, bc_service** out) {
  BC_REQUIRE(out);
  return guard([&] {
    service::ServiceOptions o;
    if (options) {
      if (options->workers) o.workers = options->workers;
      if (options->queue_capacity) o.queue_capacity = options->queue_capacity;
      if (options->retain) o.retain = options->retain;
    }
    auto svc = std::make_unique<bc_service>();
    svc->runs = std::make_unique<service::RunService>(o);
    svc->http = std::make_unique<service::HttpServer>(*svc->runs);
    *out = svc.release();
    return BC_OK;
  });
}

bc_status bc_service_bind(bc_service* s, const char* host, int port, int* bound_port) {
  BC_REQUIRE(s && host);
  return guard([&] {
    const int p = s->http->bind(host, port);
    if (p < 0) return fail(BC_ERR_IO, std::string("cannot bind ") + host + ":" + std::to_string(port));
    if (bound_port) *bound_port = p;
    return BC_OK;
  });
}

bc_status bc_service_listen(bc_service* s) {
  BC_REQUIRE(s);
  return guard([&] {
    s->http->listen();
    return BC_OK;
  });
}

bc_status bc_service_start(bc_service* s) {
  BC_REQUIRE(s);
  return guard([&] {
    s->http->start();
    return BC_OK;
  });
}

bc_status bc_service_stop(bc_service* s) {
  BC_REQUIRE(s);
  return guard([&] {
    s->http->stop();
    return BC_OK;
  });
}

void bc_service_free(bc_service* s) {
  if (!s) return;
  s->http.reset();
  s->runs.reset();
  delete s;
}

}  // extern "C"

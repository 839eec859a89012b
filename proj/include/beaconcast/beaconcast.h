/*
 * Copyright 2026 The beaconcast Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface of libbeaconcast.
 *
 * Every function returns a bc_status. On failure the calling thread's
 * detail message is available from bc_last_error() until the next call.
 * Objects are opaque handles released with their matching *_free function.
 * Strings handed out through `char**` are owned by the caller and released
 * with bc_string_free().
 */

#ifndef BEACONCAST_BEACONCAST_H_
#define BEACONCAST_BEACONCAST_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BC_API __declspec(dllexport)
#else
#define BC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bc_status {
  BC_OK = 0,
  BC_ERR_INVALID_ARGUMENT = 1,
  BC_ERR_INVALID_MESSAGE = 2,
  BC_ERR_MESSAGE_TOO_LARGE = 3,
  BC_ERR_TRUNCATED_FIELD = 4,
  BC_ERR_OVERSIZE_FIELD = 5,
  BC_ERR_UNKNOWN_TAG = 6,
  BC_ERR_INCONSISTENT_TAG = 7,
  BC_ERR_CONFLICTING_TOTAL = 8,
  BC_ERR_PARSE = 9,
  BC_ERR_SCHEMA = 10,
  BC_ERR_UNDEFINED_METRIC = 11,
  BC_ERR_IO = 12,
  BC_ERR_CAPTURE_FORMAT = 13,
  BC_ERR_NOT_FOUND = 14,
  BC_ERR_BUFFER_TOO_SMALL = 15,
  BC_ERR_INTERNAL = 16
} bc_status;

typedef enum bc_tag {
  BC_TAG_MIDDLE = 0,
  BC_TAG_FIRST = 1,
  BC_TAG_LAST = 2,
  BC_TAG_SINGLE = 3
} bc_tag;

typedef enum bc_policy {
  BC_POLICY_ACCUMULATE = 0,
  BC_POLICY_STRICT_SEQUENTIAL = 1
} bc_policy;

typedef enum bc_reassembly_status {
  BC_REASM_INCOMPLETE = 0,
  BC_REASM_DUPLICATE = 1,
  BC_REASM_COMPLETED = 2,
  BC_REASM_RESET = 3
} bc_reassembly_status;

typedef struct bc_fragments bc_fragments;
typedef struct bc_reassembler bc_reassembler;
typedef struct bc_scenario bc_scenario;
typedef struct bc_result bc_result;
typedef struct bc_sweep bc_sweep;
typedef struct bc_service bc_service;

/* Borrowed view of one fragment; `data` lives as long as its owner. */
typedef struct bc_fragment_view {
  uint16_t seq_no;
  bc_tag tag;
  const uint8_t* data;
  size_t data_len;
} bc_fragment_view;

typedef struct bc_throughput_estimate {
  double time_to_ap_s;
  double time_total_s;
  uint64_t frames_to_ap;
  uint64_t frames_total;
  uint64_t bytes_to_ap;
  uint64_t bytes_total;
} bc_throughput_estimate;

typedef struct bc_service_options {
  unsigned workers;        /* 0 selects 2 */
  size_t queue_capacity;   /* 0 selects 64 */
  size_t retain;           /* 0 selects 100 */
} bc_service_options;

BC_API const char* bc_version(void);
BC_API const char* bc_status_string(bc_status status);
BC_API const char* bc_last_error(void);
BC_API void bc_string_free(char* s);

/* ---- codec ------------------------------------------------------------ */

BC_API bc_status bc_fragment_message(const uint8_t* payload, size_t len, bc_fragments** out);
BC_API size_t bc_fragments_count(const bc_fragments* f);
BC_API bc_status bc_fragments_get(const bc_fragments* f, size_t index, bc_fragment_view* out);
BC_API void bc_fragments_free(bc_fragments* f);

/* Writes 3 + data_len bytes into `out`; BC_ERR_BUFFER_TOO_SMALL if cap is short. */
BC_API bc_status bc_encode_vendor_field(const bc_fragment_view* frag, uint8_t* out, size_t cap,
                                        size_t* written);
/* On success `out->data` points into `buf`. */
BC_API bc_status bc_decode_vendor_field(const uint8_t* buf, size_t len, bc_fragment_view* out);

BC_API bc_status bc_reassembler_create(const char* network_id, bc_policy policy,
                                       bc_reassembler** out);
BC_API bc_status bc_reassembler_on_field(bc_reassembler* r, const uint8_t* field, size_t len,
                                         bc_reassembly_status* status);
/* Completed payload; BC_ERR_NOT_FOUND until the message is complete. */
BC_API bc_status bc_reassembler_payload(const bc_reassembler* r, const uint8_t** data,
                                        size_t* len);
BC_API uint64_t bc_reassembler_duplicates(const bc_reassembler* r);
BC_API void bc_reassembler_free(bc_reassembler* r);

/* ---- analytic --------------------------------------------------------- */

BC_API bc_status bc_analytic_estimate(double range_m, double speed_kmh, double interval_ms,
                                      bc_throughput_estimate* out);
BC_API bc_status bc_frames_for_message(uint64_t size_bytes, uint64_t* out);
BC_API bc_status bc_loop_time(uint64_t size_bytes, double interval_ms, double* out_s);
/* size_bytes == 0 omits the message block; loss_p < 0 omits the advisory. */
BC_API bc_status bc_analytic_report_json(double range_m, double speed_kmh, double interval_ms,
                                         uint64_t size_bytes, double loss_p, char** out_json);

/* ---- scenarios and runs ----------------------------------------------- */

/* BC_ERR_PARSE for malformed JSON (line/column in bc_last_error),
 * BC_ERR_SCHEMA with one "path: message" line per offending field. */
BC_API bc_status bc_scenario_parse(const char* json, size_t len, bc_scenario** out);
BC_API bc_status bc_scenario_load(const char* path, bc_scenario** out);
BC_API bc_status bc_scenario_set_seed(bc_scenario* s, uint64_t seed);
BC_API bc_status bc_scenario_set_policy(bc_scenario* s, bc_policy policy);
BC_API bc_status bc_scenario_digest(const bc_scenario* s, char** out_hex);
BC_API bc_status bc_scenario_json(const bc_scenario* s, char** out_json);
BC_API void bc_scenario_free(bc_scenario* s);

BC_API bc_status bc_run(const bc_scenario* s, int record_events, bc_result** out);
/* Canonical JSON document (sorted keys, stable formatting). */
BC_API bc_status bc_result_json(const bc_result* r, char** out_json);
/* time_s,ap_index,vehicle_id,seq_no,delivered,status; header only without events. */
BC_API bc_status bc_result_events_csv(const bc_result* r, char** out_csv);
BC_API bc_status bc_result_message_loss_pct(const bc_result* r, const char* network, double* out);
BC_API void bc_result_free(bc_result* r);

/* Writes the BCAP capture of every beacon the scenario emits. */
BC_API bc_status bc_capture_write(const bc_scenario* s, const char* path, size_t* records);
/* Renders a BCAP file as CSV: timestamp_us,transmitter,ssid,seq_no,tag,data_len. */
BC_API bc_status bc_capture_dump_csv(const char* path, char** out_csv);

/* ---- sweeps ----------------------------------------------------------- */

/* base_dir resolves a relative "base_path"; NULL means the working directory. */
BC_API bc_status bc_sweep_parse(const char* json, size_t len, const char* base_dir,
                                bc_sweep** out);
BC_API bc_status bc_sweep_load(const char* path, bc_sweep** out);
BC_API size_t bc_sweep_row_count(const bc_sweep* s);
/* Replication r runs with seed base_seed + r. */
BC_API bc_status bc_sweep_set_seed(bc_sweep* s, uint64_t base_seed);
BC_API bc_status bc_sweep_set_policy(bc_sweep* s, bc_policy policy);
/* Runs the grid; `as_json` selects the JSON document instead of CSV. */
BC_API bc_status bc_sweep_run(const bc_sweep* s, unsigned jobs, int as_json, char** out,
                              char** out_summary);
BC_API void bc_sweep_free(bc_sweep* s);

/* ---- service ---------------------------------------------------------- */

BC_API bc_status bc_service_create(const bc_service_options* options, bc_service** out);
/* Binds host:port (port 0 picks one); the bound port is stored in *bound_port. */
BC_API bc_status bc_service_bind(bc_service* s, const char* host, int port, int* bound_port);
/* Serves until bc_service_stop() is called from another thread. */
BC_API bc_status bc_service_listen(bc_service* s);
BC_API bc_status bc_service_start(bc_service* s);
BC_API bc_status bc_service_stop(bc_service* s);
BC_API void bc_service_free(bc_service* s);

#ifdef __cplusplus
}
#endif

#endif /* BEACONCAST_BEACONCAST_H_ */

// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

// Run-management service behind the HTTP/JSON API.
//
//   POST /api/runs[?seed=N&policy=P]      -> 202 {run_id, status}
//   GET  /api/runs/{id}                   -> handle with result
//   GET  /api/runs/{id}/result            -> canonical result document
//   GET  /api/runs/{id}/events?stride=n   -> every n-th offered frame
//   GET  /api/analytic?range_m=&speed_kmh=&interval_ms=&size_bytes=[&loss_p=]
//   GET  /api/health

#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "beaconcast/metrics.hpp"
#include "beaconcast/scenario.hpp"

namespace httplib {
class Server;
}

namespace beaconcast::service {

enum class RunStatus { kQueued, kRunning, kDone, kFailed };

const char* to_string(RunStatus status) noexcept;

struct ServiceOptions {
  unsigned workers = 2;
  std::size_t queue_capacity = 64;  // pending runs before 429
  std::size_t retain = 100;         // finished runs kept (LRU)
};

struct Response {
  int status = 200;
  std::string body;  // JSON
};

using QueryParams = std::multimap<std::string, std::string>;

class RunService {
 public:
  explicit RunService(ServiceOptions options = {});
  ~RunService();

  RunService(const RunService&) = delete;
  RunService& operator=(const RunService&) = delete;

  Response submit(std::string_view body, const QueryParams& query);
  Response get_run(const std::string& run_id);
  Response get_result(const std::string& run_id);
  Response get_events(const std::string& run_id, const QueryParams& query);
  Response analytic(const QueryParams& query) const;
  Response health() const;

  // Blocks until the run leaves the queue and finishes; false if unknown.
  bool wait(const std::string& run_id);

  std::size_t retained() const;

 private:
  struct Entry {
    std::string id;
    RunStatus status = RunStatus::kQueued;
    std::string submitted_at;
    Scenario scenario;
    std::string result;  // canonical JSON, DONE only
    std::string error;   // FAILED only
    std::vector<metrics::FrameEvent> events;
  };

  void work(std::stop_token stop);
  void finish(const std::shared_ptr<Entry>& entry);
  std::shared_ptr<Entry> find(const std::string& run_id);
  nlohmann::json handle_json(const Entry& entry) const;

  ServiceOptions options_;
  mutable std::mutex mu_;
  std::condition_variable_any cv_;
  std::condition_variable_any done_cv_;
  std::deque<std::shared_ptr<Entry>> queue_;
  std::map<std::string, std::shared_ptr<Entry>> runs_;
  std::list<std::string> finished_lru_;  // most recently used at the back
  std::uint64_t next_id_ = 1;
  std::vector<std::jthread> workers_;
};

// httplib front end for a RunService.
class HttpServer {
 public:
  explicit HttpServer(RunService& service);
  ~HttpServer();

  // Binds; port 0 picks a free port. Returns the bound port or -1.
  int bind(const std::string& host, int port);
  // Serves on the bound socket until stop().
  void listen();
  void start();  // listen() on a background thread
  void stop();

 private:
  RunService& service_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace beaconcast::service

// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

#include "beaconcast/service.hpp"

#include <httplib.h>

#include <chrono>
#include <cstdio>
#include <ctime>

#include "beaconcast/engine.hpp"
#include "beaconcast/error.hpp"
#include "beaconcast/scenario_io.hpp"

namespace beaconcast::service {

using nlohmann::json;

const char* to_string(RunStatus status) noexcept {
  switch (status) {
    case RunStatus::kQueued: return "QUEUED";
    case RunStatus::kRunning: return "RUNNING";
    case RunStatus::kDone: return "DONE";
    case RunStatus::kFailed: return "FAILED";
  }
  return "?";
}

namespace {

Response json_response(int status, const json& body) { return {status, canonical_dump(body)}; }

Response error_response(int status, const std::string& message) {
  return json_response(status, {{"error", message}});
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, static_cast<int>(ms));
  return buf;
}

std::optional<std::string> query_value(const QueryParams& q, const std::string& key) {
  auto it = q.find(key);
  if (it == q.end()) return std::nullopt;
  return it->second;
}

// Strict numeric parse: the whole string must be consumed.
std::optional<double> parse_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::optional<std::uint64_t> parse_u64(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

RunService::RunService(ServiceOptions options) : options_(options) {
  const unsigned n = std::max(1u, options_.workers);
  for (unsigned i = 0; i < n; ++i)
    workers_.emplace_back([this](std::stop_token st) { work(st); });
}

RunService::~RunService() {
  for (auto& w : workers_) w.request_stop();
  cv_.notify_all();
  workers_.clear();
}

void RunService::work(std::stop_token stop) {
  for (;;) {
    std::shared_ptr<Entry> entry;
    {
      std::unique_lock lock(mu_);
      if (!cv_.wait(lock, stop, [this] { return !queue_.empty(); })) return;
      entry = queue_.front();
      queue_.pop_front();
      entry->status = RunStatus::kRunning;
    }
    std::string result;
    std::string error;
    std::vector<metrics::FrameEvent> events;
    try {
      auto run = engine::run(entry->scenario, {.record_events = true});
      events = std::move(run.events);
      result = canonical_dump(result_to_json(run));
    } catch (const std::exception& e) {
      error = e.what();
    }
    {
      std::lock_guard lock(mu_);
      if (error.empty()) {
        entry->result = std::move(result);
        entry->events = std::move(events);
        entry->status = RunStatus::kDone;
      } else {
        entry->error = std::move(error);
        entry->status = RunStatus::kFailed;
      }
      finish(entry);
    }
    done_cv_.notify_all();
  }
}

// Caller holds mu_.
void RunService::finish(const std::shared_ptr<Entry>& entry) {
  finished_lru_.push_back(entry->id);
  while (finished_lru_.size() > options_.retain) {
    runs_.erase(finished_lru_.front());
    finished_lru_.pop_front();
  }
}

std::shared_ptr<RunService::Entry> RunService::find(const std::string& run_id) {
  std::lock_guard lock(mu_);
  auto it = runs_.find(run_id);
  if (it == runs_.end()) return nullptr;
  if (it->second->status == RunStatus::kDone || it->second->status == RunStatus::kFailed) {
    finished_lru_.remove(run_id);
    finished_lru_.push_back(run_id);
  }
  return it->second;
}

Response RunService::submit(std::string_view body, const QueryParams& query) {
  Scenario scenario;
  try {
    scenario = parse_scenario(body);
    if (auto seed = query_value(query, "seed")) {
      auto v = parse_u64(*seed);
      if (!v) return error_response(400, "seed must be a non-negative integer");
      scenario.seed = *v;
    }
    if (auto policy = query_value(query, "policy")) scenario.reassembly_policy = codec::parse_policy(*policy);
  } catch (const SchemaError& e) {
    json diags = json::array();
    for (const auto& d : e.diagnostics()) diags.push_back({{"path", d.path}, {"message", d.message}});
    return json_response(422, {{"error", "scenario failed validation"}, {"diagnostics", diags}});
  } catch (const Error& e) {
    return error_response(e.code() == ErrorCode::kParse ? 400 : 422, e.what());
  }

  auto entry = std::make_shared<Entry>();
  entry->scenario = std::move(scenario);
  entry->submitted_at = utc_now();
  {
    std::lock_guard lock(mu_);
    if (queue_.size() >= options_.queue_capacity)
      return error_response(429, "run queue is full; retry later");
    char id[24];
    std::snprintf(id, sizeof id, "run-%06llu", static_cast<unsigned long long>(next_id_++));
    entry->id = id;
    runs_[entry->id] = entry;
    queue_.push_back(entry);
  }
  cv_.notify_one();
  return json_response(202, {{"run_id", entry->id}, {"status", to_string(RunStatus::kQueued)}});
}

json RunService::handle_json(const Entry& e) const {
  json h = {{"run_id", e.id},
            {"status", to_string(e.status)},
            {"submitted_at", e.submitted_at},
            {"scenario_digest", scenario_digest(e.scenario)},
            {"result", nullptr}};
  if (e.status == RunStatus::kDone) h["result"] = json::parse(e.result);
  if (e.status == RunStatus::kFailed) h["error"] = e.error;
  return h;
}

Response RunService::get_run(const std::string& run_id) {
  auto entry = find(run_id);
  if (!entry) return error_response(404, "unknown run '" + run_id + "'");
  std::lock_guard lock(mu_);
  return json_response(200, handle_json(*entry));
}

Response RunService::get_result(const std::string& run_id) {
  auto entry = find(run_id);
  if (!entry) return error_response(404, "unknown run '" + run_id + "'");
  std::lock_guard lock(mu_);
  if (entry->status != RunStatus::kDone)
    return error_response(409, std::string("run is ") + to_string(entry->status));
  return {200, entry->result};
}

Response RunService::get_events(const std::string& run_id, const QueryParams& query) {
  std::uint64_t stride = 1;
  if (auto s = query_value(query, "stride")) {
    auto v = parse_u64(*s);
    if (!v || *v < 1) return error_response(400, "stride must be an integer >= 1");
    stride = *v;
  }
  auto entry = find(run_id);
  if (!entry) return error_response(404, "unknown run '" + run_id + "'");
  std::lock_guard lock(mu_);
  if (entry->status != RunStatus::kDone)
    return error_response(409, std::string("run is ") + to_string(entry->status));
  json events = json::array();
  for (std::size_t i = 0; i < entry->events.size(); i += stride) {
    const auto& ev = entry->events[i];
    events.push_back({{"time_s", sim_to_seconds(ev.time_us)},
                      {"ap_index", ev.ap_index},
                      {"vehicle_id", ev.vehicle_id},
                      {"seq_no", ev.seq_no},
                      {"delivered", ev.delivered},
                      {"status", metrics::to_string(ev.status)}});
  }
  return json_response(200, {{"run_id", run_id},
                             {"stride", stride},
                             {"total_events", entry->events.size()},
                             {"events", events}});
}

Response RunService::analytic(const QueryParams& query) const {
  auto required = [&](const char* key) -> std::optional<double> {
    auto v = query_value(query, key);
    return v ? parse_double(*v) : std::nullopt;
  };
  const auto range = required("range_m");
  const auto speed = required("speed_kmh");
  const auto interval = required("interval_ms");
  if (!range || !speed || !interval)
    return error_response(400, "range_m, speed_kmh and interval_ms are required numbers");
  std::optional<std::uint64_t> size;
  if (auto s = query_value(query, "size_bytes")) {
    size = parse_u64(*s);
    if (!size || *size == 0) return error_response(400, "size_bytes must be a positive integer");
  }
  std::optional<double> loss;
  if (auto s = query_value(query, "loss_p")) {
    loss = parse_double(*s);
    if (!loss || *loss < 0.0 || *loss > 1.0) return error_response(400, "loss_p must be in [0, 1]");
  }
  try {
    return json_response(200, analytic_report(*range, *speed, *interval, size, loss));
  } catch (const Error& e) {
    return error_response(400, e.what());
  }
}

Response RunService::health() const {
  std::lock_guard lock(mu_);
  return json_response(200, {{"status", "ok"},
                             {"queued", queue_.size()},
                             {"retained", finished_lru_.size()}});
}

bool RunService::wait(const std::string& run_id) {
  std::unique_lock lock(mu_);
  auto it = runs_.find(run_id);
  if (it == runs_.end()) return false;
  auto entry = it->second;
  done_cv_.wait(lock, [&] {
    return entry->status == RunStatus::kDone || entry->status == RunStatus::kFailed;
  });
  return true;
}

std::size_t RunService::retained() const {
  std::lock_guard lock(mu_);
  return finished_lru_.size();
}

HttpServer::HttpServer(RunService& service)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
  auto reply = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  auto params = [](const httplib::Request& req) {
    QueryParams q;
    for (const auto& [k, v] : req.params) q.emplace(k, v);
    return q;
  };
  server_->set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  server_->Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
  server_->Post("/api/runs", [this, reply, params](const httplib::Request& req, httplib::Response& res) {
    reply(res, service_.submit(req.body, params(req)));
  });
  server_->Get(R"(/api/runs/([^/]+))", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, service_.get_run(req.matches[1]));
  });
  server_->Get(R"(/api/runs/([^/]+)/result)",
               [this, reply](const httplib::Request& req, httplib::Response& res) {
                 reply(res, service_.get_result(req.matches[1]));
               });
  server_->Get(R"(/api/runs/([^/]+)/events)",
               [this, reply, params](const httplib::Request& req, httplib::Response& res) {
                 reply(res, service_.get_events(req.matches[1], params(req)));
               });
  server_->Get("/api/analytic", [this, reply, params](const httplib::Request& req, httplib::Response& res) {
    reply(res, service_.analytic(params(req)));
  });
  server_->Get("/api/health", [this, reply](const httplib::Request&, httplib::Response& res) {
    reply(res, service_.health());
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

void HttpServer::listen() { server_->listen_after_bind(); }

void HttpServer::start() {
  thread_ = std::thread([this] { listen(); });
  server_->wait_until_ready();
}

void HttpServer::stop() {
  server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace beaconcast::service

// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

#include "beaconcast/sweep.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <mutex>
#include <thread>

#include "beaconcast/engine.hpp"
#include "beaconcast/error.hpp"
#include "beaconcast/metrics.hpp"
#include "beaconcast/scenario_io.hpp"

namespace beaconcast::sweep {

using nlohmann::json;

void SweepSpec::validate() const {
  std::vector<Diagnostic> issues;
  if (message_sizes_bytes.empty()) issues.push_back({"/message_sizes_bytes", "must not be empty"});
  if (loss_ps.empty()) issues.push_back({"/loss_ps", "must not be empty"});
  if (replications < 1) issues.push_back({"/replications", "must be >= 1"});
  for (std::size_t i = 0; i < message_sizes_bytes.size(); ++i) {
    const auto s = message_sizes_bytes[i];
    if (s < 1 + base.aps.front().message.topic.size() || s > codec::kMaxMessageSize)
      issues.push_back({"/message_sizes_bytes/" + std::to_string(i),
                        "must be within [1, 16384000] bytes and hold the topic header"});
  }
  for (std::size_t i = 0; i < loss_ps.size(); ++i)
    if (!(loss_ps[i] >= 0.0 && loss_ps[i] <= 1.0))
      issues.push_back({"/loss_ps/" + std::to_string(i), "must be within [0, 1]"});
  if (!issues.empty()) throw SchemaError(std::move(issues));
}

SweepSpec parse_sweep(std::string_view text, const std::string& base_dir) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("malformed sweep JSON: ") + e.what());
  }
  std::vector<Diagnostic> issues;
  if (!doc.is_object()) throw SchemaError(std::vector<Diagnostic>{{"", "sweep document must be an object"}});
  for (const auto& [k, _] : doc.items())
    if (k != "$comment" && k != "schema_version" && k != "base" && k != "base_path" && k != "message_sizes_bytes" &&
        k != "loss_ps" && k != "replications" && k != "base_seed")
      issues.push_back({"/" + k, "unknown field"});

  SweepSpec spec;
  json base;
  if (doc.contains("base")) {
    base = doc["base"];
  } else if (doc.contains("base_path") && doc["base_path"].is_string()) {
    std::filesystem::path p = doc["base_path"].get<std::string>();
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    try {
      base = json::parse(read_text_file(p.string()));
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kParse, "malformed base scenario '" + p.string() + "': " + e.what());
    }
  } else {
    issues.push_back({"/base", "either base (inline scenario) or base_path is required"});
  }

  auto read_list = [&](const char* key, auto& out) {
    if (!doc.contains(key) || !doc[key].is_array()) {
      issues.push_back({std::string("/") + key, "must be an array of numbers"});
      return;
    }
    for (std::size_t i = 0; i < doc[key].size(); ++i) {
      const json& v = doc[key][i];
      if (!v.is_number()) {
        issues.push_back({std::string("/") + key + "/" + std::to_string(i), "must be a number"});
        continue;
      }
      out.push_back(v.get<typename std::decay_t<decltype(out)>::value_type>());
    }
  };
  read_list("message_sizes_bytes", spec.message_sizes_bytes);
  read_list("loss_ps", spec.loss_ps);
  if (doc.contains("replications")) {
    if (doc["replications"].is_number_unsigned())
      spec.replications = doc["replications"].get<std::uint32_t>();
    else
      issues.push_back({"/replications", "must be a positive integer"});
  }
  if (!issues.empty()) throw SchemaError(std::move(issues));

  try {
    spec.base = scenario_from_json(base);
  } catch (const SchemaError& e) {
    std::vector<Diagnostic> nested;
    for (const auto& d : e.diagnostics()) nested.push_back({"/base" + d.path, d.message});
    throw SchemaError(std::move(nested));
  }
  spec.base_seed = spec.base.seed;
  if (doc.contains("base_seed")) {
    if (!doc["base_seed"].is_number_unsigned())
      throw SchemaError(std::vector<Diagnostic>{{"/base_seed", "must be a non-negative integer"}});
    spec.base_seed = doc["base_seed"].get<std::uint64_t>();
  }
  spec.validate();
  return spec;
}

Scenario point_scenario(const SweepSpec& spec, double loss_p, std::uint64_t size_bytes,
                        std::uint32_t replication) {
  Scenario sc = spec.base;
  for (auto& ap : sc.aps) {
    ap.message.text.reset();
    ap.message.size_bytes = size_bytes;
    ap.channel.loss_p = loss_p;
  }
  sc.seed = spec.base_seed + replication;
  return sc;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned jobs,
                                const std::function<void(std::size_t, std::size_t)>& progress) {
  spec.validate();
  std::vector<SweepRow> rows;
  for (double loss : spec.loss_ps)
    for (auto size : spec.message_sizes_bytes)
      for (std::uint32_t r = 0; r < spec.replications; ++r)
        rows.push_back({loss, size, std::nullopt, r, spec.base_seed + r});

  const std::string network = spec.base.aps.front().ssid;
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex mu;
  std::exception_ptr failure;

  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      SweepRow& row = rows[i];
      try {
        const auto result =
            engine::run(point_scenario(spec, row.loss_p, row.size_bytes, row.replication));
        row.message_loss_pct = result.aggregate.message_loss_pct.at(network);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        next = rows.size();
        return;
      }
      const std::size_t n = ++done;
      if (progress) {
        std::lock_guard lock(mu);
        progress(n, rows.size());
      }
    }
  };

  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(rows.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::vector<SweepPoint> summarize(const std::vector<SweepRow>& rows) {
  std::vector<SweepPoint> points;
  for (const auto& row : rows) {
    if (points.empty() || points.back().loss_p != row.loss_p ||
        points.back().size_bytes != row.size_bytes)
      points.push_back({row.loss_p, row.size_bytes, 0.0, 0});
    if (row.message_loss_pct) {
      SweepPoint& p = points.back();
      p.mean_loss_pct += *row.message_loss_pct;
      ++p.replications;
    }
  }
  for (auto& p : points)
    if (p.replications > 0) p.mean_loss_pct /= p.replications;
  return points;
}

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

std::string rows_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "loss_p,size_bytes,message_loss_pct,replication,seed\n";
  for (const auto& r : rows) {
    out += fmt("%.6g", r.loss_p) + ',' + std::to_string(r.size_bytes) + ',' +
           (r.message_loss_pct ? fmt("%.6f", *r.message_loss_pct) : std::string()) + ',' +
           std::to_string(r.replication) + ',' + std::to_string(r.seed) + '\n';
  }
  return out;
}

json sweep_to_json(const std::vector<SweepRow>& rows) {
  json jrows = json::array();
  for (const auto& r : rows)
    jrows.push_back({{"loss_p", r.loss_p},
                     {"size_bytes", r.size_bytes},
                     {"message_loss_pct", r.message_loss_pct ? json(*r.message_loss_pct) : json(nullptr)},
                     {"replication", r.replication},
                     {"seed", r.seed}});
  json points = json::array();
  for (const auto& p : summarize(rows))
    points.push_back({{"loss_p", p.loss_p},
                      {"size_bytes", p.size_bytes},
                      {"mean_message_loss_pct", p.mean_loss_pct},
                      {"replications", p.replications}});
  return {{"rows", jrows}, {"points", points}};
}

}  // namespace beaconcast::sweep

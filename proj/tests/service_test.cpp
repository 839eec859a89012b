// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <chrono>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "beaconcast/engine.hpp"
#include "beaconcast/scenario_io.hpp"
#include "beaconcast/service.hpp"

namespace beaconcast::service {
namespace {

using nlohmann::json;

std::string reference_text() { return read_text_file(BEACONCAST_SCENARIO_DIR "/reference.json"); }

std::string small_scenario_text() {
  json doc = json::parse(reference_text());
  doc["duration_s"] = 120;
  doc["traffic"]["count"] = 10;
  return doc.dump();
}

std::string submit_and_wait(RunService& svc, const std::string& body, const QueryParams& q = {}) {
  const Response r = svc.submit(body, q);
  EXPECT_EQ(r.status, 202) << r.body;
  const std::string id = json::parse(r.body).at("run_id");
  EXPECT_TRUE(svc.wait(id));
  return id;
}

TEST(Service, SubmitReturnsQueuedHandle) {
  RunService svc;
  const Response r = svc.submit(small_scenario_text(), {});
  ASSERT_EQ(r.status, 202);
  const json doc = json::parse(r.body);
  EXPECT_EQ(doc["status"], "QUEUED");
  const std::string id = doc["run_id"];
  svc.wait(id);
  const json handle = json::parse(svc.get_run(id).body);
  EXPECT_EQ(handle["status"], "DONE");
  EXPECT_EQ(handle["scenario_digest"], scenario_digest(parse_scenario(small_scenario_text())));
  EXPECT_TRUE(handle["result"].is_object());
}

TEST(Service, MalformedBodyIs400) {
  RunService svc;
  EXPECT_EQ(svc.submit("{\"road\": ", {}).status, 400);
  EXPECT_EQ(svc.submit(small_scenario_text(), {{"seed", "-4"}}).status, 400);
}

TEST(Service, InvalidScenarioIs422WithDiagnostics) {
  RunService svc;
  json doc = json::parse(small_scenario_text());
  doc["aps"][0]["channel"]["loss_p"] = 1.5;
  const Response r = svc.submit(doc.dump(), {});
  ASSERT_EQ(r.status, 422);
  const json body = json::parse(r.body);
  ASSERT_FALSE(body["diagnostics"].empty());
  EXPECT_EQ(body["diagnostics"][0]["path"], "/aps/0/channel/loss_p");
}

TEST(Service, UnknownRunIs404) {
  RunService svc;
  EXPECT_EQ(svc.get_run("run-999999").status, 404);
  EXPECT_EQ(svc.get_result("run-999999").status, 404);
  EXPECT_EQ(svc.get_events("run-999999", {}).status, 404);
}

TEST(Service, FullQueueIs429) {
  RunService svc({1, 1, 10});
  json slow = json::parse(reference_text());
  slow["traffic"]["count"] = 3000;
  slow["duration_s"] = 7000;
  const std::string first = json::parse(svc.submit(slow.dump(), {}).body)["run_id"];
  // Once the single worker holds the slow run, one more fills the queue.
  for (int i = 0; i < 2000; ++i) {
    if (json::parse(svc.get_run(first).body)["status"] == "RUNNING") break;
    std::this_thread::sleep_for(std::chrono::milliseconds(1));
  }
  ASSERT_EQ(json::parse(svc.get_run(first).body)["status"], "RUNNING");
  EXPECT_EQ(svc.submit(small_scenario_text(), {}).status, 202);
  EXPECT_EQ(svc.submit(small_scenario_text(), {}).status, 429);
}

TEST(Service, ResultNotReadyIs409) {
  RunService svc({1, 4, 10});
  json slow = json::parse(reference_text());
  slow["traffic"]["count"] = 3000;
  slow["duration_s"] = 7000;
  svc.submit(slow.dump(), {});
  const std::string id = json::parse(svc.submit(small_scenario_text(), {}).body)["run_id"];
  EXPECT_EQ(svc.get_result(id).status, 409);
  EXPECT_EQ(svc.get_events(id, {}).status, 409);
}

TEST(Service, ResultMatchesEngineByteForByte) {
  RunService svc;
  const std::string id = submit_and_wait(svc, small_scenario_text(), {{"seed", "77"}});
  Scenario sc = parse_scenario(small_scenario_text());
  sc.seed = 77;
  const Response r = svc.get_result(id);
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(r.body, canonical_dump(result_to_json(engine::run(sc))));
}

TEST(Service, EventStride) {
  RunService svc;
  const std::string id = submit_and_wait(svc, small_scenario_text());
  Scenario sc = parse_scenario(small_scenario_text());
  const auto full = engine::run(sc, {true});
  const std::size_t total = full.events.size();
  ASSERT_GT(total, 10u);

  const json all = json::parse(svc.get_events(id, {{"stride", "1"}}).body);
  EXPECT_EQ(all["total_events"], total);
  ASSERT_EQ(all["events"].size(), total);
  for (std::size_t i = 0; i < total; i += total / 7) {
    EXPECT_EQ(all["events"][i]["vehicle_id"], full.events[i].vehicle_id);
    EXPECT_EQ(all["events"][i]["seq_no"], full.events[i].seq_no);
    EXPECT_EQ(all["events"][i]["delivered"], full.events[i].delivered);
  }

  const json one = json::parse(svc.get_events(id, {{"stride", std::to_string(total)}}).body);
  EXPECT_EQ(one["events"].size(), 1u);
  const json three = json::parse(svc.get_events(id, {{"stride", "3"}}).body);
  EXPECT_EQ(three["events"].size(), (total + 2) / 3);

  EXPECT_EQ(svc.get_events(id, {{"stride", "0"}}).status, 400);
  EXPECT_EQ(svc.get_events(id, {{"stride", "x"}}).status, 400);
}

TEST(Service, PolicyQueryParameter) {
  RunService svc;
  const std::string id = submit_and_wait(svc, small_scenario_text(), {{"policy", "strict"}});
  EXPECT_EQ(json::parse(svc.get_run(id).body)["result"]["policy"], "strict");
  EXPECT_EQ(svc.submit(small_scenario_text(), {{"policy", "lazy"}}).status, 422);
}

TEST(Service, RetainsOnlyRecentRuns) {
  RunService svc({2, 64, 3});
  std::vector<std::string> ids;
  for (int i = 0; i < 5; ++i) ids.push_back(submit_and_wait(svc, small_scenario_text()));
  EXPECT_EQ(svc.retained(), 3u);
  EXPECT_EQ(svc.get_run(ids[0]).status, 404);
  EXPECT_EQ(svc.get_run(ids[4]).status, 200);
}

TEST(Service, AnalyticEndpoint) {
  RunService svc;
  const Response r =
      svc.analytic({{"range_m", "90"}, {"speed_kmh", "50"}, {"interval_ms", "10"}});
  ASSERT_EQ(r.status, 200);
  EXPECT_NEAR(json::parse(r.body)["exact"]["time_to_ap_s"].get<double>(), 6.48, 1e-9);
  EXPECT_EQ(svc.analytic({{"range_m", "90"}}).status, 400);
  EXPECT_EQ(json::parse(svc.health().body)["status"], "ok");
}

TEST(Service, HttpRoundTrip) {
  RunService svc;
  HttpServer server(svc);
  const int port = server.bind("127.0.0.1", 0);
  ASSERT_GT(port, 0);
  server.start();

  httplib::Client client("127.0.0.1", port);
  auto post = client.Post("/api/runs?seed=5", small_scenario_text(), "application/json");
  ASSERT_TRUE(post);
  ASSERT_EQ(post->status, 202);
  const std::string id = json::parse(post->body)["run_id"];
  svc.wait(id);

  auto result = client.Get("/api/runs/" + id + "/result");
  ASSERT_TRUE(result);
  EXPECT_EQ(result->status, 200);
  Scenario sc = parse_scenario(small_scenario_text());
  sc.seed = 5;
  EXPECT_EQ(result->body, canonical_dump(result_to_json(engine::run(sc))));

  auto events = client.Get("/api/runs/" + id + "/events?stride=50");
  ASSERT_TRUE(events);
  EXPECT_EQ(json::parse(events->body)["stride"], 50);

  auto missing = client.Get("/api/runs/nope");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  auto bad = client.Post("/api/runs", "not json", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
  auto health = client.Get("/api/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  server.stop();
}

}  // namespace
}  // namespace beaconcast::service

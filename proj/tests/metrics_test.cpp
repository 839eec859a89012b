// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "beaconcast/engine.hpp"
#include "beaconcast/error.hpp"
#include "beaconcast/metrics.hpp"
#include "beaconcast/scenario_io.hpp"
#include "test_support.hpp"

namespace beaconcast::metrics {
namespace {

using testing::line_scenario;
using testing::make_vehicle;

mobility::Vehicle subscriber(std::set<std::string> topics) {
  mobility::Vehicle v;
  v.subscribed_topics = std::move(topics);
  return v;
}

TEST(TopicFilter, Examples) {
  const Message m = Message::compose("restaurant", Bytes{1, 2, 3});
  EXPECT_TRUE(topic_filter(m, subscriber({})));
  EXPECT_FALSE(topic_filter(m, subscriber({"fuel"})));
  EXPECT_TRUE(topic_filter(m, subscriber({"restaurant", "fuel"})));
}

TEST(TopicFilter, HeaderLayout) {
  const Message m = Message::compose("fuel", Bytes{9});
  ASSERT_EQ(m.payload.size(), 1u + 4u + 1u);
  EXPECT_EQ(m.payload[0], 4);
  EXPECT_EQ(m.topic(), "fuel");
  EXPECT_EQ(m.body().size(), 1u);
}

TEST(MessageLoss, UndefinedWithoutEntries) {
  std::vector<VehicleStats> none(3);
  try {
    message_loss_pct(none, "net");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUndefinedMetric);
  }
}

TEST(MessageLoss, CountsVehiclesNotPasses) {
  std::vector<VehicleStats> vs(4);
  for (auto& v : vs) {
    NetworkOutcome o;
    o.network = "net";
    o.passes = 1;
    v.networks.push_back(o);
  }
  vs[0].networks[0].completed_s = 3.0;
  vs[1].networks[0].completed_s = 4.0;
  vs[2].networks[0].passes = 3;  // re-entries do not add weight
  EXPECT_DOUBLE_EQ(message_loss_pct(vs, "net"), 50.0);
}

TEST(MessageLoss, AllComplete) {
  auto sc = line_scenario(1000, 500, 2000, 0.0,
                          {make_vehicle(0, 0, 60), make_vehicle(1, 3, 65), make_vehicle(2, 9, 70)}, 80);
  EXPECT_DOUBLE_EQ(message_loss_pct(engine::run(sc), "net"), 0.0);
}

TEST(MessageLoss, TotalLoss) {
  auto sc = line_scenario(1000, 500, 2000, 1.0, {make_vehicle(0, 0, 60), make_vehicle(1, 3, 65)}, 80);
  const auto r = engine::run(sc);
  EXPECT_DOUBLE_EQ(message_loss_pct(r, "net"), 100.0);
  for (const auto& v : r.per_vehicle) EXPECT_EQ(v.frames_received, 0u);
}

TEST(MessageLoss, ReferenceScenarioSmallMessage) {
  auto sc = parse_scenario(read_text_file(BEACONCAST_SCENARIO_DIR "/reference.json"));
  ASSERT_GE(sc.traffic.count, 200u);
  sc.aps[0].channel.loss_p = 0.05;
  sc.aps[0].message.size_bytes = 16 * 1024;
  const auto r = engine::run(sc);
  EXPECT_DOUBLE_EQ(message_loss_pct(r, sc.aps[0].ssid), 0.0);
}

TEST(Aggregate, EqualsFoldOfVehicles) {
  auto sc = line_scenario(1500, 700, 40'000, 0.2, {}, 200);
  sc.traffic.kind = mobility::TrafficModel::Kind::kPoisson;
  sc.traffic.count = 40;
  const auto r = engine::run(sc);
  std::uint64_t completed = 0, dropped = 0, received = 0, lost = 0, entered = 0;
  for (const auto& v : r.per_vehicle) {
    completed += v.completed_messages;
    dropped += v.dropped_messages;
    received += v.frames_received;
    lost += v.frames_lost;
    entered += v.find("net") != nullptr;
  }
  const auto& a = r.aggregate;
  EXPECT_EQ(a.vehicles, r.per_vehicle.size());
  EXPECT_EQ(a.total_completed_messages, completed);
  EXPECT_EQ(a.total_dropped_messages, dropped);
  EXPECT_DOUBLE_EQ(a.frames_received_per_car, static_cast<double>(received) / 40);
  EXPECT_DOUBLE_EQ(a.frames_lost_per_car, static_cast<double>(lost) / 40);
  EXPECT_EQ(a.vehicles_entered.at("net"), entered);
  EXPECT_EQ(a.total_frames_sent, r.per_ap[0].frames_sent);
  ASSERT_TRUE(a.message_loss_pct.at("net"));
  EXPECT_DOUBLE_EQ(*a.message_loss_pct.at("net"), message_loss_pct(r, "net"));
  EXPECT_GE(*a.message_loss_pct.at("net"), 0.0);
  EXPECT_LE(*a.message_loss_pct.at("net"), 100.0);
}

TEST(Aggregate, NetworkNobodyEnteredIsNull) {
  auto sc = line_scenario(1000, 500, 2000, 0.0, {make_vehicle(0, 0, 60)}, 80);
  auto far = sc.aps[0];
  far.ssid = "remote";
  far.position = {500, 5000};
  far.bssid = testing::test_bssid(9);
  sc.aps.push_back(far);
  const auto r = engine::run(sc);
  EXPECT_FALSE(r.aggregate.message_loss_pct.at("remote"));
  EXPECT_THROW(message_loss_pct(r, "remote"), Error);
}

TEST(Statuses, Names) {
  EXPECT_STREQ(to_string(EventStatus::kCompleted), "COMPLETED");
  EXPECT_EQ(from_reassembly(codec::ReassemblyStatus::kReset), EventStatus::kReset);
}

}  // namespace
}  // namespace beaconcast::metrics

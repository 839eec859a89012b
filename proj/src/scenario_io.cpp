// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

#include "beaconcast/scenario_io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "beaconcast/analytic.hpp"
#include "beaconcast/error.hpp"

namespace beaconcast {

using nlohmann::json;

namespace {

// Typed field access that records a diagnostic instead of throwing, so one
// pass reports every problem in the document.
class Reader {
 public:
  explicit Reader(std::vector<Diagnostic>& issues) : issues_(issues) {}

  void fail(const std::string& path, const std::string& message) {
    issues_.push_back({path, message});
  }

  bool object(const json& j, const std::string& path) {
    if (j.is_object()) return true;
    fail(path, "must be an object");
    return false;
  }

  void allow_only(const json& obj, const std::string& path,
                  std::initializer_list<std::string_view> keys) {
    for (const auto& [k, _] : obj.items()) {
      bool known = false;
      for (auto allowed : keys) known = known || k == allowed;
      if (!known) fail(path + "/" + k, "unknown field");
    }
  }

  const json* find(const json& obj, std::string_view key) {
    auto it = obj.find(std::string(key));
    return it == obj.end() ? nullptr : &*it;
  }

  double number(const json& obj, std::string_view key, const std::string& path, double fallback,
                bool required = false) {
    const json* v = find(obj, key);
    const std::string p = path + "/" + std::string(key);
    if (!v) {
      if (required) fail(p, "is required");
      return fallback;
    }
    if (!v->is_number()) {
      fail(p, "must be a number, got " + std::string(v->type_name()));
      return fallback;
    }
    return v->get<double>();
  }

  std::uint64_t unsigned_int(const json& obj, std::string_view key, const std::string& path,
                             std::uint64_t fallback, std::uint64_t max, bool required = false) {
    const json* v = find(obj, key);
    const std::string p = path + "/" + std::string(key);
    if (!v) {
      if (required) fail(p, "is required");
      return fallback;
    }
    if (v->is_number_unsigned() || (v->is_number_integer() && v->get<std::int64_t>() >= 0)) {
      const auto value = v->get<std::uint64_t>();
      if (value > max) {
        fail(p, "must be at most " + std::to_string(max) + ", got " + std::to_string(value));
        return fallback;
      }
      return value;
    }
    if (v->is_number_float()) {
      const double d = v->get<double>();
      if (d >= 0.0 && d == static_cast<double>(static_cast<std::uint64_t>(d)) &&
          d <= static_cast<double>(max))
        return static_cast<std::uint64_t>(d);
    }
    fail(p, "must be a non-negative integer, got " + v->dump());
    return fallback;
  }

  std::string string(const json& obj, std::string_view key, const std::string& path,
                     const std::string& fallback, bool required = false) {
    const json* v = find(obj, key);
    const std::string p = path + "/" + std::string(key);
    if (!v) {
      if (required) fail(p, "is required");
      return fallback;
    }
    if (!v->is_string()) {
      fail(p, "must be a string, got " + std::string(v->type_name()));
      return fallback;
    }
    return v->get<std::string>();
  }

  std::optional<Point> point(const json& v, const std::string& path) {
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
      return Point{v[0].get<double>(), v[1].get<double>()};
    fail(path, "must be a [x, y] pair of numbers");
    return std::nullopt;
  }

  std::set<std::string> topics(const json& obj, const std::string& path) {
    std::set<std::string> out;
    const json* v = find(obj, "subscribed_topics");
    if (!v) return out;
    const std::string p = path + "/subscribed_topics";
    if (!v->is_array()) {
      fail(p, "must be an array of strings");
      return out;
    }
    for (std::size_t i = 0; i < v->size(); ++i) {
      if (!(*v)[i].is_string())
        fail(p + "/" + std::to_string(i), "must be a string");
      else
        out.insert((*v)[i].get<std::string>());
    }
    return out;
  }

 private:
  std::vector<Diagnostic>& issues_;
};

mobility::Road read_road(Reader& r, const json& doc) {
  const json* road = r.find(doc, "road");
  if (!road) {
    r.fail("/road", "is required");
    return {};
  }
  if (!r.object(*road, "/road")) return {};
  r.allow_only(*road, "/road", {"points"});
  const json* pts = r.find(*road, "points");
  if (!pts || !pts->is_array()) {
    r.fail("/road/points", "must be an array of [x, y] points");
    return {};
  }
  std::vector<Point> points;
  bool ok = true;
  for (std::size_t i = 0; i < pts->size(); ++i) {
    auto p = r.point((*pts)[i], "/road/points/" + std::to_string(i));
    if (p)
      points.push_back(*p);
    else
      ok = false;
  }
  if (!ok) return {};
  try {
    return mobility::Road(std::move(points));
  } catch (const Error& e) {
    r.fail("/road/points", e.what());
    return {};
  }
}

mobility::TrafficModel read_traffic(Reader& r, const json& doc) {
  mobility::TrafficModel t;
  const json* traffic = r.find(doc, "traffic");
  if (!traffic) {
    r.fail("/traffic", "is required");
    return t;
  }
  const std::string base = "/traffic";
  if (!r.object(*traffic, base)) return t;
  r.allow_only(*traffic, base,
               {"kind", "count", "headway_s", "rate_per_s", "start_s", "speed_kmh_min",
                "speed_kmh_max", "subscribed_topics", "vehicles"});
  const std::string kind = r.string(*traffic, "kind", base, "uniform_flow");
  if (kind == "uniform_flow")
    t.kind = mobility::TrafficModel::Kind::kUniformFlow;
  else if (kind == "poisson")
    t.kind = mobility::TrafficModel::Kind::kPoisson;
  else if (kind == "explicit")
    t.kind = mobility::TrafficModel::Kind::kExplicit;
  else
    r.fail(base + "/kind", "must be one of uniform_flow, poisson, explicit; got '" + kind + "'");

  t.count = static_cast<std::uint32_t>(
      r.unsigned_int(*traffic, "count", base, 1, 10'000'000,
                     t.kind != mobility::TrafficModel::Kind::kExplicit));
  t.headway_s = r.number(*traffic, "headway_s", base, t.headway_s);
  t.rate_per_s = r.number(*traffic, "rate_per_s", base, t.rate_per_s);
  t.start_s = r.number(*traffic, "start_s", base, t.start_s);
  t.speed_kmh_min = r.number(*traffic, "speed_kmh_min", base, t.speed_kmh_min);
  t.speed_kmh_max = r.number(*traffic, "speed_kmh_max", base, t.speed_kmh_max);
  t.subscribed_topics = r.topics(*traffic, base);

  if (const json* vs = r.find(*traffic, "vehicles")) {
    if (!vs->is_array()) {
      r.fail(base + "/vehicles", "must be an array");
    } else {
      for (std::size_t i = 0; i < vs->size(); ++i) {
        const std::string p = base + "/vehicles/" + std::to_string(i);
        const json& vj = (*vs)[i];
        if (!r.object(vj, p)) continue;
        r.allow_only(vj, p, {"id", "spawn_time_s", "speed_kmh", "speed_mps", "subscribed_topics"});
        mobility::Vehicle v;
        v.id = static_cast<std::uint32_t>(r.unsigned_int(vj, "id", p, i, 0xFFFFFFFFu));
        v.spawn_time_s = r.number(vj, "spawn_time_s", p, 0.0);
        if (r.find(vj, "speed_mps"))
          v.speed_mps = r.number(vj, "speed_mps", p, 0.0);
        else
          v.speed_mps = mobility::kmh_to_mps(r.number(vj, "speed_kmh", p, 0.0, true));
        v.subscribed_topics = r.topics(vj, p);
        t.vehicles.push_back(std::move(v));
      }
    }
  }
  return t;
}

AccessPointSpec read_ap(Reader& r, const json& aj, std::size_t index, double duration_s) {
  const std::string base = "/aps/" + std::to_string(index);
  AccessPointSpec ap;
  // Locally administered default: 02:00:00:00:hi:lo.
  ap.bssid.octets = {0x02, 0, 0, 0, static_cast<std::uint8_t>((index + 1) >> 8),
                     static_cast<std::uint8_t>((index + 1) & 0xFF)};
  ap.schedule.end_s = duration_s;
  if (!r.object(aj, base)) return ap;
  r.allow_only(aj, base, {"position", "ssid", "bssid", "loop_phase", "schedule", "channel", "message"});

  if (const json* pos = r.find(aj, "position")) {
    if (auto p = r.point(*pos, base + "/position")) ap.position = *p;
  } else {
    r.fail(base + "/position", "is required");
  }
  ap.ssid = r.string(aj, "ssid", base, "", true);
  if (r.find(aj, "bssid")) {
    const std::string text = r.string(aj, "bssid", base, "");
    try {
      ap.bssid = Bssid::parse(text);
    } catch (const Error& e) {
      r.fail(base + "/bssid", e.what());
    }
  }
  ap.loop_phase = static_cast<std::uint32_t>(r.unsigned_int(aj, "loop_phase", base, 0, 65535));

  if (const json* s = r.find(aj, "schedule"); s && r.object(*s, base + "/schedule")) {
    const std::string p = base + "/schedule";
    r.allow_only(*s, p, {"interval_ms", "start_s", "end_s"});
    ap.schedule.interval_ms = static_cast<std::uint32_t>(
        r.unsigned_int(*s, "interval_ms", p, channel::kDefaultIntervalMs, 0xFFFFFFFFu));
    ap.schedule.start_s = r.number(*s, "start_s", p, 0.0);
    ap.schedule.end_s = r.number(*s, "end_s", p, duration_s);
  }
  if (const json* c = r.find(aj, "channel"); c && r.object(*c, base + "/channel")) {
    const std::string p = base + "/channel";
    r.allow_only(*c, p, {"range_m", "loss_p"});
    ap.channel.range_m = r.number(*c, "range_m", p, channel::kDefaultRangeM);
    ap.channel.loss_p = r.number(*c, "loss_p", p, 0.0);
  }
  if (const json* m = r.find(aj, "message"); m && r.object(*m, base + "/message")) {
    const std::string p = base + "/message";
    r.allow_only(*m, p, {"size_bytes", "topic", "content_seed", "text"});
    ap.message.topic = r.string(*m, "topic", p, "");
    ap.message.content_seed = r.unsigned_int(*m, "content_seed", p, 0, UINT64_MAX);
    if (r.find(*m, "text")) {
      ap.message.text = r.string(*m, "text", p, "");
      const std::uint64_t derived = 1 + ap.message.topic.size() + ap.message.text->size();
      const std::uint64_t given = r.unsigned_int(*m, "size_bytes", p, derived, UINT64_MAX);
      if (given != derived)
        r.fail(p + "/size_bytes", "disagrees with the text length (" + std::to_string(derived) +
                                      " bytes including the topic header)");
      ap.message.size_bytes = derived;
    } else {
      ap.message.size_bytes = r.unsigned_int(*m, "size_bytes", p, ap.message.size_bytes, UINT64_MAX);
    }
  }
  return ap;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json point_json(Point p) { return json::array({p.x, p.y}); }

json topics_json(const std::set<std::string>& topics) {
  json a = json::array();
  for (const auto& t : topics) a.push_back(t);
  return a;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

Scenario scenario_from_json(const json& doc) {
  std::vector<Diagnostic> issues;
  Reader r(issues);
  Scenario sc;
  if (!r.object(doc, "")) throw SchemaError(std::move(issues));
  r.allow_only(doc, "", {"$comment", "schema_version", "seed", "duration_s", "reassembly_policy", "road",
                         "traffic", "aps"});

  const auto version = r.unsigned_int(doc, "schema_version", "", 0, 1000, true);
  if (r.find(doc, "schema_version") && version != kSchemaVersion)
    r.fail("/schema_version", "unsupported version " + std::to_string(version) + " (expected 1)");
  sc.seed = r.unsigned_int(doc, "seed", "", 0, UINT64_MAX);
  sc.duration_s = r.number(doc, "duration_s", "", 0.0, true);
  const std::string policy = r.string(doc, "reassembly_policy", "", "accumulate");
  try {
    sc.reassembly_policy = codec::parse_policy(policy);
  } catch (const Error& e) {
    r.fail("/reassembly_policy", e.what());
  }
  sc.road = read_road(r, doc);
  sc.traffic = read_traffic(r, doc);
  if (const json* aps = r.find(doc, "aps")) {
    if (!aps->is_array())
      r.fail("/aps", "must be an array");
    else
      for (std::size_t i = 0; i < aps->size(); ++i)
        sc.aps.push_back(read_ap(r, (*aps)[i], i, sc.duration_s));
  } else {
    r.fail("/aps", "is required");
  }
  if (issues.empty()) {
    sc.validate();
    return sc;
  }
  // Report semantic problems alongside structural ones, except where a
  // structural diagnostic already covers the same field or its parent.
  try {
    sc.validate();
  } catch (const SchemaError& e) {
    for (const auto& d : e.diagnostics()) {
      const bool covered = std::any_of(issues.begin(), issues.end(), [&](const Diagnostic& s) {
        return d.path == s.path || d.path.starts_with(s.path + "/") ||
               s.path.starts_with(d.path + "/");
      });
      if (!covered) issues.push_back(d);
    }
  }
  throw SchemaError(std::move(issues));
}

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorCode::kParse, "line " + std::to_string(line) + ", column " +
                                       std::to_string(col) + ": malformed JSON (" + e.what() + ")");
  }
  return scenario_from_json(doc);
}

json scenario_to_json(const Scenario& sc) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["seed"] = sc.seed;
  doc["duration_s"] = sc.duration_s;
  doc["reassembly_policy"] = codec::to_string(sc.reassembly_policy);
  json pts = json::array();
  for (const auto& p : sc.road.points()) pts.push_back(point_json(p));
  doc["road"] = {{"points", pts}};

  const auto& t = sc.traffic;
  json traffic;
  traffic["kind"] = mobility::to_string(t.kind);
  if (t.kind == mobility::TrafficModel::Kind::kExplicit) {
    json vs = json::array();
    for (const auto& v : t.vehicles)
      vs.push_back({{"id", v.id},
                    {"spawn_time_s", v.spawn_time_s},
                    {"speed_mps", v.speed_mps},
                    {"subscribed_topics", topics_json(v.subscribed_topics)}});
    traffic["vehicles"] = vs;
  } else {
    traffic["count"] = t.count;
    traffic["start_s"] = t.start_s;
    traffic["speed_kmh_min"] = t.speed_kmh_min;
    traffic["speed_kmh_max"] = t.speed_kmh_max;
    traffic["subscribed_topics"] = topics_json(t.subscribed_topics);
    if (t.kind == mobility::TrafficModel::Kind::kUniformFlow)
      traffic["headway_s"] = t.headway_s;
    else
      traffic["rate_per_s"] = t.rate_per_s;
  }
  doc["traffic"] = traffic;

  json aps = json::array();
  for (const auto& ap : sc.aps) {
    json m;
    m["size_bytes"] = ap.message.text ? 1 + ap.message.topic.size() + ap.message.text->size()
                                      : ap.message.size_bytes;
    m["topic"] = ap.message.topic;
    if (ap.message.text)
      m["text"] = *ap.message.text;
    else
      m["content_seed"] = ap.message.content_seed;
    aps.push_back({{"position", point_json(ap.position)},
                   {"ssid", ap.ssid},
                   {"bssid", ap.bssid.to_string()},
                   {"loop_phase", ap.loop_phase},
                   {"schedule",
                    {{"interval_ms", ap.schedule.interval_ms},
                     {"start_s", ap.schedule.start_s},
                     {"end_s", ap.schedule.end_s}}},
                   {"channel", {{"range_m", ap.channel.range_m}, {"loss_p", ap.channel.loss_p}}},
                   {"message", m}});
  }
  doc["aps"] = aps;
  return doc;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::kIo, "SHA-256 computation failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::string scenario_digest(const Scenario& scenario) {
  return sha256_hex(scenario_to_json(scenario).dump());
}

json result_to_json(const metrics::RunResult& result) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["scenario_digest"] = result.scenario_digest;
  doc["seed"] = result.seed;
  doc["policy"] = codec::to_string(result.policy);

  json aps = json::array();
  for (const auto& a : result.per_ap)
    aps.push_back({{"index", a.index},
                   {"ssid", a.ssid},
                   {"bssid", a.bssid},
                   {"range_m", a.range_m},
                   {"interval_ms", a.interval_ms},
                   {"message_size_bytes", a.message_size_bytes},
                   {"fragments", a.fragments},
                   {"frames_sent", a.frames_sent},
                   {"complete_loops", a.complete_loops},
                   {"time_running_s", a.time_running_s}});
  doc["per_ap"] = aps;

  json vehicles = json::array();
  for (const auto& v : result.per_vehicle) {
    json nets = json::object();
    for (const auto& o : v.networks)
      nets[o.network] = {{"passes", o.passes},
                         {"first_entry_s", o.first_entry_s},
                         {"first_exit_s", o.first_exit_s},
                         {"completed_s", optional_json(o.completed_s)},
                         {"completed_on_approach", o.completed_on_approach},
                         {"distinct_fragments", o.distinct_fragments},
                         {"frames_received", o.frames_received},
                         {"frames_lost", o.frames_lost}};
    vehicles.push_back({{"id", v.id},
                        {"spawn_time_s", v.spawn_time_s},
                        {"speed_mps", v.speed_mps},
                        {"completed_messages", v.completed_messages},
                        {"dropped_messages", v.dropped_messages},
                        {"frames_received", v.frames_received},
                        {"duplicate_frames", v.duplicate_frames},
                        {"frames_lost", v.frames_lost},
                        {"stored_fragments", v.stored_fragments},
                        {"rejected_frames", v.rejected_frames},
                        {"filtered_messages", v.filtered_messages},
                        {"corrupted_messages", v.corrupted_messages},
                        {"networks", nets}});
  }
  doc["per_vehicle"] = vehicles;

  const auto& g = result.aggregate;
  json loss = json::object();
  for (const auto& [k, v] : g.message_loss_pct) loss[k] = optional_json(v);
  json approach = json::object();
  for (const auto& [k, v] : g.approach_loss_pct) approach[k] = optional_json(v);
  doc["aggregate"] = {{"vehicles", g.vehicles},
                      {"total_frames_sent", g.total_frames_sent},
                      {"total_completed_messages", g.total_completed_messages},
                      {"total_dropped_messages", g.total_dropped_messages},
                      {"frames_received_per_car", g.frames_received_per_car},
                      {"frames_lost_per_car", g.frames_lost_per_car},
                      {"vehicles_entered", g.vehicles_entered},
                      {"message_loss_pct", loss},
                      {"approach_loss_pct", approach}};
  return doc;
}

std::string canonical_dump(const json& doc) { return doc.dump(2) + "\n"; }

std::string format_time_s(SimTime t) {
  char buf[40];
  const char* sign = t < 0 ? "-" : "";
  const std::uint64_t a = t < 0 ? static_cast<std::uint64_t>(-t) : static_cast<std::uint64_t>(t);
  std::snprintf(buf, sizeof buf, "%s%" PRIu64 ".%06" PRIu64, sign, a / 1'000'000, a % 1'000'000);
  return buf;
}

std::string events_csv_header() { return "time_s,ap_index,vehicle_id,seq_no,delivered,status\n"; }

std::string events_to_csv(std::span<const metrics::FrameEvent> events) {
  std::string out = events_csv_header();
  out.reserve(out.size() + events.size() * 40);
  for (const auto& e : events) {
    out += format_time_s(e.time_us);
    out += ',' + std::to_string(e.ap_index) + ',' + std::to_string(e.vehicle_id) + ',' +
           std::to_string(e.seq_no) + ',' + (e.delivered ? "1" : "0") + ',' +
           metrics::to_string(e.status) + '\n';
  }
  return out;
}

json analytic_report(double range_m, double speed_kmh, double interval_ms,
                     std::optional<std::uint64_t> size_bytes, std::optional<double> loss_p) {
  const auto est = analytic::estimate(range_m, speed_kmh, interval_ms);
  const auto r = analytic::rounded(est, interval_ms);
  json doc;
  doc["inputs"] = {{"range_m", range_m}, {"speed_kmh", speed_kmh}, {"interval_ms", interval_ms}};
  doc["exact"] = {{"time_to_ap_s", est.time_to_ap_s},
                  {"time_total_s", est.time_total_s},
                  {"frames_to_ap", est.frames_to_ap},
                  {"frames_total", est.frames_total},
                  {"bytes_to_ap", est.bytes_to_ap},
                  {"bytes_total", est.bytes_total},
                  {"kb_to_ap", static_cast<double>(est.bytes_to_ap) / 1024.0},
                  {"kb_total", static_cast<double>(est.bytes_total) / 1024.0}};
  doc["rounded"] = {{"time_to_ap_s", r.time_to_ap_s},
                    {"frames_to_ap", r.frames_to_ap},
                    {"kb_to_ap", r.kb_to_ap},
                    {"kb_total", r.kb_total}};
  if (size_bytes) {
    const double loop = analytic::loop_time(*size_bytes, interval_ms);
    const auto loops = analytic::loops_available(est, *size_bytes);
    json m = {{"size_bytes", *size_bytes},
              {"frames", analytic::frames_for_message(*size_bytes)},
              {"loop_time_s", loop},
              {"loops_available", loops},
              {"fits_on_approach", loop <= est.time_to_ap_s},
              {"fits_in_traversal", loop <= est.time_total_s}};
    if (loss_p) {
      m["loss_p"] = *loss_p;
      m["expected_missing_fragments"] =
          analytic::expected_missing_fragments(*size_bytes, *loss_p, loops);
    }
    doc["message"] = m;
  }
  return doc;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::kIo, "failed writing '" + path + "'");
}

}  // namespace beaconcast

// Copyright 2026 The sbcast Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sbcast/schedule_io.hpp"

#include <set>
#include <stdexcept>
#include <string>

namespace sbcast {

using json = nlohmann::ordered_json;

namespace {

void only_keys(const json& j, std::initializer_list<const char*> allowed,
               const std::string& where) {
  if (!j.is_object()) throw std::invalid_argument(where + " must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!ok.count(key)) throw std::invalid_argument("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T required(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) {
    throw std::invalid_argument(where + " is missing '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(where + "." + key + " has the wrong type");
  }
}

}  // namespace

json schedule_to_json(const Schedule& s) {
  json j;
  j["n_qubits"] = s.n_qubits;
  j["scheme"] = std::string(scheme_name(s.scheme));
  j["n_slots"] = s.n_slots;
  j["timing"] = {{"slot_ns", s.timing.slot_ns},
                 {"pulse_ns", s.timing.pulse_ns},
                 {"buffer_ns", s.timing.buffer_ns}};
  json events = json::array();
  for (const PulseEvent& e : s.events) {
    json mask = json::array();
    for (bool b : e.mask) mask.push_back(b ? 1 : 0);
    events.push_back({{"slot", e.slot}, {"pulse", std::string(pulse_name(e.pulse))},
                      {"mask", std::move(mask)}});
  }
  j["events"] = std::move(events);
  return j;
}

Schedule schedule_from_json(const json& j) {
  only_keys(j, {"n_qubits", "scheme", "n_slots", "timing", "events"}, "schedule");
  Schedule s;
  s.n_qubits = required<int>(j, "n_qubits", "schedule");
  if (s.n_qubits < 1) throw std::invalid_argument("schedule.n_qubits must be >= 1");
  const auto scheme = parse_scheme(required<std::string>(j, "scheme", "schedule"));
  if (!scheme) throw std::invalid_argument("schedule.scheme is not a known scheme");
  s.scheme = *scheme;
  s.n_slots = required<int>(j, "n_slots", "schedule");
  if (j.contains("timing")) {
    const json& t = j.at("timing");
    only_keys(t, {"slot_ns", "pulse_ns", "buffer_ns"}, "timing");
    s.timing.slot_ns = required<int>(t, "slot_ns", "timing");
    s.timing.pulse_ns = required<int>(t, "pulse_ns", "timing");
    s.timing.buffer_ns = required<int>(t, "buffer_ns", "timing");
  }
  const json& events = j.contains("events") ? j.at("events") : json::array();
  if (!events.is_array()) throw std::invalid_argument("schedule.events must be an array");
  for (const json& e : events) {
    only_keys(e, {"slot", "pulse", "mask"}, "event");
    PulseEvent ev;
    ev.slot = required<int>(e, "slot", "event");
    const auto pulse = parse_pulse(required<std::string>(e, "pulse", "event"));
    if (!pulse) throw std::invalid_argument("event.pulse is not a known pulse");
    ev.pulse = *pulse;
    const auto bits = required<std::vector<int>>(e, "mask", "event");
    if (bits.size() != static_cast<std::size_t>(s.n_qubits)) {
      throw std::invalid_argument("event.mask width differs from n_qubits");
    }
    for (int b : bits) {
      if (b != 0 && b != 1) throw std::invalid_argument("event.mask entries must be 0 or 1");
      ev.mask.push_back(b == 1);
    }
    s.events.push_back(std::move(ev));
  }
  return s;
}

}  // namespace sbcast

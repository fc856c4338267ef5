#include <algorithm>

#include "vasskit/json_io.hpp"

namespace vasskit {

Json bigint_array(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Vector bigint_array_from(const Json& j) {
  Vector out;
  for (const auto& x : j) {
    // Accept plain JSON integers on input as well as decimal strings.
    out.push_back(x.is_string() ? parse_bigint(x.get<std::string>()) : parse_bigint(x.dump()));
  }
  return out;
}

Json to_json(const Vass& v) {
  Json transitions = Json::array();
  for (const auto& t : v.transitions()) {
    transitions.push_back(Json{{"from", v.state_name(t.from)}, {"delta", bigint_array(t.delta)}, {"to", v.state_name(t.to)}});
  }
  return Json{{"dimension", v.dimension()},
              {"states", v.states()},
              {"transitions", std::move(transitions)},
              {"source", to_json(v, v.source())},
              {"target", to_json(v, v.target())}};
}

Vass vass_from_json(const Json& j) {
  std::vector<Vass::TransitionSpec> ts;
  for (const auto& t : j.at("transitions")) {
    ts.push_back({t.at("from").get<std::string>(), bigint_array_from(t.at("delta")), t.at("to").get<std::string>()});
  }
  auto config = [](const Json& c) {
    return Vass::ConfigSpec{c.at("state").get<std::string>(), bigint_array_from(c.at("vector"))};
  };
  return Vass(j.at("dimension").get<std::size_t>(), j.at("states").get<std::vector<std::string>>(), std::move(ts),
              config(j.at("source")), config(j.at("target")));
}

Json to_json(const Vass& v, const Configuration& c) {
  return Json{{"state", v.state_name(c.state)}, {"vector", bigint_array(c.vector)}};
}

Configuration configuration_from_json(const Vass& v, const Json& j) {
  return Configuration{v.state_index(j.at("state").get<std::string>()), bigint_array_from(j.at("vector"))};
}

Json to_json(const Vass& v, const Run& r) {
  Json out{{"initial", to_json(v, r.initial)}, {"length", to_string(r.length())}};
  bool simple = std::all_of(r.segments.begin(), r.segments.end(),
                            [](const RunSegment& s) { return s.path.size() == 1 && s.repeat == 1; });
  if (simple) {
    Json steps = Json::array();
    for (const auto& s : r.segments) steps.push_back(s.path[0]);
    out["steps"] = std::move(steps);
  } else {
    Json segs = Json::array();
    for (const auto& s : r.segments) segs.push_back(Json{{"path", s.path}, {"repeat", to_string(s.repeat)}});
    out["segments"] = std::move(segs);
  }
  return out;
}

Run run_from_json(const Vass& v, const Json& j) {
  Run r;
  r.initial = configuration_from_json(v, j.at("initial"));
  if (j.contains("steps")) {
    for (const auto& s : j.at("steps")) r.segments.push_back(RunSegment{{s.get<std::size_t>()}, 1});
  } else {
    for (const auto& s : j.at("segments")) {
      r.segments.push_back(RunSegment{s.at("path").get<std::vector<std::size_t>>(),
                                      parse_bigint(s.at("repeat").get<std::string>())});
    }
  }
  return r;
}

}  // namespace vasskit

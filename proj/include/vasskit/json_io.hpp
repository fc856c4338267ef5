#pragma once

#include <json.hpp>

#include "vasskit/vass.hpp"

namespace vasskit {

using Json = nlohmann::ordered_json;

Json bigint_array(const Vector& v);
Vector bigint_array_from(const Json& j);

/// {dimension, states, transitions:[{from, delta, to}], source, target}.
/// Integers are decimal strings; states and transitions appear in canonical
/// order, so dump(parse(x)) reproduces x exactly.
Json to_json(const Vass& v);
Vass vass_from_json(const Json& j);

Json to_json(const Vass& v, const Configuration& c);
Configuration configuration_from_json(const Vass& v, const Json& j);

/// Runs whose segments are all single steps serialize as a flat "steps"
/// array of transition indices; accelerated runs as "segments".
Json to_json(const Vass& v, const Run& r);
Run run_from_json(const Vass& v, const Json& j);

}  // namespace vasskit

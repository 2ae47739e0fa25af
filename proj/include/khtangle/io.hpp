#pragma once

#include "json.hpp"
#include "khtangle/complex.hpp"
#include "khtangle/planar.hpp"

namespace kht {

using json = nlohmann::json;

json to_json(const OrientedSmoothing& s);
OrientedSmoothing smoothing_from_json(const json& j);

/// Canonical form: terms in normal-form order, components sorted by string ids.
json to_json(const MorphismCombo& m);
MorphismCombo combo_from_json(const json& j);

json to_json(const Complex& c);
Complex complex_from_json(const json& j);

json to_json(const DiagramSpec& spec);
DiagramSpec diagram_spec_from_json(const json& j);

/// Entries sorted by quantum degree (descending), then homological degree.
json to_json(const HomologyTable& t);

}  // namespace kht

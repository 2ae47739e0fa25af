#pragma once

#include <optional>
#include <random>

#include "khtangle/planar.hpp"

namespace kht {

OrientedSmoothing random_smoothing(std::mt19937& rng, int k, int max_loops);

/// Random valid diagram by rejection: arcs are a random bijection between
/// curve-leaving and curve-entering endpoints, kept when planar.
std::optional<PlanarArcDiagram> random_diagram(std::mt19937& rng, int max_inputs, int max_k, bool closed_allowed,
                                               int attempts = 2000);

}  // namespace kht

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "khtangle/complex.hpp"
#include "khtangle/planar.hpp"

namespace kht {

/// X(a,b,c,d): a is the incoming under-strand, slots counterclockwise.
struct PDCode {
  std::vector<std::array<int, 4>> crossings;
  std::string to_string() const;
};

/// Accepts `PD[X(1,4,2,5), X[3,6,4,1], ...]`; labels must be positive and
/// appear at most twice. Labels appearing once are open tangle ends.
PDCode parse_pd(std::string_view text);

struct CrossingInfo {
  int sign = 0;   // +1 when the over-strand runs from slot d to slot b
  int phase = 0;  // 1 when slot b (not slot a) sits at boundary point 0
};

struct PDAnalysis {
  std::vector<CrossingInfo> crossings;
  int n_plus = 0;
  int n_minus = 0;
  bool connected = true;
  bool closed = true;
  /// Every crossing has its incoming under-strand at an In point.
  bool alternating = true;
  std::vector<int> open_labels;
};

PDAnalysis analyze(const PDCode& pd);

/// The two-term complex of one crossing. Phase 0 puts slot a at point 0.
Complex crossing_complex(int sign, int phase = 0);

struct PlanStep {
  int crossing = 0;
  /// Inputs are (running tangle, crossing); for the first step the crossing
  /// alone, and only when it has kinks to close.
  std::optional<PlanarArcDiagram> diagram;
};

struct CompositionPlan {
  std::vector<PlanStep> steps;
  /// Open labels around the final boundary, point 0 first.
  std::vector<int> boundary_labels;
};

CompositionPlan plan_composition(const PDCode& pd, const PDAnalysis& analysis);
CompositionPlan plan_composition(const PDCode& pd);

/// Composes crossing by crossing, reducing after every step. With `close`
/// a tangle is closed by curls at point 0 until no boundary remains.
Complex kh(const PDCode& pd, bool close = true);

/// Brute-force cube of resolutions over the rationals.
HomologyTable cube_oracle(const PDCode& pd);

/// K with every entry on j - 2i = K +- 1, or nothing.
std::optional<int> two_line_check(const HomologyTable& table);

}  // namespace kht

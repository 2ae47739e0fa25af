#pragma once

#include <compare>
#include <optional>
#include <utility>
#include <vector>

#include "khtangle/cobordism.hpp"
#include "khtangle/complex.hpp"
#include "khtangle/rational.hpp"
#include "khtangle/smoothing.hpp"

namespace kht {

/// Disc 0 is the output boundary, discs 1..d are the inputs.
struct Endpoint {
  int disc = 0;
  int point = 0;
  auto operator<=>(const Endpoint&) const = default;
};

struct DiagramSpec {
  int output_k = 0;
  std::vector<int> input_k;
  std::vector<std::pair<Endpoint, Endpoint>> arcs;
  /// Needed when output_k == 0: the input segment (disc, p -> p+1) that faces
  /// the unbounded region.
  std::optional<Endpoint> outer;
};

/// Arcs run from tail to head, following the orientation of the glued curves.
struct Arc {
  Endpoint tail;
  Endpoint head;
};

enum class ArcKind { Curl, Interconnecting, Boundary };

struct ArcClassification {
  std::vector<ArcKind> kinds;
  int curls = 0;
  int interconnecting = 0;
  int boundary = 0;
  int i_D = 0;  // curls + interconnecting
  int w_D = 0;  // white faces away from the output boundary
  Rational R_D;
};

/// Type-A planar arc diagram with alternating orientations, validated and with
/// its faces computed from the rotation system.
class PlanarArcDiagram {
 public:
  static PlanarArcDiagram make(const DiagramSpec& spec);

  const DiagramSpec& spec() const { return spec_; }
  int output_k() const { return spec_.output_k; }
  int inputs() const { return static_cast<int>(spec_.input_k.size()); }
  int input_k(int disc) const { return spec_.input_k[disc - 1]; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  int arc_at(Endpoint e) const { return arc_at_[offset_[e.disc] + e.point]; }

  int face_count() const { return static_cast<int>(face_shaded_.size()); }
  bool face_shaded(int f) const { return face_shaded_[f]; }
  bool face_touches_output(int f) const { return face_output_[f]; }
  /// Face just outside input segment p -> p+1 of an input disc.
  int segment_face(int disc, int p) const { return segment_face_[offset_[disc] + p]; }
  int arc_left_face(int a) const { return arc_faces_[a].first; }
  int arc_right_face(int a) const { return arc_faces_[a].second; }
  /// Face meeting the output at segment 0, or the designated outer face.
  int root_face() const { return root_face_; }

  const ArcClassification& classification() const { return classification_; }

 private:
  DiagramSpec spec_;
  std::vector<Arc> arcs_;
  std::vector<int> offset_;
  std::vector<int> arc_at_;
  std::vector<bool> face_shaded_;
  std::vector<bool> face_output_;
  std::vector<int> segment_face_;
  std::vector<std::pair<int, int>> arc_faces_;
  int root_face_ = 0;
  ArcClassification classification_;
};

ArcClassification classify(const PlanarArcDiagram& d);

/// One curl joining input points position and position+1. Odd positions
/// close positive loops, even ones negative loops.
PlanarArcDiagram unary_basic(int k, int position, int sign);
/// Two inputs joined by one arc between point glue1 of disc 1 and glue2 of disc 2.
PlanarArcDiagram binary_basic(int k1, int k2, int glue1, int glue2);
PlanarArcDiagram radial_identity(int k);

struct Gluing {
  OrientedSmoothing smoothing;
  /// owner[c][id]: output string built from string id of input c (0-based).
  std::vector<std::vector<int>> owner;
};

Gluing glue_smoothings(const PlanarArcDiagram& d, const std::vector<OrientedSmoothing>& inputs);
OrientedSmoothing compose_smoothings(const PlanarArcDiagram& d, const std::vector<OrientedSmoothing>& inputs);

MorphismCombo compose_cobordisms(const PlanarArcDiagram& d, const std::vector<MorphismCombo>& inputs);
MorphismCombo compose_cobordisms(const PlanarArcDiagram& d, const Gluing& source, const Gluing& target,
                                 const std::vector<const MorphismCombo*>& inputs);

Complex compose_complexes(const PlanarArcDiagram& d, const std::vector<Complex>& inputs);

}  // namespace kht

#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "khtangle/rational.hpp"
#include "khtangle/smoothing.hpp"

namespace kht {

struct Piece {
  int euler = 0;
  int dots = 0;
  auto operator<=>(const Piece&) const = default;
};

/// Connectivity of a dotted surface: the piece owning every source and target
/// string. Pieces not touched by any string are closed.
struct Surface {
  std::vector<int> source_piece;
  std::vector<int> target_piece;
  std::vector<Piece> pieces;
  auto operator<=>(const Surface&) const = default;
};

/// Descriptive view of one connected piece.
struct Component {
  std::vector<int> bottom_strings;
  std::vector<int> top_strings;
  std::vector<int> boundary_lines;
  int euler = 0;
  int dots = 0;
};

/// Boundary circles of the vertical boundary between two smoothings: strands
/// of both sides joined at shared points, plus every loop on its own.
struct CircleStructure {
  int count = 0;
  std::vector<int> source_circle;
  std::vector<int> target_circle;
};

CircleStructure circle_structure(const OrientedSmoothing& source, const OrientedSmoothing& target);

std::vector<Component> components(const Surface& s, const OrientedSmoothing& source,
                                  const OrientedSmoothing& target);
int boundary_circles(const Surface& s, int piece, const OrientedSmoothing& source,
                     const OrientedSmoothing& target);

/// Rational combination of surfaces in normal form: every piece is a disc
/// bounded by exactly one circle and carries at most one dot. This is a basis
/// of the morphism space, so equality of combos is equality of morphisms.
class MorphismCombo {
 public:
  MorphismCombo() = default;
  MorphismCombo(OrientedSmoothing source, OrientedSmoothing target);

  const OrientedSmoothing& source() const { return source_; }
  const OrientedSmoothing& target() const { return target_; }
  const std::map<Surface, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Rewrites an arbitrary surface by the local relations and adds c times it.
  void add_raw(const Surface& raw, const Rational& c);
  /// Adds a term already in normal form.
  void add_normal(const Surface& s, const Rational& c);

  MorphismCombo& operator+=(const MorphismCombo& o);
  MorphismCombo& operator-=(const MorphismCombo& o);
  MorphismCombo& operator*=(const Rational& c);
  bool operator==(const MorphismCombo& o) const;

 private:
  OrientedSmoothing source_;
  OrientedSmoothing target_;
  std::map<Surface, Rational> terms_;
  mutable std::optional<CircleStructure> circles_;
  const CircleStructure& circles() const;
  void check_same_ends(const MorphismCombo& o) const;
};

MorphismCombo operator*(const Rational& c, MorphismCombo m);
MorphismCombo operator+(MorphismCombo a, const MorphismCombo& b);
MorphismCombo operator-(MorphismCombo a, const MorphismCombo& b);

/// Normal form of raw terms between fixed end smoothings.
MorphismCombo normalize(const OrientedSmoothing& source, const OrientedSmoothing& target,
                        const std::vector<std::pair<Surface, Rational>>& raw);
MorphismCombo normalize(const MorphismCombo& m);

MorphismCombo identity_cobordism(const OrientedSmoothing& s);

struct SaddleKind {
  std::vector<int> source_ids;
  std::vector<int> target_ids;
};
struct CapKind {
  int loop = 0;  // loop index in the source
};
struct CupKind {
  int loop = 0;  // loop index in the target
};
struct DotKind {
  int string = 0;
};
using ElementaryKind = std::variant<SaddleKind, CapKind, CupKind, DotKind>;

MorphismCombo elementary(const OrientedSmoothing& source, const OrientedSmoothing& target,
                         const ElementaryKind& kind);
MorphismCombo saddle(const OrientedSmoothing& source, const OrientedSmoothing& target,
                     std::vector<int> source_ids, std::vector<int> target_ids);
/// Removes loop `loop` of `source`.
MorphismCombo cap(const OrientedSmoothing& source, int loop, bool dotted = false);
/// Creates loop `loop` of `target`.
MorphismCombo cup(const OrientedSmoothing& target, int loop, bool dotted = false);
MorphismCombo dot(const OrientedSmoothing& s, int string);

/// g after f.
MorphismCombo compose_vertical(const MorphismCombo& g, const MorphismCombo& f);

struct Degree {
  enum Kind { Zero, Homogeneous, NonHomogeneous } kind = Zero;
  int value = 0;
};
Degree degree(const MorphismCombo& m, int source_shift, int target_shift);

/// Scalar c when m = c * identity, nothing otherwise.
std::optional<Rational> identity_scalar(const MorphismCombo& m);
bool is_invertible_entry(const MorphismCombo& m);

std::string to_string(const MorphismCombo& m);

}  // namespace kht

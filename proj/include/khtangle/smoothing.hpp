#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "khtangle/rational.hpp"

namespace kht {

enum class Flag : std::uint8_t { In, Out };

/// 2k marked points on a circle, labeled counterclockwise, with alternating
/// In/Out flags. Point 0 is In unless constructed otherwise.
class BoundaryConfig {
 public:
  BoundaryConfig() = default;
  explicit BoundaryConfig(int k, Flag first = Flag::In);

  int k() const { return k_; }
  int points() const { return 2 * k_; }
  Flag first() const { return first_; }
  Flag flag(int p) const {
    return ((p % 2 == 0) == (first_ == Flag::In)) ? Flag::In : Flag::Out;
  }
  /// Reduces any integer to a point label.
  int wrap(int p) const {
    int n = points();
    return ((p % n) + n) % n;
  }

  auto operator<=>(const BoundaryConfig&) const = default;

 private:
  int k_ = 0;
  Flag first_ = Flag::In;
};

struct Strand {
  int start = 0;  // In point
  int end = 0;    // Out point
  auto operator<=>(const Strand&) const = default;
};

/// Crossingless oriented 1-manifold in a disc. Strings are numbered: strands
/// 0..k-1 sorted by start point, then loops in storage order.
class OrientedSmoothing {
 public:
  OrientedSmoothing() = default;

  static OrientedSmoothing make(int k, const std::vector<std::pair<int, int>>& pairs,
                                const std::vector<int>& loops = {},
                                Flag first = Flag::In);

  const BoundaryConfig& boundary() const { return boundary_; }
  int k() const { return boundary_.k(); }
  const std::vector<Strand>& strands() const { return strands_; }
  const std::vector<int>& loops() const { return loops_; }

  int string_count() const { return static_cast<int>(strands_.size() + loops_.size()); }
  bool is_loop(int id) const { return id >= static_cast<int>(strands_.size()); }
  int loop_id(int loop_index) const { return static_cast<int>(strands_.size()) + loop_index; }
  /// Strand id owning boundary point p.
  int strand_at(int p) const { return strand_at_[p]; }
  int partner(int p) const;

  OrientedSmoothing without_loop(int loop_index) const;
  OrientedSmoothing with_loop(int sign) const;
  OrientedSmoothing without_loops() const;

  std::string to_string() const;

  auto operator<=>(const OrientedSmoothing& o) const {
    if (auto c = boundary_ <=> o.boundary_; c != 0) return c;
    if (auto c = strands_ <=> o.strands_; c != 0) return c;
    return loops_ <=> o.loops_;
  }
  bool operator==(const OrientedSmoothing& o) const {
    return boundary_ == o.boundary_ && strands_ == o.strands_ && loops_ == o.loops_;
  }

  /// Builds without planarity checks; used by gluing, whose output is planar by construction.
  static OrientedSmoothing assemble(BoundaryConfig boundary, std::vector<Strand> strands,
                                    std::vector<int> loops);

 private:
  BoundaryConfig boundary_;
  std::vector<Strand> strands_;
  std::vector<int> loops_;
  std::vector<int> strand_at_;
};

struct ShiftedSmoothing {
  OrientedSmoothing smoothing;
  int shift = 0;
  auto operator<=>(const ShiftedSmoothing&) const = default;
};

/// (i - k) / 2k with i = (end - start) mod 2k.
Rational strand_rotation(int k, int start, int end);
Rational strand_rotation(const OrientedSmoothing& s, const Strand& strand);
Rational rotation_number(const OrientedSmoothing& s);
Rational shifted_rotation(const ShiftedSmoothing& ss);

/// Every non-crossing perfect matching of 2k points, as smoothings with the given phase.
std::vector<OrientedSmoothing> all_smoothings(int k, Flag first = Flag::In);

}  // namespace kht

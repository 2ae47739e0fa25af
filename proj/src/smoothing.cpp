#include "khtangle/smoothing.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "khtangle/error.hpp"

namespace kht {

BoundaryConfig::BoundaryConfig(int k, Flag first) : k_(k), first_(first) {
  if (k < 0) throw Error(ErrorCode::BadInput, "negative boundary size");
}

namespace {

bool interleave(std::pair<int, int> x, std::pair<int, int> y) {
  auto [a, b] = std::minmax(x.first, x.second);
  auto [c, d] = std::minmax(y.first, y.second);
  return (a < c && c < b && b < d) || (c < a && a < d && d < b);
}

}  // namespace

OrientedSmoothing OrientedSmoothing::make(int k, const std::vector<std::pair<int, int>>& pairs,
                                          const std::vector<int>& loops, Flag first) {
  BoundaryConfig boundary(k, first);
  const int n = boundary.points();
  if (static_cast<int>(pairs.size()) != k) {
    throw Error(ErrorCode::NotPerfectMatching,
                "expected " + std::to_string(k) + " pairs, got " + std::to_string(pairs.size()));
  }
  std::vector<int> seen(n, 0);
  for (auto [a, b] : pairs) {
    if (a < 0 || a >= n || b < 0 || b >= n) {
      throw Error(ErrorCode::NotPerfectMatching, "point label out of range");
    }
    if (a == b || seen[a]++ || seen[b]++) {
      throw Error(ErrorCode::NotPerfectMatching, "point used more than once");
    }
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      if (interleave(pairs[i], pairs[j])) {
        throw Error(ErrorCode::CrossingMatching,
                    std::to_string(pairs[i].first) + "-" + std::to_string(pairs[i].second) +
                        " crosses " + std::to_string(pairs[j].first) + "-" +
                        std::to_string(pairs[j].second));
      }
    }
  }
  std::vector<Strand> strands;
  for (auto [a, b] : pairs) {
    if (boundary.flag(a) == boundary.flag(b)) {
      throw Error(ErrorCode::BadOrientation, "strand joins two points of the same flag");
    }
    strands.push_back(boundary.flag(a) == Flag::In ? Strand{a, b} : Strand{b, a});
  }
  for (int sign : loops) {
    if (sign != 1 && sign != -1) throw Error(ErrorCode::BadOrientation, "loop sign must be +1 or -1");
  }
  return assemble(boundary, std::move(strands), loops);
}

OrientedSmoothing OrientedSmoothing::assemble(BoundaryConfig boundary, std::vector<Strand> strands,
                                              std::vector<int> loops) {
  OrientedSmoothing s;
  std::sort(strands.begin(), strands.end());
  s.boundary_ = boundary;
  s.strands_ = std::move(strands);
  s.loops_ = std::move(loops);
  s.strand_at_.assign(boundary.points(), -1);
  for (std::size_t i = 0; i < s.strands_.size(); ++i) {
    s.strand_at_[s.strands_[i].start] = static_cast<int>(i);
    s.strand_at_[s.strands_[i].end] = static_cast<int>(i);
  }
  return s;
}

int OrientedSmoothing::partner(int p) const {
  const Strand& st = strands_[strand_at_[p]];
  return st.start == p ? st.end : st.start;
}

OrientedSmoothing OrientedSmoothing::without_loop(int loop_index) const {
  if (loop_index < 0 || loop_index >= static_cast<int>(loops_.size())) {
    throw Error(ErrorCode::NoLoopAtPosition, "loop index " + std::to_string(loop_index));
  }
  OrientedSmoothing s = *this;
  s.loops_.erase(s.loops_.begin() + loop_index);
  return s;
}

OrientedSmoothing OrientedSmoothing::with_loop(int sign) const {
  OrientedSmoothing s = *this;
  s.loops_.push_back(sign);
  return s;
}

OrientedSmoothing OrientedSmoothing::without_loops() const {
  OrientedSmoothing s = *this;
  s.loops_.clear();
  return s;
}

std::string OrientedSmoothing::to_string() const {
  std::ostringstream out;
  out << "S(k=" << k() << ";";
  for (std::size_t i = 0; i < strands_.size(); ++i) {
    out << (i ? ", " : " ") << strands_[i].start << "-" << strands_[i].end;
  }
  out << "; loops=";
  for (std::size_t i = 0; i < loops_.size(); ++i) {
    out << (i ? "," : "") << (loops_[i] > 0 ? "+1" : "-1");
  }
  out << ")";
  return out.str();
}

Rational strand_rotation(int k, int start, int end) {
  if (k <= 0) throw Error(ErrorCode::StrandNotFound, "no strands when k = 0");
  int n = 2 * k;
  int i = (((end - start) % n) + n) % n;
  return make_rational(i - k, n);
}

Rational strand_rotation(const OrientedSmoothing& s, const Strand& strand) {
  if (std::find(s.strands().begin(), s.strands().end(), strand) == s.strands().end()) {
    throw Error(ErrorCode::StrandNotFound,
                std::to_string(strand.start) + "-" + std::to_string(strand.end) + " in " +
                    s.to_string());
  }
  return strand_rotation(s.k(), strand.start, strand.end);
}

Rational rotation_number(const OrientedSmoothing& s) {
  Rational total = 0;
  for (const Strand& st : s.strands()) total += strand_rotation(s.k(), st.start, st.end);
  for (int sign : s.loops()) total += sign;
  return total;
}

Rational shifted_rotation(const ShiftedSmoothing& ss) {
  return rotation_number(ss.smoothing) + ss.shift;
}

std::vector<OrientedSmoothing> all_smoothings(int k, Flag first) {
  std::vector<std::vector<std::pair<int, int>>> matchings;
  std::vector<std::pair<int, int>> current;
  std::function<void(std::vector<int>)> go = [&](std::vector<int> pts) {
    if (pts.empty()) {
      matchings.push_back(current);
      return;
    }
    for (std::size_t j = 1; j < pts.size(); j += 2) {
      current.emplace_back(pts[0], pts[j]);
      std::vector<int> inner(pts.begin() + 1, pts.begin() + j);
      std::vector<int> outer(pts.begin() + j + 1, pts.end());
      // inner and outer are independent; enumerate their product
      std::vector<std::vector<std::pair<int, int>>> inner_sets;
      std::size_t mark = matchings.size();
      auto saved = current;
      current.clear();
      go(inner);
      inner_sets.assign(matchings.begin() + mark, matchings.end());
      matchings.resize(mark);
      for (const auto& in : inner_sets) {
        current = saved;
        current.insert(current.end(), in.begin(), in.end());
        go(outer);
      }
      current = saved;
      current.pop_back();
    }
  };
  std::vector<int> pts(2 * k);
  for (int i = 0; i < 2 * k; ++i) pts[i] = i;
  go(pts);
  std::vector<OrientedSmoothing> out;
  for (const auto& m : matchings) out.push_back(OrientedSmoothing::make(k, m, {}, first));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace kht

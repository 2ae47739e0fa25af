#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "doctest.h"
#include "khtangle/cobordism.hpp"
#include "khtangle/error.hpp"
#include "khtangle/smoothing.hpp"

namespace testing {

using namespace kht;

inline ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::BadInput;
}

/// A random elementary cobordism out of s: dot, cap, cup or one of the saddles.
inline MorphismCombo random_elementary(std::mt19937& rng, const OrientedSmoothing& s) {
  const int strands = static_cast<int>(s.strands().size());
  const int loops = static_cast<int>(s.loops().size());
  for (int attempt = 0; attempt < 50; ++attempt) {
    switch (rng() % 7) {
      case 0:
        if (s.string_count() > 0) return dot(s, static_cast<int>(rng() % s.string_count()));
        break;
      case 1:
        if (loops > 0) return cap(s, static_cast<int>(rng() % loops), rng() % 2);
        break;
      case 2: {
        auto t = s.with_loop(rng() % 2 ? 1 : -1);
        return cup(t, loops, rng() % 2);
      }
      case 3:  // strand absorbs a loop
        if (loops > 0 && strands > 0) {
          int l = static_cast<int>(rng() % loops);
          int x = static_cast<int>(rng() % strands);
          return saddle(s, s.without_loop(l), {x, s.loop_id(l)}, {x});
        }
        break;
      case 4:  // two loops merge
        if (loops >= 2) {
          auto t = s.without_loop(loops - 1);
          return saddle(s, t, {s.loop_id(loops - 2), s.loop_id(loops - 1)}, {t.loop_id(loops - 2)});
        }
        break;
      case 5:  // a loop splits
        if (loops >= 1) {
          auto t = s.with_loop(rng() % 2 ? 1 : -1);
          int l = static_cast<int>(rng() % loops);
          return saddle(s, t, {s.loop_id(l)}, {t.loop_id(l), t.loop_id(loops)});
        }
        break;
      case 6:  // two strands swap partners
        if (strands >= 2) {
          int a = static_cast<int>(rng() % strands), b = static_cast<int>(rng() % strands);
          if (a == b) break;
          std::vector<std::pair<int, int>> pairs;
          for (int i = 0; i < strands; ++i) {
            if (i == a || i == b) continue;
            pairs.emplace_back(s.strands()[i].start, s.strands()[i].end);
          }
          pairs.emplace_back(s.strands()[a].start, s.strands()[b].end);
          pairs.emplace_back(s.strands()[b].start, s.strands()[a].end);
          try {
            auto t = OrientedSmoothing::make(s.k(), pairs, s.loops());
            int ta = t.strand_at(s.strands()[a].start), tb = t.strand_at(s.strands()[b].start);
            return saddle(s, t, {a, b}, {ta, tb});
          } catch (const Error&) {
          }
        }
        break;
    }
  }
  return identity_cobordism(s);
}

}  // namespace testing

#include "khtangle/planar.hpp"
#include "khtangle/random.hpp"

namespace testing {

using kht::random_diagram;
using kht::random_smoothing;

}  // namespace testing

#include "khtangle/khovanov.hpp"

namespace testing {

/// Closed braid on `strands` strands; generator +i is sigma_i, -i its inverse.
inline PDCode braid_closure(int strands, const std::vector<int>& word) {
  std::vector<int> label(strands);
  for (int p = 0; p < strands; ++p) label[p] = p + 1;
  int next = strands + 1;
  PDCode pd;
  for (int g : word) {
    int i = std::abs(g) - 1;
    int l = next++, r = next++;
    if (g > 0) {
      pd.crossings.push_back({label[i + 1], r, l, label[i]});
    } else {
      pd.crossings.push_back({label[i], label[i + 1], r, l});
    }
    label[i] = l;
    label[i + 1] = r;
  }
  for (auto& x : pd.crossings) {
    for (int& v : x) {
      for (int p = 0; p < strands; ++p) {
        if (v == label[p]) v = p + 1;
      }
    }
  }
  return pd;
}

/// Cuts edge `label` open, giving a tangle with one more boundary pair.
inline PDCode cut_edge(PDCode pd, int label) {
  int fresh = 0;
  for (const auto& x : pd.crossings) {
    for (int v : x) fresh = std::max(fresh, v);
  }
  for (auto& x : pd.crossings) {
    for (int& v : x) {
      if (v == label) {
        v = fresh + 1;
        return pd;
      }
    }
  }
  return pd;
}

}  // namespace testing

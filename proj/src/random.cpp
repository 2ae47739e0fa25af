#include "khtangle/random.hpp"

#include <algorithm>

#include "khtangle/error.hpp"

namespace kht {

OrientedSmoothing random_smoothing(std::mt19937& rng, int k, int max_loops) {
  auto all = all_smoothings(k);
  OrientedSmoothing s = all[rng() % all.size()];
  int loops = static_cast<int>(rng() % (max_loops + 1));
  for (int i = 0; i < loops; ++i) s = s.with_loop(rng() % 2 ? 1 : -1);
  return s;
}

std::optional<PlanarArcDiagram> random_diagram(std::mt19937& rng, int max_inputs, int max_k,
                                               bool closed_allowed, int attempts) {
  for (int attempt = 0; attempt < attempts; ++attempt) {
    DiagramSpec spec;
    int d = 1 + static_cast<int>(rng() % max_inputs);
    int total = 0;
    for (int i = 0; i < d; ++i) {
      spec.input_k.push_back(1 + static_cast<int>(rng() % max_k));
      total += spec.input_k.back();
    }
    int min_out = closed_allowed ? 0 : 1;
    int max_out = total - (d - 1);  // each extra input spends at least one arc inside
    if (max_out < min_out) continue;
    spec.output_k = min_out + static_cast<int>(rng() % (max_out - min_out + 1));
    std::vector<Endpoint> tails, heads;
    for (int p = 0; p < 2 * spec.output_k; ++p) (p % 2 == 0 ? tails : heads).push_back(Endpoint{0, p});
    for (int c = 1; c <= d; ++c) {
      for (int p = 0; p < 2 * spec.input_k[c - 1]; ++p) (p % 2 == 1 ? tails : heads).push_back(Endpoint{c, p});
    }
    std::shuffle(heads.begin(), heads.end(), rng);
    bool ok = true;
    for (std::size_t i = 0; i < tails.size() && ok; ++i) {
      ok = !(tails[i].disc == 0 && heads[i].disc == 0);
      spec.arcs.push_back({tails[i], heads[i]});
    }
    if (!ok) continue;
    if (spec.output_k == 0) {
      int c = 1 + static_cast<int>(rng() % d);
      spec.outer = Endpoint{c, static_cast<int>(rng() % (2 * spec.input_k[c - 1]))};
    }
    try {
      return PlanarArcDiagram::make(spec);
    } catch (const Error&) {
    }
  }
  return std::nullopt;
}

}  // namespace kht

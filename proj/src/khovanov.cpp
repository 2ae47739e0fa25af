#include "khtangle/khovanov.hpp"

#include <algorithm>
#include <map>

#include "khtangle/error.hpp"
#include "khtangle/linalg.hpp"
#include "union_find.hpp"

namespace kht {

Complex crossing_complex(int sign, int phase) {
  if (sign != 1 && sign != -1) throw Error(ErrorCode::BadInput, "crossing sign must be +1 or -1");
  if (phase != 0 && phase != 1) throw Error(ErrorCode::BadInput, "crossing phase must be 0 or 1");
  auto pt = [&](int slot) { return (slot - phase + 4) % 4; };
  auto zero = OrientedSmoothing::make(2, {{pt(0), pt(1)}, {pt(2), pt(3)}});
  auto one = OrientedSmoothing::make(2, {{pt(0), pt(3)}, {pt(1), pt(2)}});
  Complex c(2);
  const int r = sign > 0 ? 0 : -1;
  const int q = sign > 0 ? 1 : -2;
  c.add_object(r, ShiftedSmoothing{zero, q});
  c.add_object(r + 1, ShiftedSmoothing{one, q + 1});
  c.set_entry(r, 0, 0, saddle(zero, one, {0, 1}, {0, 1}));
  return c;
}

namespace {

struct End {
  int crossing = 0;
  int slot = 0;
  bool operator==(const End&) const = default;
};

class Planner {
 public:
  Planner(const PDCode& pd, const PDAnalysis& analysis) : pd_(pd), analysis_(analysis) {
    for (int x = 0; x < static_cast<int>(pd.crossings.size()); ++x) {
      for (int s = 0; s < 4; ++s) ends_[pd.crossings[x][s]].push_back(End{x, s});
    }
  }

  CompositionPlan run() {
    CompositionPlan plan;
    const int n = static_cast<int>(pd_.crossings.size());
    if (n == 0) return plan;
    if (!analysis_.connected) throw Error(ErrorCode::Unplannable, "the diagram is split");
    std::vector<char> used(n, 0);
    used[0] = 1;
    plan.steps.push_back(first_step());
    for (int placed = 1; placed < n; ++placed) {
      std::vector<std::pair<int, int>> candidates;  // (-shared, crossing)
      for (int x = 0; x < n; ++x) {
        if (used[x]) continue;
        int shared = 0;
        for (int s = 0; s < 4; ++s) {
          auto p = partner(End{x, s});
          if (p && p->crossing != x && used[p->crossing]) ++shared;
        }
        if (shared) candidates.emplace_back(-shared, x);
      }
      std::sort(candidates.begin(), candidates.end());
      std::optional<PlanStep> step;
      for (auto [score, x] : candidates) {
        step = attach(x);
        if (step) break;
      }
      if (!step) throw Error(ErrorCode::Unplannable, "no crossing can be attached along a contiguous boundary block");
      used[step->crossing] = 1;
      plan.steps.push_back(std::move(*step));
    }
    for (const End& e : boundary_) plan.boundary_labels.push_back(label(e));
    return plan;
  }

 private:
  const PDCode& pd_;
  const PDAnalysis& analysis_;
  std::map<int, std::vector<End>> ends_;
  std::vector<End> boundary_;  // counterclockwise, point 0 first

  int label(const End& e) const { return pd_.crossings[e.crossing][e.slot]; }
  std::optional<End> partner(const End& e) const {
    const auto& list = ends_.at(label(e));
    if (list.size() < 2) return std::nullopt;
    return list[0] == e ? list[1] : list[0];
  }
  int point(const End& e) const { return (e.slot - analysis_.crossings[e.crossing].phase + 4) % 4; }
  bool is_in(const End& e) const { return point(e) % 2 == 0; }
  bool self_loop(const End& e) const {
    auto p = partner(e);
    return p && p->crossing == e.crossing;
  }

  std::vector<End> start_at_in(std::vector<End> list) const {
    if (list.empty()) return list;
    auto it = std::find_if(list.begin(), list.end(), [&](const End& e) { return is_in(e); });
    if (it == list.end()) throw Error(ErrorCode::Unplannable, "boundary without In points");
    std::rotate(list.begin(), it, list.end());
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (is_in(list[i]) != (i % 2 == 0)) throw Error(ErrorCode::Unplannable, "boundary flags do not alternate");
    }
    return list;
  }

  PlanStep first_step() {
    std::vector<End> free;
    DiagramSpec spec;
    spec.input_k = {2};
    for (int s = 0; s < 4; ++s) {
      End e{0, s};
      if (!self_loop(e)) {
        free.push_back(e);
      } else if (partner(e)->slot > s) {
        spec.arcs.push_back({Endpoint{1, point(e)}, Endpoint{1, point(*partner(e))}});
      }
    }
    boundary_ = start_at_in(free);
    PlanStep step{0, std::nullopt};
    if (!spec.arcs.empty()) {
      spec.output_k = static_cast<int>(boundary_.size()) / 2;
      for (int o = 0; o < static_cast<int>(boundary_.size()); ++o) {
        spec.arcs.push_back({Endpoint{0, o}, Endpoint{1, point(boundary_[o])}});
      }
      if (spec.output_k == 0) spec.outer = Endpoint{1, 0};
      step.diagram = PlanarArcDiagram::make(spec);
    }
    return step;
  }

  std::optional<PlanStep> attach(int x) {
    const int n = static_cast<int>(boundary_.size());
    std::vector<int> xs;  // slots of x that stay on a boundary, counterclockwise
    for (int s = 0; s < 4; ++s) {
      if (!self_loop(End{x, s})) xs.push_back(s);
    }
    std::map<int, int> slot_of_position;  // boundary index -> slot of x glued to it
    for (int i = 0; i < n; ++i) {
      auto p = partner(boundary_[i]);
      if (p && p->crossing == x) slot_of_position[i] = p->slot;
    }
    const int m = static_cast<int>(slot_of_position.size());
    const int r = static_cast<int>(xs.size());
    for (int start = 0; start < n; ++start) {
      bool block = true;
      for (int i = 0; i < m && block; ++i) block = slot_of_position.count((start + i) % n) > 0;
      if (!block) continue;
      // the block t_1..t_m must meet x as x_m..x_1 counterclockwise
      int j = static_cast<int>(std::find(xs.begin(), xs.end(), slot_of_position[start]) - xs.begin());
      bool reversed = true;
      for (int i = 0; i < m && reversed; ++i) reversed = xs[((j - i) % r + r) % r] == slot_of_position[(start + i) % n];
      if (!reversed) continue;

      std::vector<End> next;
      for (int i = 1; i <= r - m; ++i) next.push_back(End{x, xs[(j + i) % r]});
      for (int i = m; i < n; ++i) next.push_back(boundary_[(start + i) % n]);
      next = start_at_in(next);

      DiagramSpec spec;
      spec.output_k = static_cast<int>(next.size()) / 2;
      spec.input_k = {n / 2, 2};
      for (int i = 0; i < m; ++i) {
        int pos = (start + i) % n;
        spec.arcs.push_back({Endpoint{1, pos}, Endpoint{2, point(End{x, slot_of_position[pos]})}});
      }
      for (int s = 0; s < 4; ++s) {
        End e{x, s};
        if (self_loop(e) && partner(e)->slot > s) {
          spec.arcs.push_back({Endpoint{2, point(e)}, Endpoint{2, point(*partner(e))}});
        }
      }
      for (int o = 0; o < static_cast<int>(next.size()); ++o) {
        const End& e = next[o];
        if (e.crossing == x) {
          spec.arcs.push_back({Endpoint{0, o}, Endpoint{2, point(e)}});
        } else {
          int pos = static_cast<int>(std::find(boundary_.begin(), boundary_.end(), e) - boundary_.begin());
          spec.arcs.push_back({Endpoint{0, o}, Endpoint{1, pos}});
        }
      }
      if (spec.output_k == 0) spec.outer = Endpoint{1, 0};
      PlanStep step{x, PlanarArcDiagram::make(spec)};
      boundary_ = std::move(next);
      return step;
    }
    return std::nullopt;
  }
};

}  // namespace

CompositionPlan plan_composition(const PDCode& pd, const PDAnalysis& analysis) {
  return Planner(pd, analysis).run();
}

CompositionPlan plan_composition(const PDCode& pd) { return plan_composition(pd, analyze(pd)); }

Complex kh(const PDCode& pd, bool close) {
  if (pd.crossings.empty()) {
    Complex c(0);
    c.add_object(0, ShiftedSmoothing{OrientedSmoothing{}, 0});
    return c;
  }
  PDAnalysis analysis = analyze(pd);
  CompositionPlan plan = plan_composition(pd, analysis);
  auto crossing = [&](int x) {
    return crossing_complex(analysis.crossings[x].sign, analysis.crossings[x].phase);
  };
  Complex running = crossing(plan.steps[0].crossing);
  if (plan.steps[0].diagram) running = reduce(compose_complexes(*plan.steps[0].diagram, {running}));
  for (std::size_t i = 1; i < plan.steps.size(); ++i) {
    running = reduce(compose_complexes(*plan.steps[i].diagram, {running, crossing(plan.steps[i].crossing)}));
  }
  while (close && running.k() > 0) {
    running = reduce(compose_complexes(unary_basic(running.k(), 0, -1), {running}));
  }
  return running;
}

HomologyTable cube_oracle(const PDCode& pd) {
  const int n = static_cast<int>(pd.crossings.size());
  if (n == 0) return HomologyTable({{{0, 0}, 1}});
  PDAnalysis analysis = analyze(pd);
  if (!analysis.closed) throw Error(ErrorCode::NotClosed, "the cube oracle needs a link");
  if (n > 20) throw Error(ErrorCode::BadInput, "too many crossings for the cube");
  std::map<int, int> label_index;
  for (const auto& x : pd.crossings) {
    for (int l : x) label_index.emplace(l, static_cast<int>(label_index.size()));
  }
  const int L = static_cast<int>(label_index.size());
  auto li = [&](int x, int s) { return label_index.at(pd.crossings[x][s]); };

  struct Vertex {
    int circles = 0;
    std::vector<int> circle_of_label;
  };
  const int V = 1 << n;
  std::vector<Vertex> cube(V);
  for (int v = 0; v < V; ++v) {
    detail::UnionFind uf(L);
    for (int x = 0; x < n; ++x) {
      if ((v >> x) & 1) {
        uf.unite(li(x, 0), li(x, 3));
        uf.unite(li(x, 1), li(x, 2));
      } else {
        uf.unite(li(x, 0), li(x, 1));
        uf.unite(li(x, 2), li(x, 3));
      }
    }
    Vertex& vx = cube[v];
    std::vector<int> id(L, -1);
    vx.circle_of_label.resize(L);
    for (int l = 0; l < L; ++l) {
      int r = uf.find(l);
      if (id[r] < 0) id[r] = vx.circles++;
      vx.circle_of_label[l] = id[r];
    }
  }
  const int n_minus = analysis.n_minus, n_plus = analysis.n_plus;
  auto grading = [&](int v, int mask) {
    int height = __builtin_popcount(v);
    int xs = __builtin_popcount(mask);
    int ones = cube[v].circles - xs;
    return std::pair{height - n_minus, ones - xs + height + n_plus - 2 * n_minus};
  };
  // generators grouped by bidegree
  std::map<std::pair<int, int>, std::map<std::pair<int, int>, int>> groups;
  for (int v = 0; v < V; ++v) {
    for (int mask = 0; mask < (1 << cube[v].circles); ++mask) {
      auto& g = groups[grading(v, mask)];
      g.emplace(std::pair{v, mask}, static_cast<int>(g.size()));
    }
  }
  auto image = [&](int v, int mask) {
    std::map<std::pair<int, int>, Rational> out;  // (v', mask') -> coefficient
    for (int x = 0; x < n; ++x) {
      if ((v >> x) & 1) continue;
      const int w = v | (1 << x);
      const int sign = (__builtin_popcount(v & ((1 << x) - 1)) % 2) ? -1 : 1;
      const Vertex& a = cube[v];
      const Vertex& b = cube[w];
      const int ca = a.circle_of_label[li(x, 0)], cc = a.circle_of_label[li(x, 2)];
      int base = 0;
      std::vector<int> rep(a.circles, -1);
      for (int l = 0; l < L; ++l) {
        if (rep[a.circle_of_label[l]] < 0) rep[a.circle_of_label[l]] = l;
      }
      for (int c = 0; c < a.circles; ++c) {
        if (c == ca || c == cc) continue;
        if ((mask >> c) & 1) base |= 1 << b.circle_of_label[rep[c]];
      }
      if (ca != cc) {  // merge
        int xa = (mask >> ca) & 1, xc = (mask >> cc) & 1;
        if (xa && xc) continue;
        int merged = b.circle_of_label[li(x, 0)];
        out[{w, base | ((xa | xc) << merged)}] += sign;
      } else {  // split
        int p = b.circle_of_label[li(x, 0)], q = b.circle_of_label[li(x, 2)];
        if ((mask >> ca) & 1) {
          out[{w, base | (1 << p) | (1 << q)}] += sign;
        } else {
          out[{w, base | (1 << p)}] += sign;
          out[{w, base | (1 << q)}] += sign;
        }
      }
    }
    return out;
  };
  std::map<std::pair<int, int>, int> ranks;
  for (const auto& [ij, gens] : groups) {
    auto target = groups.find({ij.first + 1, ij.second});
    if (target == groups.end()) continue;
    std::vector<SparseRow> rows;
    for (const auto& [gen, idx] : gens) {
      SparseRow row;
      for (const auto& [img, c] : image(gen.first, gen.second)) {
        if (c != 0) row[target->second.at(img)] += c;
      }
      rows.push_back(std::move(row));
    }
    ranks[ij] = rank(std::move(rows));
  }
  std::map<std::pair<int, int>, int> dims;
  for (const auto& [ij, gens] : groups) {
    int d = static_cast<int>(gens.size());
    if (auto it = ranks.find(ij); it != ranks.end()) d -= it->second;
    if (auto it = ranks.find({ij.first - 1, ij.second}); it != ranks.end()) d -= it->second;
    if (d) dims[ij] = d;
  }
  return HomologyTable(std::move(dims));
}

std::optional<int> two_line_check(const HomologyTable& table) {
  if (table.dims().empty()) return 0;
  int lo = 0, hi = 0;
  bool first = true;
  for (const auto& [ij, d] : table.dims()) {
    int v = ij.second - 2 * ij.first;
    lo = first ? v : std::min(lo, v);
    hi = first ? v : std::max(hi, v);
    first = false;
  }
  if (hi - lo == 0 || hi - lo == 2) return lo + 1;
  return std::nullopt;
}

}  // namespace kht

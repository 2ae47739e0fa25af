#include "khtangle/complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "khtangle/error.hpp"
#include "khtangle/linalg.hpp"

namespace kht {

std::vector<int> Complex::degrees() const {
  std::vector<int> out;
  for (const auto& [r, objs] : objects_) out.push_back(r);
  return out;
}

int Complex::size() const {
  int n = 0;
  for (const auto& [r, objs] : objects_) n += static_cast<int>(objs.size());
  return n;
}

const std::vector<ShiftedSmoothing>& Complex::objects(int r) const {
  static const std::vector<ShiftedSmoothing> none;
  auto it = objects_.find(r);
  return it == objects_.end() ? none : it->second;
}

const Differential& Complex::differential(int r) const {
  static const Differential none;
  auto it = diffs_.find(r);
  return it == diffs_.end() ? none : it->second;
}

const MorphismCombo* Complex::entry(int r, int source, int target) const {
  const Differential& d = differential(r);
  auto it = d.find({source, target});
  return it == d.end() ? nullptr : &it->second;
}

int Complex::add_object(int r, ShiftedSmoothing s) {
  if (s.smoothing.k() != k_) {
    throw Error(ErrorCode::BoundaryMismatch, "object " + s.smoothing.to_string() + " in a k=" +
                                                 std::to_string(k_) + " complex");
  }
  auto& objs = objects_[r];
  objs.push_back(std::move(s));
  return static_cast<int>(objs.size()) - 1;
}

void Complex::set_entry(int r, int source, int target, MorphismCombo m) {
  if (m.is_zero()) {
    auto it = diffs_.find(r);
    if (it != diffs_.end()) {
      it->second.erase({source, target});
      if (it->second.empty()) diffs_.erase(it);
    }
    return;
  }
  diffs_[r].insert_or_assign({source, target}, std::move(m));
}

void Complex::add_to_entry(int r, int source, int target, const MorphismCombo& m) {
  if (m.is_zero()) return;
  const MorphismCombo* existing = entry(r, source, target);
  if (!existing) {
    set_entry(r, source, target, m);
  } else {
    set_entry(r, source, target, *existing + m);
  }
}

ValidationReport validate(const Complex& c) {
  ValidationReport report;
  auto where = [](int r, int i, int j) {
    return "d^" + std::to_string(r) + "[" + std::to_string(i) + "->" + std::to_string(j) + "]";
  };
  for (int r : c.degrees()) {
    for (const auto& s : c.objects(r)) {
      if (s.smoothing.k() != c.k()) report.problems.push_back("object with wrong boundary at degree " + std::to_string(r));
    }
  }
  std::set<int> rs;
  for (int r : c.degrees()) {
    rs.insert(r);
    rs.insert(r - 1);
  }
  for (int r : rs) {
    const auto& src = c.objects(r);
    const auto& tgt = c.objects(r + 1);
    for (const auto& [key, m] : c.differential(r)) {
      auto [i, j] = key;
      if (i < 0 || i >= static_cast<int>(src.size()) || j < 0 || j >= static_cast<int>(tgt.size())) {
        report.problems.push_back(where(r, i, j) + " out of range");
        continue;
      }
      if (m.source() != src[i].smoothing || m.target() != tgt[j].smoothing) {
        report.problems.push_back(where(r, i, j) + " has wrong ends");
        continue;
      }
      Degree d = degree(m, src[i].shift, tgt[j].shift);
      if (d.kind == Degree::NonHomogeneous || (d.kind == Degree::Homogeneous && d.value != 0)) {
        report.problems.push_back(where(r, i, j) + " has degree " +
                                  (d.kind == Degree::NonHomogeneous ? std::string("mixed")
                                                                    : std::to_string(d.value)));
      }
    }
  }
  if (!report.ok()) return report;
  for (int r : rs) {
    const Differential& d1 = c.differential(r);
    const Differential& d2 = c.differential(r + 1);
    if (d1.empty() || d2.empty()) continue;
    std::map<int, std::vector<std::pair<int, const MorphismCombo*>>> from_middle;
    for (const auto& [key, m] : d2) from_middle[key.first].emplace_back(key.second, &m);
    std::map<std::pair<int, int>, MorphismCombo> square;
    for (const auto& [key, f] : d1) {
      auto it = from_middle.find(key.second);
      if (it == from_middle.end()) continue;
      for (const auto& [l, g] : it->second) {
        MorphismCombo comp = compose_vertical(*g, f);
        auto [pos, inserted] = square.try_emplace({key.first, l}, comp);
        if (!inserted) pos->second += comp;
      }
    }
    for (const auto& [key, m] : square) {
      if (!m.is_zero()) {
        report.problems.push_back("d^" + std::to_string(r + 1) + " d^" + std::to_string(r) + " nonzero at [" +
                                  std::to_string(key.first) + "->" + std::to_string(key.second) + "]");
      }
    }
  }
  return report;
}

namespace {

struct Node {
  ShiftedSmoothing object;
  std::vector<int> key;
  bool alive = true;
  std::pair<int, int> origin{0, 0};
};

struct Level {
  std::vector<Node> nodes;
  std::vector<std::map<int, MorphismCombo>> out;  // to degree r + 1
  std::vector<std::set<int>> in;                  // from degree r - 1
};

/// Mutable form of a complex with lazy deletion; all reductions run here.
class Workspace {
 public:
  explicit Workspace(const Complex& c) : k_(c.k()) {
    for (int r : c.degrees()) {
      Level& level = levels_[r];
      const auto& objs = c.objects(r);
      for (std::size_t i = 0; i < objs.size(); ++i) {
        level.nodes.push_back(Node{objs[i], {static_cast<int>(i)}});
      }
      level.out.resize(objs.size());
      level.in.resize(objs.size());
    }
    for (int r : c.degrees()) {
      for (const auto& [key, m] : c.differential(r)) {
        levels_[r].out[key.first].emplace(key.second, m);
        levels_[r + 1].in[key.second].insert(key.first);
      }
    }
  }

  Complex export_complex() const {
    Complex c(k_);
    std::map<int, std::vector<int>> index;
    for (const auto& [r, level] : levels_) {
      std::vector<int> order;
      for (std::size_t i = 0; i < level.nodes.size(); ++i) {
        if (level.nodes[i].alive) order.push_back(static_cast<int>(i));
      }
      std::sort(order.begin(), order.end(),
                [&](int a, int b) { return level.nodes[a].key < level.nodes[b].key; });
      auto& idx = index[r];
      idx.assign(level.nodes.size(), -1);
      for (int i : order) idx[i] = c.add_object(r, level.nodes[i].object);
    }
    for (const auto& [r, level] : levels_) {
      for (std::size_t i = 0; i < level.nodes.size(); ++i) {
        if (!level.nodes[i].alive) continue;
        for (const auto& [j, m] : level.out[i]) c.set_entry(r, index[r][i], index[r + 1][j], m);
      }
    }
    return c;
  }

  Level& level(int r) { return levels_[r]; }
  const std::map<int, Level>& levels() const { return levels_; }

  /// Index of the workspace node currently at complex position idx.
  int node_at(int r, int idx) {
    Level& level = levels_[r];
    std::vector<int> order;
    for (std::size_t i = 0; i < level.nodes.size(); ++i) {
      if (level.nodes[i].alive) order.push_back(static_cast<int>(i));
    }
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return level.nodes[a].key < level.nodes[b].key; });
    if (idx < 0 || idx >= static_cast<int>(order.size())) {
      throw Error(ErrorCode::BadInput, "no object " + std::to_string(idx) + " at degree " + std::to_string(r));
    }
    return order[idx];
  }

  int add_node(int r, Node node) {
    Level& level = levels_[r];
    level.nodes.push_back(std::move(node));
    level.out.emplace_back();
    level.in.emplace_back();
    return static_cast<int>(level.nodes.size()) - 1;
  }

  void set(int r, int i, int j, MorphismCombo m) {
    auto& row = levels_[r].out[i];
    if (m.is_zero()) {
      row.erase(j);
      levels_[r + 1].in[j].erase(i);
    } else {
      row.insert_or_assign(j, std::move(m));
      levels_[r + 1].in[j].insert(i);
    }
  }

  void remove(int r, int i) {
    Level& level = levels_[r];
    for (int s : level.in[i]) levels_[r - 1].out[s].erase(i);
    level.in[i].clear();
    for (const auto& [t, m] : level.out[i]) levels_[r + 1].in[t].erase(i);
    level.out[i].clear();
    level.nodes[i].alive = false;
  }

  /// Returns the indices of the (q+1, q-1) copies.
  std::pair<int, int> deloop(int r, int i, int loop) {
    const Node node = levels_[r].nodes[i];
    const OrientedSmoothing& s = node.object.smoothing;
    if (loop < 0 || loop >= static_cast<int>(s.loops().size())) {
      throw Error(ErrorCode::NoLoopAtPosition, s.to_string() + " has no loop " + std::to_string(loop));
    }
    const int sign = s.loops()[loop];
    OrientedSmoothing reduced = s.without_loop(loop);
    auto key_plus = node.key, key_minus = node.key;
    key_plus.push_back(0);
    key_minus.push_back(1);
    int plus = add_node(r, Node{{reduced, node.object.shift + 1}, key_plus, true, {sign, +1}});
    int minus = add_node(r, Node{{reduced, node.object.shift - 1}, key_minus, true, {sign, -1}});

    MorphismCombo dotted_cap = cap(s, loop, true);
    MorphismCombo plain_cap = cap(s, loop, false);
    MorphismCombo plain_cup = cup(s, loop, false);
    MorphismCombo dotted_cup = cup(s, loop, true);

    std::vector<int> sources(levels_[r].in[i].begin(), levels_[r].in[i].end());
    for (int src : sources) {
      const MorphismCombo& m = levels_[r - 1].out[src].at(i);
      set(r - 1, src, plus, compose_vertical(dotted_cap, m));
      set(r - 1, src, minus, compose_vertical(plain_cap, m));
    }
    std::vector<std::pair<int, MorphismCombo>> targets(levels_[r].out[i].begin(), levels_[r].out[i].end());
    for (const auto& [t, m] : targets) {
      set(r, plus, t, compose_vertical(m, plain_cup));
      set(r, minus, t, compose_vertical(m, dotted_cup));
    }
    remove(r, i);
    return {plus, minus};
  }

  void eliminate(int r, int i, int j) {
    Level& src_level = levels_[r];
    auto pivot_it = src_level.out[i].find(j);
    if (pivot_it == src_level.out[i].end()) throw Error(ErrorCode::NotInvertible, "zero entry");
    std::optional<Rational> scalar = identity_scalar(pivot_it->second);
    if (!scalar) throw Error(ErrorCode::NotInvertible, to_string(pivot_it->second));
    const Rational inv = 1 / *scalar;

    std::vector<std::pair<int, MorphismCombo>> gammas;
    for (const auto& [e, g] : src_level.out[i]) {
      if (e != j) gammas.emplace_back(e, g);
    }
    std::vector<std::pair<int, MorphismCombo>> deltas;
    for (int s : levels_[r + 1].in[j]) {
      if (s != i) deltas.emplace_back(s, levels_[r].out[s].at(j));
    }
    for (const auto& [s, delta] : deltas) {
      for (const auto& [e, gamma] : gammas) {
        MorphismCombo correction = compose_vertical(gamma, delta);
        if (correction.is_zero()) continue;
        correction *= -inv;
        auto& row = levels_[r].out[s];
        auto it = row.find(e);
        if (it == row.end()) {
          set(r, s, e, std::move(correction));
        } else {
          set(r, s, e, it->second + correction);
        }
      }
    }
    remove(r, i);
    remove(r + 1, j);
  }

 private:
  int k_;
  std::map<int, Level> levels_;
};

}  // namespace

Complex deloop(const Complex& c, int r, int idx, std::optional<int> loop) {
  if (idx < 0 || idx >= static_cast<int>(c.objects(r).size())) {
    throw Error(ErrorCode::NoLoopAtPosition, "no object at that position");
  }
  const auto& loops = c.objects(r)[idx].smoothing.loops();
  if (loops.empty()) throw Error(ErrorCode::NoLoopAtPosition, "object has no loop");
  Workspace ws(c);
  ws.deloop(r, idx, loop.value_or(static_cast<int>(loops.size()) - 1));
  return ws.export_complex();
}

Complex gaussian_eliminate(const Complex& c, int r, int i, int j) {
  const MorphismCombo* m = c.entry(r, i, j);
  if (!m || !is_invertible_entry(*m)) throw Error(ErrorCode::NotInvertible, "entry is not a scalar identity");
  Workspace ws(c);
  ws.eliminate(r, i, j);
  return ws.export_complex();
}

Complex exchange(const Complex& c, int r, int i, int j) {
  const int n = static_cast<int>(c.objects(r).size());
  if (i < 0 || j < 0 || i >= n || j >= n) throw Error(ErrorCode::BadInput, "exchange index out of range");
  auto swap_index = [&](int x) { return x == i ? j : x == j ? i : x; };
  Complex out(c.k());
  for (int deg : c.degrees()) {
    const auto& objs = c.objects(deg);
    for (int x = 0; x < static_cast<int>(objs.size()); ++x) {
      out.add_object(deg, objs[deg == r ? swap_index(x) : x]);
    }
  }
  std::set<int> rs;
  for (int deg : c.degrees()) {
    rs.insert(deg);
    rs.insert(deg - 1);
  }
  for (int deg : rs) {
    for (const auto& [key, m] : c.differential(deg)) {
      int a = deg == r ? swap_index(key.first) : key.first;
      int b = deg + 1 == r ? swap_index(key.second) : key.second;
      out.set_entry(deg, a, b, m);
    }
  }
  return out;
}

Complex reduce(const Complex& c, const ReductionObserver& observer) {
  Workspace ws(c);
  std::vector<int> rs;
  for (const auto& [r, level] : ws.levels()) rs.push_back(r);
  for (int r : rs) {
    for (std::size_t i = 0; i < ws.level(r).nodes.size(); ++i) {
      Node& node = ws.level(r).nodes[i];
      if (!node.alive || node.object.smoothing.loops().empty()) continue;
      ReductionEvent event;
      event.kind = ReductionEvent::Deloop;
      event.degree = r;
      event.object = node.object;
      event.loop_sign = node.object.smoothing.loops().back();
      ws.deloop(r, static_cast<int>(i), static_cast<int>(node.object.smoothing.loops().size()) - 1);
      if (observer) observer(event, ws.export_complex());
    }
  }
  std::map<int, std::vector<int>> order;
  for (int r : rs) {
    const auto& nodes = ws.level(r).nodes;
    auto& o = order[r];
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].alive) o.push_back(static_cast<int>(i));
    }
    std::sort(o.begin(), o.end(), [&](int a, int b) { return nodes[a].key < nodes[b].key; });
  }
  bool found = true;
  while (found) {
    found = false;
    for (int r : rs) {
      for (int i : order[r]) {
        Level& level = ws.level(r);
        if (!level.nodes[i].alive) continue;
        std::optional<int> pivot;
        const auto& targets = ws.level(r + 1).nodes;
        for (const auto& [j, m] : level.out[i]) {
          if ((!pivot || targets[j].key < targets[*pivot].key) && is_invertible_entry(m)) pivot = j;
        }
        if (!pivot) continue;
        ReductionEvent event;
        event.kind = ReductionEvent::Eliminate;
        event.degree = r;
        event.object = level.nodes[i].object;
        event.source_origin = level.nodes[i].origin;
        event.partner = ws.level(r + 1).nodes[*pivot].object;
        event.target_origin = ws.level(r + 1).nodes[*pivot].origin;
        ws.eliminate(r, i, *pivot);
        found = true;
        if (observer) observer(event, ws.export_complex());
      }
    }
  }
  return ws.export_complex();
}

Numeration numerate(const Complex& c) {
  Numeration n;
  for (int r : c.degrees()) {
    for (int i = 0; i < static_cast<int>(c.objects(r).size()); ++i) n.position[{r, i}] = ++n.size;
  }
  return n;
}

Diagonality is_diagonal(const Complex& c) {
  Diagonality result;
  for (int r : c.degrees()) {
    const auto& objs = c.objects(r);
    for (int i = 0; i < static_cast<int>(objs.size()); ++i) {
      Rational value = 2 * r - shifted_rotation(objs[i]);
      if (!result.constant) {
        result.constant = value;
      } else if (*result.constant != value) {
        result.diagonal = false;
        result.degree = r;
        result.index = i;
        return result;
      }
    }
  }
  return result;
}

HomologyTable::HomologyTable(std::map<std::pair<int, int>, int> dims) : dims_(std::move(dims)) {
  std::erase_if(dims_, [](const auto& e) { return e.second == 0; });
}

int HomologyTable::at(int i, int j) const {
  auto it = dims_.find({i, j});
  return it == dims_.end() ? 0 : it->second;
}

int HomologyTable::total() const {
  int t = 0;
  for (const auto& [key, d] : dims_) t += d;
  return t;
}

std::string HomologyTable::to_tsv() const {
  std::ostringstream out;
  if (dims_.empty()) {
    out << "j\\i\n";
    return out.str();
  }
  int imin = dims_.begin()->first.first, imax = dims_.rbegin()->first.first;
  int jmin = dims_.begin()->first.second, jmax = jmin;
  bool same_parity = true;
  for (const auto& [key, d] : dims_) {
    jmin = std::min(jmin, key.second);
    jmax = std::max(jmax, key.second);
  }
  for (const auto& [key, d] : dims_) same_parity = same_parity && ((key.second - jmin) % 2 == 0);
  const int step = same_parity ? 2 : 1;
  out << "j\\i";
  for (int i = imin; i <= imax; ++i) out << '\t' << i;
  out << '\n';
  for (int j = jmax; j >= jmin; j -= step) {
    out << j;
    for (int i = imin; i <= imax; ++i) {
      out << '\t';
      if (int d = at(i, j)) out << d;
    }
    out << '\n';
  }
  return out.str();
}

std::string HomologyTable::to_string() const {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& [key, d] : dims_) {
    out << (first ? "" : ", ") << "(" << key.first << "," << key.second << "):" << d;
    first = false;
  }
  out << "}";
  return out.str();
}

HomologyTable homology_table(const Complex& c) {
  if (c.k() != 0) throw Error(ErrorCode::NotClosed, "homology needs a closed complex, k=" + std::to_string(c.k()));
  Workspace ws(c);
  std::vector<int> rs;
  for (const auto& [r, level] : ws.levels()) rs.push_back(r);
  for (int r : rs) {
    for (std::size_t i = 0; i < ws.level(r).nodes.size(); ++i) {
      while (ws.level(r).nodes[i].alive && !ws.level(r).nodes[i].object.smoothing.loops().empty()) {
        ws.deloop(r, static_cast<int>(i), static_cast<int>(ws.level(r).nodes[i].object.smoothing.loops().size()) - 1);
      }
    }
  }
  // objects are now empty smoothings; entries are scalars
  std::map<std::pair<int, int>, std::map<int, int>> column;  // (r, q) -> node -> column index
  for (int r : rs) {
    const auto& nodes = ws.level(r).nodes;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (!nodes[i].alive) continue;
      auto& cols = column[{r, nodes[i].object.shift}];
      cols.emplace(static_cast<int>(i), static_cast<int>(cols.size()));
    }
  }
  std::map<std::pair<int, int>, int> rank_out;  // rank of d from (r, q)
  for (const auto& [rq, cols] : column) {
    auto [r, q] = rq;
    auto target = column.find({r + 1, q});
    if (target == column.end()) continue;
    std::vector<SparseRow> rows;
    for (const auto& [node, idx] : cols) {
      SparseRow row;
      for (const auto& [j, m] : ws.level(r).out[node]) {
        auto t = target->second.find(j);
        if (t == target->second.end()) continue;
        for (const auto& [surface, coef] : m.terms()) row[t->second] += coef;
      }
      rows.push_back(std::move(row));
    }
    rank_out[rq] = rank(std::move(rows));
  }
  std::map<std::pair<int, int>, int> dims;
  for (const auto& [rq, cols] : column) {
    auto [r, q] = rq;
    int d = static_cast<int>(cols.size());
    if (auto it = rank_out.find(rq); it != rank_out.end()) d -= it->second;
    if (auto it = rank_out.find({r - 1, q}); it != rank_out.end()) d -= it->second;
    if (d) dims[{r, q}] = d;
  }
  return HomologyTable(std::move(dims));
}

}  // namespace kht

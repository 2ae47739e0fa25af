#include "khtangle/planar.hpp"

#include <array>
#include <map>
#include <queue>

#include "khtangle/error.hpp"
#include "union_find.hpp"

namespace kht {

using detail::UnionFind;

namespace {

int wrap(int p, int n) { return ((p % n) + n) % n; }

// Curves leave the output at In points and input discs at Out points.
bool is_tail_end(const Endpoint& e) { return (e.disc == 0) == (e.point % 2 == 0); }

std::string describe(const Endpoint& e) {
  return "(" + std::to_string(e.disc) + "," + std::to_string(e.point) + ")";
}

}  // namespace

PlanarArcDiagram PlanarArcDiagram::make(const DiagramSpec& spec) {
  PlanarArcDiagram D;
  D.spec_ = spec;
  const int d = static_cast<int>(spec.input_k.size());
  if (d == 0) throw Error(ErrorCode::BadInput, "diagram without input discs");
  if (spec.output_k < 0) throw Error(ErrorCode::BadInput, "negative output size");
  std::vector<int> ks{spec.output_k};
  for (int k : spec.input_k) {
    if (k < 1) throw Error(ErrorCode::BadInput, "input disc without boundary points");
    ks.push_back(k);
  }
  D.offset_.assign(d + 2, 0);
  for (int c = 0; c <= d; ++c) D.offset_[c + 1] = D.offset_[c] + 2 * ks[c];
  const int N = D.offset_[d + 1];
  D.arc_at_.assign(N, -1);

  auto vertex = [&](const Endpoint& e) { return D.offset_[e.disc] + e.point; };
  for (const auto& [x, y] : spec.arcs) {
    for (const Endpoint& e : {x, y}) {
      if (e.disc < 0 || e.disc > d || e.point < 0 || e.point >= 2 * ks[e.disc]) {
        throw Error(ErrorCode::BadInput, "arc endpoint " + describe(e) + " out of range");
      }
      if (D.arc_at_[vertex(e)] != -1) throw Error(ErrorCode::BadInput, "point " + describe(e) + " used twice");
      D.arc_at_[vertex(e)] = static_cast<int>(D.arcs_.size());
    }
    if (x == y) throw Error(ErrorCode::BadInput, "degenerate arc");
    if (x.disc == 0 && y.disc == 0) {
      throw Error(ErrorCode::NotTypeA, "arc " + describe(x) + "-" + describe(y) + " joins two output points");
    }
    if (is_tail_end(x) == is_tail_end(y)) {
      throw Error(ErrorCode::OrientationClash, "arc " + describe(x) + "-" + describe(y) + " joins like flags");
    }
    D.arcs_.push_back(is_tail_end(x) ? Arc{x, y} : Arc{y, x});
  }
  for (int v = 0; v < N; ++v) {
    if (D.arc_at_[v] == -1) throw Error(ErrorCode::BadInput, "unmatched boundary point");
  }
  if (spec.output_k == 0) {
    if (!spec.outer || spec.outer->disc < 1 || spec.outer->disc > d || spec.outer->point < 0 ||
        spec.outer->point >= 2 * ks[spec.outer->disc]) {
      throw Error(ErrorCode::BadInput, "closed diagram needs an outer input segment");
    }
  }
  {
    UnionFind discs(d + 1);
    for (const Arc& a : D.arcs_) discs.unite(a.tail.disc, a.head.disc);
    for (int c = spec.output_k == 0 ? 2 : 1; c <= d; ++c) {
      if (discs.find(c) != discs.find(spec.output_k == 0 ? 1 : 0)) {
        throw Error(ErrorCode::Disconnected, "input disc " + std::to_string(c) + " is not connected");
      }
    }
  }

  // Darts: 2e forward, 2e+1 reverse. Arc edges first, then one segment p -> p+1 per point.
  const int A = static_cast<int>(D.arcs_.size());
  std::vector<Endpoint> point_of(N);
  for (int c = 0; c <= d; ++c) {
    for (int p = 0; p < 2 * ks[c]; ++p) point_of[D.offset_[c] + p] = Endpoint{c, p};
  }
  auto seg = [&](int c, int p) { return A + D.offset_[c] + wrap(p, 2 * ks[c]); };
  std::vector<int> dart_tail(2 * (A + N));
  for (int a = 0; a < A; ++a) {
    dart_tail[2 * a] = vertex(D.arcs_[a].tail);
    dart_tail[2 * a + 1] = vertex(D.arcs_[a].head);
  }
  for (int v = 0; v < N; ++v) {
    const Endpoint& e = point_of[v];
    dart_tail[2 * seg(e.disc, e.point)] = v;
    dart_tail[2 * seg(e.disc, e.point) + 1] = vertex(Endpoint{e.disc, wrap(e.point + 1, 2 * ks[e.disc])});
  }
  std::vector<std::array<int, 3>> rotation(N);
  std::vector<int> slot(2 * (A + N));
  for (int v = 0; v < N; ++v) {
    const Endpoint& e = point_of[v];
    const int a = D.arc_at_[v];
    const int arc_dart = 2 * a + (vertex(D.arcs_[a].tail) == v ? 0 : 1);
    const int fwd = 2 * seg(e.disc, e.point);
    const int rev = 2 * seg(e.disc, e.point - 1) + 1;
    rotation[v] = e.disc == 0 ? std::array<int, 3>{fwd, arc_dart, rev} : std::array<int, 3>{arc_dart, fwd, rev};
    for (int i = 0; i < 3; ++i) slot[rotation[v][i]] = i;
  }
  auto next = [&](int dart) {
    const int back = dart ^ 1;
    const int v = dart_tail[back];
    return rotation[v][(slot[back] + 2) % 3];
  };
  std::vector<int> face_of(2 * (A + N), -1);
  std::vector<std::vector<int>> faces;
  for (int start = 0; start < 2 * (A + N); ++start) {
    if (face_of[start] != -1) continue;
    std::vector<int> cycle;
    for (int x = start; face_of[x] == -1; x = next(x)) {
      face_of[x] = static_cast<int>(faces.size());
      cycle.push_back(x);
    }
    faces.push_back(std::move(cycle));
  }
  if (N - (A + N) + static_cast<int>(faces.size()) != 2) {
    throw Error(ErrorCode::CrossingArcs, "arcs cannot be drawn without crossings");
  }

  auto is_segment = [&](int dart) { return dart / 2 >= A; };
  auto segment_point = [&](int dart) { return point_of[dart / 2 - A]; };
  std::vector<int> d_face(faces.size(), -1);
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const int x = faces[f][0];
    bool hole = is_segment(x) && ((segment_point(x).disc == 0) == (x % 2 == 1));
    if (hole) continue;  // interior of an input disc or the outside of the output disc
    int shade = -1;
    bool touches_output = false;
    for (int y : faces[f]) {
      int s;
      if (!is_segment(y)) {
        s = (y % 2 == 0) ? 1 : 0;
      } else {
        Endpoint e = segment_point(y);
        if (e.disc == 0) touches_output = true;
        s = e.point % 2;
      }
      if (shade == -1) shade = s;
      if (shade != s) throw Error(ErrorCode::OrientationClash, "face colouring is inconsistent");
    }
    d_face[f] = static_cast<int>(D.face_shaded_.size());
    D.face_shaded_.push_back(shade == 1);
    D.face_output_.push_back(touches_output);
  }
  D.segment_face_.assign(N, -1);
  for (int c = 1; c <= d; ++c) {
    for (int p = 0; p < 2 * ks[c]; ++p) D.segment_face_[D.offset_[c] + p] = d_face[face_of[2 * seg(c, p) + 1]];
  }
  for (int a = 0; a < A; ++a) D.arc_faces_.emplace_back(d_face[face_of[2 * a]], d_face[face_of[2 * a + 1]]);
  D.root_face_ = spec.output_k > 0 ? d_face[face_of[2 * seg(0, 0)]]
                                   : d_face[face_of[2 * seg(spec.outer->disc, spec.outer->point) + 1]];

  ArcClassification& cls = D.classification_;
  for (const Arc& a : D.arcs_) {
    ArcKind kind = a.tail.disc == 0 || a.head.disc == 0 ? ArcKind::Boundary
                   : a.tail.disc == a.head.disc         ? ArcKind::Curl
                                                        : ArcKind::Interconnecting;
    cls.kinds.push_back(kind);
    (kind == ArcKind::Boundary ? cls.boundary : kind == ArcKind::Curl ? cls.curls : cls.interconnecting)++;
  }
  cls.i_D = cls.curls + cls.interconnecting;
  int white = 0;
  for (int f = 0; f < D.face_count(); ++f) {
    if (D.face_shaded_[f]) continue;
    ++white;
    if (!D.face_output_[f] && !(spec.output_k == 0 && f == D.root_face_)) ++cls.w_D;
  }
  if (spec.output_k > 0) {
    cls.R_D = make_rational(1 + A - d, 2) - white;
  } else {
    cls.R_D = make_rational(cls.i_D - d, 2) - cls.w_D + (D.face_shaded_[D.root_face_] ? 0 : 1);
  }
  return D;
}

ArcClassification classify(const PlanarArcDiagram& d) { return d.classification(); }

PlanarArcDiagram unary_basic(int k, int position, int sign) {
  if (k < 1 || position < 0 || position >= 2 * k) throw Error(ErrorCode::Incompatible, "curl position out of range");
  const int expected = position % 2 == 1 ? 1 : -1;
  if (sign != expected) {
    throw Error(ErrorCode::Incompatible, "a curl at position " + std::to_string(position) + " closes a " +
                                             (expected > 0 ? "positive" : "negative") + " loop");
  }
  const int n = 2 * k;
  DiagramSpec spec;
  spec.output_k = k - 1;
  spec.input_k = {k};
  spec.arcs.push_back({Endpoint{1, position}, Endpoint{1, wrap(position + 1, n)}});
  const int first = position % 2 == 0 ? position + 2 : position + 3;
  for (int o = 0; o < n - 2; ++o) {
    int p = first + o;
    if (wrap(p - position, n) < 2) p += 2;  // skip the curl's endpoints
    spec.arcs.push_back({Endpoint{0, o}, Endpoint{1, wrap(p, n)}});
  }
  if (k == 1) spec.outer = Endpoint{1, wrap(position + 1, n)};
  return PlanarArcDiagram::make(spec);
}

PlanarArcDiagram binary_basic(int k1, int k2, int glue1, int glue2) {
  if (k1 < 1 || k2 < 1 || glue1 < 0 || glue1 >= 2 * k1 || glue2 < 0 || glue2 >= 2 * k2) {
    throw Error(ErrorCode::Incompatible, "glue point out of range");
  }
  if ((glue1 + glue2) % 2 == 0) throw Error(ErrorCode::OrientationClash, "glued points carry the same flag");
  std::vector<Endpoint> rim;
  for (int i = 1; i < 2 * k1; ++i) rim.push_back(Endpoint{1, wrap(glue1 + i, 2 * k1)});
  for (int i = 1; i < 2 * k2; ++i) rim.push_back(Endpoint{2, wrap(glue2 + i, 2 * k2)});
  std::size_t start = 0;
  while (rim[start].point % 2 != 0) ++start;
  DiagramSpec spec;
  spec.output_k = k1 + k2 - 1;
  spec.input_k = {k1, k2};
  spec.arcs.push_back({Endpoint{1, glue1}, Endpoint{2, glue2}});
  for (std::size_t o = 0; o < rim.size(); ++o) {
    spec.arcs.push_back({Endpoint{0, static_cast<int>(o)}, rim[(start + o) % rim.size()]});
  }
  return PlanarArcDiagram::make(spec);
}

PlanarArcDiagram radial_identity(int k) {
  DiagramSpec spec;
  spec.output_k = k;
  spec.input_k = {k};
  for (int p = 0; p < 2 * k; ++p) spec.arcs.push_back({Endpoint{0, p}, Endpoint{1, p}});
  return PlanarArcDiagram::make(spec);
}

Gluing glue_smoothings(const PlanarArcDiagram& D, const std::vector<OrientedSmoothing>& inputs) {
  const int d = D.inputs();
  if (static_cast<int>(inputs.size()) != d) throw Error(ErrorCode::BoundaryMismatch, "wrong number of inputs");
  for (int c = 1; c <= d; ++c) {
    if (inputs[c - 1].boundary() != BoundaryConfig(D.input_k(c))) {
      throw Error(ErrorCode::BoundaryMismatch, "input " + std::to_string(c) + " does not fit its disc");
    }
  }
  const auto& arcs = D.arcs();
  std::vector<std::vector<char>> visited(d);
  for (int c = 0; c < d; ++c) visited[c].assign(inputs[c].strands().size(), 0);

  struct Curve {
    std::vector<std::pair<int, int>> parts;  // (input, strand id)
    int first_arc = -1;
    int start = -1, end = -1;  // output points, strands only
  };
  // follows the curve entering input disc at `e` until it reaches the output or `stop`
  auto follow = [&](Endpoint e, Curve& curve, const Endpoint* stop) {
    while (true) {
      const OrientedSmoothing& s = inputs[e.disc - 1];
      int id = s.strand_at(e.point);
      visited[e.disc - 1][id] = 1;
      curve.parts.emplace_back(e.disc - 1, id);
      int a = D.arc_at(Endpoint{e.disc, s.strands()[id].end});
      Endpoint h = arcs[a].head;
      if (h.disc == 0) {
        curve.end = h.point;
        return;
      }
      if (stop && h == *stop) return;
      e = h;
    }
  };

  std::vector<Curve> open, closed;
  for (int p = 0; p < 2 * D.output_k(); p += 2) {
    Curve curve;
    curve.first_arc = D.arc_at(Endpoint{0, p});
    curve.start = p;
    follow(arcs[curve.first_arc].head, curve, nullptr);
    open.push_back(std::move(curve));
  }
  for (int c = 0; c < d; ++c) {
    for (std::size_t id = 0; id < inputs[c].strands().size(); ++id) {
      if (visited[c][id]) continue;
      Endpoint entry{c + 1, inputs[c].strands()[id].start};
      Curve curve;
      curve.first_arc = D.arc_at(entry);
      follow(entry, curve, &entry);
      closed.push_back(std::move(curve));
    }
  }

  std::vector<Strand> strands;
  for (const Curve& cv : open) strands.push_back(Strand{cv.start, cv.end});
  std::vector<int> loops;
  for (const auto& s : inputs) loops.insert(loops.end(), s.loops().begin(), s.loops().end());

  if (!closed.empty()) {
    // Regions of the output disc cut by the traced curves: faces of D merged
    // with the sub-faces of every input smoothing.
    std::vector<int> base(d + 1, D.face_count());
    for (int c = 0; c < d; ++c) base[c + 1] = base[c] + 2 * D.input_k(c + 1);
    UnionFind regions(base[d]);
    for (int c = 0; c < d; ++c) {
      const OrientedSmoothing& s = inputs[c];
      const int n = 2 * s.k();
      for (int p = 0; p < n; ++p) {
        regions.unite(base[c] + p, base[c] + s.partner(wrap(p + 1, n)));
        regions.unite(base[c] + p, D.segment_face(c + 1, p));
      }
    }
    std::map<int, std::vector<int>> adjacent;
    auto sides = [&](const Curve& cv) {
      return std::pair{regions.find(D.arc_left_face(cv.first_arc)), regions.find(D.arc_right_face(cv.first_arc))};
    };
    for (const auto* list : {&open, &closed}) {
      for (const Curve& cv : *list) {
        auto [l, r] = sides(cv);
        adjacent[l].push_back(r);
        adjacent[r].push_back(l);
      }
    }
    std::map<int, int> depth;
    std::queue<int> todo;
    const int root = regions.find(D.root_face());
    depth[root] = 0;
    todo.push(root);
    while (!todo.empty()) {
      int x = todo.front();
      todo.pop();
      for (int y : adjacent[x]) {
        if (depth.emplace(y, depth[x] + 1).second) todo.push(y);
      }
    }
    for (const Curve& cv : closed) {
      auto [l, r] = sides(cv);
      loops.push_back(depth.at(l) > depth.at(r) ? 1 : -1);  // interior on the left: counterclockwise
    }
  }

  Gluing g;
  g.smoothing = OrientedSmoothing::assemble(BoundaryConfig(D.output_k()), strands, loops);
  g.owner.resize(d);
  for (int c = 0; c < d; ++c) g.owner[c].assign(inputs[c].string_count(), -1);
  for (const Curve& cv : open) {
    int id = g.smoothing.strand_at(cv.start);
    for (auto [c, sid] : cv.parts) g.owner[c][sid] = id;
  }
  int next_loop = 0;
  for (int c = 0; c < d; ++c) {
    for (std::size_t l = 0; l < inputs[c].loops().size(); ++l) {
      g.owner[c][inputs[c].loop_id(static_cast<int>(l))] = g.smoothing.loop_id(next_loop++);
    }
  }
  for (const Curve& cv : closed) {
    int id = g.smoothing.loop_id(next_loop++);
    for (auto [c, sid] : cv.parts) g.owner[c][sid] = id;
  }
  return g;
}

OrientedSmoothing compose_smoothings(const PlanarArcDiagram& d, const std::vector<OrientedSmoothing>& inputs) {
  return glue_smoothings(d, inputs).smoothing;
}

MorphismCombo compose_cobordisms(const PlanarArcDiagram& D, const Gluing& source, const Gluing& target,
                                 const std::vector<const MorphismCombo*>& inputs) {
  const int d = D.inputs();
  MorphismCombo out(source.smoothing, target.smoothing);
  std::vector<std::pair<int, int>> src_rep(source.smoothing.string_count(), {-1, -1});
  std::vector<std::pair<int, int>> tgt_rep(target.smoothing.string_count(), {-1, -1});
  for (int c = 0; c < d; ++c) {
    for (std::size_t id = 0; id < source.owner[c].size(); ++id) {
      auto& rep = src_rep[source.owner[c][id]];
      if (rep.first < 0) rep = {c, static_cast<int>(id)};
    }
    for (std::size_t id = 0; id < target.owner[c].size(); ++id) {
      auto& rep = tgt_rep[target.owner[c][id]];
      if (rep.first < 0) rep = {c, static_cast<int>(id)};
    }
  }
  std::vector<int> internal;
  for (int a = 0; a < static_cast<int>(D.arcs().size()); ++a) {
    if (D.classification().kinds[a] != ArcKind::Boundary) internal.push_back(a);
  }

  std::vector<std::vector<std::pair<const Surface*, const Rational*>>> terms(d);
  for (int c = 0; c < d; ++c) {
    for (const auto& [s, coef] : inputs[c]->terms()) terms[c].emplace_back(&s, &coef);
    if (terms[c].empty()) return out;
  }
  std::vector<std::size_t> pick(d, 0);
  while (true) {
    std::vector<int> offset(d + 1, 0);
    for (int c = 0; c < d; ++c) offset[c + 1] = offset[c] + static_cast<int>(terms[c][pick[c]].first->pieces.size());
    UnionFind uf(offset[d]);
    auto line_piece = [&](const Endpoint& e) {
      const int c = e.disc - 1;
      const Surface& s = *terms[c][pick[c]].first;
      return offset[c] + s.source_piece[inputs[c]->source().strand_at(e.point)];
    };
    for (int a : internal) uf.unite(line_piece(D.arcs()[a].tail), line_piece(D.arcs()[a].head));
    Surface raw;
    std::vector<int> label(offset[d], -1);
    auto piece_of = [&](int node) {
      int r = uf.find(node);
      if (label[r] < 0) {
        label[r] = static_cast<int>(raw.pieces.size());
        raw.pieces.push_back(Piece{});
      }
      return label[r];
    };
    Rational coefficient = 1;
    for (int c = 0; c < d; ++c) {
      const Surface& s = *terms[c][pick[c]].first;
      coefficient *= *terms[c][pick[c]].second;
      for (std::size_t i = 0; i < s.pieces.size(); ++i) {
        Piece& p = raw.pieces[piece_of(offset[c] + static_cast<int>(i))];
        p.euler += s.pieces[i].euler;
        p.dots += s.pieces[i].dots;
      }
    }
    for (int a : internal) raw.pieces[piece_of(line_piece(D.arcs()[a].tail))].euler -= 1;
    for (const auto& [c, id] : src_rep) {
      raw.source_piece.push_back(piece_of(offset[c] + terms[c][pick[c]].first->source_piece[id]));
    }
    for (const auto& [c, id] : tgt_rep) {
      raw.target_piece.push_back(piece_of(offset[c] + terms[c][pick[c]].first->target_piece[id]));
    }
    out.add_raw(raw, coefficient);
    int c = 0;
    while (c < d && ++pick[c] == terms[c].size()) pick[c++] = 0;
    if (c == d) break;
  }
  return out;
}

MorphismCombo compose_cobordisms(const PlanarArcDiagram& d, const std::vector<MorphismCombo>& inputs) {
  std::vector<OrientedSmoothing> sources, targets;
  std::vector<const MorphismCombo*> ptrs;
  for (const auto& m : inputs) {
    sources.push_back(m.source());
    targets.push_back(m.target());
    ptrs.push_back(&m);
  }
  return compose_cobordisms(d, glue_smoothings(d, sources), glue_smoothings(d, targets), ptrs);
}

Complex compose_complexes(const PlanarArcDiagram& D, const std::vector<Complex>& inputs) {
  const int d = D.inputs();
  if (static_cast<int>(inputs.size()) != d) throw Error(ErrorCode::BoundaryMismatch, "wrong number of inputs");
  struct Position {
    int degree;
    int index;
  };
  std::vector<std::vector<Position>> positions(d);
  std::vector<std::map<std::pair<int, int>, int>> rank(d);
  std::vector<std::vector<MorphismCombo>> identities(d);
  for (int c = 0; c < d; ++c) {
    if (inputs[c].k() != D.input_k(c + 1)) {
      throw Error(ErrorCode::BoundaryMismatch, "input complex " + std::to_string(c + 1) + " does not fit its disc");
    }
    for (int r : inputs[c].degrees()) {
      for (int i = 0; i < static_cast<int>(inputs[c].objects(r).size()); ++i) {
        rank[c][{r, i}] = static_cast<int>(positions[c].size());
        positions[c].push_back(Position{r, i});
        identities[c].push_back(identity_cobordism(inputs[c].objects(r)[i].smoothing));
      }
    }
  }
  Complex out(D.output_k());
  for (int c = 0; c < d; ++c) {
    if (positions[c].empty()) return out;
  }
  // tuples in numeration order with the last input as the major key
  std::map<std::vector<int>, std::pair<int, int>> placed;  // tuple -> (degree, index)
  std::map<std::vector<int>, Gluing> glued;
  std::vector<int> tuple(d, 0);
  while (true) {
    int r = 0, q = 0;
    std::vector<OrientedSmoothing> parts;
    for (int c = 0; c < d; ++c) {
      const Position& p = positions[c][tuple[c]];
      const ShiftedSmoothing& ss = inputs[c].objects(p.degree)[p.index];
      r += p.degree;
      q += ss.shift;
      parts.push_back(ss.smoothing);
    }
    Gluing g = glue_smoothings(D, parts);
    int idx = out.add_object(r, ShiftedSmoothing{g.smoothing, q});
    placed[tuple] = {r, idx};
    glued.emplace(tuple, std::move(g));
    int c = 0;
    while (c < d && ++tuple[c] == static_cast<int>(positions[c].size())) tuple[c++] = 0;
    if (c == d) break;
  }
  for (const auto& [t, where] : placed) {
    int prefix_degree = 0;
    for (int c = 0; c < d; ++c) {
      const Position& p = positions[c][t[c]];
      const int sign = prefix_degree % 2 == 0 ? 1 : -1;
      for (const auto& [key, m] : inputs[c].differential(p.degree)) {
        if (key.first != p.index) continue;
        std::vector<int> t2 = t;
        t2[c] = rank[c].at({p.degree + 1, key.second});
        std::vector<const MorphismCombo*> parts;
        for (int e = 0; e < d; ++e) parts.push_back(e == c ? &m : &identities[e][t[e]]);
        MorphismCombo entry = compose_cobordisms(D, glued.at(t), glued.at(t2), parts);
        if (sign < 0) entry *= -1;
        out.add_to_entry(where.first, where.second, placed.at(t2).second, entry);
      }
      prefix_degree += p.degree;
    }
  }
  return out;
}

}  // namespace kht

#include "khtangle/cobordism.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "khtangle/error.hpp"
#include "union_find.hpp"

namespace kht {

using detail::UnionFind;

CircleStructure circle_structure(const OrientedSmoothing& source, const OrientedSmoothing& target) {
  if (source.boundary() != target.boundary()) {
    throw Error(ErrorCode::BoundaryMismatch, source.to_string() + " vs " + target.to_string());
  }
  const int ns = source.string_count();
  const int nt = target.string_count();
  UnionFind uf(ns + nt);
  for (int p = 0; p < source.boundary().points(); ++p) {
    uf.unite(source.strand_at(p), ns + target.strand_at(p));
  }
  CircleStructure cs;
  std::vector<int> label(ns + nt, -1);
  auto circle_of = [&](int node) {
    int r = uf.find(node);
    if (label[r] < 0) label[r] = cs.count++;
    return label[r];
  };
  cs.source_circle.resize(ns);
  cs.target_circle.resize(nt);
  for (int s = 0; s < ns; ++s) cs.source_circle[s] = circle_of(s);
  for (int t = 0; t < nt; ++t) cs.target_circle[t] = circle_of(ns + t);
  return cs;
}

std::vector<Component> components(const Surface& s, const OrientedSmoothing& source,
                                  const OrientedSmoothing& target) {
  std::vector<Component> out(s.pieces.size());
  for (std::size_t i = 0; i < s.pieces.size(); ++i) {
    out[i].euler = s.pieces[i].euler;
    out[i].dots = s.pieces[i].dots;
  }
  for (std::size_t id = 0; id < s.source_piece.size(); ++id) {
    out[s.source_piece[id]].bottom_strings.push_back(static_cast<int>(id));
  }
  for (std::size_t id = 0; id < s.target_piece.size(); ++id) {
    out[s.target_piece[id]].top_strings.push_back(static_cast<int>(id));
  }
  for (int p = 0; p < source.boundary().points(); ++p) {
    out[s.source_piece[source.strand_at(p)]].boundary_lines.push_back(p);
  }
  (void)target;
  return out;
}

int boundary_circles(const Surface& s, int piece, const OrientedSmoothing& source,
                     const OrientedSmoothing& target) {
  CircleStructure cs = circle_structure(source, target);
  std::set<int> circles;
  for (std::size_t id = 0; id < s.source_piece.size(); ++id) {
    if (s.source_piece[id] == piece) circles.insert(cs.source_circle[id]);
  }
  for (std::size_t id = 0; id < s.target_piece.size(); ++id) {
    if (s.target_piece[id] == piece) circles.insert(cs.target_circle[id]);
  }
  return static_cast<int>(circles.size());
}

MorphismCombo::MorphismCombo(OrientedSmoothing source, OrientedSmoothing target)
    : source_(std::move(source)), target_(std::move(target)) {
  if (source_.boundary() != target_.boundary()) {
    throw Error(ErrorCode::BoundaryMismatch, source_.to_string() + " vs " + target_.to_string());
  }
}

const CircleStructure& MorphismCombo::circles() const {
  if (!circles_) circles_ = circle_structure(source_, target_);
  return *circles_;
}

void MorphismCombo::add_normal(const Surface& s, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(s, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void MorphismCombo::add_raw(const Surface& raw, const Rational& c) {
  if (c == 0) return;
  const CircleStructure& cs = circles();
  const int ns = source_.string_count();
  const int nt = target_.string_count();
  if (static_cast<int>(raw.source_piece.size()) != ns ||
      static_cast<int>(raw.target_piece.size()) != nt) {
    throw Error(ErrorCode::ShapeMismatch, "surface does not cover the end smoothings");
  }
  const int np = static_cast<int>(raw.pieces.size());
  std::vector<int> circle_piece(cs.count, -1);
  auto attach = [&](int circle, int piece) {
    if (piece < 0 || piece >= np) throw Error(ErrorCode::ShapeMismatch, "piece index out of range");
    if (circle_piece[circle] < 0) {
      circle_piece[circle] = piece;
    } else if (circle_piece[circle] != piece) {
      throw Error(ErrorCode::ShapeMismatch, "boundary circle split between pieces");
    }
  };
  for (int s = 0; s < ns; ++s) attach(cs.source_circle[s], raw.source_piece[s]);
  for (int t = 0; t < nt; ++t) attach(cs.target_circle[t], raw.target_piece[t]);

  std::vector<std::vector<int>> piece_circles(np);
  for (int circle = 0; circle < cs.count; ++circle) piece_circles[circle_piece[circle]].push_back(circle);

  Rational coefficient = c;
  std::vector<int> circle_dots(cs.count, 1);
  std::vector<const std::vector<int>*> free_choices;
  for (int p = 0; p < np; ++p) {
    const int b = static_cast<int>(piece_circles[p].size());
    const int twice_genus = 2 - raw.pieces[p].euler - b;
    if (twice_genus < 0 || twice_genus % 2 != 0) {
      throw Error(ErrorCode::ShapeMismatch, "impossible Euler characteristic for a piece");
    }
    const int genus = twice_genus / 2;
    const int marks = raw.pieces[p].dots + genus;
    coefficient *= Rational(mpz_class(1) << genus);  // a handle is two dots, each half a handle
    if (b == 0) {
      if (marks != 1) return;  // sphere, or two dots
      continue;
    }
    if (marks >= 2) return;
    if (marks == 0) free_choices.push_back(&piece_circles[p]);
  }

  Surface normal;
  normal.source_piece = cs.source_circle;
  normal.target_piece = cs.target_circle;
  normal.pieces.assign(cs.count, Piece{1, 1});
  // each undotted piece contributes a sum over which of its circles stays undotted
  std::vector<std::size_t> pick(free_choices.size(), 0);
  while (true) {
    for (int circle = 0; circle < cs.count; ++circle) normal.pieces[circle].dots = circle_dots[circle];
    for (std::size_t i = 0; i < free_choices.size(); ++i) {
      normal.pieces[(*free_choices[i])[pick[i]]].dots = 0;
    }
    add_normal(normal, coefficient);
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == free_choices[i]->size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
}

void MorphismCombo::check_same_ends(const MorphismCombo& o) const {
  if (source_ != o.source_ || target_ != o.target_) {
    throw Error(ErrorCode::BoundaryMismatch, "adding morphisms with different ends");
  }
}

MorphismCombo& MorphismCombo::operator+=(const MorphismCombo& o) {
  check_same_ends(o);
  for (const auto& [s, c] : o.terms_) add_normal(s, c);
  return *this;
}

MorphismCombo& MorphismCombo::operator-=(const MorphismCombo& o) {
  check_same_ends(o);
  for (const auto& [s, c] : o.terms_) add_normal(s, -c);
  return *this;
}

MorphismCombo& MorphismCombo::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [s, coef] : terms_) coef *= c;
  return *this;
}

bool MorphismCombo::operator==(const MorphismCombo& o) const {
  return source_ == o.source_ && target_ == o.target_ && terms_ == o.terms_;
}

MorphismCombo operator*(const Rational& c, MorphismCombo m) { return m *= c; }
MorphismCombo operator+(MorphismCombo a, const MorphismCombo& b) { return a += b; }
MorphismCombo operator-(MorphismCombo a, const MorphismCombo& b) { return a -= b; }

MorphismCombo normalize(const OrientedSmoothing& source, const OrientedSmoothing& target,
                        const std::vector<std::pair<Surface, Rational>>& raw) {
  MorphismCombo out(source, target);
  for (const auto& [s, c] : raw) out.add_raw(s, c);
  return out;
}

MorphismCombo normalize(const MorphismCombo& m) {
  MorphismCombo out(m.source(), m.target());
  for (const auto& [s, c] : m.terms()) out.add_raw(s, c);
  return out;
}

namespace {

int chi(const OrientedSmoothing& s, int id) { return s.is_loop(id) ? 0 : 1; }

/// Curtains over every string not listed in the skip sets. Strands are matched
/// by endpoints, remaining loops in order.
Surface curtains(const OrientedSmoothing& source, const OrientedSmoothing& target,
                 const std::set<int>& source_skip, const std::set<int>& target_skip) {
  Surface s;
  s.source_piece.assign(source.string_count(), -1);
  s.target_piece.assign(target.string_count(), -1);
  std::vector<int> src_rest, tgt_rest;
  for (int id = 0; id < source.string_count(); ++id) {
    if (!source_skip.count(id)) src_rest.push_back(id);
  }
  for (int id = 0; id < target.string_count(); ++id) {
    if (!target_skip.count(id)) tgt_rest.push_back(id);
  }
  if (src_rest.size() != tgt_rest.size()) {
    throw Error(ErrorCode::ShapeMismatch, "untouched strings differ");
  }
  for (std::size_t i = 0; i < src_rest.size(); ++i) {
    int a = src_rest[i], b = tgt_rest[i];
    if (source.is_loop(a) != target.is_loop(b) ||
        (!source.is_loop(a) && source.strands()[a] != target.strands()[b])) {
      throw Error(ErrorCode::ShapeMismatch, "untouched strings differ");
    }
    s.source_piece[a] = s.target_piece[b] = static_cast<int>(s.pieces.size());
    s.pieces.push_back(Piece{chi(source, a), 0});
  }
  return s;
}

}  // namespace

MorphismCombo identity_cobordism(const OrientedSmoothing& s) {
  MorphismCombo m(s, s);
  m.add_raw(curtains(s, s, {}, {}), 1);
  return m;
}

MorphismCombo saddle(const OrientedSmoothing& source, const OrientedSmoothing& target,
                     std::vector<int> source_ids, std::vector<int> target_ids) {
  std::set<int> ss(source_ids.begin(), source_ids.end());
  std::set<int> ts(target_ids.begin(), target_ids.end());
  if (ss.size() != source_ids.size() || ts.size() != target_ids.size() || ss.empty() ||
      ts.empty() || ss.size() + ts.size() < 3 || ss.size() > 2 || ts.size() > 2) {
    throw Error(ErrorCode::ShapeMismatch, "a saddle touches one or two strings on each side");
  }
  for (int id : ss) {
    if (id < 0 || id >= source.string_count()) throw Error(ErrorCode::ShapeMismatch, "bad string id");
  }
  for (int id : ts) {
    if (id < 0 || id >= target.string_count()) throw Error(ErrorCode::ShapeMismatch, "bad string id");
  }
  int chi_source = 0, chi_target = 0;
  for (int id : ss) chi_source += chi(source, id);
  for (int id : ts) chi_target += chi(target, id);
  if (chi_source != chi_target) throw Error(ErrorCode::ShapeMismatch, "not a saddle");
  Surface s = curtains(source, target, ss, ts);
  int piece = static_cast<int>(s.pieces.size());
  s.pieces.push_back(Piece{chi_source - 1, 0});
  for (int id : ss) s.source_piece[id] = piece;
  for (int id : ts) s.target_piece[id] = piece;
  MorphismCombo m(source, target);
  m.add_raw(s, 1);
  return m;
}

MorphismCombo cap(const OrientedSmoothing& source, int loop, bool dotted) {
  OrientedSmoothing target = source.without_loop(loop);
  int id = source.loop_id(loop);
  Surface s = curtains(source, target, {id}, {});
  s.source_piece[id] = static_cast<int>(s.pieces.size());
  s.pieces.push_back(Piece{1, dotted ? 1 : 0});
  MorphismCombo m(source, target);
  m.add_raw(s, 1);
  return m;
}

MorphismCombo cup(const OrientedSmoothing& target, int loop, bool dotted) {
  OrientedSmoothing source = target.without_loop(loop);
  int id = target.loop_id(loop);
  Surface s = curtains(source, target, {}, {id});
  s.target_piece[id] = static_cast<int>(s.pieces.size());
  s.pieces.push_back(Piece{1, dotted ? 1 : 0});
  MorphismCombo m(source, target);
  m.add_raw(s, 1);
  return m;
}

MorphismCombo dot(const OrientedSmoothing& s, int string) {
  if (string < 0 || string >= s.string_count()) throw Error(ErrorCode::ShapeMismatch, "bad string id");
  Surface raw = curtains(s, s, {}, {});
  raw.pieces[raw.source_piece[string]].dots += 1;
  MorphismCombo m(s, s);
  m.add_raw(raw, 1);
  return m;
}

MorphismCombo elementary(const OrientedSmoothing& source, const OrientedSmoothing& target,
                         const ElementaryKind& kind) {
  MorphismCombo m = std::visit(
      [&](const auto& k) -> MorphismCombo {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, SaddleKind>) {
          return saddle(source, target, k.source_ids, k.target_ids);
        } else if constexpr (std::is_same_v<K, CapKind>) {
          return cap(source, k.loop);
        } else if constexpr (std::is_same_v<K, CupKind>) {
          return cup(target, k.loop);
        } else {
          return dot(source, k.string);
        }
      },
      kind);
  if (m.source() != source || m.target() != target) {
    throw Error(ErrorCode::ShapeMismatch, "ends do not fit the elementary cobordism");
  }
  return m;
}

MorphismCombo compose_vertical(const MorphismCombo& g, const MorphismCombo& f) {
  if (f.target() != g.source()) {
    throw Error(ErrorCode::BoundaryMismatch,
                "middle smoothings differ: " + f.target().to_string() + " vs " + g.source().to_string());
  }
  const OrientedSmoothing& middle = f.target();
  MorphismCombo out(f.source(), g.target());
  for (const auto& [sf, cf] : f.terms()) {
    for (const auto& [sg, cg] : g.terms()) {
      const int nf = static_cast<int>(sf.pieces.size());
      const int ng = static_cast<int>(sg.pieces.size());
      UnionFind uf(nf + ng);
      for (int b = 0; b < middle.string_count(); ++b) uf.unite(sf.target_piece[b], nf + sg.source_piece[b]);
      std::vector<int> label(nf + ng, -1);
      Surface raw;
      auto piece_of = [&](int node) {
        int r = uf.find(node);
        if (label[r] < 0) {
          label[r] = static_cast<int>(raw.pieces.size());
          raw.pieces.push_back(Piece{});
        }
        return label[r];
      };
      for (int i = 0; i < nf; ++i) {
        Piece& p = raw.pieces[piece_of(i)];
        p.euler += sf.pieces[i].euler;
        p.dots += sf.pieces[i].dots;
      }
      for (int i = 0; i < ng; ++i) {
        Piece& p = raw.pieces[piece_of(nf + i)];
        p.euler += sg.pieces[i].euler;
        p.dots += sg.pieces[i].dots;
      }
      for (int b = 0; b < middle.string_count(); ++b) {
        raw.pieces[piece_of(sf.target_piece[b])].euler -= chi(middle, b);
      }
      raw.source_piece.resize(sf.source_piece.size());
      for (std::size_t i = 0; i < sf.source_piece.size(); ++i) raw.source_piece[i] = piece_of(sf.source_piece[i]);
      raw.target_piece.resize(sg.target_piece.size());
      for (std::size_t i = 0; i < sg.target_piece.size(); ++i) raw.target_piece[i] = piece_of(nf + sg.target_piece[i]);
      out.add_raw(raw, cf * cg);
    }
  }
  return out;
}

Degree degree(const MorphismCombo& m, int source_shift, int target_shift) {
  Degree d;
  for (const auto& [s, c] : m.terms()) {
    int value = -m.source().k() + (target_shift - source_shift);
    for (const Piece& p : s.pieces) value += p.euler - 2 * p.dots;
    if (d.kind == Degree::Zero) {
      d = Degree{Degree::Homogeneous, value};
    } else if (d.value != value) {
      return Degree{Degree::NonHomogeneous, 0};
    }
  }
  return d;
}

std::optional<Rational> identity_scalar(const MorphismCombo& m) {
  if (m.terms().size() != 1 || m.source() != m.target()) return std::nullopt;
  const auto& [s, c] = *m.terms().begin();
  std::vector<int> bottom(s.pieces.size(), -1), top(s.pieces.size(), -1);
  for (std::size_t id = 0; id < s.source_piece.size(); ++id) {
    int& slot = bottom[s.source_piece[id]];
    if (slot != -1) return std::nullopt;
    slot = static_cast<int>(id);
  }
  for (std::size_t id = 0; id < s.target_piece.size(); ++id) {
    int& slot = top[s.target_piece[id]];
    if (slot != -1) return std::nullopt;
    slot = static_cast<int>(id);
  }
  for (std::size_t p = 0; p < s.pieces.size(); ++p) {
    if (s.pieces[p].dots != 0 || s.pieces[p].euler != 1 || bottom[p] < 0 || bottom[p] != top[p]) {
      return std::nullopt;
    }
  }
  return c;
}

bool is_invertible_entry(const MorphismCombo& m) { return identity_scalar(m).has_value(); }

std::string to_string(const MorphismCombo& m) {
  std::ostringstream out;
  out << m.source().to_string() << " -> " << m.target().to_string() << ":";
  if (m.is_zero()) out << " 0";
  for (const auto& [s, c] : m.terms()) {
    out << " " << (c >= 0 ? "+" : "") << to_string(c) << "[";
    auto comps = components(s, m.source(), m.target());
    for (std::size_t i = 0; i < comps.size(); ++i) {
      out << (i ? " " : "") << "(";
      for (int b : comps[i].bottom_strings) out << "b" << b;
      for (int t : comps[i].top_strings) out << "t" << t;
      out << (comps[i].dots ? "*" : "") << ")";
    }
    out << "]";
  }
  return out.str();
}

}  // namespace kht

#include "khtangle/io.hpp"

#include <algorithm>

#include "khtangle/error.hpp"

namespace kht {

namespace {

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::BadInput, std::string("malformed JSON: ") + e.what());
  }
}

json components_json(const Surface& s, const OrientedSmoothing& source, const OrientedSmoothing& target) {
  auto comps = components(s, source, target);
  std::sort(comps.begin(), comps.end(), [](const Component& a, const Component& b) {
    return std::tie(a.bottom_strings, a.top_strings, a.euler, a.dots) <
           std::tie(b.bottom_strings, b.top_strings, b.euler, b.dots);
  });
  json out = json::array();
  for (const auto& c : comps) {
    out.push_back({{"bottom", c.bottom_strings},
                   {"top", c.top_strings},
                   {"lines", c.boundary_lines},
                   {"euler", c.euler},
                   {"dots", c.dots}});
  }
  return out;
}

json terms_json(const MorphismCombo& m) {
  json terms = json::array();
  for (const auto& [s, c] : m.terms()) {
    terms.push_back({{"coefficient", to_string(c)}, {"components", components_json(s, m.source(), m.target())}});
  }
  return terms;
}

void add_terms(MorphismCombo& m, const json& terms) {
  for (const auto& t : terms) {
    Surface s;
    s.source_piece.assign(m.source().string_count(), -1);
    s.target_piece.assign(m.target().string_count(), -1);
    for (const auto& c : t.at("components")) {
      int piece = static_cast<int>(s.pieces.size());
      s.pieces.push_back(Piece{c.at("euler").get<int>(), c.at("dots").get<int>()});
      for (int id : c.at("bottom").get<std::vector<int>>()) {
        if (id < 0 || id >= static_cast<int>(s.source_piece.size())) throw Error(ErrorCode::BadInput, "bad string id");
        s.source_piece[id] = piece;
      }
      for (int id : c.at("top").get<std::vector<int>>()) {
        if (id < 0 || id >= static_cast<int>(s.target_piece.size())) throw Error(ErrorCode::BadInput, "bad string id");
        s.target_piece[id] = piece;
      }
    }
    if (std::count(s.source_piece.begin(), s.source_piece.end(), -1) ||
        std::count(s.target_piece.begin(), s.target_piece.end(), -1)) {
      throw Error(ErrorCode::BadInput, "component list misses a string");
    }
    m.add_raw(s, parse_rational(t.at("coefficient").get<std::string>()));
  }
}

}  // namespace

json to_json(const OrientedSmoothing& s) {
  json strands = json::array();
  for (const Strand& st : s.strands()) strands.push_back({st.start, st.end});
  return {{"k", s.k()}, {"strands", strands}, {"loops", s.loops()}};
}

OrientedSmoothing smoothing_from_json(const json& j) {
  return guarded([&] {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& p : j.at("strands")) pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
    return OrientedSmoothing::make(j.at("k").get<int>(), pairs, j.value("loops", std::vector<int>{}));
  });
}

json to_json(const MorphismCombo& m) {
  return {{"source", to_json(m.source())}, {"target", to_json(m.target())}, {"terms", terms_json(m)}};
}

MorphismCombo combo_from_json(const json& j) {
  return guarded([&] {
    MorphismCombo m(smoothing_from_json(j.at("source")), smoothing_from_json(j.at("target")));
    add_terms(m, j.at("terms"));
    return m;
  });
}

json to_json(const Complex& c) {
  json objects = json::array();
  json diffs = json::array();
  for (int r : c.degrees()) {
    const auto& objs = c.objects(r);
    for (std::size_t i = 0; i < objs.size(); ++i) {
      objects.push_back({{"degree", r}, {"index", i}, {"smoothing", to_json(objs[i].smoothing)}, {"shift", objs[i].shift}});
    }
    for (const auto& [key, m] : c.differential(r)) {
      diffs.push_back({{"degree", r}, {"source", key.first}, {"target", key.second}, {"terms", terms_json(m)}});
    }
  }
  return {{"k", c.k()}, {"objects", objects}, {"differentials", diffs}};
}

Complex complex_from_json(const json& j) {
  return guarded([&] {
    Complex c(j.at("k").get<int>());
    std::map<int, std::vector<std::pair<int, ShiftedSmoothing>>> by_degree;
    for (const auto& o : j.at("objects")) {
      by_degree[o.at("degree").get<int>()].emplace_back(
          o.value("index", static_cast<int>(by_degree[o.at("degree").get<int>()].size())),
          ShiftedSmoothing{smoothing_from_json(o.at("smoothing")), o.at("shift").get<int>()});
    }
    for (auto& [r, list] : by_degree) {
      std::stable_sort(list.begin(), list.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      for (std::size_t i = 0; i < list.size(); ++i) {
        if (list[i].first != static_cast<int>(i)) throw Error(ErrorCode::BadInput, "object indices are not 0..n-1");
        c.add_object(r, list[i].second);
      }
    }
    for (const auto& d : j.value("differentials", json::array())) {
      int r = d.at("degree").get<int>();
      int i = d.at("source").get<int>(), t = d.at("target").get<int>();
      if (i < 0 || t < 0 || i >= static_cast<int>(c.objects(r).size()) || t >= static_cast<int>(c.objects(r + 1).size())) {
        throw Error(ErrorCode::BadInput, "differential entry out of range");
      }
      MorphismCombo m(c.objects(r)[i].smoothing, c.objects(r + 1)[t].smoothing);
      add_terms(m, d.at("terms"));
      c.add_to_entry(r, i, t, m);
    }
    return c;
  });
}

json to_json(const DiagramSpec& spec) {
  json arcs = json::array();
  for (const auto& [a, b] : spec.arcs) {
    arcs.push_back({{{"disc", a.disc}, {"point", a.point}}, {{"disc", b.disc}, {"point", b.point}}});
  }
  json out = {{"output", spec.output_k}, {"inputs", spec.input_k}, {"arcs", arcs}};
  if (spec.outer) out["outer"] = {{"disc", spec.outer->disc}, {"point", spec.outer->point}};
  return out;
}

DiagramSpec diagram_spec_from_json(const json& j) {
  return guarded([&] {
    auto endpoint = [](const json& e) { return Endpoint{e.at("disc").get<int>(), e.at("point").get<int>()}; };
    DiagramSpec spec;
    spec.output_k = j.at("output").get<int>();
    spec.input_k = j.at("inputs").get<std::vector<int>>();
    for (const auto& a : j.at("arcs")) spec.arcs.emplace_back(endpoint(a.at(0)), endpoint(a.at(1)));
    if (j.contains("outer")) spec.outer = endpoint(j.at("outer"));
    return spec;
  });
}

json to_json(const HomologyTable& t) {
  std::vector<std::pair<std::pair<int, int>, int>> entries(t.dims().begin(), t.dims().end());
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return std::pair{-a.first.second, a.first.first} < std::pair{-b.first.second, b.first.first};
  });
  json list = json::array();
  for (const auto& [ij, d] : entries) list.push_back({{"i", ij.first}, {"j", ij.second}, {"dim", d}});
  return {{"entries", list}, {"total", t.total()}};
}

}  // namespace kht

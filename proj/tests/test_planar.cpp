#include "doctest.h"
#include "khtangle/khovanov.hpp"
#include "support.hpp"

using namespace kht;
using testing::code_of;

namespace {

Rational face_formula_rotation(const PlanarArcDiagram& d) {
  const auto& c = d.classification();
  return make_rational(1 + c.i_D - d.inputs(), 2) - c.w_D;
}

}  // namespace

TEST_CASE("radial identity") {
  auto d = radial_identity(2);
  CHECK(d.classification().i_D == 0);
  CHECK(d.classification().boundary == 4);
  CHECK(d.classification().R_D == 0);
  for (const auto& s : all_smoothings(3)) CHECK(compose_smoothings(radial_identity(3), {s}) == s);
}

TEST_CASE("diagram validation") {
  DiagramSpec bad;
  bad.output_k = 2;
  bad.input_k = {1};
  bad.arcs = {{{0, 0}, {0, 1}}, {{0, 2}, {1, 0}}, {{0, 3}, {1, 1}}};
  CHECK(code_of([&] { PlanarArcDiagram::make(bad); }) == ErrorCode::NotTypeA);

  DiagramSpec clash;
  clash.output_k = 1;
  clash.input_k = {1};
  clash.arcs = {{{0, 0}, {1, 1}}, {{0, 1}, {1, 0}}};
  CHECK(code_of([&] { PlanarArcDiagram::make(clash); }) == ErrorCode::OrientationClash);

  DiagramSpec mirror;  // reflected radial diagram
  mirror.output_k = 2;
  mirror.input_k = {2};
  mirror.arcs = {{{0, 0}, {1, 0}}, {{0, 1}, {1, 3}}, {{0, 2}, {1, 2}}, {{0, 3}, {1, 1}}};
  CHECK(code_of([&] { PlanarArcDiagram::make(mirror); }) == ErrorCode::CrossingArcs);

  DiagramSpec rotated;  // rotating by two points is planar
  rotated.output_k = 2;
  rotated.input_k = {2};
  rotated.arcs = {{{0, 0}, {1, 2}}, {{0, 1}, {1, 3}}, {{0, 2}, {1, 0}}, {{0, 3}, {1, 1}}};
  CHECK(PlanarArcDiagram::make(rotated).classification().R_D == 0);

  DiagramSpec apart;  // two inputs that never meet
  apart.output_k = 0;
  apart.input_k = {1, 1};
  apart.arcs = {{{1, 1}, {1, 0}}, {{2, 1}, {2, 0}}};
  apart.outer = Endpoint{1, 0};
  CHECK(code_of([&] { PlanarArcDiagram::make(apart); }) == ErrorCode::Disconnected);
}

TEST_CASE("basic diagrams") {
  for (int k = 1; k <= 4; ++k) {
    for (int p = 0; p < 2 * k; ++p) {
      int sign = p % 2 ? 1 : -1;
      auto u = unary_basic(k, p, sign);
      CHECK(u.output_k() == k - 1);
      CHECK(u.classification().curls == 1);
      if (k > 1) {
        CHECK(u.classification().R_D == make_rational(sign, 2));
        CHECK(face_formula_rotation(u) == u.classification().R_D);
      } else {
        CHECK(u.classification().R_D == sign);  // full closure of a lone strand
      }
      CHECK(code_of([&] { unary_basic(k, p, -sign); }) == ErrorCode::Incompatible);
    }
  }
  for (int k1 = 1; k1 <= 3; ++k1) {
    for (int k2 = 1; k2 <= 3; ++k2) {
      for (int g1 = 0; g1 < 2 * k1; ++g1) {
        for (int g2 = 1 - g1 % 2; g2 < 2 * k2; g2 += 2) {
          auto b = binary_basic(k1, k2, g1, g2);
          CHECK(b.output_k() == k1 + k2 - 1);
          CHECK(b.classification().interconnecting == 1);
          CHECK(b.classification().R_D == 0);
          CHECK(face_formula_rotation(b) == 0);
        }
      }
    }
  }
  CHECK(code_of([] { binary_basic(2, 2, 0, 0); }) == ErrorCode::OrientationClash);
}

TEST_CASE("closing the target of a negative crossing with a positive curl") {
  auto target = OrientedSmoothing::make(2, {{0, 3}, {2, 1}});
  auto glued = compose_smoothings(unary_basic(2, 1, 1), {target});
  CHECK(glued == OrientedSmoothing::make(1, {{0, 1}}, {1}));
  auto source = OrientedSmoothing::make(2, {{0, 1}, {2, 3}});
  CHECK(compose_smoothings(unary_basic(2, 1, 1), {source}) == OrientedSmoothing::make(1, {{0, 1}}));
}

TEST_CASE("property: rotation additivity over random diagrams") {
  std::mt19937 rng(2024);
  int checked = 0, closed = 0;
  for (int trial = 0; trial < 1400; ++trial) {
    auto d = testing::random_diagram(rng, 3, 3, trial % 4 == 0);
    if (!d) continue;
    closed += d->output_k() == 0;
    std::vector<OrientedSmoothing> inputs;
    Rational sum = d->classification().R_D;
    for (int c = 1; c <= d->inputs(); ++c) {
      inputs.push_back(testing::random_smoothing(rng, d->input_k(c), 1));
      sum += rotation_number(inputs.back());
    }
    auto glued = glue_smoothings(*d, inputs);
    CHECK(rotation_number(glued.smoothing) == sum);
    CHECK(Rational(d->classification().R_D * 2).get_den() == 1);
    ++checked;
  }
  CHECK(checked >= 1000);
  CHECK(closed > 50);
}

TEST_CASE("property: the face formula matches R_D when white output segments lie in distinct faces") {
  std::mt19937 rng(99);
  int compared = 0;
  for (int trial = 0; trial < 400; ++trial) {
    auto d = testing::random_diagram(rng, 3, 3, false);
    if (!d) continue;
    int white_output_faces = 0;
    for (int f = 0; f < d->face_count(); ++f) white_output_faces += !d->face_shaded(f) && d->face_touches_output(f);
    if (white_output_faces != d->output_k()) continue;
    CHECK(face_formula_rotation(*d) == d->classification().R_D);
    ++compared;
  }
  CHECK(compared > 100);
}

TEST_CASE("composition of cobordisms") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto d = testing::random_diagram(rng, 2, 3, trial % 3 == 0);
    if (!d) continue;
    std::vector<OrientedSmoothing> inputs;
    std::vector<MorphismCombo> ids, fs;
    for (int c = 1; c <= d->inputs(); ++c) {
      inputs.push_back(testing::random_smoothing(rng, d->input_k(c), 1));
      ids.push_back(identity_cobordism(inputs.back()));
      fs.push_back(testing::random_elementary(rng, inputs.back()));
    }
    auto glued = compose_smoothings(*d, inputs);
    CHECK(compose_cobordisms(*d, ids) == identity_cobordism(glued));

    auto composite = compose_cobordisms(*d, fs);
    Degree total = degree(composite, 0, 0);
    int expected = 0;
    bool homogeneous = true;
    for (const auto& f : fs) {
      Degree df = degree(f, 0, 0);
      homogeneous = homogeneous && df.kind == Degree::Homogeneous;
      expected += df.value;
    }
    if (homogeneous && total.kind != Degree::Zero) {
      CHECK(total.kind == Degree::Homogeneous);
      CHECK(total.value == expected);
    }
    // interchange: D(g f, ...) = D(g, ...) D(f, ...)
    std::vector<MorphismCombo> gs;
    for (const auto& f : fs) gs.push_back(testing::random_elementary(rng, f.target()));
    std::vector<MorphismCombo> gf;
    for (std::size_t i = 0; i < fs.size(); ++i) gf.push_back(compose_vertical(gs[i], fs[i]));
    CHECK(compose_cobordisms(*d, gf) == compose_vertical(compose_cobordisms(*d, gs), composite));
  }
}

TEST_CASE("a saddle composed with an identity is a saddle") {
  auto neg = crossing_complex(-1);
  const auto& sd = *neg.entry(-1, 0, 0);
  auto one = OrientedSmoothing::make(1, {{0, 1}});
  auto d = binary_basic(2, 1, 3, 0);
  auto m = compose_cobordisms(d, {sd, identity_cobordism(one)});
  REQUIRE(m.terms().size() == 1);
  auto comps = components(m.terms().begin()->first, m.source(), m.target());
  REQUIRE(comps.size() == 1);  // the saddle piece swallows the curtain
  CHECK(comps[0].euler == 1);
}

TEST_CASE("composition of complexes") {
  auto neg = crossing_complex(-1);
  auto pos = crossing_complex(1);
  for (const auto& [a, b] : {std::pair{neg, neg}, std::pair{neg, pos}, std::pair{pos, pos}}) {
    for (int g1 = 0; g1 < 4; ++g1) {
      for (int g2 = 1 - g1 % 2; g2 < 4; g2 += 2) {
        auto d = binary_basic(2, 2, g1, g2);
        auto c = compose_complexes(d, {a, b});
        CHECK(validate(c).ok());
        auto diag = is_diagonal(c);
        CHECK(diag.diagonal);
        CHECK(*diag.constant == *is_diagonal(a).constant + *is_diagonal(b).constant - d.classification().R_D);
        auto reduced = reduce(c);
        CHECK(validate(reduced).ok());
        CHECK(*is_diagonal(reduced).constant == *diag.constant);
      }
    }
  }
  // one-object complexes compose to a one-object complex
  Complex x(1), y(1);
  x.add_object(0, {OrientedSmoothing::make(1, {{0, 1}}), 1});
  y.add_object(2, {OrientedSmoothing::make(1, {{0, 1}}), -3});
  auto xy = compose_complexes(binary_basic(1, 1, 1, 0), {x, y});
  CHECK(xy.size() == 1);
  CHECK(xy.objects(2).at(0).shift == -2);
}

TEST_CASE("binary compositions are block lower triangular in the numeration of the second input") {
  auto psi = crossing_complex(-1);
  auto phi = reduce(compose_complexes(binary_basic(2, 2, 3, 0), {crossing_complex(-1), crossing_complex(-1)}));
  auto d = binary_basic(2, 3, 1, 2);
  auto c = compose_complexes(d, {psi, phi});
  REQUIRE(validate(c).ok());
  // object order is last-input major: recover the block of each object
  std::map<std::pair<int, int>, int> block;
  std::vector<int> rs = phi.degrees();
  std::map<int, int> fill;
  int b = 0;
  for (int r2 : rs) {
    for (std::size_t j = 0; j < phi.objects(r2).size(); ++j, ++b) {
      for (int r1 : psi.degrees()) {
        for (std::size_t i = 0; i < psi.objects(r1).size(); ++i) block[{r1 + r2, fill[r1 + r2]++}] = b;
      }
    }
  }
  for (int r : c.degrees()) {
    for (const auto& [key, m] : c.differential(r)) CHECK(block.at({r + 1, key.second}) >= block.at({r, key.first}));
  }
  // diagonal blocks reproduce D(psi, single object)
  b = 0;
  for (int r2 : rs) {
    for (std::size_t j = 0; j < phi.objects(r2).size(); ++j, ++b) {
      Complex single(3);
      single.add_object(r2, phi.objects(r2)[j]);
      auto piece = compose_complexes(d, {psi, single});
      for (int r : piece.degrees()) {
        for (const auto& [key, m] : piece.differential(r)) {
          // locate the same objects inside c
          int src = -1, tgt = -1, seen_src = 0, seen_tgt = 0;
          for (std::size_t x = 0; x < c.objects(r).size(); ++x) {
            if (block.at({r, static_cast<int>(x)}) == b && seen_src++ == key.first) src = static_cast<int>(x);
          }
          for (std::size_t x = 0; x < c.objects(r + 1).size(); ++x) {
            if (block.at({r + 1, static_cast<int>(x)}) == b && seen_tgt++ == key.second) tgt = static_cast<int>(x);
          }
          REQUIRE(c.entry(r, src, tgt) != nullptr);
          CHECK(*c.entry(r, src, tgt) == m);
        }
      }
    }
  }
}

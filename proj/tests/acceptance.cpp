#define DOCTEST_CONFIG_DISABLE
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "corpus.hpp"
#include "khtangle/khovanov.hpp"
#include "support.hpp"

using namespace kht;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "failed: " << what << "; ";
    pass = pass && ok;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Complex shifted(const Complex& c, int dq) {
  Complex out(c.k());
  for (int r : c.degrees()) {
    for (auto o : c.objects(r)) {
      o.shift += dq;
      out.add_object(r, o);
    }
  }
  for (int r : c.degrees()) {
    for (const auto& [key, m] : c.differential(r)) out.set_entry(r, key.first, key.second, m);
  }
  return out;
}

PDCode mirror(const PDCode& pd) {
  auto a = analyze(pd);
  PDCode out;
  for (std::size_t i = 0; i < pd.crossings.size(); ++i) {
    auto x = pd.crossings[i];
    if (a.crossings[i].sign < 0) {
      out.crossings.push_back({x[1], x[2], x[3], x[0]});
    } else {
      out.crossings.push_back({x[3], x[0], x[1], x[2]});
    }
  }
  return out;
}

// the same plan as kh, without reducing in between
Complex unreduced_kh(const PDCode& pd) {
  auto analysis = analyze(pd);
  auto plan = plan_composition(pd, analysis);
  auto crossing = [&](int x) { return crossing_complex(analysis.crossings[x].sign, analysis.crossings[x].phase); };
  Complex running = crossing(plan.steps[0].crossing);
  if (plan.steps[0].diagram) running = compose_complexes(*plan.steps[0].diagram, {running});
  for (std::size_t i = 1; i < plan.steps.size(); ++i) {
    running = compose_complexes(*plan.steps[i].diagram, {running, crossing(plan.steps[i].crossing)});
  }
  while (running.k() > 0) running = compose_complexes(unary_basic(running.k(), 0, -1), {running});
  return running;
}

const OrientedSmoothing kEmpty = OrientedSmoothing::make(0, {});
const OrientedSmoothing kLoop = OrientedSmoothing::make(0, {}, {1});

void borromean(Outcome& out) {
  auto t0 = std::chrono::steady_clock::now();
  auto table = homology_table(kh(parse_pd(testing::link_corpus()[11].pd)));
  double elapsed = seconds_since(t0);
  HomologyTable expected({{{-3, -7}, 1}, {{-2, -5}, 2}, {{-2, -3}, 1}, {{-1, -1}, 2}, {{0, -1}, 4},
                          {{0, 1}, 4}, {{1, 1}, 2}, {{2, 3}, 1}, {{2, 5}, 2}, {{3, 7}, 1}});
  out.require(table == expected, "table " + table.to_string());
  out.require(table.total() == 20, "total dimension");
  out.require(elapsed < 60, "runtime");
  out.detail << "10 entries, total " << table.total() << ", " << elapsed << " s";
}

void oracle_equivalence(Outcome& out) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::pair<std::string, PDCode>> links;
  for (const auto& e : testing::link_corpus()) links.emplace_back(e.name, parse_pd(e.pd));
  links.emplace_back("positive hopf", testing::braid_closure(2, {1, 1}));
  links.emplace_back("T(2,4)", testing::braid_closure(2, {1, 1, 1, 1}));
  int matched = 0;
  for (const auto& [name, pd] : links) {
    bool ok = pd.crossings.size() <= 8 && homology_table(kh(pd)) == cube_oracle(pd);
    out.require(ok, name);
    matched += ok;
  }
  double elapsed = seconds_since(t0);
  out.require(links.size() >= 10, "corpus size");
  out.require(elapsed < 300, "runtime");
  out.detail << matched << "/" << links.size() << " links match, " << elapsed << " s";
}

void crossing_diagonality(Outcome& out) {
  auto neg = crossing_complex(-1), pos = crossing_complex(1);
  auto cn = is_diagonal(neg), cp = is_diagonal(pos);
  out.require(cn.diagonal && *cn.constant == make_rational(1, 2), "negative constant");
  out.require(cp.diagonal && *cp.constant == make_rational(-1, 2), "positive constant");
  auto hn = is_coherently_diagonal(neg), hp = is_coherently_diagonal(pos);
  out.require(hn.coherent && hp.coherent, "coherence");
  out.detail << "C(-) = " << *cn.constant << ", C(+) = " << *cp.constant << ", coherent over "
             << hn.closures_checked + hp.closures_checked << " closures";
}

void worked_examples(Outcome& out) {
  auto u1 = reduce(partial_closure(crossing_complex(-1), {unary_basic(2, 1, 1)}));
  out.require(u1.size() == 1 && is_diagonal(u1).constant == Rational(0), "U1(Omega1)");

  // Omega2: the mirrored three-crossing 5_2 fragment, shifted by {-4}
  auto omega2 = shifted(kh(mirror(parse_pd("PD[X(1,4,2,5),X(3,8,4,9),X(5,10,6,1)]")), false), -4);
  auto c2 = is_diagonal(omega2);
  out.require(c2.diagonal && *c2.constant == 3, "Omega2 constant");
  out.require(is_coherently_diagonal(omega2).coherent, "Omega2 coherence");
  bool all = true;
  for (int p = 0; p < 2 * omega2.k(); p += 2) {
    auto closed = reduce(partial_closure(omega2, {unary_basic(omega2.k(), p, -1)}));
    auto d = is_diagonal(closed);
    all = all && d.diagonal && *d.constant == make_rational(7, 2);
  }
  out.require(all, "Omega2 closure");
  out.detail << "U1(Omega1): 1 object, C = 0; Omega2: C = " << *c2.constant << ", closures C = 7/2";
}

struct PoolItem {
  Complex complex;
  Rational constant;
  int crossings;
};

void composition_suite(Outcome& out) {
  std::mt19937 rng(7);
  std::vector<PoolItem> pool = {{crossing_complex(-1), make_rational(1, 2), 1},
                                {crossing_complex(1), make_rational(-1, 2), 1}};
  int composed = 0, failures = 0, coherent_checked = 0;
  while (composed < 240) {
    bool unary = rng() % 3 == 0;
    const PoolItem& a = pool[rng() % pool.size()];
    PoolItem next;
    if (unary) {
      if (a.complex.k() < 2) continue;
      int p = static_cast<int>(rng() % (2 * a.complex.k()));
      auto u = unary_basic(a.complex.k(), p, p % 2 ? 1 : -1);
      next = {reduce(compose_complexes(u, {a.complex})), a.constant - u.classification().R_D, a.crossings};
    } else {
      const PoolItem& b = pool[rng() % pool.size()];
      int k1 = a.complex.k(), k2 = b.complex.k();
      if (a.crossings + b.crossings > 6 || k1 + k2 - 1 > 4) continue;
      int g1 = static_cast<int>(rng() % (2 * k1));
      int g2 = 2 * static_cast<int>(rng() % k2) + (1 - g1 % 2);
      auto d = binary_basic(k1, k2, g1, g2);
      next = {reduce(compose_complexes(d, {a.complex, b.complex})),
              a.constant + b.constant - d.classification().R_D, a.crossings + b.crossings};
    }
    ++composed;
    auto diag = is_diagonal(next.complex);
    bool ok = validate(next.complex).ok() && diag.diagonal &&
              (next.complex.empty() || *diag.constant == next.constant);
    if (ok && next.complex.k() >= 1 && composed % 8 == 0) {
      ++coherent_checked;
      ok = is_coherently_diagonal(next.complex).coherent;
    }
    failures += !ok;
    if (ok && next.complex.k() >= 1 && !next.complex.empty()) pool.push_back(std::move(next));
  }
  out.require(failures == 0, std::to_string(failures) + " failures");
  out.detail << composed << " compositions, " << failures << " failures, " << coherent_checked
             << " coherence checks";
}

void rotation_additivity(Outcome& out) {
  std::mt19937 rng(11);
  int checked = 0, failures = 0;
  while (checked < 1200) {
    auto d = testing::random_diagram(rng, 3, 3, checked % 5 == 0);
    if (!d) continue;
    std::vector<OrientedSmoothing> inputs;
    Rational sum = d->classification().R_D;
    for (int c = 1; c <= d->inputs(); ++c) {
      inputs.push_back(testing::random_smoothing(rng, d->input_k(c), 2));
      sum += rotation_number(inputs.back());
    }
    failures += rotation_number(compose_smoothings(*d, inputs)) != sum;
    ++checked;
  }
  out.require(failures == 0, std::to_string(failures) + " failures");
  out.detail << checked << " diagram/smoothing pairs, " << failures << " failures";
}

void reduction_safety(Outcome& out) {
  int steps = 0, complexes = 0;
  for (const auto& e : testing::link_corpus()) {
    auto pd = parse_pd(e.pd);
    if (pd.crossings.size() > 6) continue;
    auto raw = unreduced_kh(pd);
    auto base = homology_table(raw);
    ++complexes;
    reduce(raw, [&](const ReductionEvent&, const Complex& now) {
      ++steps;
      out.require(validate(now).ok(), e.name + " validity");
      out.require(homology_table(now) == base, e.name + " homology");
    });
    // tangle complexes along the pipeline
    auto analysis = analyze(pd);
    auto plan = plan_composition(pd, analysis);
    if (plan.steps.size() < 2) continue;
    auto first = crossing_complex(analysis.crossings[plan.steps[0].crossing].sign,
                                  analysis.crossings[plan.steps[0].crossing].phase);
    auto second = crossing_complex(analysis.crossings[plan.steps[1].crossing].sign,
                                   analysis.crossings[plan.steps[1].crossing].phase);
    if (plan.steps[0].diagram) first = reduce(compose_complexes(*plan.steps[0].diagram, {first}));
    ++complexes;
    reduce(compose_complexes(*plan.steps[1].diagram, {first, second}), [&](const ReductionEvent&, const Complex& now) {
      ++steps;
      out.require(validate(now).ok(), e.name + " tangle validity");
    });
  }
  std::mt19937 rng(13);
  int pairs = 0;
  for (int i = 0; i < 100; ++i) {
    auto s = testing::random_smoothing(rng, static_cast<int>(rng() % 4), 2).with_loop(i % 2 ? 1 : -1);
    int loop = static_cast<int>(rng() % s.loops().size());
    auto t = s.without_loop(loop);
    auto to_plus = cap(s, loop, true), to_minus = cap(s, loop, false);
    auto from_plus = cup(s, loop, false), from_minus = cup(s, loop, true);
    bool ok = compose_vertical(to_plus, from_plus) == identity_cobordism(t) &&
              compose_vertical(to_minus, from_minus) == identity_cobordism(t) &&
              compose_vertical(to_plus, from_minus).is_zero() && compose_vertical(to_minus, from_plus).is_zero() &&
              compose_vertical(from_plus, to_plus) + compose_vertical(from_minus, to_minus) == identity_cobordism(s);
    out.require(ok, "delooping isomorphism");
    pairs += ok;
  }
  out.detail << steps << " reduction steps over " << complexes << " complexes, " << pairs
             << "/100 delooping pairs invert";
}

void two_lines(Outcome& out) {
  int checked = 0;
  for (const auto& e : testing::link_corpus()) {
    if (!e.alternating || e.split) continue;
    auto k = two_line_check(homology_table(kh(parse_pd(e.pd))));
    out.require(k.has_value(), e.name);
    ++checked;
  }
  HomologyTable counter({{{0, -3}, 1}, {{0, 1}, 1}});
  out.require(!two_line_check(counter).has_value(), "counterexample accepted");
  out.detail << checked << " alternating links on two lines; counterexample rejected";
}

void relations(Outcome& out) {
  auto scalar = [](long n) { return make_rational(n, 1) * identity_cobordism(kEmpty); };
  out.require(compose_vertical(cap(kLoop, 0), cup(kLoop, 0)).is_zero(), "sphere");
  out.require(compose_vertical(cap(kLoop, 0, true), cup(kLoop, 0)) == scalar(1), "dotted sphere");
  out.require(compose_vertical(cap(kLoop, 0, true), cup(kLoop, 0, true)).is_zero(), "double dot");
  auto neck = compose_vertical(cup(kLoop, 0), cap(kLoop, 0, true)) + compose_vertical(cup(kLoop, 0, true), cap(kLoop, 0));
  out.require(neck == identity_cobordism(kLoop), "neck cutting");
  auto two = OrientedSmoothing::make(0, {}, {1, 1});
  auto torus = compose_vertical(
      cap(kLoop, 0),
      compose_vertical(saddle(two, kLoop, {0, 1}, {0}), compose_vertical(saddle(kLoop, two, {0}, {0, 1}), cup(kLoop, 0))));
  out.require(torus == scalar(2), "torus");
  out.detail << "sphere 0, dotted sphere 1, two dots 0, neck cutting, torus 2";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"Borromean reproduction", borromean},
      {"oracle equivalence", oracle_equivalence},
      {"crossing diagonality", crossing_diagonality},
      {"worked examples", worked_examples},
      {"composition of coherently diagonal complexes", composition_suite},
      {"rotation additivity", rotation_additivity},
      {"reduction safety", reduction_safety},
      {"two-line support", two_lines},
      {"relation identities", relations},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception ") + e.what());
    }
    failed += !out.pass;
    std::cout << (out.pass ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].first << ": "
              << out.detail.str() << " [" << seconds_since(t0) << " s]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}

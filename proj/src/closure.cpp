#include <functional>

#include "khtangle/complex.hpp"
#include "khtangle/error.hpp"
#include "khtangle/planar.hpp"

namespace kht {

Complex partial_closure(const Complex& c, const std::vector<PlanarArcDiagram>& ops) {
  Complex current = c;
  for (const PlanarArcDiagram& op : ops) {
    if (op.inputs() != 1 || op.input_k(1) != current.k()) {
      throw Error(ErrorCode::Incompatible, "closure operator does not fit a k=" + std::to_string(current.k()) + " complex");
    }
    current = compose_complexes(op, {current});
  }
  return current;
}

CoherenceReport is_coherently_diagonal(const Complex& c, std::optional<int> max_depth) {
  CoherenceReport report;
  Diagonality top = is_diagonal(c);
  if (!top.diagonal) {
    report.coherent = false;
    report.reason = "not diagonal at degree " + std::to_string(top.degree) + ", object " + std::to_string(top.index);
    return report;
  }
  report.constant = top.constant;
  if (!top.constant) return report;  // zero complex
  const int limit = std::min(max_depth.value_or(c.k() - 1), c.k() - 1);
  std::vector<ClosureStep> path;
  std::function<bool(const Complex&, const Rational&)> explore = [&](const Complex& current, const Rational& expected) {
    if (static_cast<int>(path.size()) >= limit) return true;
    const int k = current.k();
    for (int p = 0; p < 2 * k; ++p) {
      const int sign = p % 2 ? 1 : -1;
      PlanarArcDiagram op = unary_basic(k, p, sign);
      const Rational rotation = op.classification().R_D;
      path.push_back(ClosureStep{p, sign, rotation});
      Complex closed = reduce(compose_complexes(op, {current}));
      ++report.closures_checked;
      Diagonality d = is_diagonal(closed);
      const Rational want = expected - rotation;
      if (!d.diagonal || (d.constant && *d.constant != want)) {
        report.coherent = false;
        report.witness = path;
        report.reason = !d.diagonal ? "closure is not diagonal"
                                    : "closure constant " + to_string(*d.constant) + " instead of " + to_string(want);
        return false;
      }
      if (d.constant && !explore(closed, want)) return false;
      path.pop_back();
    }
    return true;
  };
  explore(c, *top.constant);
  return report;
}

}  // namespace kht

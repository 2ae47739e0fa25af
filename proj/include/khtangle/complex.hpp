#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "khtangle/cobordism.hpp"
#include "khtangle/rational.hpp"
#include "khtangle/smoothing.hpp"

namespace kht {

class PlanarArcDiagram;

/// Entries from object i at degree r to object j at degree r + 1, keyed (i, j).
using Differential = std::map<std::pair<int, int>, MorphismCombo>;

/// Bounded complex of shifted smoothings. Degrees without objects are simply absent.
class Complex {
 public:
  Complex() = default;
  explicit Complex(int k) : k_(k) {}

  int k() const { return k_; }
  bool empty() const { return objects_.empty(); }
  int min_degree() const { return objects_.empty() ? 0 : objects_.begin()->first; }
  int max_degree() const { return objects_.empty() ? 0 : objects_.rbegin()->first; }
  std::vector<int> degrees() const;
  int size() const;

  const std::vector<ShiftedSmoothing>& objects(int r) const;
  const Differential& differential(int r) const;
  const MorphismCombo* entry(int r, int source, int target) const;

  int add_object(int r, ShiftedSmoothing s);
  /// Replaces an entry; zero combos erase it.
  void set_entry(int r, int source, int target, MorphismCombo m);
  void add_to_entry(int r, int source, int target, const MorphismCombo& m);

  bool operator==(const Complex& o) const {
    return k_ == o.k_ && objects_ == o.objects_ && diffs_ == o.diffs_;
  }

 private:
  int k_ = 0;
  std::map<int, std::vector<ShiftedSmoothing>> objects_;
  std::map<int, Differential> diffs_;
};

struct ValidationReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

/// Checks boundary agreement, degree-0 entries and d after d = 0.
ValidationReport validate(const Complex& c);

/// Replaces object idx at degree r (carrying a loop) by loop-free copies with
/// shifts q+1 (at idx) and q-1 (at idx+1). Removes the last loop by default.
Complex deloop(const Complex& c, int r, int idx, std::optional<int> loop = std::nullopt);

/// Removes the invertible entry from object i at degree r to object j at r + 1.
Complex gaussian_eliminate(const Complex& c, int r, int i, int j);

Complex exchange(const Complex& c, int r, int i, int j);

struct ReductionEvent {
  enum Kind { Deloop, Eliminate } kind = Deloop;
  int degree = 0;
  ShiftedSmoothing object;  // delooped object, or the eliminated source
  ShiftedSmoothing partner;  // eliminated target
  int loop_sign = 0;         // Deloop: sign of the removed loop
  // Eliminate: for each pivot that came out of a deloop, the loop sign and copy shift (+1/-1)
  std::pair<int, int> source_origin{0, 0};
  std::pair<int, int> target_origin{0, 0};
};
using ReductionObserver = std::function<void(const ReductionEvent&, const Complex&)>;

/// Deloops every loop then eliminates invertible entries in numeration order
/// until none remain. With an observer, the intermediate complex is exported
/// after every step (slow; meant for tests).
Complex reduce(const Complex& c, const ReductionObserver& observer = nullptr);

struct Numeration {
  std::map<std::pair<int, int>, int> position;  // (degree, index) -> 1-based
  int size = 0;
};
Numeration numerate(const Complex& c);

struct Diagonality {
  bool diagonal = true;
  std::optional<Rational> constant;  // absent for the zero complex
  int degree = 0;                    // first offender
  int index = 0;
};
Diagonality is_diagonal(const Complex& c);

/// Composes with the unary diagrams in order.
Complex partial_closure(const Complex& c, const std::vector<PlanarArcDiagram>& ops);

struct ClosureStep {
  int position = 0;
  int sign = 0;
  Rational rotation;  // R_D of the closing diagram
};
struct CoherenceReport {
  bool coherent = true;
  std::optional<Rational> constant;
  std::vector<ClosureStep> witness;  // offending closure sequence
  std::string reason;
  int closures_checked = 0;
};
/// Enumerates closures by single curls at every position, up to `max_depth`
/// curls (default k - 1), reducing between steps.
CoherenceReport is_coherently_diagonal(const Complex& c, std::optional<int> max_depth = std::nullopt);

class HomologyTable {
 public:
  HomologyTable() = default;
  explicit HomologyTable(std::map<std::pair<int, int>, int> dims);

  const std::map<std::pair<int, int>, int>& dims() const { return dims_; }
  int at(int i, int j) const;
  int total() const;
  bool operator==(const HomologyTable& o) const { return dims_ == o.dims_; }

  /// Rows are quantum degrees (descending), columns homological degrees (ascending).
  std::string to_tsv() const;
  std::string to_string() const;

 private:
  std::map<std::pair<int, int>, int> dims_;  // (i, j) -> dim, nonzero only
};

HomologyTable homology_table(const Complex& c);

}  // namespace kht

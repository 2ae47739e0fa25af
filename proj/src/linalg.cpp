#include "khtangle/linalg.hpp"

#include <algorithm>

namespace kht {

int rank(std::vector<SparseRow> rows) {
  // pivot rows keyed by leading column
  std::map<int, SparseRow> pivots;
  for (SparseRow& row : rows) {
    std::erase_if(row, [](const auto& e) { return e.second == 0; });
    while (!row.empty()) {
      auto lead = row.begin();
      auto it = pivots.find(lead->first);
      if (it == pivots.end()) {
        Rational inv = 1 / lead->second;
        for (auto& [col, v] : row) v *= inv;
        pivots.emplace(lead->first, std::move(row));
        break;
      }
      Rational factor = lead->second;
      for (const auto& [col, v] : it->second) {
        Rational& target = row[col];
        target -= factor * v;
        if (target == 0) row.erase(col);
      }
    }
  }
  return static_cast<int>(pivots.size());
}

}  // namespace kht

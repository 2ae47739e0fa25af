#pragma once

#include <map>
#include <vector>

#include "khtangle/rational.hpp"

namespace kht {

using SparseRow = std::map<int, Rational>;

/// Rank over the rationals by exact row reduction. Rows are consumed.
int rank(std::vector<SparseRow> rows);

}  // namespace kht

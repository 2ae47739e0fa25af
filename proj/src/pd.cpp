#include <cctype>
#include <functional>
#include <tuple>
#include <map>
#include <queue>
#include <sstream>

#include "khtangle/error.hpp"
#include "khtangle/khovanov.hpp"
#include "union_find.hpp"

namespace kht {

std::string PDCode::to_string() const {
  std::ostringstream out;
  out << "PD[";
  for (std::size_t i = 0; i < crossings.size(); ++i) {
    const auto& x = crossings[i];
    out << (i ? ", " : "") << "X(" << x[0] << "," << x[1] << "," << x[2] << "," << x[3] << ")";
  }
  out << "]";
  return out.str();
}

namespace {

class PdParser {
 public:
  explicit PdParser(std::string_view text) : text_(text) {}

  PDCode parse() {
    PDCode pd;
    skip();
    expect("PD");
    skip();
    expect("[");
    skip();
    if (peek() != ']') {
      pd.crossings.push_back(crossing());
      skip();
      while (peek() == ',') {
        ++pos_;
        skip();
        pd.crossings.push_back(crossing());
        skip();
      }
    }
    expect("]");
    skip();
    if (pos_ != text_.size()) fail("trailing characters");
    return pd;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) {
    throw Error(ErrorCode::PdSyntax, what + " at position " + std::to_string(pos_));
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void expect(std::string_view token) {
    if (text_.substr(pos_, token.size()) != token) fail("expected '" + std::string(token) + "'");
    pos_ += token.size();
  }
  int number() {
    skip();
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected a label");
    if (pos_ - start > 9) fail("label too large");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }
  std::array<int, 4> crossing() {
    expect("X");
    skip();
    char open = peek();
    if (open != '(' && open != '[') fail("expected '(' or '['");
    ++pos_;
    std::array<int, 4> x{};
    for (int i = 0; i < 4; ++i) {
      if (i) {
        skip();
        expect(",");
      }
      x[i] = number();
    }
    skip();
    expect(open == '(' ? ")" : "]");
    return x;
  }
};

}  // namespace

PDCode parse_pd(std::string_view text) {
  PDCode pd = PdParser(text).parse();
  std::map<int, int> count;
  for (const auto& x : pd.crossings) {
    for (int label : x) {
      if (label <= 0) throw Error(ErrorCode::PdLabels, "labels must be positive");
      if (++count[label] > 2) throw Error(ErrorCode::PdLabels, "label " + std::to_string(label) + " appears more than twice");
    }
  }
  return pd;
}

namespace {

struct End {
  int crossing;
  int slot;
};

std::map<int, std::vector<End>> ends_by_label(const PDCode& pd) {
  std::map<int, std::vector<End>> ends;
  for (int x = 0; x < static_cast<int>(pd.crossings.size()); ++x) {
    for (int s = 0; s < 4; ++s) ends[pd.crossings[x][s]].push_back(End{x, s});
  }
  for (const auto& [label, list] : ends) {
    if (list.size() > 2) throw Error(ErrorCode::PdLabels, "label " + std::to_string(label) + " appears more than twice");
  }
  return ends;
}

/// Solves x_i xor x_j = c constraints plus fixed values; free components are
/// seeded by `seed(first crossing)`.
std::vector<int> solve_parity(int n, const std::vector<std::pair<int, int>>& fixed,
                              const std::vector<std::tuple<int, int, int>>& relations,
                              const std::function<int(int)>& seed, const std::string& what) {
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (auto [a, b, c] : relations) {
    if (a == b) {
      if (c != 0) throw Error(ErrorCode::PdLabels, what);
      continue;
    }
    adj[a].emplace_back(b, c);
    adj[b].emplace_back(a, c);
  }
  std::vector<int> value(n, -1);
  std::queue<int> todo;
  auto assign = [&](int x, int v) {
    if (value[x] == -1) {
      value[x] = v;
      todo.push(x);
    } else if (value[x] != v) {
      throw Error(ErrorCode::PdLabels, what);
    }
  };
  auto drain = [&] {
    while (!todo.empty()) {
      int x = todo.front();
      todo.pop();
      for (auto [y, c] : adj[x]) assign(y, value[x] ^ c);
    }
  };
  for (auto [x, v] : fixed) assign(x, v);
  drain();
  for (int x = 0; x < n; ++x) {
    if (value[x] == -1) {
      assign(x, seed(x));
      drain();
    }
  }
  return value;
}

}  // namespace

PDAnalysis analyze(const PDCode& pd) {
  PDAnalysis out;
  const int n = static_cast<int>(pd.crossings.size());
  auto ends = ends_by_label(pd);
  detail::UnionFind comps(n);
  for (const auto& [label, list] : ends) {
    if (list.size() == 1) {
      out.open_labels.push_back(label);
    } else {
      comps.unite(list[0].crossing, list[1].crossing);
    }
  }
  out.closed = out.open_labels.empty();
  int components = 0;
  for (int x = 0; x < n; ++x) components += comps.find(x) == x;
  out.connected = components <= 1;

  // Orientation: o_x = 1 when the over-strand enters at d. An end is incoming
  // at slot a, outgoing at c, incoming at d iff o_x, at b iff not o_x.
  auto incoming = [](int slot) -> std::pair<int, bool> {  // (constant, depends on o_x)
    switch (slot) {
      case 0: return {1, false};
      case 2: return {0, false};
      case 3: return {0, true};
      default: return {1, true};
    }
  };
  std::vector<std::pair<int, int>> fixed;
  std::vector<std::tuple<int, int, int>> relations;
  for (const auto& [label, list] : ends) {
    if (list.size() != 2) continue;
    auto [c1, v1] = incoming(list[0].slot);
    auto [c2, v2] = incoming(list[1].slot);
    int rhs = 1 ^ c1 ^ c2;
    const std::string clash = "edge " + std::to_string(label) + " cannot be oriented";
    if (!v1 && !v2) {
      if (rhs != 0) throw Error(ErrorCode::PdLabels, clash);
    } else if (v1 && v2) {
      relations.emplace_back(list[0].crossing, list[1].crossing, rhs);
    } else {
      fixed.emplace_back(v1 ? list[0].crossing : list[1].crossing, rhs);
    }
  }
  auto orientation = solve_parity(
      n, fixed, relations,
      [&](int x) {
        int b = pd.crossings[x][1], d = pd.crossings[x][3];
        return (b - d == 1 || d - b > 1) ? 1 : 0;
      },
      "the diagram cannot be oriented consistently");

  // Phase: every edge joins an In point to an Out point.
  std::vector<std::tuple<int, int, int>> phase_relations;
  for (const auto& [label, list] : ends) {
    if (list.size() != 2) continue;
    phase_relations.emplace_back(list[0].crossing, list[1].crossing, 1 ^ ((list[0].slot + list[1].slot) & 1));
  }
  auto phase = solve_parity(n, {}, phase_relations, [](int) { return 0; }, "the diagram is not planar");

  if (out.closed && n > 0) {
    // face count of a planar 4-valent diagram: n + 2 per component
    std::vector<int> seen(4 * n, 0);
    int faces = 0;
    for (int start = 0; start < 4 * n; ++start) {
      if (seen[start]) continue;
      ++faces;
      for (int e = start; !seen[e];) {
        seen[e] = 1;
        const auto& list = ends[pd.crossings[e / 4][e % 4]];
        const End& other = (list[0].crossing == e / 4 && list[0].slot == e % 4) ? list[1] : list[0];
        e = 4 * other.crossing + (other.slot + 3) % 4;
      }
    }
    if (faces != n + 2 * components) throw Error(ErrorCode::PdLabels, "the diagram is not planar");
  }

  for (int x = 0; x < n; ++x) {
    CrossingInfo info{orientation[x] ? 1 : -1, phase[x]};
    (info.sign > 0 ? out.n_plus : out.n_minus)++;
    if (info.phase != 0) out.alternating = false;
    out.crossings.push_back(info);
  }
  return out;
}

}  // namespace kht

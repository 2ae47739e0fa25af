#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "khtangle/error.hpp"
#include "khtangle/io.hpp"
#include "khtangle/khovanov.hpp"
#include "khtangle/random.hpp"

using namespace kht;

namespace {

enum Exit { Ok = 0, CheckFailed = 1, InputError = 2 };

int log_level() {
  const char* v = std::getenv("KHTANGLE_LOG");
  if (!v) return 0;
  std::string s = v;
  if (s == "debug") return 2;
  if (s == "info") return 1;
  return std::atoi(v);
}

void log(int level, const std::string& msg) {
  if (log_level() >= level) std::cerr << "[khtool] " << msg << "\n";
}

struct Named {
  std::string name;
  PDCode pd;
};

struct Input {
  std::string pd, file, corpus;

  std::vector<Named> load() const {
    std::vector<Named> out;
    if (!pd.empty()) {
      out.push_back({"input", parse_pd(pd)});
      return out;
    }
    const std::string& path = corpus.empty() ? file : corpus;
    std::ifstream in(path);
    if (!in) throw kht::Error(ErrorCode::BadInput, "cannot read " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
      auto tab = line.find('\t');
      std::string name = tab == std::string::npos ? "line " + std::to_string(lineno) : line.substr(0, tab);
      out.push_back({name, parse_pd(tab == std::string::npos ? line : line.substr(tab + 1))});
      if (corpus.empty()) break;
    }
    if (out.empty()) throw kht::Error(ErrorCode::BadInput, "no PD code in " + path);
    return out;
  }
};

void add_input(CLI::App* cmd, Input& in, bool allow_corpus) {
  auto* g = cmd->add_option_group("input", "exactly one input source");
  g->add_option("--pd", in.pd, "PD code, e.g. PD[X(1,4,2,3)]");
  g->add_option("--file", in.file, "file holding one PD code");
  if (allow_corpus) g->add_option("--corpus", in.corpus, "file of name<TAB>PD lines");
  g->require_option(1);
}

void emit_table(const std::string& name, const HomologyTable& t, const std::string& format, bool many,
                nlohmann::json& batch) {
  if (format == "json") {
    if (many) {
      batch.push_back({{"name", name}, {"table", to_json(t)}});
    } else {
      std::cout << to_json(t).dump(2) << "\n";
    }
    return;
  }
  if (many) std::cout << "# " << name << "\n";
  std::cout << t.to_tsv();
}

int run_tables(const Input& in, const std::string& format, bool verify, bool oracle) {
  auto links = in.load();
  bool many = !in.corpus.empty();
  nlohmann::json batch = nlohmann::json::array();
  int status = Ok;
  for (const auto& [name, pd] : links) {
    log(1, name + ": " + std::to_string(pd.crossings.size()) + " crossings");
    HomologyTable t = oracle ? cube_oracle(pd) : homology_table(kh(pd));
    if (verify && !oracle) {
      auto expected = cube_oracle(pd);
      if (!(expected == t)) {
        std::cerr << name << ": pipeline " << t.to_string() << " differs from oracle " << expected.to_string()
                  << "\n";
        status = CheckFailed;
      } else {
        log(1, name + ": verified against the cube oracle");
      }
    }
    emit_table(name, t, format, many, batch);
  }
  if (many && format == "json") std::cout << batch.dump(2) << "\n";
  return status;
}

PDCode single(const Input& in) { return in.load().front().pd; }

void require_alternating(const PDCode& pd) {
  if (!analyze(pd).alternating) throw kht::Error(ErrorCode::NotAlternating, "diagonality needs an alternating diagram");
}

int check_diagonal(const Input& in, bool tangle) {
  auto pd = single(in);
  require_alternating(pd);
  auto c = kh(pd, !tangle);
  auto d = is_diagonal(c);
  if (!d.diagonal) {
    const auto& o = c.objects(d.degree)[d.index];
    std::cout << "not diagonal: object " << d.index << " at r=" << d.degree << " has 2r - R = "
              << to_string(Rational(2 * d.degree) - shifted_rotation(o)) << "\n";
    return CheckFailed;
  }
  std::cout << "C = " << (d.constant ? to_string(*d.constant) : "none (zero complex)") << "\n";
  return Ok;
}

int check_coherent(const Input& in, int max_depth) {
  auto pd = single(in);
  require_alternating(pd);
  auto c = kh(pd, false);
  if (c.k() == 0) throw kht::Error(ErrorCode::BadInput, "coherence needs a tangle with boundary");
  auto report = is_coherently_diagonal(c, max_depth >= 0 ? std::optional<int>(max_depth) : std::nullopt);
  if (report.coherent) {
    std::cout << "coherent: C = " << to_string(*report.constant) << ", closures checked " << report.closures_checked
              << "\n";
    return Ok;
  }
  std::cout << "not coherent: " << report.reason << "\nwitness:";
  for (const auto& s : report.witness) {
    std::cout << " (position " << s.position << ", sign " << s.sign << ", R_U " << to_string(s.rotation) << ")";
  }
  std::cout << "\n";
  return CheckFailed;
}

int check_two_lines(const Input& in) {
  int status = Ok;
  for (const auto& [name, pd] : in.load()) {
    auto k = two_line_check(homology_table(kh(pd)));
    std::string prefix = in.corpus.empty() ? "" : name + "\t";
    if (k) {
      std::cout << prefix << "K = " << *k << "\n";
    } else {
      std::cout << prefix << "not supported on two lines\n";
      status = CheckFailed;
    }
  }
  return status;
}

int reduce_cmd(const Input& in, bool tangle, bool dump) {
  auto c = kh(single(in), !tangle);
  if (dump) {
    std::cout << to_json(c).dump(2) << "\n";
  } else {
    std::cout << "k = " << c.k() << ", objects " << c.size() << ", degrees " << c.min_degree() << ".."
              << c.max_degree() << "\n";
  }
  return Ok;
}

int check_additivity(int trials, unsigned seed) {
  std::mt19937 rng(seed);
  int failures = 0, done = 0;
  while (done < trials) {
    auto d = random_diagram(rng, 3, 3, done % 5 == 0);
    if (!d) continue;
    std::vector<OrientedSmoothing> inputs;
    Rational sum = d->classification().R_D;
    for (int c = 1; c <= d->inputs(); ++c) {
      inputs.push_back(random_smoothing(rng, d->input_k(c), 2));
      sum += rotation_number(inputs.back());
    }
    if (rotation_number(compose_smoothings(*d, inputs)) != sum) {
      ++failures;
      std::cout << "mismatch on " << to_json(d->spec()).dump() << "\n";
    }
    ++done;
  }
  std::cout << done << " trials, " << failures << " failures\n";
  return failures ? CheckFailed : Ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Khovanov homology of tangles by planar composition"};
  app.require_subcommand(1);
  Input in;
  std::string format = "tsv";
  bool verify = false, tangle = false, dump = false;
  int max_depth = -1, trials = 1000;
  unsigned seed = 1;

  auto* compute = app.add_subcommand("compute", "homology table via tangle composition");
  add_input(compute, in, true);
  compute->add_option("--format", format)->check(CLI::IsMember({"tsv", "json"}));
  compute->add_flag("--verify", verify, "compare with the cube oracle");

  auto* oracle = app.add_subcommand("oracle", "homology table from the full cube");
  add_input(oracle, in, true);
  oracle->add_option("--format", format)->check(CLI::IsMember({"tsv", "json"}));

  auto* diag = app.add_subcommand("check-diagonal", "rotation constant of the reduced complex");
  add_input(diag, in, false);
  diag->add_flag("--tangle", tangle, "keep the boundary open");

  auto* coh = app.add_subcommand("check-coherent", "check every partial closure");
  add_input(coh, in, false);
  coh->add_option("--max-depth", max_depth, "longest closure sequence");

  auto* lines = app.add_subcommand("check-two-lines", "two-line support of the homology");
  add_input(lines, in, true);

  auto* red = app.add_subcommand("reduce", "reduced complex");
  add_input(red, in, false);
  red->add_flag("--tangle", tangle, "keep the boundary open");
  red->add_flag("--dump", dump, "print the complex as JSON");

  auto* add = app.add_subcommand("check-additivity", "rotation additivity on random diagrams");
  add->add_option("--trials", trials)->check(CLI::PositiveNumber);
  add->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? Ok : InputError;
  }

  try {
    if (*compute) return run_tables(in, format, verify, false);
    if (*oracle) return run_tables(in, format, false, true);
    if (*diag) return check_diagonal(in, tangle);
    if (*coh) return check_coherent(in, max_depth);
    if (*lines) return check_two_lines(in);
    if (*red) return reduce_cmd(in, tangle, dump);
    if (*add) return check_additivity(trials, seed);
  } catch (const kht::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return InputError;
  }
  return InputError;
}

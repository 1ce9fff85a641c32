// incat: generate dual membership structures, check their axioms, build the
// isomorphism between the two relations and run the lemma suite.
//
// Exit status: 0 success or pass, 1 a semantic negative (axiom fail, no
// isomorphism, lemma fail, false formula, cycle), 2 usage or input error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "incat/incat.hpp"

namespace {

using namespace incat;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

/// Bad flags, unreadable files and other input problems.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read `" + path + "`");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw UsageError("cannot write `" + path.string() + "`");
}

DualStructure load(const std::string& path) { return parse_structure(read_file(path)); }

std::string join(const std::vector<std::size_t>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

std::string cycle_line(const IllFoundedError& e) {
  return "fail ill-founded e" + std::to_string(e.tag()) + " cycle=" + join(e.cycle(), ",") + "\n";
}

std::string non_extensional_line(const NonExtensionalError& e) {
  return "fail non-extensional e" + std::to_string(e.tag()) + " a=" + std::to_string(e.first()) +
         " b=" + std::to_string(e.second()) + "\n";
}

/// Where a command's report goes: stdout, or the file given with -o.
struct Sink {
  std::string path;

  void emit(const std::string& text) const {
    if (path.empty()) {
      std::cout << text << std::flush;
    } else {
      write_file(path, text);
    }
  }
};

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
  unsigned n = 3;
  std::string in;
  std::uint64_t seed = 0;
  std::size_t size = 4;
  std::string kind;
  std::string out_dir;
  Sink sink;
};

int gen_v_universe(const GenArgs& a) {
  a.sink.emit(serialize_structure(build_v_universe(a.n)));
  return kOk;
}

int gen_scramble(const GenArgs& a) {
  const DualStructure s = load(a.in);
  const Permutation p = Permutation::random(s.size(), a.seed);
  std::vector<std::size_t> images(p.images().begin(), p.images().end());
  a.sink.emit("# perm " + join(images, " ") + "\n" + serialize_structure(scramble(s, p)));
  return kOk;
}

int gen_random_pair(const GenArgs& a) {
  if (a.size == 0) throw UsageError("--size must be at least 1");
  const DualStructure s(random_extensional_relation(a.size, a.seed),
                        random_extensional_relation(a.size, a.seed ^ 0x9e3779b97f4a7c15ull));
  a.sink.emit(serialize_structure(s));
  return kOk;
}

int gen_tamper(const GenArgs& a) {
  const DualStructure s = load(a.in);
  const TamperKind kind = parse_tamper_kind(a.kind);
  a.sink.emit("# tamper " + tamper_kind_name(kind) + " seed " + std::to_string(a.seed) + "\n" +
              serialize_structure(tamper(s, kind, a.seed)));
  return kOk;
}

int gen_gallery(const GenArgs& a) {
  const std::filesystem::path dir(a.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create `" + a.out_dir + "`: " + ec.message());
  std::string listing;
  for (const GalleryItem& item : counterexample_gallery()) {
    const auto st = dir / (item.name + ".st");
    const auto expected = dir / (item.name + ".expected");
    write_file(st, "# " + item.description + "\n" + serialize_structure(item.structure));
    write_file(expected, item.expected);
    listing += st.string() + "\n" + expected.string() + "\n";
  }
  std::cout << listing;
  return kOk;
}

// ---------------------------------------------------------------------------
// check-axioms

struct CheckArgs {
  std::string in;
  std::string mode = "battery";
  unsigned depth = CheckOptions{}.depth;
  std::uint64_t seed = 0;
  Sink sink;
};

int check_axioms(const CheckArgs& a) {
  CheckOptions opts;
  opts.mode = parse_schema_mode(a.mode);
  opts.depth = a.depth;
  opts.seed = a.seed;
  const AxiomReport report = full_report(load(a.in), opts);
  a.sink.emit(report.render());
  return report.all_pass() ? kOk : kNegative;
}

// ---------------------------------------------------------------------------
// find-iso

struct IsoArgs {
  std::string in;
  bool verify = false;
  bool oracle = false;
  Sink sink;
};

/// Domains up to this size get the full pairwise phi comparison; larger ones
/// are compared through the certificate, which is equivalent because both
/// collapses are injective.
constexpr std::size_t kPairwiseOracleLimit = 128;

std::string oracle_check(const DualStructure& s, const IsoOutcome& outcome, bool& ok) {
  HfTable table;
  Collapser c1(table, s.e1(), Tag::e1), c2(table, s.e2(), Tag::e2);
  const auto codes1 = c1.all(), codes2 = c2.all();
  const std::size_t n = s.size();
  if (n <= kPairwiseOracleLimit) {
    IsoEngine engine(s);
    for (ElementId x = 0; x < n; ++x) {
      for (ElementId y = 0; y < n; ++y) {
        const bool p = engine.build_psi(x, y).has_value();
        if (p != (codes1[x] == codes2[y])) {
          ok = false;
          return "oracle mismatch x=" + std::to_string(x) + " y=" + std::to_string(y) + " phi=" + (p ? "1" : "0") + "\n";
        }
      }
    }
    return "oracle ok mode=pairwise pairs=" + std::to_string(n * n) + "\n";
  }
  std::map<HfCode, ElementId> by_code;
  for (ElementId y = 0; y < n; ++y) by_code.emplace(codes2[y], y);
  for (ElementId x = 0; x < n; ++x) {
    auto it = by_code.find(codes1[x]);
    const bool matched = it != by_code.end();
    const bool agrees = outcome.certificate ? matched && outcome.certificate->map[x] == it->second : true;
    if (!agrees) {
      ok = false;
      return "oracle mismatch x=" + std::to_string(x) + "\n";
    }
  }
  if (outcome.diagnostic) {
    for (const auto& u : outcome.diagnostic->unmatched) {
      const auto& codes = u.tag == Tag::e1 ? codes1 : codes2;
      const auto& other = u.tag == Tag::e1 ? codes2 : codes1;
      if (std::find(other.begin(), other.end(), codes[u.element]) != other.end()) {
        ok = false;
        return "oracle mismatch " + tag_name(u.tag) + "=" + std::to_string(u.element) + "\n";
      }
    }
  }
  return "oracle ok mode=certificate elements=" + std::to_string(n) + "\n";
}

int find_iso(const IsoArgs& a) {
  const DualStructure s = load(a.in);
  IsoOutcome outcome;
  try {
    outcome = global_isomorphism(s);
  } catch (const IllFoundedError& e) {
    a.sink.emit(cycle_line(e));
    return kNegative;
  } catch (const NonExtensionalError& e) {
    a.sink.emit(non_extensional_line(e));
    return kNegative;
  }
  std::string out;
  bool ok = outcome.ok();
  if (outcome.certificate) {
    out = render_certificate(*outcome.certificate);
    if (a.verify) {
      const CertificateCheck check = verify_certificate(s, *outcome.certificate);
      out += check.ok ? "verify ok\n" : "verify fail " + check.problem + "\n";
      ok = ok && check.ok;
    }
  } else {
    out = render_diagnostic(*outcome.diagnostic);
  }
  if (a.oracle) out += oracle_check(s, outcome, ok);
  a.sink.emit(out);
  return ok ? kOk : kNegative;
}

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
  std::string in;
  std::string formula;
  std::string formula_file;
  std::string assign;
  Sink sink;
};

Assignment parse_assignment(const std::string& text, std::size_t n) {
  Assignment a;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(start, comma - start);
    start = comma + 1;
    const auto eq = item.find('=');
    std::uint64_t v = 0;
    if (eq == std::string::npos || eq == 0 || !detail::parse_id(std::string_view(item).substr(eq + 1), v)) {
      throw UsageError("malformed assignment `" + item + "`");
    }
    if (v >= n) throw UsageError("assigned element " + std::to_string(v) + " out of range");
    a[item.substr(0, eq)] = static_cast<ElementId>(v);
  }
  return a;
}

int eval(const EvalArgs& a) {
  if (a.formula.empty() == a.formula_file.empty()) throw UsageError("give exactly one of --formula and --formula-file");
  const DualStructure s = load(a.in);
  const Formula f = parse_formula(a.formula.empty() ? read_file(a.formula_file) : a.formula);
  const bool value = evaluate(s, f, parse_assignment(a.assign, s.size()));
  a.sink.emit(value ? "true\n" : "false\n");
  return value ? kOk : kNegative;
}

// ---------------------------------------------------------------------------
// verify-lemmas

struct LemmaArgs {
  std::string in;
  std::string corpus;
  std::optional<std::uint64_t> seed;
  Sink sink;
};

int verify_lemmas(const LemmaArgs& a) {
  if (a.in.empty() == a.corpus.empty()) throw UsageError("give exactly one of a structure file and --corpus");
  SuiteReport report;
  if (!a.corpus.empty()) {
    CorpusConfig cfg = parse_corpus_config(a.corpus);
    if (a.seed) cfg.seed = *a.seed;
    report = run_corpus(cfg);
  } else {
    report = run_suite(load(a.in));
  }
  a.sink.emit(report.render());
  return report.any_fail() ? kNegative : kOk;
}

// ---------------------------------------------------------------------------
// collapse

struct CollapseArgs {
  std::string in;
  int relation = 1;
  std::uint64_t element = 0;
  Sink sink;
};

int collapse_cmd(const CollapseArgs& a) {
  const DualStructure s = load(a.in);
  if (a.element >= s.size()) throw UsageError("element " + std::to_string(a.element) + " out of range");
  const Tag tag = a.relation == 1 ? Tag::e1 : Tag::e2;
  HfTable table;
  CollapseResult c;
  try {
    c = collapse(table, s.relation(tag), static_cast<ElementId>(a.element), tag);
  } catch (const IllFoundedError& e) {
    a.sink.emit(cycle_line(e));
    return kNegative;
  }
  std::string out = table.render(c.code) + "\n";
  if (auto code = table.small_code(c.code)) {
    out += "code " + std::to_string(*code) + "\n";
  } else {
    out += "code=large\n";
  }
  if (c.duplicate) {
    out += "warning non-extensional a=" + std::to_string(c.duplicate->first) +
           " b=" + std::to_string(c.duplicate->second) + "\n";
  }
  a.sink.emit(out);
  return kOk;
}

void add_output(CLI::App* cmd, Sink& sink) {
  cmd->add_option("-o,--output", sink.path, "Write the report to this file instead of standard output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual membership structures: axioms, the definable isomorphism and its lemmas"};
  app.require_subcommand(1);

  // gen
  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate structure files");
  gen_cmd->require_subcommand(1);
  CLI::App* g_v = gen_cmd->add_subcommand("v-universe", "The level V_n with both relations equal");
  g_v->add_option("--n", gen.n, "Level, 0 to 5")->required()->check(CLI::Range(0u, kMaxUniverseLevel));
  add_output(g_v, gen.sink);
  CLI::App* g_s = gen_cmd->add_subcommand("scramble", "Permute e2 by a seeded random permutation");
  g_s->add_option("--in", gen.in, "Input structure")->required();
  g_s->add_option("--seed", gen.seed, "Permutation seed");
  add_output(g_s, gen.sink);
  CLI::App* g_r = gen_cmd->add_subcommand("random-pair", "Two independent random extensional well-founded relations");
  g_r->add_option("--size", gen.size, "Domain size")->required();
  g_r->add_option("--seed", gen.seed, "Seed");
  add_output(g_r, gen.sink);
  CLI::App* g_t = gen_cmd->add_subcommand("tamper", "Mutate e1: add-cycle, break-extensionality or remove-edge");
  g_t->add_option("--in", gen.in, "Input structure")->required();
  g_t->add_option("--kind", gen.kind, "Tamper kind")->required();
  g_t->add_option("--seed", gen.seed, "Seed");
  add_output(g_t, gen.sink);
  CLI::App* g_g = gen_cmd->add_subcommand("gallery", "Write the counterexample gallery and its expected summaries");
  g_g->add_option("--out", gen.out_dir, "Output directory")->required();

  CheckArgs check;
  CLI::App* check_cmd = app.add_subcommand("check-axioms", "Check both relations against the axioms");
  check_cmd->add_option("file", check.in, "Structure file")->required();
  check_cmd->add_option("--mode", check.mode, "Schema mode: semantic, battery or bounded");
  check_cmd->add_option("--depth", check.depth, "Formula size bound in bounded mode");
  check_cmd->add_option("--seed", check.seed, "Seed for sampled replacement");
  add_output(check_cmd, check.sink);

  IsoArgs iso;
  CLI::App* iso_cmd = app.add_subcommand("find-iso", "Build the isomorphism from e1 to e2 or explain its failure");
  iso_cmd->add_option("file", iso.in, "Structure file")->required();
  iso_cmd->add_flag("--verify", iso.verify, "Re-check the certificate edge by edge");
  iso_cmd->add_flag("--oracle-check", iso.oracle, "Compare with the collapse oracle");
  add_output(iso_cmd, iso.sink);

  EvalArgs ev;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate a formula");
  eval_cmd->add_option("file", ev.in, "Structure file")->required();
  eval_cmd->add_option("--formula", ev.formula, "Formula text");
  eval_cmd->add_option("--formula-file", ev.formula_file, "File holding the formula");
  eval_cmd->add_option("--assign", ev.assign, "Free variable values, e.g. x=0,y=3");
  add_output(eval_cmd, ev.sink);

  LemmaArgs lem;
  CLI::App* lem_cmd = app.add_subcommand("verify-lemmas", "Run the lemma suite on a file or a generated corpus");
  lem_cmd->add_option("file", lem.in, "Structure file");
  lem_cmd->add_option("--corpus", lem.corpus, "Corpus config, e.g. \"sizes=3,4 count=100 seed=1\"");
  lem_cmd->add_option("--seed", lem.seed, "Override the corpus seed");
  add_output(lem_cmd, lem.sink);

  CollapseArgs col;
  CLI::App* col_cmd = app.add_subcommand("collapse", "Collapse one element to a hereditarily finite set");
  col_cmd->add_option("file", col.in, "Structure file")->required();
  col_cmd->add_option("--relation", col.relation, "1 or 2")->check(CLI::IsMember({1, 2}));
  col_cmd->add_option("--element", col.element, "Element id")->required();
  add_output(col_cmd, col.sink);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*g_v) return gen_v_universe(gen);
    if (*g_s) return gen_scramble(gen);
    if (*g_r) return gen_random_pair(gen);
    if (*g_t) return gen_tamper(gen);
    if (*g_g) return gen_gallery(gen);
    if (*check_cmd) return check_axioms(check);
    if (*iso_cmd) return find_iso(iso);
    if (*eval_cmd) return eval(ev);
    if (*lem_cmd) return verify_lemmas(lem);
    if (*col_cmd) return collapse_cmd(col);
  } catch (const std::exception& e) {
    std::cerr << "incat: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

#include "phinfer/cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <random>
#include <string>

#include "phinfer/dot.hpp"
#include "phinfer/inference.hpp"
#include "phinfer/oracle.hpp"
#include "phinfer/position_heap.hpp"
#include "phinfer/pht.hpp"
#include "phinfer/trace_graph.hpp"

namespace phinfer {
namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string file;
  std::string text;
  std::string alphabet;
  int problem = 0;
  std::size_t limit = 0;
  std::size_t max_len = kDefaultOracleMaxLen;
  std::size_t len = 0;
  std::uint64_t seed = 0;
  bool trace = false;
};

// --alphabet wins over the document's alphabet line. Problems 1 and 3 fall
// back to the letters on the sketch's edges.
Alphabet resolve_alphabet(const Options& opt, const PhtDocument& doc, bool required) {
  if (!opt.alphabet.empty()) {
    try {
      return Alphabet(opt.alphabet);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--alphabet: ") + e.what());
    }
  }
  if (doc.alphabet) return *doc.alphabet;
  if (required) throw UsageError("this problem needs an alphabet (--alphabet or an alphabet line)");
  std::string letters;
  const HeapSketch& s = doc.sketch;
  if (s.labeled()) {
    for (NodeId v = 1; v < s.node_count(); ++v) letters.push_back(*s.label(v));
  }
  if (letters.empty()) letters = "a";
  return Alphabet::of_text(letters);
}

ProblemKind kind_of(int problem) { return static_cast<ProblemKind>(problem); }

bool needs_alphabet(ProblemKind kind) { return kind == ProblemKind::kNumbered || kind == ProblemKind::kLinksOnly; }

int run_build(const Options& opt, std::ostream& out) {
  if (!is_valid_text(opt.text)) throw InvalidText("text must end with a letter that occurs nowhere else");
  const Alphabet alphabet = !opt.alphabet.empty() ? Alphabet(opt.alphabet)
                            : opt.text.empty()     ? Alphabet("a")
                                                   : Alphabet::of_text(opt.text);
  const HeapWithLinks phs = build_position_heap(opt.text, alphabet);
  out << write_pht({to_sketch(phs), alphabet});
  return kOk;
}

int run_infer(const Options& opt, std::ostream& out, std::ostream& err) {
  const PhtDocument doc = read_pht_file(opt.file);
  const ProblemKind kind = kind_of(opt.problem);
  InferenceOutcome outcome = InferenceOutcome::invalid("");
  switch (kind) {
    case ProblemKind::kNumberedLabeled:
      outcome = infer_p1(doc.sketch);
      break;
    case ProblemKind::kNumbered:
      outcome = infer_p2(doc.sketch, resolve_alphabet(opt, doc, true));
      break;
    case ProblemKind::kLabeled:
      outcome = infer_p3(doc.sketch);
      break;
    case ProblemKind::kLinksOnly:
      outcome = infer_p4(doc.sketch, resolve_alphabet(opt, doc, true));
      break;
  }
  if (!outcome) {
    out << "invalid\n";
    err << "phinfer: " << outcome.reason() << '\n';
    return kInvalid;
  }
  out << outcome.text() << '\n';
  return kOk;
}

int run_count(const Options& opt, std::ostream& out) {
  const PhtDocument doc = read_pht_file(opt.file);
  BigCount count;
  switch (kind_of(opt.problem)) {
    case ProblemKind::kNumbered:
      count = count_p2(doc.sketch, resolve_alphabet(opt, doc, true));
      break;
    case ProblemKind::kLabeled:
      count = count_p3(doc.sketch);
      break;
    case ProblemKind::kLinksOnly:
      count = count_p4(doc.sketch, resolve_alphabet(opt, doc, true));
      break;
    default:
      throw UsageError("count supports problems 2, 3 and 4");
  }
  out << count.get_str() << '\n';
  return count == 0 ? kInvalid : kOk;
}

int run_enum(const Options& opt, std::ostream& out) {
  const PhtDocument doc = read_pht_file(opt.file);
  std::size_t emitted = 0;
  const TextVisitor visit = [&](const std::string& text) {
    out << text << '\n';
    ++emitted;
    return opt.limit == 0 || emitted < opt.limit;
  };
  switch (kind_of(opt.problem)) {
    case ProblemKind::kNumbered:
      enum_p2(doc.sketch, resolve_alphabet(opt, doc, true), visit);
      break;
    case ProblemKind::kLabeled:
      enum_p3(doc.sketch, visit);
      break;
    case ProblemKind::kLinksOnly:
      enum_p4(doc.sketch, resolve_alphabet(opt, doc, true), visit);
      break;
    default:
      throw UsageError("enum supports problems 2, 3 and 4");
  }
  return emitted == 0 ? kInvalid : kOk;
}

int run_verify(const Options& opt, std::ostream& out) {
  const PhtDocument doc = read_pht_file(opt.file);
  ProblemKind kind;
  if (opt.problem != 0) {
    kind = kind_of(opt.problem);
  } else if (const auto implied = problem_kind_of(doc.sketch)) {
    kind = *implied;
  } else {
    throw UsageError("the sketch carries no labels, numbers or links; nothing to verify");
  }
  const bool ok = verify_text(doc.sketch, kind, opt.text);
  out << (ok ? "ok" : "mismatch") << '\n';
  return ok ? kOk : kInvalid;
}

int run_export_dot(const Options& opt, std::ostream& out, std::ostream& err) {
  const PhtDocument doc = read_pht_file(opt.file);
  if (!opt.trace) {
    out << export_dot(doc.sketch);
    return kOk;
  }
  if (!doc.sketch.labeled()) throw UsageError("--trace needs a labeled sketch");
  try {
    const SuffixLinkMap links = reconstruct_suffix_links(doc.sketch);
    const SigmaMap sigma = compute_sigma(doc.sketch, links);
    out << export_dot(build_trace_graph(doc.sketch, links, sigma), doc.sketch);
  } catch (const TraceError& e) {
    err << "phinfer: " << e.what() << '\n';
    return kInvalid;
  }
  return kOk;
}

int run_oracle(const Options& opt, std::ostream& out) {
  const PhtDocument doc = read_pht_file(opt.file);
  const ProblemKind kind = kind_of(opt.problem);
  const Alphabet alphabet = resolve_alphabet(opt, doc, needs_alphabet(kind));
  const auto texts = brute_force_oracle(doc.sketch, kind, alphabet, opt.max_len);
  for (const auto& t : texts) out << t << '\n';
  return texts.empty() ? kInvalid : kOk;
}

int run_gen(const Options& opt, std::ostream& out) {
  const Alphabet alphabet(opt.alphabet);
  if (opt.len > 1 && alphabet.size() < 2) throw UsageError("texts longer than 1 need at least two letters");
  std::mt19937_64 rng(opt.seed);
  std::string text(opt.len, '\0');
  if (opt.len > 0) {
    const std::size_t last = rng() % alphabet.size();
    text.back() = alphabet[last];
    for (std::size_t i = 0; i + 1 < opt.len; ++i) {
      std::size_t j = rng() % (alphabet.size() - 1);
      if (j >= last) ++j;
      text[i] = alphabet[j];
    }
  }
  out << text << '\n';
  return kOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Position heaps and their inverse problems", "phinfer"};
  app.require_subcommand(1);
  Options opt;

  auto* build = app.add_subcommand("build", "Print the PHT document of PHS(text)");
  build->add_option("text", opt.text, "Source text")->required();
  build->add_option("--alphabet", opt.alphabet, "Alphabet letters (default: letters of the text)");

  auto* infer = app.add_subcommand("infer", "Infer one source text, or print 'invalid'");
  infer->add_option("--problem", opt.problem, "Problem 1..4")->required()->check(CLI::Range(1, 4));
  infer->add_option("file", opt.file, "PHT document")->required();
  infer->add_option("--alphabet", opt.alphabet, "Alphabet letters");

  auto* count = app.add_subcommand("count", "Count the source texts");
  count->add_option("--problem", opt.problem, "Problem 2..4")->required()->check(CLI::Range(2, 4));
  count->add_option("file", opt.file, "PHT document")->required();
  count->add_option("--alphabet", opt.alphabet, "Alphabet letters");

  auto* enumerate = app.add_subcommand("enum", "List the source texts, one per line");
  enumerate->add_option("--problem", opt.problem, "Problem 2..4")->required()->check(CLI::Range(2, 4));
  enumerate->add_option("file", opt.file, "PHT document")->required();
  enumerate->add_option("--limit", opt.limit, "Stop after N texts (0: no limit)");
  enumerate->add_option("--alphabet", opt.alphabet, "Alphabet letters");

  auto* verify = app.add_subcommand("verify", "Check a text against a sketch");
  verify->add_option("file", opt.file, "PHT document")->required();
  verify->add_option("text", opt.text, "Candidate text")->required();
  verify->add_option("--problem", opt.problem, "Problem 1..4 (default: implied by the sketch)")
      ->check(CLI::Range(1, 4));

  auto* dot = app.add_subcommand("export-dot", "Render a sketch (or its trace graph) as Graphviz");
  dot->add_option("file", opt.file, "PHT document")->required();
  dot->add_flag("--trace", opt.trace, "Render the trace graph of a labeled sketch");

  auto* oracle = app.add_subcommand("oracle", "Brute-force answer set, sorted");
  oracle->add_option("--problem", opt.problem, "Problem 1..4")->required()->check(CLI::Range(1, 4));
  oracle->add_option("file", opt.file, "PHT document")->required();
  oracle->add_option("--max-len", opt.max_len, "Refuse texts longer than this");
  oracle->add_option("--alphabet", opt.alphabet, "Alphabet letters");

  auto* gen = app.add_subcommand("gen", "Random valid text");
  gen->add_option("--len", opt.len, "Text length")->required();
  gen->add_option("--alphabet", opt.alphabet, "Alphabet letters")->required();
  gen->add_option("--seed", opt.seed, "Random seed")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*build) return run_build(opt, out);
    if (*infer) return run_infer(opt, out, err);
    if (*count) return run_count(opt, out);
    if (*enumerate) return run_enum(opt, out);
    if (*verify) return run_verify(opt, out);
    if (*dot) return run_export_dot(opt, out, err);
    if (*oracle) return run_oracle(opt, out);
    if (*gen) return run_gen(opt, out);
  } catch (const InvalidText& e) {
    err << "phinfer: " << e.what() << '\n';
    return kInvalid;
  } catch (const TraceError& e) {
    err << "phinfer: " << e.what() << '\n';
    return kInvalid;
  } catch (const FormatError& e) {
    err << "phinfer: " << opt.file << ": " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "phinfer: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace phinfer

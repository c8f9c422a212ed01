// Command-line front end: classify | run | translate | verify | frames.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "alba/checker.hpp"
#include "alba/engine.hpp"
#include "alba/fo.hpp"
#include "alba/formula.hpp"
#include "alba/frames.hpp"
#include "alba/sgtree.hpp"

namespace {

using namespace alba;

constexpr int kExitSuccess = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAlbaFailure = 2;

std::string read_input(const std::string& arg) {
  std::ifstream in(arg);
  if (in.good()) {
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r'))
      text.pop_back();
    return text;
  }
  return arg;
}

Inequality parse_input(const std::string& text, bool as_inequality) {
  if (text.find("<=") != std::string::npos) return parse_inequality(text);
  if (as_inequality) {
    FormulaPtr f = parse_formula(text);
    if (f->conn == Conn::Implies) return {f->children[0], f->children[1]};
    throw ParseError("--as-inequality expects a top-level implication", 0);
  }
  throw ParseError(
      "expected an inequality 'phi <= psi' (use --as-inequality for a "
      "top-level implication)",
      0);
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Sahlqvist: return "Sahlqvist";
    case Verdict::Inductive: return "Inductive";
    case Verdict::NotInductive: return "NotInductive";
  }
  return "?";
}

const char* quality_name(BranchQuality q) {
  switch (q) {
    case BranchQuality::Excellent: return "excellent";
    case BranchQuality::Good: return "good";
    case BranchQuality::NotGood: return "not-good";
  }
  return "?";
}

void print_classification(const Classification& cls, std::ostream& os) {
  os << "verdict: " << verdict_name(cls.verdict) << "\n";
  if (cls.verdict != Verdict::NotInductive) {
    os << "eps:";
    for (const auto& [p, one] : cls.eps.assignment)
      os << " " << p << "=" << (one ? "1" : "d");
    os << "\nomega:";
    if (cls.omega.pairs.empty()) os << " (empty)";
    for (const auto& [a, b] : cls.omega.pairs) os << " " << a << "<" << b;
    os << "\nbranches:\n";
    for (const auto& br : cls.branches) {
      os << "  " << (br.leaf_sign == Sign::Plus ? "+" : "-") << br.var
         << " :";
      for (const auto& lbl : br.path) os << " " << lbl;
      os << "  [" << quality_name(br.quality) << "]\n";
    }
  } else {
    os << "reason: " << cls.diagnostic << "\n";
  }
}

void print_trace(const RuleTrace& trace, std::ostream& os) {
  for (size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep& s = trace.steps[i];
    os << "  " << i + 1 << ". [stage " << s.stage << "] " << s.rule
       << " @ system " << s.index;
    if (!s.fresh.empty()) {
      os << " fresh:";
      for (const auto& f : s.fresh) os << " " << f;
    }
    if (!s.detail.empty()) os << " (" << s.detail << ")";
    os << "\n";
    os << "     before: ";
    for (const auto& sys : s.before) os << sys.describe() << " ";
    os << "\n     after:  ";
    for (const auto& sys : s.after) os << sys.describe() << " ";
    os << "\n";
  }
}

struct CommonOpts {
  int size = 3;
  uint64_t acc_budget = 2000;
  uint64_t rule_budget = 500;
  uint64_t seed = 0;
  bool trace = false;
  bool simplify = false;
  std::string format = "unicode";
  bool as_inequality = false;
  int check = 0;
  std::string save_path;
};

void save_correspondent(const std::string& path, const FOPtr& fo) {
  std::ofstream out(path);
  out << fo_to_json(fo).dump(2) << "\n";
}

FrameEnumConfig frame_config(const CommonOpts& o, int size) {
  FrameEnumConfig cfg;
  cfg.max_size = size;
  cfg.seed = o.seed;
  // Exhaustive through size 3; the budget only constrains larger layers.
  cfg.acc_budget = o.acc_budget;
  return cfg;
}

int cmd_classify(const CommonOpts& o, const std::string& input) {
  Inequality iq = parse_input(read_input(input), o.as_inequality);
  if (!is_basic(iq)) {
    std::cerr << "classify expects a basic-language inequality\n";
    return kExitUsage;
  }
  print_classification(classify(iq), std::cout);
  return kExitSuccess;
}

int run_pipeline(const CommonOpts& o, const std::string& input,
                 AlbaResult* out) {
  Inequality iq = parse_input(read_input(input), o.as_inequality);
  AlbaOptions opts;
  opts.rule_budget = o.rule_budget;
  opts.simplify = o.simplify;
  *out = run_alba(iq, opts);
  return kExitSuccess;
}

int cmd_run(const CommonOpts& o, const std::string& input) {
  AlbaResult res;
  run_pipeline(o, input, &res);
  Inequality iq = parse_input(read_input(input), o.as_inequality);

  std::cout << "input: " << print_inequality(iq) << "\n";
  std::cout << "classification: " << verdict_name(res.classification.verdict)
            << "\n";
  if (o.trace) {
    std::cout << "trace:\n";
    print_trace(res.trace, std::cout);
  }
  if (!res.success) {
    std::cout << "result: FAILURE (" << res.failure_reason << ")\n";
    std::cout << "residual systems:\n";
    for (const auto& sys : res.systems)
      std::cout << "  " << sys.describe() << "\n";
    return kExitAlbaFailure;
  }
  std::cout << "result: SUCCESS\n";
  std::cout << "pure systems:\n";
  for (const auto& sys : res.systems)
    std::cout << "  " << sys.describe() << "\n";
  if (o.simplify && !res.simplified.empty()) {
    std::cout << "simplified:\n";
    for (const auto& q : res.simplified)
      std::cout << "  " << print_quasi(q) << "\n";
  }
  const FOPtr& fo = (o.simplify && res.fo_simplified) ? res.fo_simplified
                                                      : res.fo;
  FOFormat fmt = o.format == "tptp" ? FOFormat::Tptp : FOFormat::Unicode;
  std::cout << "correspondent: " << print_fo(fo, fmt) << "\n";
  if (!o.save_path.empty()) save_correspondent(o.save_path, res.fo);

  if (o.check > 0) {
    auto frames = collect_full_frames(frame_config(o, o.check));
    auto sum = verify_correspondence(iq, res.fo, frames);
    if (sum.all_agree()) {
      std::cout << "check: AGREE " << sum.frames_checked << "/"
                << sum.frames_checked << "\n";
    } else {
      std::cout << "check: DISAGREE on " << sum.disagreements << "/"
                << sum.frames_checked << " frames\n";
      std::cout << *sum.first_counterexample;
    }
  }
  return kExitSuccess;
}

int cmd_translate(const CommonOpts& o, const std::string& input) {
  AlbaResult res;
  run_pipeline(o, input, &res);
  if (!res.success) {
    std::cerr << "ALBA failed: " << res.failure_reason << "\n";
    return kExitAlbaFailure;
  }
  const FOPtr& fo = (o.simplify && res.fo_simplified) ? res.fo_simplified
                                                      : res.fo;
  FOFormat fmt = o.format == "tptp" ? FOFormat::Tptp : FOFormat::Unicode;
  std::cout << print_fo(fo, fmt) << "\n";
  if (!o.save_path.empty()) save_correspondent(o.save_path, res.fo);
  return kExitSuccess;
}

int cmd_verify(const CommonOpts& o, const std::string& input,
               const std::string& fo_path) {
  Inequality iq = parse_input(read_input(input), o.as_inequality);
  FOPtr fo;
  std::vector<QuasiInequality> quasis;
  if (!fo_path.empty()) {
    std::ifstream in(fo_path);
    if (!in.good()) {
      std::cerr << "cannot read stored correspondent " << fo_path << "\n";
      return kExitUsage;
    }
    nlohmann::json j;
    in >> j;
    fo = fo_from_json(j);
  } else {
    AlbaOptions opts;
    opts.rule_budget = o.rule_budget;
    AlbaResult res = run_alba(iq, opts);
    if (!res.success) {
      std::cerr << "ALBA failed: " << res.failure_reason << "\n";
      return kExitAlbaFailure;
    }
    fo = res.fo;
    quasis = res.quasis;
  }
  auto frames = collect_full_frames(frame_config(o, o.size));
  std::vector<FrameVerdict> verdicts;
  auto sum = verify_correspondence(iq, fo, frames, true,
                                   quasis.empty() ? nullptr : &quasis,
                                   &verdicts);
  if (o.trace) {
    for (size_t i = 0; i < verdicts.size(); ++i) {
      std::cout << "frame " << i << ": modal="
                << (verdicts[i].modal_valid ? "1" : "0");
      if (verdicts[i].has_pure)
        std::cout << " pure=" << (verdicts[i].pure_valid ? "1" : "0");
      std::cout << " fo=" << (verdicts[i].fo_valid ? "1" : "0")
                << (verdicts[i].agree() ? "" : "  <-- disagree") << "\n";
    }
  }
  if (sum.all_agree()) {
    std::cout << "AGREE " << sum.frames_checked << "/" << sum.frames_checked
              << "\n";
    return kExitSuccess;
  }
  std::cout << "DISAGREE on " << sum.disagreements << "/" << sum.frames_checked
            << " frames; first counterexample:\n";
  std::cout << *sum.first_counterexample;
  return kExitAlbaFailure;
}

int cmd_frames(const CommonOpts& o) {
  int idx = 0;
  enumerate_full_frames(frame_config(o, o.size),
                        [&](const PossibilityFrame& f) {
                          std::cout << "frame " << idx++ << "\n"
                                    << dump_frame(f);
                        });
  std::cout << "total " << idx << "\n";
  return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correspondence engine for modal logic under possibility "
               "semantics"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string input;
  std::string fo_path;

  auto add_common = [&](CLI::App* cmd, bool with_input = true) {
    if (with_input)
      cmd->add_option("input", input, "inequality text or file path")
          ->required();
    cmd->add_option("--size", o.size, "max frame size")
        ->check(CLI::Range(1, 4));
    cmd->add_option("--acc-budget", o.acc_budget,
                    "accessibility samples per poset at size 4");
    cmd->add_option("--rule-budget", o.rule_budget,
                    "stage-2 rule applications per system");
    cmd->add_option("--seed", o.seed, "seed for sampled relations");
    cmd->add_option("--format", o.format, "unicode|tptp")
        ->check(CLI::IsMember({"unicode", "tptp"}));
    cmd->add_flag("--trace", o.trace, "print the full rule trace");
    cmd->add_flag("--simplify", o.simplify,
                  "apply the display simplification pass");
    cmd->add_flag("--as-inequality", o.as_inequality,
                  "accept a top-level implication as an inequality");
  };

  auto* c_classify = app.add_subcommand("classify",
                                        "Sahlqvist/inductive classification");
  add_common(c_classify);
  auto* c_run = app.add_subcommand("run", "run the ALBA reduction");
  add_common(c_run);
  c_run->add_option("--check", o.check,
                    "verify the correspondent on frames up to this size")
      ->check(CLI::Range(1, 4));
  c_run->add_option("--save-correspondent", o.save_path,
                    "write the correspondent as json");
  auto* c_translate =
      app.add_subcommand("translate", "print the first-order correspondent");
  add_common(c_translate);
  c_translate->add_option("--save-correspondent", o.save_path,
                          "write the correspondent as json");
  auto* c_verify = app.add_subcommand(
      "verify", "compare modal and first-order validity on enumerated frames");
  add_common(c_verify);
  c_verify->add_option("--correspondent", fo_path,
                       "stored correspondent (json)");
  auto* c_frames = app.add_subcommand("frames", "dump enumerated full frames");
  add_common(c_frames, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitUsage : kExitSuccess;
  }

  if (const char* env_seed = std::getenv("ALBA_SEED"))
    o.seed = std::strtoull(env_seed, nullptr, 10);

  try {
    if (c_classify->parsed()) return cmd_classify(o, input);
    if (c_run->parsed()) return cmd_run(o, input);
    if (c_translate->parsed()) return cmd_translate(o, input);
    if (c_verify->parsed()) return cmd_verify(o, input, fo_path);
    if (c_frames->parsed()) return cmd_frames(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

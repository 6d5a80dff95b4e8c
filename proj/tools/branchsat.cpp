// branchsat: satisfiability for CTL, CTL+ and CTL* via parity games.
//
//   branchsat solve -e "A F G p & E G E F !p" --stats --model m.json
//   branchsat check-model m.json -e "A F G p"
//   branchsat corpus corpus/corpus.txt
//
// Exit codes: solve 10 SAT / 20 UNSAT; check-model 0 holds / 3 fails;
// corpus 0 all pass / 3 mismatch; 1 error; 2 node budget exceeded.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "branchsat/solver.hpp"

using namespace branchsat;

namespace {

constexpr int kSat = 10, kUnsat = 20, kError = 1, kBudget = 2, kFails = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::optional<Fragment> logic_of(const std::string& s) {
  if (s == "auto") return std::nullopt;
  if (s == "ctl") return Fragment::Ctl;
  if (s == "ctlplus") return Fragment::CtlPlus;
  if (s == "ctlstar") return Fragment::CtlStar;
  throw std::invalid_argument("unknown logic " + s);
}

struct SolveArgs {
  std::string expr, file, logic = "auto", model, dot, game, acceptance, entry = "modal";
  bool stats = false;
  std::size_t budget = BuildOptions{}.node_budget;
};

FormulaPtr formula_of(const std::string& expr, const std::string& file) {
  if (!expr.empty() && !file.empty()) throw std::invalid_argument("give either -e or a formula file, not both");
  if (expr.empty() && file.empty()) throw std::invalid_argument("no formula given");
  return parse(expr.empty() ? read_file(file) : expr);
}

int run_solve(const SolveArgs& a) {
  SolveOptions o;
  o.logic = logic_of(a.logic);
  o.entry = a.entry == "unfold" ? EntryMode::Unfold : EntryMode::Modal;
  o.build.node_budget = a.budget;
  o.build.labels = !a.game.empty();
  o.keep_game = !a.game.empty();
  o.dump_acceptance = !a.acceptance.empty();
  SolveReport r = solve(formula_of(a.expr, a.file), o);
  std::cout << (r.sat ? "SAT" : "UNSAT") << "\n";
  if (a.stats) std::cout << format_stats(r);
  if (r.model && !a.model.empty()) write_file(a.model, export_json(*r.model));
  if (r.model && !a.dot.empty()) write_file(a.dot, export_dot(*r.model));
  if (r.game) write_file(a.game, export_game(*r.game));
  if (!a.acceptance.empty()) write_file(a.acceptance, r.acceptance_dump);
  return r.sat ? kSat : kUnsat;
}

int run_check_model(const std::string& model, const std::string& expr, const std::string& file) {
  TransitionSystem t = import_json(read_file(model));
  if (!t.is_total()) throw std::invalid_argument("model is not total");
  bool ok = check_ctl(t, formula_of(expr, file));
  std::cout << (ok ? "holds" : "fails") << "\n";
  return ok ? 0 : kFails;
}

int run_corpus(const std::string& path, std::size_t budget, const std::string& save_models) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ofstream index;
  if (!save_models.empty()) {
    std::filesystem::create_directories(save_models);
    index.open(save_models + "/index.txt");
  }
  std::string line;
  int lineno = 0, run = 0, bad = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream ls(line.substr(start));
    std::string expected;
    ls >> expected;
    std::string text;
    std::getline(ls, text);
    if ((expected != "sat" && expected != "unsat") || text.find_first_not_of(" \t\r") == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected '<sat|unsat> <formula>'");
    FormulaPtr f = parse(text);
    SolveOptions o;
    o.build.node_budget = budget;
    SolveReport r = solve(f, o);
    ++run;
    const std::string got = r.sat ? "sat" : "unsat";
    if (got != expected) {
      ++bad;
      std::cout << path << ":" << lineno << ": expected " << expected << ", got " << got << ": " << print(f) << "\n";
    }
    if (index.is_open() && r.model && r.formula_fragment == Fragment::Ctl) {
      std::string name = "line" + std::to_string(lineno) + ".json";
      write_file(save_models + "/" + name, export_json(*r.model));
      index << name << " " << print(f) << "\n";
    }
  }
  std::cout << run << " run, " << bad << " mismatches\n";
  return bad == 0 ? 0 : kFails;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Satisfiability checking for CTL, CTL+ and CTL*"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "decide satisfiability of a formula");
  solve_cmd->add_option("-e,--expr", sa.expr, "formula text");
  solve_cmd->add_option("file", sa.file, "file holding the formula");
  solve_cmd->add_option("--logic", sa.logic, "pipeline: auto, ctl, ctlplus or ctlstar")
      ->check(CLI::IsMember({"auto", "ctl", "ctlplus", "ctlstar"}));
  solve_cmd->add_option("--model", sa.model, "write the extracted model as JSON");
  solve_cmd->add_option("--dot", sa.dot, "write the extracted model as DOT");
  solve_cmd->add_option("--export-game", sa.game, "write the game graph");
  solve_cmd->add_option("--dump-acceptance", sa.acceptance, "write the reachable acceptance states and priorities");
  solve_cmd->add_flag("--stats", sa.stats, "print game and automaton sizes");
  solve_cmd->add_option("--node-budget", sa.budget, "maximum number of game nodes");
  solve_cmd->add_option("--entry", sa.entry, "E-automaton entry rule: modal or unfold (unsound, for comparison)")
      ->check(CLI::IsMember({"modal", "unfold"}));

  std::string model_path, check_expr, check_file;
  auto* check_cmd = app.add_subcommand("check-model", "check a CTL formula on a JSON model");
  check_cmd->add_option("model", model_path, "model JSON")->required();
  check_cmd->add_option("-e,--expr", check_expr, "formula text");
  check_cmd->add_option("file", check_file, "file holding the formula");

  std::string corpus_path, save_models;
  std::size_t corpus_budget = BuildOptions{}.node_budget;
  auto* corpus_cmd = app.add_subcommand("corpus", "run a corpus of expected verdicts");
  corpus_cmd->add_option("path", corpus_path, "corpus file")->required();
  corpus_cmd->add_option("--node-budget", corpus_budget, "maximum number of game nodes per formula");
  corpus_cmd->add_option("--save-models", save_models, "directory for the models of SAT CTL entries");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  try {
    if (*solve_cmd) return run_solve(sa);
    if (*check_cmd) return run_check_model(model_path, check_expr, check_file);
    if (*corpus_cmd) return run_corpus(corpus_path, corpus_budget, save_models);
  } catch (const BudgetExceeded& e) {
    std::cerr << "branchsat: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "branchsat: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

#pragma once

#include <optional>
#include <string>

#include "branchsat/arena.hpp"
#include "branchsat/formula.hpp"
#include "branchsat/model.hpp"
#include "branchsat/winning_condition.hpp"

namespace branchsat {

struct SolveOptions {
  // Pipeline to run; the formula's own fragment when unset.
  std::optional<Fragment> logic;
  EntryMode entry = EntryMode::Modal;
  BuildOptions build;
  bool extract_model = true;
  bool keep_game = false;
  bool dump_acceptance = false;
};

struct SolveStats {
  std::size_t closure_size = 0;      // |FL|
  std::size_t subformulas = 0;       // |ϑ|
  std::size_t game_nodes = 0;
  std::size_t game_edges = 0;
  std::size_t acceptance_states = 0;  // distinct automaton states in the arena
  // E-trace automaton: the CTL thread DBA, or the E-DBA component for CTL+
  // and CTL*. Explored states and the analytic bound.
  std::size_t e_states = 0;
  double e_bound = 0;
  // A-trace side (CTL+ and CTL*): states of the bad-A NBA/NcoBA, of its
  // determinization (CTL*), of the complemented automaton, and priority
  // counts over the explored states.
  std::size_t a_source_states = 0;
  std::size_t a_det_states = 0;
  std::size_t a_det_index = 0;
  std::size_t a_states = 0;
  std::size_t a_index = 0;
  std::size_t product_index = 0;
  int max_priority = 0;  // after compression
  std::size_t priority_count = 0;
  GameKind game = GameKind::Parity;
  double seconds = 0;
};

struct SolveReport {
  bool sat = false;
  Fragment formula_fragment = Fragment::Ctl;
  Fragment fragment = Fragment::Ctl;  // pipeline used
  SolveStats stats;
  std::optional<TransitionSystem> model;
  std::optional<ParityGame> game;
  std::string acceptance_dump;  // reachable acceptance states, on request
};

// Parse-free entry point. Throws std::invalid_argument when opts.logic names a
// fragment smaller than the formula's, and BudgetExceeded from the game build.
SolveReport solve(const FormulaPtr& f, const SolveOptions& opts = {});

std::string format_stats(const SolveReport& r);

}  // namespace branchsat

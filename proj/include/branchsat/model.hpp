#pragma once

#include <optional>
#include <string>
#include <vector>

#include "branchsat/arena.hpp"
#include "branchsat/formula.hpp"

namespace branchsat {

struct TransitionSystem {
  int initial = 0;
  std::vector<std::vector<std::string>> props;  // sorted per state
  std::vector<std::vector<int>> succ;           // sorted, deduplicated

  std::size_t size() const { return props.size(); }
  std::size_t max_out_degree() const;
  bool is_total() const;
  friend bool operator==(const TransitionSystem&, const TransitionSystem&) = default;
};

// Collapses player 0's winning strategy into a transition system: one state
// per reachable modal or terminal node; non-modal chains are followed along
// the strategy to their endpoint. Throws std::invalid_argument when player 0
// does not win the initial node.
TransitionSystem extract_model(const ParityGame& g, const Solution& s);

// Truth of a CTL formula at the initial state, by fixpoint labelling.
// Throws std::invalid_argument for formulas outside CTL.
bool check_ctl(const TransitionSystem& t, const FormulaPtr& f);
// Truth at every state.
std::vector<char> label_ctl(const TransitionSystem& t, const FormulaPtr& f);

// Exhaustive search over total systems with at most `max_states` states over
// the formula's propositions; returns a model with the formula true at its
// initial state.
std::optional<TransitionSystem> small_model_search(const FormulaPtr& f, int max_states);

std::string export_dot(const TransitionSystem& t);
std::string export_json(const TransitionSystem& t);
// Throws std::invalid_argument on malformed input.
TransitionSystem import_json(const std::string& text);

}  // namespace branchsat

#pragma once

#include <string>
#include <vector>

#include "branchsat/formula.hpp"
#include "branchsat/game_core.hpp"
#include "branchsat/omega.hpp"

namespace branchsat {

// Automata built here keep a reference to the core they were built from; the
// core must outlive them.

enum class GameKind : uint8_t { Parity, Buchi };

// When the E-trace automaton starts following the i-th U-formula.
//  Modal:  at the (X1) letter whose chosen block holds X(φ_i U ψ_i).
//  Unfold: at the first unfolding (E, Π, φ_i U ψ_i, 1) of any E-block.
// Unfold can follow a block that is then dropped by (X1) while another
// E-block keeps the formula open, so it is unsound on some plays; it is kept
// for comparison only.
enum class EntryMode : uint8_t { Modal, Unfold };

// DBA accepting exactly the plays without a bad E-trace.
AutomatonPtr<PlayLetter> build_e_dba(const GameCore& core, EntryMode mode = EntryMode::Modal);

// NBA accepting exactly the plays that contain a bad A-trace.
AutomatonPtr<PlayLetter> build_bad_a_nba(const GameCore& core);

// DPA accepting exactly the plays without a bad A-trace.
AutomatonPtr<PlayLetter> build_a_dpa(const GameCore& core);

// NcoBA accepting the plays with a bad A-trace, valid for CTL+ inputs.
AutomatonPtr<PlayLetter> build_ctlplus_bad_a_ncoba(const GameCore& core);

// DBA over CTL letters accepting exactly the plays without a U-thread.
AutomatonPtr<CtlLetter> build_ctl_dba(const CtlCore& core);

struct PlayAcceptance {
  GameKind game = GameKind::Parity;
  AutomatonPtr<PlayLetter> automaton;
  AutomatonPtr<PlayLetter> e_part;
  AutomatonPtr<PlayLetter> a_part;
  // Bad-A automaton before complementation: the NBA (CTL*) or NcoBA (CTL+).
  AutomatonPtr<PlayLetter> a_source;
  // Determinized NBA, CTL* only.
  AutomatonPtr<PlayLetter> a_det;
};

// CTL* gives a DPA and a parity game, CTL+ a DBA and a Büchi game. Throws
// std::invalid_argument when the table lies outside the requested fragment or
// when `fragment` is Ctl (use build_ctl_dba).
PlayAcceptance build_acceptance(const GameCore& core, Fragment fragment, EntryMode mode = EntryMode::Modal);

// Upper bounds on reachable states.
double e_dba_bound(const FormulaTable& table);
double ctl_dba_bound(const FormulaTable& table);

template <class L>
std::string dump_states(OmegaAutomaton<L>& a, const std::vector<State>& states) {
  std::string out;
  for (State q : states)
    out += "q" + std::to_string(q) + " priority " + std::to_string(a.priority(q)) + " " + a.describe(q) + "\n";
  return out;
}

}  // namespace branchsat

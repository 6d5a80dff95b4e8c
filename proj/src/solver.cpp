#include "branchsat/solver.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>

namespace branchsat {

namespace {

void fill_game_stats(const ParityGame& g, SolveStats& st) {
  st.game_nodes = g.size();
  st.game_edges = g.edge_count();
  st.acceptance_states = g.acceptance_states;
  st.game = g.game;
  std::set<int> prios(g.priority.begin(), g.priority.end());
  st.priority_count = prios.size();
  auto dense = compress_priorities(g.priority);
  st.max_priority = dense.empty() ? 0 : *std::max_element(dense.begin(), dense.end());
}

// States are created on demand, so these are the ones the game reached.
template <class L>
std::vector<State> all_states(OmegaAutomaton<L>& a) {
  std::vector<State> all(a.state_count());
  for (std::size_t q = 0; q < all.size(); ++q) all[q] = static_cast<State>(q);
  return all;
}

// Distinct priorities over all states created so far.
template <class L>
std::size_t index_of(OmegaAutomaton<L>& a) {
  return priority_index(a, all_states(a));
}

}  // namespace

SolveReport solve(const FormulaPtr& f, const SolveOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  SolveReport r;
  FormulaPtr nnf = to_nnf(f);
  r.formula_fragment = classify_fragment(nnf);
  r.fragment = opts.logic.value_or(r.formula_fragment);
  if (r.fragment < r.formula_fragment)
    throw std::invalid_argument(std::string("formula is ") + fragment_name(r.formula_fragment) +
                                ", cannot be solved as " + fragment_name(r.fragment));

  FormulaTable table = FormulaTable::build(nnf);
  r.stats.closure_size = table.size();
  r.stats.subformulas = table.subformula_count();

  ParityGame g;
  if (r.fragment == Fragment::Ctl) {
    CtlCore core(table);
    auto dba = build_ctl_dba(core);
    r.stats.e_bound = ctl_dba_bound(table);
    g = build_game(core, *dba, GameKind::Buchi, opts.build);
    r.stats.e_states = dba->state_count();
    if (opts.dump_acceptance) r.acceptance_dump = dump_states(*dba, all_states(*dba));
  } else {
    GameCore core(table);
    PlayAcceptance acc = build_acceptance(core, r.fragment, opts.entry);
    r.stats.e_bound = e_dba_bound(table);
    g = build_game(core, *acc.automaton, acc.game, opts.build);
    r.stats.e_states = acc.e_part->state_count();
    r.stats.a_source_states = acc.a_source->state_count();
    r.stats.a_states = acc.a_part->state_count();
    r.stats.a_index = index_of(*acc.a_part);
    r.stats.product_index = index_of(*acc.automaton);
    if (acc.a_det) {
      r.stats.a_det_states = acc.a_det->state_count();
      r.stats.a_det_index = index_of(*acc.a_det);
    }
    if (opts.dump_acceptance) r.acceptance_dump = dump_states(*acc.automaton, all_states(*acc.automaton));
  }
  fill_game_stats(g, r.stats);

  Solution s = g.game == GameKind::Buchi ? solve_buchi(g) : solve_parity(g);
  r.sat = s.winner[g.initial] == 0;
  if (r.sat && opts.extract_model) r.model = extract_model(g, s);
  if (opts.keep_game) r.game = std::move(g);
  r.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string format_stats(const SolveReport& r) {
  const SolveStats& st = r.stats;
  std::ostringstream os;
  os << "fragment: " << fragment_name(r.formula_fragment) << "\n"
     << "pipeline: " << fragment_name(r.fragment) << "\n"
     << "game: " << (st.game == GameKind::Buchi ? "buchi" : "parity") << "\n"
     << "closure size: " << st.closure_size << "\n"
     << "subformulas: " << st.subformulas << "\n"
     << "game nodes: " << st.game_nodes << "\n"
     << "game edges: " << st.game_edges << "\n"
     << "acceptance states: " << st.acceptance_states << "\n"
     << "e-automaton states: " << st.e_states << " (bound " << st.e_bound << ")\n";
  if (r.fragment != Fragment::Ctl) {
    os << "a-source states: " << st.a_source_states << "\n";
    if (r.fragment == Fragment::CtlStar)
      os << "a-determinized states: " << st.a_det_states << " (index " << st.a_det_index << ")\n";
    os << "a-automaton states: " << st.a_states << " (index " << st.a_index << ")\n"
       << "product index: " << st.product_index << "\n";
  }
  os << "priorities: " << st.priority_count << " (max " << st.max_priority << " after compression)\n";
  if (r.model) os << "model states: " << r.model->size() << " (max out-degree " << r.model->max_out_degree() << ")\n";
  os << "time: " << st.seconds << " s\n";
  return os.str();
}

}  // namespace branchsat

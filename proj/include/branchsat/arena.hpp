#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "branchsat/game_core.hpp"
#include "branchsat/omega.hpp"
#include "branchsat/winning_condition.hpp"

namespace branchsat {

enum class NodeKind : uint8_t { Sink, Rule, Modal, Terminal };

struct ParityGame {
  static constexpr uint32_t kWin0 = 0;
  static constexpr uint32_t kWin1 = 1;

  GameKind game = GameKind::Parity;
  uint32_t initial = kWin1;
  std::vector<uint8_t> owner;
  std::vector<int> priority;
  std::vector<std::vector<uint32_t>> succ;
  std::vector<NodeKind> kind;
  // Positive propositions of modal and terminal nodes, as indices into prop_names.
  std::vector<std::vector<uint16_t>> props;
  std::vector<std::string> prop_names;
  std::vector<std::string> labels;  // filled on request
  std::size_t acceptance_states = 0;

  std::size_t size() const { return owner.size(); }
  std::size_t edge_count() const;
  uint32_t add_node(uint8_t who, int prio, NodeKind k);
};

// Two empty sinks (win_0, win_1), each with a self-loop.
ParityGame make_game_with_sinks(GameKind kind);

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(std::size_t n)
      : std::runtime_error("node budget of " + std::to_string(n) + " game nodes exceeded") {}
};

struct BuildOptions {
  std::size_t node_budget = 5000000;
  bool labels = false;
  // Called every `progress_every` new nodes with the current node count.
  std::function<void(std::size_t)> progress;
  std::size_t progress_every = 100000;
};

std::vector<int> prop_index_by_fid(const FormulaTable& t);
std::vector<uint16_t> positive_props(const GameCore& core, const Configuration& c, const std::vector<int>& index);
std::vector<uint16_t> positive_props(const CtlCore& core, const CtlConfiguration& c, const std::vector<int>& index);

// Breadth-first product of the configuration graph with a deterministic
// acceptance automaton. Losing successors (inconsistent, or a stuck A-block)
// lead to win_1 for either player; a terminal literal set self-loops with the
// best priority for player 0 (0 in parity games, 2 in Büchi games).
template <class Core, class Letter>
ParityGame build_game(const Core& core, OmegaAutomaton<Letter>& acc, GameKind kind, const BuildOptions& opts = {}) {
  using Config = decltype(core.initial_configuration());
  ParityGame g = make_game_with_sinks(kind);
  g.prop_names = core.table().propositions();
  const std::vector<int> pidx = prop_index_by_fid(core.table());
  const int best = kind == GameKind::Buchi ? 2 : 0;

  Interner<Config> configs;
  struct KeyHash {
    std::size_t operator()(const std::pair<uint32_t, State>& k) const { return hash_combine(k.first, k.second); }
  };
  std::unordered_map<std::pair<uint32_t, State>, uint32_t, KeyHash> ids;
  std::vector<std::pair<uint32_t, State>> keys(2);
  std::unordered_map<State, char> acc_seen;

  auto node_of = [&](const Config& c, State q) {
    uint32_t cid = configs.intern(c);
    auto [it, fresh] = ids.try_emplace({cid, q}, 0);
    if (fresh) {
      if (g.size() >= opts.node_budget) throw BudgetExceeded(opts.node_budget);
      it->second = g.add_node(0, 1, NodeKind::Rule);
      keys.push_back({cid, q});
      acc_seen.emplace(q, 1);
      if (opts.progress && g.size() % opts.progress_every == 0) opts.progress(g.size());
    }
    return it->second;
  };

  Config c0 = core.initial_configuration();
  g.initial = node_of(c0, acc.initial());
  for (uint32_t v = 2; v < g.size(); ++v) {
    const Config c = configs.get(keys[v].first);
    const State q = keys[v].second;
    auto ex = core.successors(c);
    if (opts.labels) g.labels.resize(g.size());
    if (opts.labels) g.labels[v] = core.dump(c) + " | " + acc.describe(q);
    if (ex.moves.empty()) {
      bool terminal = ex.kind == StepKind::Terminal && core.is_consistent(c);
      if constexpr (std::is_same_v<Core, GameCore>) terminal = terminal && !core.is_stuck(c);
      if (terminal) {
        g.kind[v] = NodeKind::Terminal;
        g.priority[v] = best;
        g.succ[v].push_back(v);
        g.props[v] = positive_props(core, c, pidx);
      } else {
        g.succ[v].push_back(ParityGame::kWin1);
      }
      continue;
    }
    g.owner[v] = ex.owner == Owner::P0 ? 0 : 1;
    g.priority[v] = acc.priority(q);
    if (ex.kind == StepKind::Modal) {
      g.kind[v] = NodeKind::Modal;
      g.props[v] = positive_props(core, c, pidx);
    }
    std::vector<uint32_t> out;
    for (const auto& m : ex.moves) {
      uint32_t w = ParityGame::kWin1;
      if (!m.losing) {
        auto n = acc.step(q, m.letter);
        if (n) w = node_of(m.target, *n);
      }
      out.push_back(w);
    }
    out = [&] {
      std::vector<uint32_t> s;
      for (uint32_t w : out)
        if (std::find(s.begin(), s.end(), w) == s.end()) s.push_back(w);
      return s;
    }();
    g.succ[v] = std::move(out);
  }
  if (opts.labels) {
    g.labels.resize(g.size());
    g.labels[ParityGame::kWin0] = "win_0";
    g.labels[ParityGame::kWin1] = "win_1";
  }
  g.acceptance_states = acc_seen.size();
  return g;
}

struct Solution {
  std::vector<uint8_t> winner;
  // Chosen successor for nodes won by their owner, -1 elsewhere.
  std::vector<int64_t> strategy;
};

Solution solve_parity(const ParityGame& g);
Solution solve_buchi(const ParityGame& g);
// Exhaustive positional strategy search; throws std::length_error above max_nodes.
std::vector<uint8_t> brute_force_solve(const ParityGame& g, std::size_t max_nodes = 12);

// Dense renumbering of priorities that keeps order and parity.
std::vector<int> compress_priorities(const std::vector<int>& prio);

std::string export_game(const ParityGame& g);

}  // namespace branchsat

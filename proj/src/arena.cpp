#include "branchsat/arena.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace branchsat {

std::size_t ParityGame::edge_count() const {
  std::size_t n = 0;
  for (const auto& s : succ) n += s.size();
  return n;
}

uint32_t ParityGame::add_node(uint8_t who, int prio, NodeKind k) {
  owner.push_back(who);
  priority.push_back(prio);
  succ.emplace_back();
  kind.push_back(k);
  props.emplace_back();
  return static_cast<uint32_t>(owner.size() - 1);
}

ParityGame make_game_with_sinks(GameKind kind) {
  ParityGame g;
  g.game = kind;
  g.add_node(0, kind == GameKind::Buchi ? 2 : 0, NodeKind::Sink);
  g.add_node(1, 1, NodeKind::Sink);
  g.succ[ParityGame::kWin0] = {ParityGame::kWin0};
  g.succ[ParityGame::kWin1] = {ParityGame::kWin1};
  return g;
}

std::vector<int> prop_index_by_fid(const FormulaTable& t) {
  std::vector<int> idx(t.size(), -1);
  const auto& names = t.propositions();
  for (Fid i = 0; i < t.size(); ++i) {
    const FormulaEntry& e = t.at(i);
    if (e.op != Op::Prop) continue;
    idx[i] = static_cast<int>(std::find(names.begin(), names.end(), e.name) - names.begin());
  }
  return idx;
}

std::vector<uint16_t> positive_props(const GameCore&, const Configuration& c, const std::vector<int>& index) {
  std::vector<uint16_t> out;
  c.lits.for_each([&](uint32_t f) {
    if (index[f] >= 0) out.push_back(static_cast<uint16_t>(index[f]));
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<uint16_t> positive_props(const CtlCore&, const CtlConfiguration& c, const std::vector<int>& index) {
  std::vector<uint16_t> out;
  c.items.for_each([&](uint32_t it) {
    if (CtlCore::item_tag(it) != CtlCore::kPlain) return;
    int p = index[CtlCore::item_formula(it)];
    if (p >= 0) out.push_back(static_cast<uint16_t>(p));
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> compress_priorities(const std::vector<int>& prio) {
  std::vector<int> distinct(prio.begin(), prio.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::map<int, int> to;
  int cur = -1;
  for (int p : distinct) {
    if (cur < 0) cur = p % 2;
    else if ((cur % 2) != (p % 2)) ++cur;
    to[p] = cur;
  }
  std::vector<int> out(prio.size());
  for (std::size_t i = 0; i < prio.size(); ++i) out[i] = to[prio[i]];
  return out;
}

namespace {

// Zielonka's recursive algorithm over node subsets.
class Zielonka {
 public:
  Zielonka(const ParityGame& g) : g_(g), prio_(compress_priorities(g.priority)), pred_(g.size()) {
    for (uint32_t v = 0; v < g.size(); ++v)
      for (uint32_t w : g.succ[v]) pred_[w].push_back(v);
    count_.assign(g.size(), 0);
    mark_.assign(g.size(), 0);
  }

  Solution run() {
    Solution s;
    s.winner.assign(g_.size(), 0);
    s.strategy.assign(g_.size(), -1);
    std::vector<uint32_t> all(g_.size());
    for (uint32_t v = 0; v < g_.size(); ++v) all[v] = v;
    std::vector<char> in(g_.size(), 1);
    auto [w0, w1] = solve(all, in, s.strategy);
    for (uint32_t v : w1) s.winner[v] = 1;
    (void)w0;
    return s;
  }

 private:
  using Set = std::vector<uint32_t>;

  // Attractor for `player` to `target` inside `in`; records attractor moves.
  Set attract(int player, const Set& target, const std::vector<char>& in, const Set& domain,
              std::vector<int64_t>& strat) {
    ++epoch_;
    Set out;
    for (uint32_t v : target) {
      mark_[v] = epoch_;
      out.push_back(v);
    }
    for (uint32_t v : domain) {
      count_[v] = 0;
      for (uint32_t w : g_.succ[v])
        if (in[w]) ++count_[v];
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
      uint32_t w = out[i];
      for (uint32_t v : pred_[w]) {
        if (!in[v] || mark_[v] == epoch_) continue;
        if (g_.owner[v] == player) {
          mark_[v] = epoch_;
          strat[v] = w;
          out.push_back(v);
        } else if (--count_[v] == 0) {
          mark_[v] = epoch_;
          out.push_back(v);
        }
      }
    }
    return out;
  }

  std::pair<Set, Set> solve(const Set& nodes, std::vector<char>& in, std::vector<int64_t>& strat) {
    if (nodes.empty()) return {};
    int d = -1;
    for (uint32_t v : nodes) d = std::max(d, prio_[v]);
    const int i = d % 2;
    Set top;
    for (uint32_t v : nodes)
      if (prio_[v] == d) top.push_back(v);
    Set a = attract(i, top, in, nodes, strat);
    for (uint32_t v : top)
      if (g_.owner[v] == i)
        for (uint32_t w : g_.succ[v])
          if (in[w]) {
            strat[v] = w;
            break;
          }

    auto sub = [&](const Set& removed, auto&& body) {
      std::vector<char> gone(g_.size(), 0);
      for (uint32_t v : removed) gone[v] = 1;
      Set rest;
      for (uint32_t v : nodes)
        if (!gone[v]) rest.push_back(v);
      for (uint32_t v : removed) in[v] = 0;
      auto r = body(rest);
      for (uint32_t v : removed) in[v] = 1;
      return r;
    };

    auto [w0a, w1a] = sub(a, [&](const Set& rest) { return solve(rest, in, strat); });
    Set& opp_first = i == 0 ? w1a : w0a;
    if (opp_first.empty()) {
      Set mine = nodes;
      return i == 0 ? std::pair<Set, Set>{mine, {}} : std::pair<Set, Set>{{}, mine};
    }
    Set b = attract(1 - i, opp_first, in, nodes, strat);
    auto [w0b, w1b] = sub(b, [&](const Set& rest) { return solve(rest, in, strat); });
    Set& opp_second = i == 0 ? w1b : w0b;
    Set& mine_second = i == 0 ? w0b : w1b;
    opp_second.insert(opp_second.end(), b.begin(), b.end());
    return i == 0 ? std::pair<Set, Set>{mine_second, opp_second} : std::pair<Set, Set>{opp_second, mine_second};
  }

  const ParityGame& g_;
  std::vector<int> prio_;
  std::vector<std::vector<uint32_t>> pred_;
  std::vector<int> count_;
  std::vector<uint32_t> mark_;
  uint32_t epoch_ = 0;
};

// Keeps only the strategy entries that belong to the node's owner when the
// owner wins the node.
void clean_strategy(const ParityGame& g, Solution& s) {
  for (uint32_t v = 0; v < g.size(); ++v)
    if (s.winner[v] != g.owner[v]) s.strategy[v] = -1;
}

}  // namespace

Solution solve_parity(const ParityGame& g) {
  Zielonka z(g);
  Solution s = z.run();
  clean_strategy(g, s);
  return s;
}

Solution solve_buchi(const ParityGame& g) {
  for (int p : g.priority)
    if (p != 1 && p != 2) throw std::invalid_argument("solve_buchi expects priorities in {1, 2}");
  const uint32_t n = static_cast<uint32_t>(g.size());
  std::vector<std::vector<uint32_t>> pred(n);
  for (uint32_t v = 0; v < n; ++v)
    for (uint32_t w : g.succ[v]) pred[w].push_back(v);

  Solution s;
  s.winner.assign(n, 0);
  s.strategy.assign(n, -1);
  std::vector<char> in(n, 1);
  std::vector<int> count(n);
  std::vector<char> mark(n);

  // Attractor for `player` to the marked target within `in`.
  auto attract = [&](int player, std::vector<uint32_t> target) {
    std::fill(mark.begin(), mark.end(), 0);
    for (uint32_t v : target) mark[v] = 1;
    for (uint32_t v = 0; v < n; ++v) {
      if (!in[v]) continue;
      count[v] = 0;
      for (uint32_t w : g.succ[v])
        if (in[w]) ++count[v];
    }
    for (std::size_t i = 0; i < target.size(); ++i) {
      uint32_t w = target[i];
      for (uint32_t v : pred[w]) {
        if (!in[v] || mark[v]) continue;
        if (g.owner[v] == player) {
          mark[v] = 1;
          s.strategy[v] = w;
          target.push_back(v);
        } else if (--count[v] == 0) {
          mark[v] = 1;
          target.push_back(v);
        }
      }
    }
    return target;
  };

  for (;;) {
    std::vector<uint32_t> accepting;
    for (uint32_t v = 0; v < n; ++v)
      if (in[v] && g.priority[v] == 2) accepting.push_back(v);
    auto reach = attract(0, accepting);
    std::vector<char> good(n, 0);
    for (uint32_t v : reach) good[v] = 1;
    std::vector<uint32_t> trap;
    for (uint32_t v = 0; v < n; ++v)
      if (in[v] && !good[v]) trap.push_back(v);
    if (trap.empty()) {
      // Player 0 wins what is left; accepting nodes of hers stay inside.
      for (uint32_t v : accepting)
        if (g.owner[v] == 0)
          for (uint32_t w : g.succ[v])
            if (in[w]) {
              s.strategy[v] = w;
              break;
            }
      break;
    }
    // Player 1 keeps the play inside the trap.
    for (uint32_t v : trap)
      if (g.owner[v] == 1)
        for (uint32_t w : g.succ[v])
          if (in[w] && !good[w]) {
            s.strategy[v] = w;
            break;
          }
    auto lost = attract(1, trap);
    for (uint32_t v : lost) {
      s.winner[v] = 1;
      in[v] = 0;
    }
  }
  clean_strategy(g, s);
  return s;
}

std::vector<uint8_t> brute_force_solve(const ParityGame& g, std::size_t max_nodes) {
  const std::size_t n = g.size();
  if (n > max_nodes) throw std::length_error("brute_force_solve: game too large");
  std::vector<uint32_t> mine;
  for (uint32_t v = 0; v < n; ++v)
    if (g.owner[v] == 0) mine.push_back(v);
  std::vector<uint8_t> winner(n, 1);
  std::vector<std::size_t> choice(mine.size(), 0);
  std::set<int> odd;
  for (int p : g.priority)
    if (p % 2) odd.insert(p);
  for (;;) {
    std::vector<std::vector<int>> adj(n);
    for (uint32_t v = 0; v < n; ++v)
      for (uint32_t w : g.succ[v]) adj[v].push_back(static_cast<int>(w));
    for (std::size_t k = 0; k < mine.size(); ++k) adj[mine[k]] = {static_cast<int>(g.succ[mine[k]][choice[k]])};
    // Nodes lying on a cycle whose largest priority is odd.
    std::vector<char> bad(n, 0);
    for (int p : odd) {
      std::vector<char> allowed(n);
      for (uint32_t v = 0; v < n; ++v) allowed[v] = g.priority[v] <= p;
      for (const auto& scc : detail::cyclic_sccs(adj, allowed)) {
        bool has = false;
        for (int v : scc) has |= g.priority[v] == p;
        if (has)
          for (int v : scc) bad[v] = 1;
      }
    }
    for (uint32_t v = 0; v < n; ++v) {
      if (winner[v] == 0) continue;
      std::vector<char> seen(n, 0);
      std::vector<int> stack{static_cast<int>(v)};
      seen[v] = 1;
      bool lost = false;
      while (!stack.empty() && !lost) {
        int x = stack.back();
        stack.pop_back();
        if (bad[x]) lost = true;
        for (int y : adj[x])
          if (!seen[y]) {
            seen[y] = 1;
            stack.push_back(y);
          }
      }
      if (!lost) winner[v] = 0;
    }
    std::size_t k = 0;
    while (k < mine.size() && ++choice[k] == g.succ[mine[k]].size()) choice[k++] = 0;
    if (k == mine.size()) break;
  }
  return winner;
}

std::string export_game(const ParityGame& g) {
  std::ostringstream os;
  for (uint32_t v = 0; v < g.size(); ++v) {
    os << "node " << v << ' ' << int(g.owner[v]) << ' ' << g.priority[v] << ' ';
    for (std::size_t k = 0; k < g.succ[v].size(); ++k) os << (k ? "," : "") << g.succ[v][k];
    std::string label = v < g.labels.size() ? g.labels[v] : "";
    std::string esc;
    for (char c : label) {
      if (c == '"' || c == '\\') esc += '\\';
      esc += c;
    }
    os << " \"" << esc << "\"\n";
  }
  return os.str();
}

}  // namespace branchsat

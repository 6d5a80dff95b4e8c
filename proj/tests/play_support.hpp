#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "branchsat/game_core.hpp"
#include "branchsat/omega.hpp"
#include "support.hpp"

namespace testsupport {

using namespace branchsat;

template <class Config, class Letter>
struct PlayLasso {
  std::vector<Config> configs;  // configs[i] is the source of letters[i]
  std::vector<Letter> letters;
  int loop = 0;                 // configs.size() wraps back to configs[loop]

  int length() const { return static_cast<int>(letters.size()); }
  int next(int i) const { return i + 1 < length() ? i + 1 : loop; }
  LassoWord<Letter> word() const {
    LassoWord<Letter> w;
    w.prefix.assign(letters.begin(), letters.begin() + loop);
    w.cycle.assign(letters.begin() + loop, letters.end());
    return w;
  }
};

// Random infinite play of the game, closed as soon as a configuration repeats.
template <class Core, class Config = decltype(std::declval<Core>().initial_configuration()),
          class Letter = decltype(std::declval<Core>().successors(std::declval<Config>()).moves[0].letter)>
std::optional<PlayLasso<Config, Letter>> random_play(const Core& core, int max_steps = 300) {
  PlayLasso<Config, Letter> p;
  Config c = core.initial_configuration();
  for (int step = 0; step < max_steps; ++step) {
    for (int i = 0; i < static_cast<int>(p.configs.size()); ++i) {
      if (p.configs[i] == c) {
        p.loop = i;
        return p;
      }
    }
    auto ex = core.successors(c);
    std::vector<int> ok;
    for (int i = 0; i < static_cast<int>(ex.moves.size()); ++i)
      if (!ex.moves[i].losing) ok.push_back(i);
    if (ok.empty()) return std::nullopt;
    const auto& m = ex.moves[ok[pick(0, static_cast<int>(ok.size()) - 1)]];
    p.configs.push_back(c);
    p.letters.push_back(m.letter);
    c = m.target;
  }
  return std::nullopt;
}

using Play = PlayLasso<Configuration, PlayLetter>;

// Block and thread graphs over the positions of a play lasso.
struct TraceGraph {
  struct Node {
    int pos;
    Block block;
  };
  std::vector<Node> nodes;
  std::map<std::pair<int, int>, int> index;  // (pos, block rank) -> node
  std::vector<std::vector<std::pair<int, bool>>> succ;  // (node, spawning)

  int find(int pos, const Block& b, const Play& p) const {
    const auto& bs = p.configs[pos].blocks;
    for (int k = 0; k < static_cast<int>(bs.size()); ++k)
      if (bs[k] == b) return index.at({pos, k});
    throw std::logic_error("descendant block missing from the next configuration");
  }

  TraceGraph(const GameCore& core, const Play& p) {
    for (int pos = 0; pos < p.length(); ++pos) {
      const auto& bs = p.configs[pos].blocks;
      for (int k = 0; k < static_cast<int>(bs.size()); ++k) {
        index[{pos, k}] = static_cast<int>(nodes.size());
        nodes.push_back({pos, bs[k]});
      }
    }
    succ.resize(nodes.size());
    for (int v = 0; v < static_cast<int>(nodes.size()); ++v) {
      int pos = nodes[v].pos;
      for (const Descendant& d : core.block_descendants(p.letters[pos], nodes[v].block))
        succ[v].push_back({find(p.next(pos), d.block, p), d.spawning});
    }
  }
};

// Thread graph restricted to the given trace-node set and edge filter.
// Returns true iff some cycle through allowed nodes contains a formula with
// operator `op`.
template <class EdgeOk>
bool thread_cycle_with(const GameCore& core, const Play& p, const TraceGraph& g, const std::vector<char>& allowed,
                       EdgeOk edge_ok, Op op) {
  std::map<std::pair<int, uint32_t>, int> id;
  std::vector<std::pair<int, uint32_t>> tn;
  for (int v = 0; v < static_cast<int>(g.nodes.size()); ++v) {
    if (!allowed[v]) continue;
    g.nodes[v].block.f.for_each([&](uint32_t f) {
      id[{v, f}] = static_cast<int>(tn.size());
      tn.push_back({v, f});
    });
  }
  std::vector<std::vector<int>> adj(tn.size());
  for (int t = 0; t < static_cast<int>(tn.size()); ++t) {
    auto [v, f] = tn[t];
    for (auto [w, spawning] : g.succ[v]) {
      if (!allowed[w] || !edge_ok(v, w, spawning)) continue;
      FormulaSet ds = core.formula_descendants(p.letters[g.nodes[v].pos], g.nodes[v].block, f, g.nodes[w].block);
      ds.for_each([&](uint32_t f2) { adj[t].push_back(id.at({w, f2})); });
    }
  }
  std::vector<char> all(tn.size(), 1);
  for (const auto& scc : detail::cyclic_sccs(adj, all))
    for (int t : scc)
      if (core.table().at(tn[t].second).op == op) return true;
  return false;
}

// Some E-trace (eventually non-spawning E-blocks) carries a U-thread.
inline bool has_bad_e_trace(const GameCore& core, const Play& p) {
  TraceGraph g(core, p);
  std::vector<char> allowed(g.nodes.size());
  for (std::size_t v = 0; v < g.nodes.size(); ++v)
    allowed[v] = g.nodes[v].pos >= p.loop && g.nodes[v].block.q == Quant::E;
  return thread_cycle_with(core, p, g, allowed, [](int, int, bool spawning) { return !spawning; }, Op::Until);
}

// Some periodic A-trace whose period spans at most `max_rounds` turns of the
// loop has no R-thread.
inline bool has_bad_a_trace(const GameCore& core, const Play& p, int max_rounds = 3) {
  TraceGraph g(core, p);
  const int period = p.length() - p.loop;
  std::vector<int> starts;
  for (int v = 0; v < static_cast<int>(g.nodes.size()); ++v)
    if (g.nodes[v].pos == p.loop && g.nodes[v].block.q == Quant::A) starts.push_back(v);

  // Checks one closed walk for an R-thread by unrolling it.
  auto bad = [&](const std::vector<int>& walk) {
    const int n = static_cast<int>(walk.size());
    std::vector<std::pair<int, uint32_t>> tn;
    std::map<std::pair<int, uint32_t>, int> id;
    for (int j = 0; j < n; ++j)
      g.nodes[walk[j]].block.f.for_each([&](uint32_t f) {
        id[{j, f}] = static_cast<int>(tn.size());
        tn.push_back({j, f});
      });
    std::vector<std::vector<int>> adj(tn.size());
    for (int t = 0; t < static_cast<int>(tn.size()); ++t) {
      auto [j, f] = tn[t];
      int v = walk[j], w = walk[(j + 1) % n];
      FormulaSet ds = core.formula_descendants(p.letters[g.nodes[v].pos], g.nodes[v].block, f, g.nodes[w].block);
      ds.for_each([&](uint32_t f2) { adj[t].push_back(id.at({(j + 1) % n, f2})); });
    }
    std::vector<char> all(tn.size(), 1);
    for (const auto& scc : detail::cyclic_sccs(adj, all))
      for (int t : scc)
        if (core.table().at(tn[t].second).op == Op::Release) return false;
    return true;
  };

  for (int s : starts) {
    std::vector<int> walk{s};
    bool found = false;
    auto dfs = [&](auto&& self, int v) -> void {
      if (found) return;
      for (auto [w, spawning] : g.succ[v]) {
        (void)spawning;
        if (g.nodes[w].block.q != Quant::A) continue;
        if (w == s && static_cast<int>(walk.size()) % period == 0) {
          if (bad(walk)) found = true;
          if (found) return;
        }
        if (static_cast<int>(walk.size()) < max_rounds * period) {
          walk.push_back(w);
          self(self, w);
          walk.pop_back();
        }
      }
    };
    dfs(dfs, s);
    if (found) return true;
  }
  return false;
}

using CtlPlay = PlayLasso<CtlConfiguration, CtlLetter>;

// Items connected to `it` across the letter leaving a configuration.
inline std::vector<uint32_t> ctl_connected(const CtlCore& core, const CtlLetter& r, uint32_t it) {
  const FormulaTable& t = core.table();
  Fid f = CtlCore::item_formula(it);
  uint32_t tag = CtlCore::item_tag(it);
  const FormulaEntry& e = t.at(f);
  auto norm = [&](int x) { return core.normalize(static_cast<Fid>(x)); };
  if (r.kind == CtlLetterKind::X0) {
    if (tag == CtlCore::kAX) return {core.normalize(f)};
    return {};
  }
  if (r.kind == CtlLetterKind::X1) {
    if (tag == CtlCore::kAX || it == r.item) return {core.normalize(f)};
    return {};
  }
  if (it != r.item) return {it};
  if (e.op == Op::And) return {norm(e.left), norm(e.right)};
  if (e.op == Op::Or) return {r.branch == 0 ? norm(e.left) : norm(e.right)};
  const FormulaEntry& path = t.at(static_cast<Fid>(e.left));
  uint32_t xt = e.op == Op::Exists ? CtlCore::kEX : CtlCore::kAX;
  if (path.op == Op::Until) {
    if (r.branch == 0) return {norm(path.right)};
    return {norm(path.left), CtlCore::item(f, xt)};
  }
  if (r.branch == 0) return {norm(path.left), norm(path.right)};
  return {norm(path.right), CtlCore::item(f, xt)};
}

// The play has a thread visiting a plain Q(φ U ψ) item infinitely often.
inline bool has_ctl_u_thread(const CtlCore& core, const CtlPlay& p) {
  std::map<std::pair<int, uint32_t>, int> id;
  std::vector<std::pair<int, uint32_t>> tn;
  for (int pos = p.loop; pos < p.length(); ++pos)
    p.configs[pos].items.for_each([&](uint32_t it) {
      id[{pos, it}] = static_cast<int>(tn.size());
      tn.push_back({pos, it});
    });
  std::vector<std::vector<int>> adj(tn.size());
  for (int t = 0; t < static_cast<int>(tn.size()); ++t) {
    auto [pos, it] = tn[t];
    for (uint32_t n : ctl_connected(core, p.letters[pos], it)) {
      auto k = id.find({p.next(pos), n});
      if (k != id.end()) adj[t].push_back(k->second);
    }
  }
  std::vector<char> all(tn.size(), 1);
  for (const auto& scc : detail::cyclic_sccs(adj, all))
    for (int t : scc) {
      uint32_t it = tn[t].second;
      const FormulaEntry& e = core.table().at(CtlCore::item_formula(it));
      if (CtlCore::item_tag(it) == CtlCore::kPlain && (e.op == Op::Exists || e.op == Op::Forall) &&
          core.table().at(static_cast<Fid>(e.left)).op == Op::Until)
        return true;
    }
  return false;
}

}  // namespace testsupport

#pragma once

#include <algorithm>

#include "branchsat/arena.hpp"
#include "support.hpp"

namespace testsupport {

// Random game on n nodes after the two sinks, out-degree 1..3, initial node 2.
inline branchsat::ParityGame random_game(int n, int max_prio, bool buchi = false) {
  using namespace branchsat;
  ParityGame g = make_game_with_sinks(buchi ? GameKind::Buchi : GameKind::Parity);
  for (int v = 0; v < n; ++v) {
    int p = buchi ? pick(1, 2) : pick(0, max_prio);
    g.add_node(static_cast<uint8_t>(pick(0, 1)), p, NodeKind::Rule);
  }
  const uint32_t total = static_cast<uint32_t>(g.size());
  for (uint32_t v = 2; v < total; ++v) {
    int d = pick(1, 3);
    for (int k = 0; k < d; ++k) {
      uint32_t w = static_cast<uint32_t>(pick(0, static_cast<int>(total) - 1));
      if (std::find(g.succ[v].begin(), g.succ[v].end(), w) == g.succ[v].end()) g.succ[v].push_back(w);
    }
  }
  g.initial = 2;
  return g;
}

}  // namespace testsupport

#include "branchsat/omega.hpp"

#include <functional>

namespace branchsat {

const char* acc_kind_name(AccKind k) {
  switch (k) {
    case AccKind::NBA: return "NBA";
    case AccKind::NcoBA: return "NcoBA";
    case AccKind::DBA: return "DBA";
    case AccKind::DcoBA: return "DcoBA";
    case AccKind::DPA: return "DPA";
  }
  return "?";
}

ExplicitAutomaton::ExplicitAutomaton(AccKind kind, int states, int alphabet)
    : kind_(kind), alphabet_(alphabet), prio_(static_cast<std::size_t>(states), 1),
      delta_(static_cast<std::size_t>(states), std::vector<std::vector<State>>(static_cast<std::size_t>(alphabet))) {
  if (states <= 0 || alphabet <= 0) throw std::invalid_argument("explicit automaton needs states and letters");
}

void ExplicitAutomaton::successors(State q, const int& a, std::vector<State>& out) {
  if (a < 0 || a >= alphabet_) throw std::out_of_range("letter " + std::to_string(a) + " outside the alphabet");
  out = delta_.at(q)[static_cast<std::size_t>(a)];
}

void ExplicitAutomaton::add_edge(State from, int letter, State to) {
  if (to >= prio_.size()) throw std::out_of_range("target state out of range");
  auto& v = delta_.at(from).at(static_cast<std::size_t>(letter));
  if (std::find(v.begin(), v.end(), to) == v.end()) v.push_back(to);
  std::sort(v.begin(), v.end());
}

namespace detail {

std::vector<std::vector<int>> cyclic_sccs(const std::vector<std::vector<int>>& adj, const std::vector<char>& allowed) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> result;
  int counter = 0;

  // iterative Tarjan
  struct Frame {
    int v;
    std::size_t next;
  };
  for (int root = 0; root < n; ++root) {
    if (!allowed[root] || index[root] != -1) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next < adj[f.v].size()) {
        int w = adj[f.v][f.next++];
        if (!allowed[w]) continue;
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      int v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] != index[v]) continue;
      std::vector<int> scc;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        scc.push_back(w);
      } while (w != v);
      bool cyclic = scc.size() > 1;
      if (!cyclic)
        for (int x : adj[v])
          if (x == v) cyclic = true;
      if (cyclic) result.push_back(std::move(scc));
    }
  }
  return result;
}

}  // namespace detail
}  // namespace branchsat

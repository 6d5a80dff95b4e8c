#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "branchsat/bits.hpp"

namespace branchsat {

enum class AccKind : uint8_t { NBA, NcoBA, DBA, DcoBA, DPA };

const char* acc_kind_name(AccKind k);
inline bool is_deterministic(AccKind k) { return k == AccKind::DBA || k == AccKind::DcoBA || k == AccKind::DPA; }

using State = uint32_t;

// Max-parity throughout: a run is accepting iff the largest priority seen
// infinitely often is even. Büchi kinds use {1,2}, co-Büchi kinds {0,1}.
template <class L>
class OmegaAutomaton {
 public:
  virtual ~OmegaAutomaton() = default;
  virtual AccKind kind() const = 0;
  virtual State initial() = 0;
  virtual void successors(State q, const L& a, std::vector<State>& out) = 0;
  virtual int priority(State q) = 0;
  virtual std::size_t state_count() const = 0;
  virtual std::string describe(State q) { return std::to_string(q); }

  // Deterministic kinds: the unique successor, or nullopt when stuck.
  std::optional<State> step(State q, const L& a) {
    std::vector<State> out;
    successors(q, a, out);
    if (out.empty()) return std::nullopt;
    if (out.size() > 1 && is_deterministic(kind()))
      throw std::logic_error("deterministic automaton produced several successors");
    return out.front();
  }
};

template <class L>
using AutomatonPtr = std::shared_ptr<OmegaAutomaton<L>>;

template <class L>
struct LassoWord {
  std::vector<L> prefix;
  std::vector<L> cycle;
};

namespace detail {

template <class L>
struct StateLetterHash {
  std::size_t operator()(const std::pair<State, L>& k) const {
    return hash_combine(std::hash<L>{}(k.second), k.first);
  }
};

template <class K, class H = std::hash<K>>
class StateTable {
 public:
  StateTable() : ids_(0, Hash{&keys_}, Eq{&keys_}) {}
  StateTable(const StateTable&) = delete;
  StateTable& operator=(const StateTable&) = delete;

  State intern(const K& k) {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = ids_.find(k); it != ids_.end()) return *it;
    keys_.push_back(k);
    State s = static_cast<State>(keys_.size() - 1);
    ids_.insert(s);
    return s;
  }
  K get(State s) const {
    std::lock_guard<std::mutex> lock(mu_);
    return keys_.at(s);
  }
  std::size_t size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return keys_.size();
  }

 private:
  // The set holds ids only; keys live once, in keys_.
  struct Hash {
    using is_transparent = void;
    const std::deque<K>* keys;
    std::size_t operator()(State s) const { return H{}((*keys)[s]); }
    std::size_t operator()(const K& k) const { return H{}(k); }
  };
  struct Eq {
    using is_transparent = void;
    const std::deque<K>* keys;
    bool operator()(State a, State b) const { return a == b; }
    bool operator()(const K& k, State s) const { return k == (*keys)[s]; }
    bool operator()(State s, const K& k) const { return k == (*keys)[s]; }
  };

  mutable std::mutex mu_;
  std::deque<K> keys_;
  std::unordered_set<State, Hash, Eq> ids_;
};

template <class L>
class TransitionMemo {
 public:
  bool find(State q, const L& a, std::vector<State>& out) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find({q, a});
    if (it == memo_.end()) return false;
    out = it->second;
    return true;
  }
  void store(State q, const L& a, const std::vector<State>& v) {
    std::lock_guard<std::mutex> lock(mu_);
    memo_.emplace(std::make_pair(q, a), v);
  }

 private:
  mutable std::mutex mu_;
  std::unordered_map<std::pair<State, L>, std::vector<State>, StateLetterHash<L>> memo_;
};

struct VecHash {
  std::size_t operator()(const std::vector<State>& v) const {
    std::size_t h = v.size();
    for (State s : v) h = hash_combine(h, s);
    return h;
  }
};

inline std::vector<State> sorted_union(std::vector<State> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace detail

// Base class that memoizes transitions per (state, letter).
template <class L>
class MemoAutomaton : public OmegaAutomaton<L> {
 public:
  void successors(State q, const L& a, std::vector<State>& out) final {
    if (memoize_ && memo_.find(q, a, out)) return;
    out.clear();
    compute(q, a, out);
    out = detail::sorted_union(std::move(out));
    if (memoize_) memo_.store(q, a, out);
  }

  // For an automaton whose caller never repeats a query, such as the outermost
  // product read by the game builder.
  void set_memoize(bool on) { memoize_ = on; }

 protected:
  virtual void compute(State q, const L& a, std::vector<State>& out) = 0;

 private:
  detail::TransitionMemo<L> memo_;
  bool memoize_ = true;
};

// Explicit automaton over letters 0..alphabet-1, used as a reference input.
class ExplicitAutomaton : public OmegaAutomaton<int> {
 public:
  ExplicitAutomaton(AccKind kind, int states, int alphabet);
  AccKind kind() const override { return kind_; }
  State initial() override { return 0; }
  void successors(State q, const int& a, std::vector<State>& out) override;
  int priority(State q) override { return prio_.at(q); }
  std::size_t state_count() const override { return prio_.size(); }

  void add_edge(State from, int letter, State to);
  void set_priority(State q, int p) { prio_.at(q) = p; }
  int alphabet() const { return alphabet_; }
  int states() const { return static_cast<int>(prio_.size()); }

 private:
  AccKind kind_;
  int alphabet_;
  std::vector<int> prio_;
  std::vector<std::vector<std::vector<State>>> delta_;
};

constexpr int kStuckSink = -1;

// Total view of a deterministic automaton: a stuck transition moves to a sink
// whose priority is `sink_priority`.
template <class L>
class Totalized {
 public:
  explicit Totalized(AutomatonPtr<L> inner) : inner_(std::move(inner)) {}
  static constexpr State kSink = 0;
  State initial() { return inner_->initial() + 1; }
  State step(State q, const L& a) {
    if (q == kSink) return kSink;
    auto n = inner_->step(q - 1, a);
    return n ? *n + 1 : kSink;
  }
  const AutomatonPtr<L>& inner() const { return inner_; }

 private:
  AutomatonPtr<L> inner_;
};

template <class L>
class ComplementDcoba : public OmegaAutomaton<L> {
 public:
  explicit ComplementDcoba(AutomatonPtr<L> a) : t_(std::move(a)) {
    if (t_.inner()->kind() != AccKind::DcoBA) throw std::invalid_argument("complement_dcoba expects a DcoBA");
  }
  AccKind kind() const override { return AccKind::DBA; }
  State initial() override { return t_.initial(); }
  void successors(State q, const L& a, std::vector<State>& out) override { out.assign(1, t_.step(q, a)); }
  int priority(State q) override {
    if (q == Totalized<L>::kSink) return 2;
    return t_.inner()->priority(q - 1) == 0 ? 1 : 2;
  }
  std::size_t state_count() const override { return t_.inner()->state_count() + 1; }
  std::string describe(State q) override {
    return q == Totalized<L>::kSink ? "sink" : t_.inner()->describe(q - 1);
  }

 private:
  Totalized<L> t_;
};

template <class L>
class ComplementDpa : public OmegaAutomaton<L> {
 public:
  explicit ComplementDpa(AutomatonPtr<L> a) : t_(std::move(a)) {
    if (t_.inner()->kind() != AccKind::DPA) throw std::invalid_argument("complement_dpa expects a DPA");
  }
  AccKind kind() const override { return AccKind::DPA; }
  State initial() override { return t_.initial(); }
  void successors(State q, const L& a, std::vector<State>& out) override { out.assign(1, t_.step(q, a)); }
  int priority(State q) override {
    if (q == Totalized<L>::kSink) return 0;
    return t_.inner()->priority(q - 1) + 1;
  }
  std::size_t state_count() const override { return t_.inner()->state_count() + 1; }
  std::string describe(State q) override {
    return q == Totalized<L>::kSink ? "sink" : t_.inner()->describe(q - 1);
  }

 private:
  Totalized<L> t_;
};

// Breakpoint construction: (S, O) with O ⊆ S ∩ F the runs that stayed in F
// since the last breakpoint. Accepting iff O = ∅.
template <class L>
class MhComplement : public MemoAutomaton<L> {
 public:
  explicit MhComplement(AutomatonPtr<L> a) : a_(std::move(a)) {
    if (a_->kind() != AccKind::NcoBA) throw std::invalid_argument("mh_complement expects an NcoBA");
  }
  AccKind kind() const override { return AccKind::DBA; }
  State initial() override { return states_.intern({{a_->initial()}, {}}); }
  int priority(State q) override { return states_.get(q).second.empty() ? 2 : 1; }
  std::size_t state_count() const override { return states_.size(); }
  std::string describe(State q) override {
    auto [s, o] = states_.get(q);
    auto fmt = [&](const std::vector<State>& v) {
      std::string r = "{";
      for (std::size_t i = 0; i < v.size(); ++i) r += (i ? "," : "") + a_->describe(v[i]);
      return r + "}";
    };
    return "(" + fmt(s) + ", " + fmt(o) + ")";
  }
  std::pair<std::vector<State>, std::vector<State>> pair_of(State q) const { return states_.get(q); }

 protected:
  void compute(State q, const L& a, std::vector<State>& out) override {
    auto [s, o] = states_.get(q);
    std::vector<State> buf, s2, o2;
    for (State x : s) {
      a_->successors(x, a, buf);
      s2.insert(s2.end(), buf.begin(), buf.end());
    }
    s2 = detail::sorted_union(std::move(s2));
    const std::vector<State>& src = o.empty() ? s2 : o;
    if (o.empty()) {
      for (State x : s2)
        if (a_->priority(x) == 0) o2.push_back(x);
    } else {
      for (State x : src) {
        a_->successors(x, a, buf);
        for (State y : buf)
          if (a_->priority(y) == 0) o2.push_back(y);
      }
      o2 = detail::sorted_union(std::move(o2));
    }
    out.push_back(states_.intern({s2, o2}));
  }

 private:
  struct PairHash {
    std::size_t operator()(const std::pair<std::vector<State>, std::vector<State>>& p) const {
      return hash_combine(detail::VecHash{}(p.first), detail::VecHash{}(p.second));
    }
  };
  AutomatonPtr<L> a_;
  detail::StateTable<std::pair<std::vector<State>, std::vector<State>>, PairHash> states_;
};

// Safra trees with nodes kept in age order. Internally priorities follow the
// min-parity convention (green at rank g gives 2g, removal at rank d gives
// 2d-1, an uneventful step over m nodes gives 2m+1) and are reported as
// kParityTop - p so that the max-parity convention holds outside.
struct SafraTree {
  std::vector<int> parent;
  std::vector<std::vector<State>> label;
  int min_priority = 0;

  friend bool operator==(const SafraTree& a, const SafraTree& b) {
    return a.min_priority == b.min_priority && a.parent == b.parent && a.label == b.label;
  }
};

struct SafraTreeHash {
  std::size_t operator()(const SafraTree& t) const {
    std::size_t h = static_cast<std::size_t>(t.min_priority);
    for (int p : t.parent) h = hash_combine(h, static_cast<std::size_t>(p + 1));
    for (const auto& l : t.label) h = hash_combine(h, detail::VecHash{}(l));
    return h;
  }
};

constexpr int kParityTop = 1 << 20;

template <class L>
class Determinize : public MemoAutomaton<L> {
 public:
  explicit Determinize(AutomatonPtr<L> a) : a_(std::move(a)) {
    if (a_->kind() != AccKind::NBA) throw std::invalid_argument("determinize expects an NBA");
  }
  AccKind kind() const override { return AccKind::DPA; }
  State initial() override {
    SafraTree t;
    t.parent = {-1};
    t.label = {{a_->initial()}};
    // visited once, so any value is sound; pick one the first steps also produce
    t.min_priority = a_->priority(a_->initial()) % 2 == 0 ? 2 : 3;
    return trees_.intern(t);
  }
  int priority(State q) override { return kParityTop - trees_.get(q).min_priority; }
  std::size_t state_count() const override { return trees_.size(); }
  std::string describe(State q) override {
    SafraTree t = trees_.get(q);
    std::string r = "[";
    for (std::size_t i = 0; i < t.parent.size(); ++i) {
      if (i) r += " ";
      r += std::to_string(t.parent[i]) + ":{";
      for (std::size_t j = 0; j < t.label[i].size(); ++j) r += (j ? "," : "") + a_->describe(t.label[i][j]);
      r += "}";
    }
    return r + "]/" + std::to_string(t.min_priority);
  }
  SafraTree tree(State q) const { return trees_.get(q); }

 protected:
  void compute(State q, const L& a, std::vector<State>& out) override {
    SafraTree t = trees_.get(q);
    const int old_n = static_cast<int>(t.parent.size());
    std::vector<int> parent = t.parent;
    std::vector<std::vector<State>> label = t.label;

    // spawn children holding the accepting states
    for (int v = 0; v < old_n; ++v) {
      std::vector<State> acc;
      for (State s : label[v])
        if (a_->priority(s) % 2 == 0) acc.push_back(s);
      if (!acc.empty()) {
        parent.push_back(v);
        label.push_back(std::move(acc));
      }
    }
    const int n = static_cast<int>(parent.size());

    // powerset step per node
    std::vector<State> buf;
    std::unordered_map<State, std::vector<State>> succ;
    for (int v = 0; v < n; ++v) {
      std::vector<State> next;
      for (State s : label[v]) {
        auto it = succ.find(s);
        if (it == succ.end()) {
          a_->successors(s, a, buf);
          it = succ.emplace(s, buf).first;
        }
        next.insert(next.end(), it->second.begin(), it->second.end());
      }
      label[v] = detail::sorted_union(std::move(next));
    }

    std::vector<std::vector<int>> children(n);
    for (int v = 1; v < n; ++v) children[parent[v]].push_back(v);

    // horizontal merge: a state stays only in the oldest branch holding it
    std::function<void(int, const std::vector<State>&)> restrict = [&](int v, const std::vector<State>& allowed) {
      std::vector<State> kept;
      std::set_intersection(label[v].begin(), label[v].end(), allowed.begin(), allowed.end(),
                            std::back_inserter(kept));
      label[v] = std::move(kept);
      std::vector<State> claimed;
      for (int c : children[v]) {
        std::vector<State> avail;
        std::set_difference(label[v].begin(), label[v].end(), claimed.begin(), claimed.end(),
                            std::back_inserter(avail));
        restrict(c, avail);
        std::vector<State> merged;
        std::set_union(claimed.begin(), claimed.end(), label[c].begin(), label[c].end(),
                       std::back_inserter(merged));
        claimed = std::move(merged);
      }
    };
    restrict(0, label[0]);

    std::vector<char> alive(n, 1), green(n, 0);
    int red = 0;  // smallest removed old rank (1-based), 0 if none
    auto kill_subtree = [&](int v, auto&& self) -> void {
      alive[v] = 0;
      for (int c : children[v]) self(c, self);
    };
    for (int v = 0; v < n; ++v) {
      if (alive[v] && label[v].empty()) {
        if (v < old_n && (red == 0 || v + 1 < red)) red = v + 1;
        kill_subtree(v, kill_subtree);
      }
    }
    if (!alive[0]) return;  // every run died

    // vertical merge: a node covered by its children absorbs them and turns green
    int greenest = 0;
    for (int v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      std::vector<State> cover;
      bool has_child = false;
      for (int c : children[v]) {
        if (!alive[c]) continue;
        has_child = true;
        std::vector<State> merged;
        std::set_union(cover.begin(), cover.end(), label[c].begin(), label[c].end(), std::back_inserter(merged));
        cover = std::move(merged);
      }
      if (has_child && cover == label[v]) {
        green[v] = 1;
        for (int c : children[v])
          if (alive[c]) kill_subtree(c, kill_subtree);
        if (greenest == 0) greenest = v + 1;
      }
    }

    SafraTree nt;
    std::vector<int> remap(n, -1);
    for (int v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      remap[v] = static_cast<int>(nt.parent.size());
      nt.parent.push_back(v == 0 ? -1 : remap[parent[v]]);
      nt.label.push_back(label[v]);
    }
    int p = 2 * old_n + 1;
    if (greenest) p = std::min(p, 2 * greenest);
    if (red) p = std::min(p, 2 * red - 1);
    nt.min_priority = p;
    out.push_back(trees_.intern(nt));
  }

 private:
  AutomatonPtr<L> a_;
  detail::StateTable<SafraTree, SafraTreeHash> trees_;
};

struct TripleHash {
  std::size_t operator()(const std::tuple<State, State, int>& t) const {
    return hash_combine(hash_combine(std::get<0>(t), std::get<1>(t)), static_cast<std::size_t>(std::get<2>(t)));
  }
};

// States (q1, q2, p): p is the largest b-priority seen since a last visited F.
template <class L>
class IntersectDbaDpa : public MemoAutomaton<L> {
 public:
  IntersectDbaDpa(AutomatonPtr<L> a, AutomatonPtr<L> b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_->kind() != AccKind::DBA || b_->kind() != AccKind::DPA)
      throw std::invalid_argument("intersect_dba_dpa expects a DBA and a DPA");
  }
  AccKind kind() const override { return AccKind::DPA; }
  State initial() override {
    State b0 = b_->initial();
    return states_.intern({a_->initial(), b0, b_->priority(b0)});
  }
  int priority(State q) override {
    auto [q1, q2, p] = states_.get(q);
    return a_->priority(q1) == 2 ? p + 2 : 1;
  }
  std::size_t state_count() const override { return states_.size(); }
  std::string describe(State q) override {
    auto [q1, q2, p] = states_.get(q);
    return "(" + a_->describe(q1) + ", " + b_->describe(q2) + ", " + std::to_string(p) + ")";
  }
  std::tuple<State, State, int> triple(State q) const { return states_.get(q); }

 protected:
  void compute(State q, const L& a, std::vector<State>& out) override {
    auto [q1, q2, p] = states_.get(q);
    auto n1 = a_->step(q1, a);
    auto n2 = b_->step(q2, a);
    if (!n1 || !n2) return;
    int pb = b_->priority(*n2);
    int np = a_->priority(q1) == 2 ? pb : std::max(p, pb);
    out.push_back(states_.intern({*n1, *n2, np}));
  }

 private:
  AutomatonPtr<L> a_, b_;
  detail::StateTable<std::tuple<State, State, int>, TripleHash> states_;
};

template <class L>
class IntersectDbaDcoba : public MemoAutomaton<L> {
 public:
  IntersectDbaDcoba(AutomatonPtr<L> a, AutomatonPtr<L> b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_->kind() != AccKind::DBA || b_->kind() != AccKind::DcoBA)
      throw std::invalid_argument("intersect_dba_dcoba expects a DBA and a DcoBA");
  }
  AccKind kind() const override { return AccKind::NBA; }
  State initial() override { return states_.intern({a_->initial(), b_->initial(), 0}); }
  int priority(State q) override {
    auto [q1, q2, flag] = states_.get(q);
    return flag == 1 && a_->priority(q1) == 2 && b_->priority(q2) == 0 ? 2 : 1;
  }
  std::size_t state_count() const override { return states_.size(); }
  std::string describe(State q) override {
    auto [q1, q2, f] = states_.get(q);
    return "(" + a_->describe(q1) + ", " + b_->describe(q2) + ", " + std::to_string(f) + ")";
  }

 protected:
  void compute(State q, const L& a, std::vector<State>& out) override {
    auto [q1, q2, flag] = states_.get(q);
    auto n1 = a_->step(q1, a);
    auto n2 = b_->step(q2, a);
    if (!n1 || !n2) return;
    bool fin = b_->priority(*n2) == 0;
    if (flag == 0) {
      out.push_back(states_.intern({*n1, *n2, 0}));
      if (fin) out.push_back(states_.intern({*n1, *n2, 1}));
    } else if (fin) {
      out.push_back(states_.intern({*n1, *n2, 1}));
    }
  }

 private:
  AutomatonPtr<L> a_, b_;
  detail::StateTable<std::tuple<State, State, int>, TripleHash> states_;
};

template <class L>
class IntersectDbaDba : public MemoAutomaton<L> {
 public:
  IntersectDbaDba(AutomatonPtr<L> a, AutomatonPtr<L> b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_->kind() != AccKind::DBA || b_->kind() != AccKind::DBA)
      throw std::invalid_argument("intersect_dba_dba expects two DBAs");
  }
  AccKind kind() const override { return AccKind::DBA; }
  State initial() override { return states_.intern({a_->initial(), b_->initial(), 0}); }
  int priority(State q) override {
    auto [q1, q2, phase] = states_.get(q);
    return phase == 0 && a_->priority(q1) == 2 ? 2 : 1;
  }
  std::size_t state_count() const override { return states_.size(); }
  std::string describe(State q) override {
    auto [q1, q2, f] = states_.get(q);
    return "(" + a_->describe(q1) + ", " + b_->describe(q2) + ", " + std::to_string(f) + ")";
  }

 protected:
  void compute(State q, const L& a, std::vector<State>& out) override {
    auto [q1, q2, phase] = states_.get(q);
    auto n1 = a_->step(q1, a);
    auto n2 = b_->step(q2, a);
    if (!n1 || !n2) return;
    int next = phase;
    if (phase == 0 && a_->priority(q1) == 2) next = 1;
    else if (phase == 1 && b_->priority(q2) == 2) next = 0;
    out.push_back(states_.intern({*n1, *n2, next}));
  }

 private:
  AutomatonPtr<L> a_, b_;
  detail::StateTable<std::tuple<State, State, int>, TripleHash> states_;
};

// Existential projection of an NBA over pair letters onto the left component.
template <class LA, class LB>
class ProjectNba : public MemoAutomaton<LA> {
 public:
  using Enumerator = std::function<std::vector<LB>(const LA&)>;
  ProjectNba(AutomatonPtr<LB> c, Enumerator feasible) : c_(std::move(c)), feasible_(std::move(feasible)) {
    if (c_->kind() != AccKind::NBA) throw std::invalid_argument("project_nba expects an NBA");
  }
  AccKind kind() const override { return AccKind::NBA; }
  State initial() override { return c_->initial(); }
  int priority(State q) override { return c_->priority(q); }
  std::size_t state_count() const override { return c_->state_count(); }
  std::string describe(State q) override { return c_->describe(q); }

 protected:
  void compute(State q, const LA& a, std::vector<State>& out) override {
    std::vector<State> buf;
    for (const LB& b : feasible_(a)) {
      c_->successors(q, b, buf);
      out.insert(out.end(), buf.begin(), buf.end());
    }
  }

 private:
  AutomatonPtr<LB> c_;
  Enumerator feasible_;
};

template <class L>
AutomatonPtr<L> complement_dcoba(AutomatonPtr<L> a) {
  return std::make_shared<ComplementDcoba<L>>(std::move(a));
}
template <class L>
AutomatonPtr<L> complement_dpa(AutomatonPtr<L> a) {
  return std::make_shared<ComplementDpa<L>>(std::move(a));
}
template <class L>
AutomatonPtr<L> mh_complement_ncoba(AutomatonPtr<L> a) {
  return std::make_shared<MhComplement<L>>(std::move(a));
}
template <class L>
AutomatonPtr<L> determinize_nba(AutomatonPtr<L> a) {
  return std::make_shared<Determinize<L>>(std::move(a));
}
template <class L>
AutomatonPtr<L> intersect_dba_dpa(AutomatonPtr<L> a, AutomatonPtr<L> b) {
  return std::make_shared<IntersectDbaDpa<L>>(std::move(a), std::move(b));
}
template <class L>
AutomatonPtr<L> intersect_dba_dcoba(AutomatonPtr<L> a, AutomatonPtr<L> b) {
  return std::make_shared<IntersectDbaDcoba<L>>(std::move(a), std::move(b));
}
template <class L>
AutomatonPtr<L> intersect_dba_dba(AutomatonPtr<L> a, AutomatonPtr<L> b) {
  return std::make_shared<IntersectDbaDba<L>>(std::move(a), std::move(b));
}
template <class LA, class LB>
AutomatonPtr<LA> project_nba(AutomatonPtr<LB> c, typename ProjectNba<LA, LB>::Enumerator feasible) {
  return std::make_shared<ProjectNba<LA, LB>>(std::move(c), std::move(feasible));
}

namespace detail {

// Nontrivial SCCs of a graph given as adjacency lists, restricted to `allowed`.
std::vector<std::vector<int>> cyclic_sccs(const std::vector<std::vector<int>>& adj, const std::vector<char>& allowed);

}  // namespace detail

template <class L>
bool lasso_accepts(OmegaAutomaton<L>& a, const LassoWord<L>& w) {
  if (w.cycle.empty()) throw std::invalid_argument("lasso cycle must be non-empty");
  const int u = static_cast<int>(w.prefix.size());
  const int len = u + static_cast<int>(w.cycle.size());
  auto letter = [&](int pos) -> const L& { return pos < u ? w.prefix[pos] : w.cycle[pos - u]; };
  auto next_pos = [&](int pos) { return pos + 1 < len ? pos + 1 : u; };

  if (is_deterministic(a.kind())) {
    std::map<std::pair<State, int>, int> seen;
    std::vector<int> prio;
    State q = a.initial();
    int pos = 0;
    for (int t = 0;; ++t) {
      if (pos >= u) {
        auto [it, fresh] = seen.try_emplace({q, pos}, t);
        if (!fresh) {
          int best = -1;
          for (int i = it->second; i < t; ++i) best = std::max(best, prio[i]);
          return best % 2 == 0;
        }
      }
      prio.push_back(a.priority(q));
      auto n = a.step(q, letter(pos));
      if (!n) return false;
      q = *n;
      pos = next_pos(pos);
    }
  }

  std::map<std::pair<State, int>, int> id;
  std::vector<std::pair<State, int>> nodes;
  std::vector<std::vector<int>> adj;
  auto get = [&](State q, int pos) {
    auto [it, fresh] = id.try_emplace({q, pos}, static_cast<int>(nodes.size()));
    if (fresh) {
      nodes.push_back({q, pos});
      adj.emplace_back();
    }
    return it->second;
  };
  get(a.initial(), 0);
  std::vector<State> buf;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto [q, pos] = nodes[i];
    a.successors(q, letter(pos), buf);
    std::vector<State> succ = buf;
    for (State n : succ) {
      int j = get(n, next_pos(pos));
      adj[i].push_back(j);
    }
  }
  std::vector<int> prio(nodes.size());
  std::set<int> evens;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    prio[i] = a.priority(nodes[i].first);
    if (prio[i] % 2 == 0) evens.insert(prio[i]);
  }
  for (int p : evens) {
    std::vector<char> allowed(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) allowed[i] = prio[i] <= p;
    for (const auto& scc : detail::cyclic_sccs(adj, allowed))
      for (int v : scc)
        if (prio[v] == p) return true;
  }
  return false;
}

// Breadth-first exploration over a finite alphabet; returns reachable states.
template <class L>
std::vector<State> explore(OmegaAutomaton<L>& a, const std::vector<L>& alphabet, std::size_t limit = 1000000) {
  std::vector<State> order{a.initial()};
  std::set<State> seen{order.front()};
  std::vector<State> buf;
  for (std::size_t i = 0; i < order.size() && order.size() < limit; ++i) {
    for (const L& x : alphabet) {
      a.successors(order[i], x, buf);
      for (State n : buf)
        if (seen.insert(n).second) order.push_back(n);
    }
  }
  return order;
}

template <class L>
std::size_t priority_index(OmegaAutomaton<L>& a, const std::vector<State>& states) {
  std::set<int> ps;
  for (State q : states) ps.insert(a.priority(q));
  return ps.size();
}

}  // namespace branchsat

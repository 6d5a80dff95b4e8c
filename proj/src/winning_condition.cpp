#include "branchsat/winning_condition.hpp"

#include <cmath>
#include <stdexcept>

namespace branchsat {

namespace {

FormulaSet fl_r_mask(const FormulaTable& t) {
  FormulaSet m;
  for (Fid i = 0; i < t.size(); ++i)
    if (t.in_fl_r(i)) m.set(i);
  return m;
}

// --- E-traces -------------------------------------------------------------

struct EState {
  uint32_t i = 0;
  bool tracking = false;
  FormulaSet pi;

  friend bool operator==(const EState& a, const EState& b) {
    return a.i == b.i && a.tracking == b.tracking && a.pi == b.pi;
  }
  std::size_t hash() const { return hash_combine(pi.hash(), (std::size_t{i} << 1) | tracking); }
};

class EDba : public MemoAutomaton<PlayLetter> {
 public:
  EDba(const GameCore& core, EntryMode mode) : core_(core), mode_(mode) {
    const FormulaTable& t = core.table();
    for (Fid u : t.untils()) {
      untils_.push_back(u);
      nexts_.push_back(*t.next_of(u));
    }
  }
  AccKind kind() const override { return AccKind::DBA; }
  State initial() override { return states_.intern(EState{}); }
  int priority(State q) override {
    EState s = states_.get(q);
    return (s.i == 0 && !s.tracking) ? 2 : 1;
  }
  std::size_t state_count() const override { return states_.size(); }
  std::string describe(State q) override {
    EState s = states_.get(q);
    if (!s.tracking) return std::to_string(s.i);
    return "(" + std::to_string(s.i) + ", " + core_.dump(Block{Quant::E, s.pi}) + ")";
  }

 protected:
  void compute(State q, const PlayLetter& r, std::vector<State>& out) override {
    if (untils_.empty()) {
      out.push_back(q);
      return;
    }
    EState s = states_.get(q);
    const uint32_t k = static_cast<uint32_t>(untils_.size());
    auto go = [&](EState n) { out.push_back(states_.intern(n)); };
    auto advance = [&] { go(EState{(s.i + 1) % k, false, {}}); };
    const Fid u = untils_[s.i];

    if (!s.tracking) {
      if (r.kind == LetterKind::X0) return advance();
      if (mode_ == EntryMode::Modal) {
        if (r.kind != LetterKind::X1) return go(s);
        if (r.block.test(nexts_[s.i])) return go(EState{s.i, true, core_.strip(r.block)});
        return advance();
      }
      if (r.kind == LetterKind::X1) return advance();
      if (r.kind == LetterKind::Rule && r.q == Quant::E && r.principal == u && r.branch == 1) {
        auto c = core_.con_e(r, r.block);
        if (!c) throw std::logic_error("E-block unfolding without E-descendant");
        return go(EState{s.i, true, c->f});
      }
      return go(s);
    }

    if (r.kind == LetterKind::X0) throw std::logic_error("X0 letter while an E-block is tracked");
    if (r.kind == LetterKind::Rule && r.q == Quant::E && r.block == s.pi && r.principal == u && r.branch == 0)
      return advance();
    auto c = core_.con_e(r, s.pi);
    if (!c) return advance();
    go(EState{s.i, true, c->f});
  }

 private:
  const GameCore& core_;
  EntryMode mode_;
  std::vector<Fid> untils_;
  std::vector<Fid> nexts_;
  detail::StateTable<EState, MemberHash<EState>> states_;
};

// --- bad A-traces ---------------------------------------------------------

// Marked block, Miyano-Hayashi pair over {W} ∪ FL_R (W is always in S and
// never in O, so only the formula parts are stored), product flag.
struct AState {
  Block b;
  FormulaSet s;
  FormulaSet o;
  uint8_t flag = 0;

  friend bool operator==(const AState& x, const AState& y) {
    return x.b == y.b && x.s == y.s && x.o == y.o && x.flag == y.flag;
  }
  std::size_t hash() const {
    return hash_combine(hash_combine(hash_combine(b.hash(), s.hash()), o.hash()), flag);
  }
};

class BadANba : public MemoAutomaton<PlayLetter> {
 public:
  explicit BadANba(const GameCore& core) : core_(core), flr_(fl_r_mask(core.table())) {}
  AccKind kind() const override { return AccKind::NBA; }
  State initial() override {
    AState s;
    s.b = Block{Quant::E, {}};
    s.b.f.set(core_.table().root());
    return states_.intern(s);
  }
  int priority(State q) override {
    AState s = states_.get(q);
    return s.flag == 1 && s.o.empty() ? 2 : 1;
  }
  std::size_t state_count() const override { return states_.size(); }
  std::string describe(State q) override {
    AState s = states_.get(q);
    auto set = [&](const FormulaSet& f) {
      std::string r = "{";
      f.for_each([&](uint32_t i) {
        if (r.size() > 1) r += ", ";
        r += core_.table().print(i);
      });
      return r + "}";
    };
    return "(" + core_.dump(s.b) + ", W" + set(s.s) + ", " + set(s.o) + ", " + std::to_string(s.flag) + ")";
  }

 protected:
  void compute(State q, const PlayLetter& r, std::vector<State>& out) override {
    AState s = states_.get(q);
    for (const Descendant& d : core_.block_descendants(r, s.b)) {
      AState n;
      n.b = d.block;
      bool is_a = d.block.q == Quant::A;
      if (is_a) {
        n.s = d.block.f & flr_;
        s.s.for_each([&](uint32_t chi) { n.s |= core_.formula_descendants(r, s.b, chi, d.block) & flr_; });
        if (s.o.empty()) {
          n.o = n.s;
        } else {
          s.o.for_each([&](uint32_t chi) { n.o |= core_.formula_descendants(r, s.b, chi, d.block) & flr_; });
        }
      }
      if (s.flag == 0) {
        n.flag = 0;
        out.push_back(states_.intern(n));
      }
      if (is_a) {
        n.flag = 1;
        out.push_back(states_.intern(n));
      }
    }
  }

 private:
  const GameCore& core_;
  FormulaSet flr_;
  detail::StateTable<AState, MemberHash<AState>> states_;
};

// --- CTL+ -------------------------------------------------------------------

struct PlusState {
  bool waiting = true;
  Block b;
  uint8_t flag = 0;

  friend bool operator==(const PlusState& x, const PlusState& y) {
    return x.waiting == y.waiting && x.b == y.b && x.flag == y.flag;
  }
  std::size_t hash() const { return hash_combine(b.hash(), (std::size_t{flag} << 1) | waiting); }
};

class CtlPlusNcoba : public MemoAutomaton<PlayLetter> {
 public:
  explicit CtlPlusNcoba(const GameCore& core) : core_(core), flr_(fl_r_mask(core.table())) {}
  AccKind kind() const override { return AccKind::NcoBA; }
  State initial() override { return states_.intern(PlusState{}); }
  int priority(State q) override { return states_.get(q).flag == 2 ? 0 : 1; }
  std::size_t state_count() const override { return states_.size(); }
  std::string describe(State q) override {
    PlusState s = states_.get(q);
    if (s.waiting) return "W";
    return "(" + core_.dump(s.b) + ", " + std::to_string(s.flag) + ")";
  }

 protected:
  void compute(State q, const PlayLetter& r, std::vector<State>& out) override {
    PlusState s = states_.get(q);
    if (s.waiting) {
      out.push_back(q);
      if (r.kind != LetterKind::Rule) return;
      for (const Descendant& d : core_.block_descendants(r, Block{r.q, r.block}))
        if (d.spawning && d.block.q == Quant::A) out.push_back(states_.intern(PlusState{false, d.block, 0}));
      return;
    }
    bool modal = r.kind == LetterKind::X0 || r.kind == LetterKind::X1;
    for (const Descendant& d : core_.block_descendants(r, s.b)) {
      if (d.spawning || d.block.q != Quant::A) continue;
      uint8_t f = s.flag == 0 ? (modal ? 1 : 0) : s.flag;
      if (f == 1 && !d.block.f.intersects(flr_)) f = 2;
      out.push_back(states_.intern(PlusState{false, d.block, f}));
    }
  }

 private:
  const GameCore& core_;
  FormulaSet flr_;
  detail::StateTable<PlusState, MemberHash<PlusState>> states_;
};

// --- CTL --------------------------------------------------------------------

struct CtlState {
  uint32_t i = 0;
  int item = -1;  // tracked item, -1 when waiting

  friend bool operator==(const CtlState& a, const CtlState& b) { return a.i == b.i && a.item == b.item; }
  std::size_t hash() const { return hash_combine(std::size_t{i}, static_cast<std::size_t>(item + 1)); }
};

class CtlDba : public MemoAutomaton<CtlLetter> {
 public:
  explicit CtlDba(const CtlCore& core) : core_(core) {}
  AccKind kind() const override { return AccKind::DBA; }
  State initial() override { return states_.intern(CtlState{}); }
  int priority(State q) override {
    CtlState s = states_.get(q);
    return s.i == 0 && s.item < 0 ? 2 : 1;
  }
  std::size_t state_count() const override { return states_.size(); }
  std::string describe(State q) override {
    CtlState s = states_.get(q);
    if (s.item < 0) return std::to_string(s.i);
    return "(" + std::to_string(s.i) + ", " + core_.dump_item(static_cast<uint32_t>(s.item)) + ")";
  }

 protected:
  void compute(State q, const CtlLetter& r, std::vector<State>& out) override {
    const auto& us = core_.untils();
    if (us.empty()) {
      out.push_back(q);
      return;
    }
    CtlState s = states_.get(q);
    const uint32_t k = static_cast<uint32_t>(us.size());
    auto go = [&](CtlState n) { out.push_back(states_.intern(n)); };
    auto advance = [&] { go(CtlState{(s.i + 1) % k, -1}); };
    const Fid u = us[s.i];
    const uint32_t plain = CtlCore::item(u, CtlCore::kPlain);
    const uint32_t tag = core_.table().at(u).op == Op::Exists ? CtlCore::kEX : CtlCore::kAX;
    const uint32_t next = CtlCore::item(u, tag);
    const bool modal = r.kind != CtlLetterKind::Rule;

    // Entering at modal letters catches threads unfolded while another
    // component was being tracked.
    auto carries = [&] { return tag == CtlCore::kAX ? r.carried.test(next) : r.kind == CtlLetterKind::X1 && r.item == next; };
    if (s.item < 0) {
      if (modal) return carries() ? go(CtlState{s.i, static_cast<int>(plain)}) : advance();
      if (r.item == plain && r.branch == 1) return go(CtlState{s.i, static_cast<int>(next)});
      return go(s);
    }
    if (static_cast<uint32_t>(s.item) == plain) {
      if (modal) return advance();
      if (r.item == plain) return r.branch == 0 ? advance() : go(CtlState{s.i, static_cast<int>(next)});
      return go(s);
    }
    if (!modal) return go(s);
    if (tag == CtlCore::kAX || (r.kind == CtlLetterKind::X1 && r.item == next))
      return go(CtlState{s.i, static_cast<int>(plain)});
    advance();
  }

 private:
  const CtlCore& core_;
  detail::StateTable<CtlState, MemberHash<CtlState>> states_;
};

}  // namespace

AutomatonPtr<PlayLetter> build_e_dba(const GameCore& core, EntryMode mode) {
  return std::make_shared<EDba>(core, mode);
}

AutomatonPtr<PlayLetter> build_bad_a_nba(const GameCore& core) { return std::make_shared<BadANba>(core); }

AutomatonPtr<PlayLetter> build_a_dpa(const GameCore& core) {
  return complement_dpa(determinize_nba(build_bad_a_nba(core)));
}

AutomatonPtr<PlayLetter> build_ctlplus_bad_a_ncoba(const GameCore& core) {
  return std::make_shared<CtlPlusNcoba>(core);
}

AutomatonPtr<CtlLetter> build_ctl_dba(const CtlCore& core) { return std::make_shared<CtlDba>(core); }

PlayAcceptance build_acceptance(const GameCore& core, Fragment fragment, EntryMode mode) {
  if (fragment == Fragment::Ctl) throw std::invalid_argument("CTL inputs use the CTL game");
  if (static_cast<int>(core.table().fragment()) > static_cast<int>(fragment))
    throw std::invalid_argument(std::string("formula is not in ") + fragment_name(fragment));
  PlayAcceptance acc;
  acc.e_part = build_e_dba(core, mode);
  if (fragment == Fragment::CtlPlus) {
    acc.game = GameKind::Buchi;
    acc.a_source = build_ctlplus_bad_a_ncoba(core);
    acc.a_part = mh_complement_ncoba(acc.a_source);
    acc.automaton = intersect_dba_dba(acc.e_part, acc.a_part);
  } else {
    acc.game = GameKind::Parity;
    acc.a_source = build_bad_a_nba(core);
    acc.a_det = determinize_nba(acc.a_source);
    acc.a_part = complement_dpa(acc.a_det);
    acc.automaton = intersect_dba_dpa(acc.e_part, acc.a_part);
  }
  // The game builder asks each (state, letter) about once.
  if (auto m = std::dynamic_pointer_cast<MemoAutomaton<PlayLetter>>(acc.automaton)) m->set_memoize(false);
  return acc;
}

double e_dba_bound(const FormulaTable& table) {
  double k = static_cast<double>(table.untils().size());
  if (k == 0) return 1;
  return k * (1 + std::pow(2.0, static_cast<double>(table.size())));
}

double ctl_dba_bound(const FormulaTable& table) {
  std::size_t k = 0;
  for (Fid i = 0; i < table.subformula_count(); ++i) {
    const FormulaEntry& e = table.at(i);
    if ((e.op == Op::Exists || e.op == Op::Forall) && table.at(static_cast<Fid>(e.left)).op == Op::Until) ++k;
  }
  if (k == 0) return 1;
  return static_cast<double>(k) * (1 + 3 * static_cast<double>(table.subformula_count()));
}

}  // namespace branchsat

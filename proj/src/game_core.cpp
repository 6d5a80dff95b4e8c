#include "branchsat/game_core.hpp"

#include <algorithm>
#include <stdexcept>

namespace branchsat {

void Configuration::canonicalize() {
  std::sort(blocks.begin(), blocks.end());
  blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
}

bool Configuration::has_block(const Block& b) const {
  return std::binary_search(blocks.begin(), blocks.end(), b);
}

std::size_t Configuration::hash() const {
  std::size_t h = lits.hash();
  for (const Block& b : blocks) h = hash_combine(h, b.hash());
  return h;
}

std::size_t PlayLetter::hash() const {
  std::size_t h = block.hash();
  h = hash_combine(h, static_cast<std::size_t>(kind) | (static_cast<std::size_t>(q) << 2) |
                          (static_cast<std::size_t>(branch) << 3) | (static_cast<std::size_t>(principal) << 4));
  return h;
}

const char* rule_name(RuleName r) {
  switch (r) {
    case RuleName::AAnd: return "A&";
    case RuleName::AOr: return "A|";
    case RuleName::ALit: return "Al";
    case RuleName::AU: return "AU";
    case RuleName::AR: return "AR";
    case RuleName::AA: return "AA";
    case RuleName::AE: return "AE";
    case RuleName::EOr: return "E|";
    case RuleName::EAnd: return "E&";
    case RuleName::ELit: return "El";
    case RuleName::EU: return "EU";
    case RuleName::ER: return "ER";
    case RuleName::EE: return "EE";
    case RuleName::EA: return "EA";
    case RuleName::Ett: return "Ett";
    case RuleName::X0: return "X0";
    case RuleName::X1: return "X1";
  }
  return "?";
}

bool is_choice_rule(RuleName r) {
  switch (r) {
    case RuleName::ALit:
    case RuleName::AA:
    case RuleName::AE:
    case RuleName::EOr:
    case RuleName::EU:
    case RuleName::ER: return true;
    default: return false;
  }
}

namespace {

std::vector<int> negation_index(const FormulaTable& t) {
  std::vector<int> neg(t.size(), -1);
  std::unordered_map<std::string, Fid> pos, negs;
  for (Fid i = 0; i < t.size(); ++i) {
    if (t.at(i).op == Op::Prop) pos[t.at(i).name] = i;
    if (t.at(i).op == Op::NegProp) negs[t.at(i).name] = i;
  }
  for (auto& [name, i] : pos) {
    auto it = negs.find(name);
    if (it == negs.end()) continue;
    neg[i] = static_cast<int>(it->second);
    neg[it->second] = static_cast<int>(i);
  }
  return neg;
}

}  // namespace

GameCore::GameCore(const FormulaTable& table) : table_(table) {
  if (table.size() > kMaxClosure)
    throw std::length_error("closure has " + std::to_string(table.size()) + " formulas; at most " +
                            std::to_string(kMaxClosure) + " are supported");
  for (Fid i = 0; i < table.size(); ++i) {
    if (table.at(i).op == Op::Next) next_mask_.set(i);
    if (is_literal(table.at(i).op)) lit_mask_.set(i);
  }
  neg_of_ = negation_index(table);
}

Configuration GameCore::initial_configuration() const {
  Configuration c;
  Block b;
  b.q = Quant::E;
  b.f.set(table_.root());
  c.blocks.push_back(b);
  return c;
}

bool GameCore::is_consistent(const Configuration& c) const {
  bool ok = true;
  c.lits.for_each([&](uint32_t i) {
    if (table_.at(i).op == Op::False) ok = false;
    if (neg_of_[i] >= 0 && c.lits.test(static_cast<std::size_t>(neg_of_[i]))) ok = false;
  });
  return ok;
}

bool GameCore::is_stuck(const Configuration& c) const {
  for (const Block& b : c.blocks)
    if (b.q == Quant::A && b.f.empty()) return true;
  return false;
}

RuleName GameCore::rule_for(Quant q, Fid chi) const {
  const FormulaEntry& e = table_.at(chi);
  bool a = q == Quant::A;
  switch (e.op) {
    case Op::And: return a ? RuleName::AAnd : RuleName::EAnd;
    case Op::Or: return a ? RuleName::AOr : RuleName::EOr;
    case Op::Until: return a ? RuleName::AU : RuleName::EU;
    case Op::Release: return a ? RuleName::AR : RuleName::ER;
    case Op::Forall: return a ? RuleName::AA : RuleName::EA;
    case Op::Exists: return a ? RuleName::AE : RuleName::EE;
    case Op::Next: throw std::logic_error("X-formulas are handled by the modal rules");
    default: return a ? RuleName::ALit : RuleName::ELit;
  }
}

std::optional<Principal> GameCore::select_principal(const Configuration& c) const {
  for (const Block& b : c.blocks)
    if (b.q == Quant::E && b.f.empty()) return Principal{b, 0, RuleName::Ett};

  const Block* best_block = nullptr;
  Fid best = 0;
  uint32_t best_size = 0;
  for (const Block& b : c.blocks) {
    FormulaSet cand = b.f.minus(next_mask_);
    cand.for_each([&](uint32_t i) {
      uint32_t sz = table_.at(i).size;
      bool better = false;
      if (!best_block || sz > best_size) {
        better = true;
      } else if (sz == best_size) {
        if (i < best) {
          better = true;
        } else if (i == best) {
          if (b.q != best_block->q) better = b.q == Quant::A;
          else better = FormulaSet::seq_less(b.f, best_block->f);
        }
      }
      if (better) {
        best_block = &b;
        best = i;
        best_size = sz;
      }
    });
  }
  if (!best_block) return std::nullopt;
  return Principal{*best_block, best, rule_for(best_block->q, best)};
}

GameCore::Application GameCore::apply(const Block& b, Fid chi, int branch) const {
  const FormulaEntry& e = table_.at(chi);
  Application app;
  auto one = [](Fid x) {
    FormulaSet s;
    s.set(x);
    return s;
  };
  auto two = [](Fid x, Fid y) {
    FormulaSet s;
    s.set(x);
    s.set(y);
    return s;
  };
  Fid l = static_cast<Fid>(e.left), r = static_cast<Fid>(e.right);
  auto xform = [&]() { return static_cast<Fid>(e.next_form); };
  if (b.q == Quant::A) {
    switch (e.op) {
      case Op::And:
        app.plans = {{Quant::A, one(l), true, false}, {Quant::A, one(r), true, false}};
        break;
      case Op::Or: app.plans = {{Quant::A, two(l, r), true, false}}; break;
      case Op::Until:
        app.plans = {{Quant::A, two(r, l), true, false}, {Quant::A, two(r, xform()), true, false}};
        break;
      case Op::Release:
        app.plans = {{Quant::A, one(r), true, false}, {Quant::A, two(l, xform()), true, false}};
        break;
      case Op::Forall:
        if (branch == 0) app.plans = {{Quant::A, one(l), false, true}};
        else app.plans = {{Quant::A, FormulaSet{}, true, false}};
        break;
      case Op::Exists:
        if (branch == 0) app.plans = {{Quant::E, one(l), false, true}};
        else app.plans = {{Quant::A, FormulaSet{}, true, false}};
        break;
      case Op::Next: throw std::logic_error("X-formula cannot be principal");
      default:
        if (branch == 0) app.literal = static_cast<int>(chi);
        else app.plans = {{Quant::A, FormulaSet{}, true, false}};
        break;
    }
  } else {
    switch (e.op) {
      case Op::Or: app.plans = {{Quant::E, one(branch == 0 ? l : r), true, false}}; break;
      case Op::And: app.plans = {{Quant::E, two(l, r), true, false}}; break;
      case Op::Until:
        if (branch == 0) app.plans = {{Quant::E, one(r), true, false}};
        else app.plans = {{Quant::E, two(l, xform()), true, false}};
        break;
      case Op::Release:
        if (branch == 0) app.plans = {{Quant::E, two(r, l), true, false}};
        else app.plans = {{Quant::E, two(r, xform()), true, false}};
        break;
      case Op::Exists:
        app.plans = {{Quant::E, one(l), false, true}, {Quant::E, FormulaSet{}, true, false}};
        break;
      case Op::Forall:
        app.plans = {{Quant::A, one(l), false, true}, {Quant::E, FormulaSet{}, true, false}};
        break;
      case Op::Next: throw std::logic_error("X-formula cannot be principal");
      default:
        app.literal = static_cast<int>(chi);
        app.plans = {{Quant::E, FormulaSet{}, true, false}};
        break;
    }
  }
  return app;
}

Block GameCore::plan_block(const BlockPlan& s, const FormulaSet& rest) const {
  Block b;
  b.q = s.q;
  b.f = s.keeps_rest ? (s.from_principal | rest) : s.from_principal;
  return b;
}

FormulaSet GameCore::strip(const FormulaSet& s) const {
  FormulaSet out;
  s.for_each([&](uint32_t i) {
    const FormulaEntry& e = table_.at(i);
    if (e.op != Op::Next) throw std::logic_error("strip applied to a non-X formula");
    out.set(static_cast<std::size_t>(e.left));
  });
  return out;
}

bool GameCore::all_next(const FormulaSet& s) const { return s.minus(next_mask_).empty(); }

Expansion<Configuration, PlayLetter> GameCore::successors(const Configuration& c) const {
  Expansion<Configuration, PlayLetter> ex;
  if (!is_consistent(c) || is_stuck(c)) return ex;

  auto finish = [&](Configuration n, const PlayLetter& r) {
    n.canonicalize();
    bool losing = !is_consistent(n) || is_stuck(n);
    ex.moves.push_back({r, std::move(n), losing});
  };

  std::optional<Principal> p = select_principal(c);
  if (p) {
    ex.owner = Owner::P0;
    ex.kind = StepKind::Rule;
    Configuration base;
    base.lits = c.lits;
    for (const Block& b : c.blocks)
      if (b != p->block) base.blocks.push_back(b);
    if (p->rule == RuleName::Ett) {
      PlayLetter r;
      r.kind = LetterKind::Ett;
      r.q = Quant::E;
      finish(base, r);
      return ex;
    }
    FormulaSet rest = p->block.f;
    rest.reset(p->formula);
    int branches = is_choice_rule(p->rule) ? 2 : 1;
    for (int br = 0; br < branches; ++br) {
      Application app = apply(p->block, p->formula, br);
      Configuration n = base;
      for (const BlockPlan& s : app.plans) n.blocks.push_back(plan_block(s, rest));
      if (app.literal >= 0 && table_.at(static_cast<Fid>(app.literal)).op != Op::True)
        n.lits.set(static_cast<std::size_t>(app.literal));
      PlayLetter r;
      r.kind = LetterKind::Rule;
      r.q = p->block.q;
      r.branch = static_cast<uint8_t>(br);
      r.principal = static_cast<uint16_t>(p->formula);
      r.block = p->block.f;
      finish(std::move(n), r);
    }
    return ex;
  }

  std::vector<Block> as, es;
  for (const Block& b : c.blocks) (b.q == Quant::A ? as : es).push_back(b);
  if (!es.empty()) {
    ex.owner = Owner::P1;
    ex.kind = StepKind::Modal;
    for (const Block& e : es) {
      Configuration n;
      n.blocks.push_back(Block{Quant::E, strip(e.f)});
      for (const Block& a : as) n.blocks.push_back(Block{Quant::A, strip(a.f)});
      PlayLetter r;
      r.kind = LetterKind::X1;
      r.q = Quant::E;
      r.block = e.f;
      finish(std::move(n), r);
    }
    return ex;
  }
  if (!as.empty()) {
    ex.owner = Owner::P0;
    ex.kind = StepKind::Modal;
    Configuration n;
    for (const Block& a : as) n.blocks.push_back(Block{Quant::A, strip(a.f)});
    PlayLetter r;
    r.kind = LetterKind::X0;
    r.q = Quant::A;
    finish(std::move(n), r);
    return ex;
  }
  ex.kind = StepKind::Terminal;
  return ex;
}

std::vector<Descendant> GameCore::block_descendants(const PlayLetter& r, const Block& b) const {
  std::vector<Descendant> out;
  switch (r.kind) {
    case LetterKind::Rule: {
      if (b.q != r.q || b.f != r.block) {
        out.push_back({b, false});
        break;
      }
      if (!b.f.test(r.principal)) throw std::invalid_argument("principal formula is not in its block");
      FormulaSet rest = b.f;
      rest.reset(r.principal);
      Application app = apply(b, r.principal, r.branch);
      for (const BlockPlan& s : app.plans) {
        Descendant d{plan_block(s, rest), s.spawning};
        bool dup = false;
        for (const Descendant& o : out) dup |= o.block == d.block && o.spawning == d.spawning;
        if (!dup) out.push_back(d);
      }
      break;
    }
    case LetterKind::Ett:
      if (!(b.q == Quant::E && b.f.empty())) out.push_back({b, false});
      break;
    case LetterKind::X0:
      if (b.q == Quant::A) out.push_back({Block{Quant::A, strip(b.f)}, false});
      break;
    case LetterKind::X1:
      if (b.q == Quant::A) out.push_back({Block{Quant::A, strip(b.f)}, false});
      else if (b.f == r.block) out.push_back({Block{Quant::E, strip(b.f)}, false});
      break;
  }
  return out;
}

FormulaSet GameCore::formula_descendants(const PlayLetter& r, const Block& b, Fid chi, const Block& b2) const {
  if (!b.f.test(chi)) throw std::invalid_argument("formula is not in the block");
  FormulaSet out;
  switch (r.kind) {
    case LetterKind::Ett:
      if (b2 == b) out.set(chi);
      return out;
    case LetterKind::X0:
    case LetterKind::X1: {
      for (const Descendant& d : block_descendants(r, b))
        if (d.block == b2) out.set(static_cast<std::size_t>(table_.at(chi).left));
      return out;
    }
    case LetterKind::Rule: break;
  }
  if (b.q != r.q || b.f != r.block) {
    if (b2 == b) out.set(chi);
    return out;
  }
  FormulaSet rest = b.f;
  rest.reset(r.principal);
  Application app = apply(b, r.principal, r.branch);
  for (const BlockPlan& s : app.plans) {
    if (plan_block(s, rest) != b2) continue;
    if (chi == r.principal) out |= s.from_principal;
    else if (s.keeps_rest) out.set(chi);
  }
  return out;
}

std::optional<Block> GameCore::con_e(const PlayLetter& r, const FormulaSet& pi) const {
  Block b{Quant::E, pi};
  for (const Descendant& d : block_descendants(r, b))
    if (!d.spawning && d.block.q == Quant::E) return d.block;
  return std::nullopt;
}

std::string GameCore::dump(const Block& b) const {
  std::string s = b.q == Quant::A ? "A(" : "E(";
  bool first = true;
  b.f.for_each([&](uint32_t i) {
    if (!first) s += ", ";
    first = false;
    s += table_.print(i);
  });
  return s + ")";
}

std::string GameCore::dump(const Configuration& c) const {
  std::string s;
  for (const Block& b : c.blocks) {
    if (!s.empty()) s += ", ";
    s += dump(b);
  }
  c.lits.for_each([&](uint32_t i) {
    if (!s.empty()) s += ", ";
    s += table_.print(i);
  });
  return s.empty() ? "tt" : s;
}

std::string GameCore::dump(const PlayLetter& r) const {
  switch (r.kind) {
    case LetterKind::Ett: return "(Ett)";
    case LetterKind::X0: return "(X0)";
    case LetterKind::X1: return "(X1, " + dump(Block{Quant::E, r.block}) + ")";
    case LetterKind::Rule: break;
  }
  return std::string("(") + (r.q == Quant::A ? "A" : "E") + ", " + dump(Block{r.q, r.block}) + ", " +
         table_.print(r.principal) + ", " + std::to_string(r.branch) + ")";
}

CtlCore::CtlCore(const FormulaTable& table) : table_(table) {
  if (3 * table.size() > kMaxCtlItems)
    throw std::length_error("formula too large for the CTL game encoding");
  for (Fid i = 0; i < table.subformula_count(); ++i) {
    const FormulaEntry& e = table.at(i);
    if ((e.op == Op::Exists || e.op == Op::Forall) && table.at(static_cast<Fid>(e.left)).op == Op::Until)
      untils_.push_back(i);
  }
  neg_of_ = negation_index(table);
}

uint32_t CtlCore::normalize(Fid f) const {
  const FormulaEntry& e = table_.at(f);
  if ((e.op == Op::Exists || e.op == Op::Forall) && table_.at(static_cast<Fid>(e.left)).op == Op::Next) {
    Fid inner = static_cast<Fid>(table_.at(static_cast<Fid>(e.left)).left);
    return item(inner, e.op == Op::Exists ? kEX : kAX);
  }
  return item(f, kPlain);
}

namespace {

void add_item(const FormulaTable& t, CtlSet& s, uint32_t it) {
  if (CtlCore::item_tag(it) == CtlCore::kPlain && t.at(CtlCore::item_formula(it)).op == Op::True) return;
  s.set(it);
}

}  // namespace

CtlConfiguration CtlCore::initial_configuration() const {
  CtlConfiguration c;
  add_item(table_, c.items, normalize(table_.root()));
  return c;
}

bool CtlCore::is_consistent(const CtlConfiguration& c) const {
  bool ok = true;
  c.items.for_each([&](uint32_t it) {
    if (item_tag(it) != kPlain) return;
    Fid f = item_formula(it);
    if (table_.at(f).op == Op::False) ok = false;
    int n = neg_of_[f];
    if (n >= 0 && c.items.test(item(static_cast<Fid>(n), kPlain))) ok = false;
  });
  return ok;
}

bool CtlCore::is_terminal(const CtlConfiguration& c) const {
  bool terminal = true;
  c.items.for_each([&](uint32_t it) {
    if (item_tag(it) != kPlain || !is_literal(table_.at(item_formula(it)).op)) terminal = false;
  });
  return terminal;
}

std::optional<uint32_t> CtlCore::select_principal(const CtlConfiguration& c) const {
  std::optional<uint32_t> best;
  uint32_t best_size = 0;
  c.items.for_each([&](uint32_t it) {
    if (item_tag(it) != kPlain) return;
    const FormulaEntry& e = table_.at(item_formula(it));
    if (is_literal(e.op)) return;
    if (!best || e.size > best_size) {
      best = it;
      best_size = e.size;
    }
  });
  return best;
}

Expansion<CtlConfiguration, CtlLetter> CtlCore::successors(const CtlConfiguration& c) const {
  Expansion<CtlConfiguration, CtlLetter> ex;
  if (!is_consistent(c)) return ex;
  auto finish = [&](CtlSet s, const CtlLetter& r) {
    CtlConfiguration n{s};
    bool losing = !is_consistent(n);
    ex.moves.push_back({r, n, losing});
  };

  std::optional<uint32_t> p = select_principal(c);
  if (p) {
    ex.owner = Owner::P0;
    ex.kind = StepKind::Rule;
    Fid f = item_formula(*p);
    const FormulaEntry& e = table_.at(f);
    CtlSet base = c.items;
    base.reset(*p);
    auto letter = [&](int br) {
      CtlLetter r;
      r.kind = CtlLetterKind::Rule;
      r.branch = static_cast<uint8_t>(br);
      r.item = static_cast<uint16_t>(*p);
      return r;
    };
    auto with = [&](std::initializer_list<uint32_t> its) {
      CtlSet s = base;
      for (uint32_t it : its) add_item(table_, s, it);
      return s;
    };
    Fid l = static_cast<Fid>(e.left), r = static_cast<Fid>(e.right);
    switch (e.op) {
      case Op::And: finish(with({normalize(l), normalize(r)}), letter(0)); break;
      case Op::Or:
        finish(with({normalize(l)}), letter(0));
        finish(with({normalize(r)}), letter(1));
        break;
      case Op::Exists:
      case Op::Forall: {
        const FormulaEntry& path = table_.at(l);
        uint32_t tag = e.op == Op::Exists ? kEX : kAX;
        Fid a = static_cast<Fid>(path.left), b = static_cast<Fid>(path.right);
        if (path.op == Op::Until) {
          finish(with({normalize(b)}), letter(0));
          finish(with({normalize(a), item(f, tag)}), letter(1));
        } else if (path.op == Op::Release) {
          finish(with({normalize(a), normalize(b)}), letter(0));
          finish(with({normalize(b), item(f, tag)}), letter(1));
        } else {
          throw std::invalid_argument("formula outside the CTL fragment: " + table_.print(f));
        }
        break;
      }
      default: throw std::invalid_argument("formula outside the CTL fragment: " + table_.print(f));
    }
    return ex;
  }

  std::vector<uint32_t> exs, axs;
  CtlSet carried;
  c.items.for_each([&](uint32_t it) {
    if (item_tag(it) == kEX) exs.push_back(it);
    if (item_tag(it) == kAX) {
      axs.push_back(it);
      carried.set(it);
    }
  });
  if (!exs.empty()) {
    ex.owner = Owner::P1;
    ex.kind = StepKind::Modal;
    for (uint32_t e : exs) {
      CtlSet s;
      add_item(table_, s, normalize(item_formula(e)));
      for (uint32_t a : axs) add_item(table_, s, normalize(item_formula(a)));
      CtlLetter r;
      r.kind = CtlLetterKind::X1;
      r.item = static_cast<uint16_t>(e);
      r.carried = carried;
      finish(s, r);
    }
    return ex;
  }
  if (!axs.empty()) {
    ex.owner = Owner::P0;
    ex.kind = StepKind::Modal;
    CtlSet s;
    for (uint32_t a : axs) add_item(table_, s, normalize(item_formula(a)));
    CtlLetter r;
    r.kind = CtlLetterKind::X0;
    r.carried = carried;
    finish(s, r);
    return ex;
  }
  ex.kind = StepKind::Terminal;
  return ex;
}

std::string CtlCore::dump_item(uint32_t it) const {
  std::string f = table_.print(item_formula(it));
  const FormulaEntry& e = table_.at(item_formula(it));
  bool wrap = is_binary(e.op) && !(e.op == Op::Until && table_.at(static_cast<Fid>(e.left)).op == Op::True) &&
              !(e.op == Op::Release && table_.at(static_cast<Fid>(e.left)).op == Op::False);
  if (wrap) f = "(" + f + ")";
  switch (item_tag(it)) {
    case kEX: return "EX" + f;
    case kAX: return "AX" + f;
    default: return table_.print(item_formula(it));
  }
}

std::string CtlCore::dump(const CtlConfiguration& c) const {
  std::string s;
  c.items.for_each([&](uint32_t it) {
    if (!s.empty()) s += ", ";
    s += dump_item(it);
  });
  return s.empty() ? "tt" : s;
}

std::string CtlCore::dump(const CtlLetter& r) const {
  switch (r.kind) {
    case CtlLetterKind::X0: return "(X0)";
    case CtlLetterKind::X1: return "(X1, " + dump_item(r.item) + ")";
    case CtlLetterKind::Rule: break;
  }
  return "(" + dump_item(r.item) + ", " + std::to_string(r.branch) + ")";
}

}  // namespace branchsat

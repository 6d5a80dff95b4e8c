#include "branchsat/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

namespace branchsat {

namespace {

FormulaPtr node(Op op, FormulaPtr l = nullptr, FormulaPtr r = nullptr, std::string name = {}) {
  return std::make_shared<const Formula>(Formula{op, std::move(name), std::move(l), std::move(r)});
}

}  // namespace

FormulaPtr mk_true() { return node(Op::True); }
FormulaPtr mk_false() { return node(Op::False); }
FormulaPtr mk_prop(const std::string& name) { return node(Op::Prop, nullptr, nullptr, name); }
FormulaPtr mk_negprop(const std::string& name) { return node(Op::NegProp, nullptr, nullptr, name); }
FormulaPtr mk_not(FormulaPtr f) { return node(Op::Not, std::move(f)); }
FormulaPtr mk_and(FormulaPtr l, FormulaPtr r) { return node(Op::And, std::move(l), std::move(r)); }
FormulaPtr mk_or(FormulaPtr l, FormulaPtr r) { return node(Op::Or, std::move(l), std::move(r)); }
FormulaPtr mk_next(FormulaPtr f) { return node(Op::Next, std::move(f)); }
FormulaPtr mk_until(FormulaPtr l, FormulaPtr r) { return node(Op::Until, std::move(l), std::move(r)); }
FormulaPtr mk_release(FormulaPtr l, FormulaPtr r) {
  return node(Op::Release, std::move(l), std::move(r));
}
FormulaPtr mk_exists(FormulaPtr f) { return node(Op::Exists, std::move(f)); }
FormulaPtr mk_forall(FormulaPtr f) { return node(Op::Forall, std::move(f)); }
FormulaPtr mk_implies(FormulaPtr l, FormulaPtr r) { return mk_or(mk_not(std::move(l)), std::move(r)); }

bool is_binary(Op op) {
  return op == Op::And || op == Op::Or || op == Op::Until || op == Op::Release;
}

bool is_literal(Op op) {
  return op == Op::True || op == Op::False || op == Op::Prop || op == Op::NegProp;
}

bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->op != b->op || a->name != b->name) return false;
  return structurally_equal(a->left, b->left) && structurally_equal(a->right, b->right);
}

ParseError::ParseError(const std::string& msg, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { Ident, Bang, Next, Fin, Glob, Ex, All, Until, Release, And, Or, Implies, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::string t, int c) { out.push_back({k, std::move(t), line, c}); };
  while (i < s.size()) {
    char c = s[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    int start = col;
    if (c >= 'a' && c <= 'z') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      push(Tok::Ident, s.substr(i, j - i), start);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      push(Tok::Implies, "->", start);
      i += 2;
      col += 2;
      continue;
    }
    Tok k;
    switch (c) {
      case '!': k = Tok::Bang; break;
      case 'X': k = Tok::Next; break;
      case 'F': k = Tok::Fin; break;
      case 'G': k = Tok::Glob; break;
      case 'E': k = Tok::Ex; break;
      case 'A': k = Tok::All; break;
      case 'U': k = Tok::Until; break;
      case 'R': k = Tok::Release; break;
      case '&': k = Tok::And; break;
      case '|': k = Tok::Or; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      default:
        if (std::isupper(static_cast<unsigned char>(c)))
          throw ParseError(std::string("unknown operator '") + c + "'", line, start);
        throw ParseError(std::string("unexpected character '") + c + "'", line, start);
    }
    push(k, std::string(1, c), start);
    ++i;
    ++col;
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  FormulaPtr run() {
    FormulaPtr f = implication();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    if (t.kind == Tok::End) throw ParseError(msg.empty() ? "unexpected end of input" : msg + " at end of input", t.line, t.column);
    throw ParseError(msg, t.line, t.column);
  }

  FormulaPtr implication() {
    FormulaPtr l = disjunction();
    if (peek().kind == Tok::Implies) {
      take();
      return mk_implies(l, implication());
    }
    return l;
  }

  FormulaPtr disjunction() {
    FormulaPtr l = conjunction();
    while (peek().kind == Tok::Or) {
      take();
      l = mk_or(l, conjunction());
    }
    return l;
  }

  FormulaPtr conjunction() {
    FormulaPtr l = temporal();
    while (peek().kind == Tok::And) {
      take();
      l = mk_and(l, temporal());
    }
    return l;
  }

  FormulaPtr temporal() {
    FormulaPtr l = unary();
    if (peek().kind == Tok::Until) {
      take();
      return mk_until(l, temporal());
    }
    if (peek().kind == Tok::Release) {
      take();
      return mk_release(l, temporal());
    }
    return l;
  }

  FormulaPtr unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Bang: {
        take();
        FormulaPtr f = unary();
        if (f->op == Op::Prop) return mk_negprop(f->name);
        return mk_not(f);
      }
      case Tok::Next: take(); return mk_next(unary());
      case Tok::Fin: take(); return mk_until(mk_true(), unary());
      case Tok::Glob: take(); return mk_release(mk_false(), unary());
      case Tok::Ex: take(); return mk_exists(unary());
      case Tok::All: take(); return mk_forall(unary());
      case Tok::LParen: {
        take();
        FormulaPtr f = implication();
        if (peek().kind != Tok::RParen) fail("expected ')'");
        take();
        return f;
      }
      case Tok::Ident: {
        Token id = take();
        if (id.text == "tt") return mk_true();
        if (id.text == "ff") return mk_false();
        return mk_prop(id.text);
      }
      case Tok::End: fail("");
      default: fail("unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void print_rec(const FormulaPtr& f, std::string& out);

void print_operand(const FormulaPtr& f, std::string& out) {
  bool sugared = (f->op == Op::Until && f->left->op == Op::True) ||
                 (f->op == Op::Release && f->left->op == Op::False);
  if (is_binary(f->op) && !sugared) {
    out += '(';
    print_rec(f, out);
    out += ')';
  } else {
    print_rec(f, out);
  }
}

void print_rec(const FormulaPtr& f, std::string& out) {
  switch (f->op) {
    case Op::True: out += "tt"; return;
    case Op::False: out += "ff"; return;
    case Op::Prop: out += f->name; return;
    case Op::NegProp: out += "!" + f->name; return;
    case Op::Not: out += '!'; print_operand(f->left, out); return;
    case Op::Next: out += 'X'; print_operand(f->left, out); return;
    case Op::Exists: out += 'E'; print_operand(f->left, out); return;
    case Op::Forall: out += 'A'; print_operand(f->left, out); return;
    case Op::Until:
      if (f->left->op == Op::True) {
        out += 'F';
        print_operand(f->right, out);
        return;
      }
      print_operand(f->left, out);
      out += " U ";
      print_operand(f->right, out);
      return;
    case Op::Release:
      if (f->left->op == Op::False) {
        out += 'G';
        print_operand(f->right, out);
        return;
      }
      print_operand(f->left, out);
      out += " R ";
      print_operand(f->right, out);
      return;
    case Op::And:
      print_operand(f->left, out);
      out += " & ";
      print_operand(f->right, out);
      return;
    case Op::Or:
      print_operand(f->left, out);
      out += " | ";
      print_operand(f->right, out);
      return;
  }
}

FormulaPtr nnf(const FormulaPtr& f, bool neg) {
  switch (f->op) {
    case Op::True: return neg ? mk_false() : f;
    case Op::False: return neg ? mk_true() : f;
    case Op::Prop: return neg ? mk_negprop(f->name) : f;
    case Op::NegProp: return neg ? mk_prop(f->name) : f;
    case Op::Not: return nnf(f->left, !neg);
    case Op::And:
      return neg ? mk_or(nnf(f->left, true), nnf(f->right, true))
                 : mk_and(nnf(f->left, false), nnf(f->right, false));
    case Op::Or:
      return neg ? mk_and(nnf(f->left, true), nnf(f->right, true))
                 : mk_or(nnf(f->left, false), nnf(f->right, false));
    case Op::Next: return mk_next(nnf(f->left, neg));
    case Op::Until:
      return neg ? mk_release(nnf(f->left, true), nnf(f->right, true))
                 : mk_until(nnf(f->left, false), nnf(f->right, false));
    case Op::Release:
      return neg ? mk_until(nnf(f->left, true), nnf(f->right, true))
                 : mk_release(nnf(f->left, false), nnf(f->right, false));
    case Op::Exists: return neg ? mk_forall(nnf(f->left, true)) : mk_exists(nnf(f->left, false));
    case Op::Forall: return neg ? mk_exists(nnf(f->left, true)) : mk_forall(nnf(f->left, false));
  }
  return f;
}

void collect_subformulas(const FormulaPtr& f, std::set<std::string>& seen) {
  if (!seen.insert(print(f)).second) return;
  if (f->left) collect_subformulas(f->left, seen);
  if (f->right) collect_subformulas(f->right, seen);
}

bool ctl_state(const FormulaPtr& f) {
  switch (f->op) {
    case Op::True:
    case Op::False:
    case Op::Prop:
    case Op::NegProp: return true;
    case Op::And:
    case Op::Or: return ctl_state(f->left) && ctl_state(f->right);
    case Op::Exists:
    case Op::Forall: {
      const FormulaPtr& p = f->left;
      if (p->op == Op::Next) return ctl_state(p->left);
      if (p->op == Op::Until || p->op == Op::Release) return ctl_state(p->left) && ctl_state(p->right);
      return false;
    }
    default: return false;
  }
}

bool ctlplus_state(const FormulaPtr& f);

bool ctlplus_path(const FormulaPtr& f) {
  if (ctlplus_state(f)) return true;
  switch (f->op) {
    case Op::And:
    case Op::Or: return ctlplus_path(f->left) && ctlplus_path(f->right);
    case Op::Next: {
      const FormulaPtr& g = f->left;
      if (ctlplus_state(g)) return true;
      if (g->op == Op::Until || g->op == Op::Release) return ctlplus_state(g->left) && ctlplus_state(g->right);
      return false;
    }
    case Op::Until:
    case Op::Release: return ctlplus_state(f->left) && ctlplus_state(f->right);
    default: return false;
  }
}

bool ctlplus_state(const FormulaPtr& f) {
  switch (f->op) {
    case Op::True:
    case Op::False:
    case Op::Prop:
    case Op::NegProp: return true;
    case Op::And:
    case Op::Or: return ctlplus_state(f->left) && ctlplus_state(f->right);
    case Op::Exists:
    case Op::Forall: return ctlplus_path(f->left);
    default: return false;
  }
}

}  // namespace

FormulaPtr parse(const std::string& text) { return Parser(lex(text)).run(); }

std::string print(const FormulaPtr& f) {
  std::string out;
  print_rec(f, out);
  return out;
}

FormulaPtr to_nnf(const FormulaPtr& f) { return nnf(f, false); }

bool is_nnf(const FormulaPtr& f) {
  if (!f) return true;
  if (f->op == Op::Not) return false;
  return is_nnf(f->left) && is_nnf(f->right);
}

std::size_t formula_size(const FormulaPtr& f) {
  std::set<std::string> seen;
  collect_subformulas(f, seen);
  return seen.size();
}

const char* fragment_name(Fragment f) {
  switch (f) {
    case Fragment::Ctl: return "ctl";
    case Fragment::CtlPlus: return "ctlplus";
    case Fragment::CtlStar: return "ctlstar";
  }
  return "?";
}

Fragment classify_fragment(const FormulaPtr& f) {
  if (ctl_state(f)) return Fragment::Ctl;
  if (ctlplus_state(f)) return Fragment::CtlPlus;
  return Fragment::CtlStar;
}

Fid FormulaTable::intern(const FormulaPtr& f, bool subformula) {
  std::string key = branchsat::print(f);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  FormulaEntry e;
  e.op = f->op;
  e.name = f->name;
  e.subformula = subformula;
  if (f->left) e.left = static_cast<int>(intern(f->left, subformula));
  if (f->right) e.right = static_cast<int>(intern(f->right, subformula));
  Fid id = static_cast<Fid>(entries_.size());
  entries_.push_back(e);
  formulas_.push_back(f);
  printed_.push_back(key);
  index_.emplace(key, id);
  return id;
}

FormulaTable FormulaTable::build(const FormulaPtr& f) {
  if (!is_nnf(f)) throw std::invalid_argument("closure requires a formula in negation normal form");
  FormulaTable t;
  t.root_ = t.intern(f, true);
  t.subformula_count_ = t.entries_.size();

  // size = number of distinct subformulas, via child subformula sets
  std::vector<std::vector<Fid>> subs(t.subformula_count_);
  for (Fid id = 0; id < t.subformula_count_; ++id) {
    std::vector<Fid> s{id};
    const auto& e = t.entries_[id];
    if (e.left >= 0) s.insert(s.end(), subs[e.left].begin(), subs[e.left].end());
    if (e.right >= 0) s.insert(s.end(), subs[e.right].begin(), subs[e.right].end());
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    t.entries_[id].size = static_cast<uint32_t>(s.size());
    subs[id] = std::move(s);
  }

  for (Fid id = 0; id < t.subformula_count_; ++id) {
    Op op = t.entries_[id].op;
    if (op != Op::Until && op != Op::Release) continue;
    Fid x = t.intern(mk_next(t.formulas_[id]), false);
    t.entries_[id].next_form = static_cast<int>(x);
    if (x >= t.subformula_count_) t.entries_[x].size = t.entries_[id].size + 1;
  }

  t.until_pos_.assign(t.entries_.size(), -1);
  for (Fid id = 0; id < t.entries_.size(); ++id) {
    if (t.entries_[id].op == Op::Until) {
      t.until_pos_[id] = static_cast<int>(t.untils_.size());
      t.untils_.push_back(id);
    }
  }

  std::set<std::string> props;
  for (const auto& e : t.entries_)
    if (e.op == Op::Prop || e.op == Op::NegProp) props.insert(e.name);
  t.props_.assign(props.begin(), props.end());
  t.fragment_ = classify_fragment(f);
  return t;
}

std::optional<Fid> FormulaTable::find(const FormulaPtr& f) const { return find(branchsat::print(f)); }

std::optional<Fid> FormulaTable::find(const std::string& printed) const {
  auto it = index_.find(printed);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int FormulaTable::until_index(Fid id) const { return until_pos_.at(id); }

bool FormulaTable::in_fl_r(Fid id) const {
  const auto& e = entries_.at(id);
  if (e.op == Op::Release) return true;
  return e.op == Op::Next && entries_.at(e.left).op == Op::Release;
}

std::optional<Fid> FormulaTable::next_of(Fid id) const {
  const auto& e = entries_.at(id);
  if (e.next_form >= 0) return static_cast<Fid>(e.next_form);
  return std::nullopt;
}

}  // namespace branchsat

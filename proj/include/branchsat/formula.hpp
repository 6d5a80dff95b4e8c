#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace branchsat {

enum class Op : uint8_t {
  True,
  False,
  Prop,
  NegProp,
  Not,
  And,
  Or,
  Next,
  Until,
  Release,
  Exists,
  Forall,
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Syntax tree node. `Not` only appears before normalization.
struct Formula {
  Op op;
  std::string name;
  FormulaPtr left;
  FormulaPtr right;
};

FormulaPtr mk_true();
FormulaPtr mk_false();
FormulaPtr mk_prop(const std::string& name);
FormulaPtr mk_negprop(const std::string& name);
FormulaPtr mk_not(FormulaPtr f);
FormulaPtr mk_and(FormulaPtr l, FormulaPtr r);
FormulaPtr mk_or(FormulaPtr l, FormulaPtr r);
FormulaPtr mk_next(FormulaPtr f);
FormulaPtr mk_until(FormulaPtr l, FormulaPtr r);
FormulaPtr mk_release(FormulaPtr l, FormulaPtr r);
FormulaPtr mk_exists(FormulaPtr f);
FormulaPtr mk_forall(FormulaPtr f);
FormulaPtr mk_implies(FormulaPtr l, FormulaPtr r);

bool is_binary(Op op);
bool is_literal(Op op);
bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

FormulaPtr parse(const std::string& text);

// Compact rendering; F and G are re-sugared. print(parse(print(f))) == print(f).
std::string print(const FormulaPtr& f);

FormulaPtr to_nnf(const FormulaPtr& f);
bool is_nnf(const FormulaPtr& f);

// Number of distinct subformulas.
std::size_t formula_size(const FormulaPtr& f);

enum class Fragment : uint8_t { Ctl, CtlPlus, CtlStar };

const char* fragment_name(Fragment f);
Fragment classify_fragment(const FormulaPtr& nnf);

using Fid = uint32_t;

struct FormulaEntry {
  Op op;
  std::string name;
  int left = -1;
  int right = -1;
  uint32_t size = 0;  // distinct subformulas
  int next_form = -1;  // index of X(this) for U/R entries
  bool subformula = true;  // false for appended X-forms
};

// Fischer-Ladner closure with a fixed index order: subformulas in post-order,
// then X(φUψ)/X(φRψ) for every U/R member not already present.
class FormulaTable {
 public:
  static FormulaTable build(const FormulaPtr& nnf);

  std::size_t size() const { return entries_.size(); }
  const FormulaEntry& at(Fid id) const { return entries_.at(id); }
  Fid root() const { return root_; }
  std::optional<Fid> find(const FormulaPtr& f) const;
  std::optional<Fid> find(const std::string& printed) const;
  FormulaPtr formula(Fid id) const { return formulas_.at(id); }
  std::string print(Fid id) const { return printed_.at(id); }

  const std::vector<Fid>& untils() const { return untils_; }
  int until_index(Fid id) const;
  bool in_fl_r(Fid id) const;
  bool is_next(Fid id) const { return at(id).op == Op::Next; }
  std::size_t subformula_count() const { return subformula_count_; }
  Fragment fragment() const { return fragment_; }
  const std::vector<std::string>& propositions() const { return props_; }
  // Index of X(f) when present in the table.
  std::optional<Fid> next_of(Fid id) const;

 private:
  Fid intern(const FormulaPtr& f, bool subformula);

  std::vector<FormulaEntry> entries_;
  std::vector<FormulaPtr> formulas_;
  std::vector<std::string> printed_;
  std::unordered_map<std::string, Fid> index_;
  std::vector<Fid> untils_;
  std::vector<int> until_pos_;
  Fid root_ = 0;
  std::size_t subformula_count_ = 0;
  Fragment fragment_ = Fragment::CtlStar;
  std::vector<std::string> props_;
};

}  // namespace branchsat

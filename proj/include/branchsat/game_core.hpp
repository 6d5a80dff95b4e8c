#pragma once

#include <deque>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "branchsat/bits.hpp"
#include "branchsat/formula.hpp"

namespace branchsat {

using FormulaSet = Bits<4>;
constexpr std::size_t kMaxClosure = FormulaSet::kCapacity;

enum class Quant : uint8_t { A = 0, E = 1 };

struct Block {
  Quant q = Quant::E;
  FormulaSet f;

  friend bool operator==(const Block& a, const Block& b) { return a.q == b.q && a.f == b.f; }
  friend bool operator!=(const Block& a, const Block& b) { return !(a == b); }
  friend bool operator<(const Block& a, const Block& b) {
    if (a.q != b.q) return a.q < b.q;
    return a.f < b.f;
  }
  std::size_t hash() const { return hash_combine(f.hash(), static_cast<std::size_t>(q)); }
};

struct Configuration {
  std::vector<Block> blocks;  // sorted, deduplicated
  FormulaSet lits;

  void canonicalize();
  bool has_block(const Block& b) const;
  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.lits == b.lits && a.blocks == b.blocks;
  }
  std::size_t hash() const;
};

enum class LetterKind : uint8_t { Rule, Ett, X0, X1 };

// One rule application. For Rule letters `block` is the principal block as it
// occurs in the source configuration; for X1 it is the chosen E-block.
struct PlayLetter {
  LetterKind kind = LetterKind::Rule;
  Quant q = Quant::E;
  uint8_t branch = 0;
  uint16_t principal = 0;
  FormulaSet block;

  friend bool operator==(const PlayLetter& a, const PlayLetter& b) {
    return a.kind == b.kind && a.q == b.q && a.branch == b.branch && a.principal == b.principal &&
           a.block == b.block;
  }
  std::size_t hash() const;
};

enum class RuleName : uint8_t {
  AAnd, AOr, ALit, AU, AR, AA, AE,
  EOr, EAnd, ELit, EU, ER, EE, EA,
  Ett, X0, X1,
};

const char* rule_name(RuleName r);
bool is_choice_rule(RuleName r);

struct Principal {
  Block block;
  Fid formula = 0;
  RuleName rule = RuleName::Ett;
};

enum class Owner : uint8_t { P0 = 0, P1 = 1 };

enum class StepKind : uint8_t { Rule, Modal, Terminal };

template <class Config, class Letter>
struct Move {
  Letter letter;
  Config target;
  bool losing = false;  // inconsistent or stuck successor
};

template <class Config, class Letter>
struct Expansion {
  Owner owner = Owner::P0;
  StepKind kind = StepKind::Rule;
  std::vector<Move<Config, Letter>> moves;
};

struct Descendant {
  Block block;
  bool spawning = false;
};

class GameCore {
 public:
  explicit GameCore(const FormulaTable& table);

  const FormulaTable& table() const { return table_; }

  Configuration initial_configuration() const;
  bool is_consistent(const Configuration& c) const;
  // A configuration holding an empty A-block denotes ff and cannot be won.
  bool is_stuck(const Configuration& c) const;
  bool is_terminal(const Configuration& c) const { return c.blocks.empty(); }
  std::optional<Principal> select_principal(const Configuration& c) const;
  Expansion<Configuration, PlayLetter> successors(const Configuration& c) const;

  std::vector<Descendant> block_descendants(const PlayLetter& r, const Block& b) const;
  FormulaSet formula_descendants(const PlayLetter& r, const Block& b, Fid chi, const Block& b2) const;
  std::optional<Block> con_e(const PlayLetter& r, const FormulaSet& pi) const;

  FormulaSet strip(const FormulaSet& s) const;
  bool all_next(const FormulaSet& s) const;
  std::string dump(const Configuration& c) const;
  std::string dump(const Block& b) const;
  std::string dump(const PlayLetter& r) const;

 private:
  struct BlockPlan {
    Quant q;
    FormulaSet from_principal;
    bool keeps_rest;
    bool spawning;
  };
  struct Application {
    std::vector<BlockPlan> plans;
    int literal = -1;
  };
  Application apply(const Block& b, Fid chi, int branch) const;
  RuleName rule_for(Quant q, Fid chi) const;
  Block plan_block(const BlockPlan& s, const FormulaSet& rest) const;

  const FormulaTable& table_;
  FormulaSet next_mask_;
  FormulaSet lit_mask_;
  std::vector<int> neg_of_;
};

// CTL configurations: items are (subformula, tag) with tag 0 plain, 1 EX, 2 AX.
using CtlSet = Bits<8>;
constexpr std::size_t kMaxCtlItems = CtlSet::kCapacity;

struct CtlConfiguration {
  CtlSet items;
  friend bool operator==(const CtlConfiguration& a, const CtlConfiguration& b) { return a.items == b.items; }
  std::size_t hash() const { return items.hash(); }
};

enum class CtlLetterKind : uint8_t { Rule, X0, X1 };

struct CtlLetter {
  CtlLetterKind kind = CtlLetterKind::Rule;
  uint8_t branch = 0;
  uint16_t item = 0;  // principal item, or the chosen EX item for X1
  CtlSet carried;     // AX items of the configuration, for X0 and X1

  friend bool operator==(const CtlLetter& a, const CtlLetter& b) {
    return a.kind == b.kind && a.branch == b.branch && a.item == b.item && a.carried == b.carried;
  }
  std::size_t hash() const {
    return ((static_cast<std::size_t>(kind) << 24) ^ (static_cast<std::size_t>(branch) << 20) ^ item) * 31 +
           carried.hash();
  }
};

class CtlCore {
 public:
  static constexpr uint32_t kPlain = 0, kEX = 1, kAX = 2;

  explicit CtlCore(const FormulaTable& table);

  const FormulaTable& table() const { return table_; }
  static uint32_t item(Fid f, uint32_t tag) { return 3 * f + tag; }
  static Fid item_formula(uint32_t it) { return it / 3; }
  static uint32_t item_tag(uint32_t it) { return it % 3; }
  // Adds a subformula, folding EXφ / AXφ into tagged items.
  uint32_t normalize(Fid f) const;

  CtlConfiguration initial_configuration() const;
  bool is_consistent(const CtlConfiguration& c) const;
  std::optional<uint32_t> select_principal(const CtlConfiguration& c) const;
  Expansion<CtlConfiguration, CtlLetter> successors(const CtlConfiguration& c) const;
  bool is_terminal(const CtlConfiguration& c) const;
  // Q(φUψ) subformulas in closure order.
  const std::vector<Fid>& untils() const { return untils_; }
  std::string dump_item(uint32_t it) const;
  std::string dump(const CtlConfiguration& c) const;
  std::string dump(const CtlLetter& r) const;

 private:
  const FormulaTable& table_;
  std::vector<Fid> untils_;
  std::vector<int> neg_of_;
};

template <class T>
struct MemberHash {
  std::size_t operator()(const T& x) const { return x.hash(); }
};

// Insert-or-get interner with stable ids; safe for concurrent use.
template <class T>
class Interner {
 public:
  uint32_t intern(const T& x) {
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = ids_.try_emplace(x, static_cast<uint32_t>(items_.size()));
    if (inserted) items_.push_back(x);
    return it->second;
  }
  std::optional<uint32_t> lookup(const T& x) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = ids_.find(x);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }
  const T& get(uint32_t id) const {
    std::lock_guard<std::mutex> lock(mu_);
    return items_[id];
  }
  std::size_t size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return items_.size();
  }

 private:
  mutable std::mutex mu_;
  std::unordered_map<T, uint32_t, MemberHash<T>> ids_;
  std::deque<T> items_;
};

}  // namespace branchsat

template <>
struct std::hash<branchsat::PlayLetter> {
  std::size_t operator()(const branchsat::PlayLetter& r) const { return r.hash(); }
};
template <>
struct std::hash<branchsat::CtlLetter> {
  std::size_t operator()(const branchsat::CtlLetter& r) const { return r.hash(); }
};

#pragma once

#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "branchsat/formula.hpp"

namespace testsupport {

inline uint64_t seed() {
  if (const char* s = std::getenv("BRANCHSAT_SEED")) return std::strtoull(s, nullptr, 10);
  return 20261016;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(seed());
  return gen;
}

inline int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

using branchsat::FormulaPtr;

inline FormulaPtr random_literal(int props) {
  std::string name(1, static_cast<char>('p' + pick(0, props - 1)));
  int k = pick(0, 9);
  if (k == 0) return branchsat::mk_true();
  if (k == 1) return branchsat::mk_false();
  return k < 6 ? branchsat::mk_prop(name) : branchsat::mk_negprop(name);
}

// State formula of the CTL fragment with roughly `budget` nodes.
inline FormulaPtr random_ctl(int budget, int props = 2) {
  using namespace branchsat;
  if (budget <= 1) return random_literal(props);
  int k = pick(0, 7);
  auto q = [](FormulaPtr f) { return pick(0, 1) ? mk_exists(f) : mk_forall(f); };
  switch (k) {
    case 0: return mk_and(random_ctl(budget / 2, props), random_ctl(budget - budget / 2 - 1, props));
    case 1: return mk_or(random_ctl(budget / 2, props), random_ctl(budget - budget / 2 - 1, props));
    case 2: case 3: return q(mk_next(random_ctl(budget - 2, props)));
    case 4: case 5:
      return q(mk_until(random_ctl(budget / 2 - 1, props), random_ctl(budget - budget / 2 - 1, props)));
    default:
      return q(mk_release(random_ctl(budget / 2 - 1, props), random_ctl(budget - budget / 2 - 1, props)));
  }
}

inline FormulaPtr random_path_plus(int budget, int props);

// State formula of the CTL+ fragment.
inline FormulaPtr random_ctlplus(int budget, int props = 2) {
  using namespace branchsat;
  if (budget <= 1) return random_literal(props);
  int k = pick(0, 3);
  if (k == 0) return mk_and(random_ctlplus(budget / 2, props), random_ctlplus(budget - budget / 2 - 1, props));
  if (k == 1) return mk_or(random_ctlplus(budget / 2, props), random_ctlplus(budget - budget / 2 - 1, props));
  auto p = random_path_plus(budget - 1, props);
  return pick(0, 1) ? mk_exists(p) : mk_forall(p);
}

inline FormulaPtr random_path_plus(int budget, int props) {
  using namespace branchsat;
  if (budget <= 2) return mk_next(random_ctlplus(budget - 1, props));
  int k = pick(0, 4);
  if (k == 0) return mk_and(random_path_plus(budget / 2, props), random_path_plus(budget - budget / 2 - 1, props));
  if (k == 1) return mk_or(random_path_plus(budget / 2, props), random_path_plus(budget - budget / 2 - 1, props));
  if (k == 2) return mk_next(random_ctlplus(budget - 1, props));
  auto l = random_ctlplus(budget / 2 - 1, props);
  auto r = random_ctlplus(budget - budget / 2 - 1, props);
  return k == 3 ? mk_until(l, r) : mk_release(l, r);
}

inline FormulaPtr random_path_star(int budget, int props);

inline FormulaPtr random_ctlstar(int budget, int props = 2) {
  using namespace branchsat;
  if (budget <= 1) return random_literal(props);
  int k = pick(0, 3);
  if (k == 0) return mk_and(random_ctlstar(budget / 2, props), random_ctlstar(budget - budget / 2 - 1, props));
  if (k == 1) return mk_or(random_ctlstar(budget / 2, props), random_ctlstar(budget - budget / 2 - 1, props));
  auto p = random_path_star(budget - 1, props);
  return pick(0, 1) ? mk_exists(p) : mk_forall(p);
}

inline FormulaPtr random_path_star(int budget, int props) {
  using namespace branchsat;
  if (budget <= 1) return random_literal(props);
  int k = pick(0, 6);
  switch (k) {
    case 0: return mk_and(random_path_star(budget / 2, props), random_path_star(budget - budget / 2 - 1, props));
    case 1: return mk_or(random_path_star(budget / 2, props), random_path_star(budget - budget / 2 - 1, props));
    case 2: return mk_next(random_path_star(budget - 1, props));
    case 3: return mk_until(random_path_star(budget / 2, props), random_path_star(budget - budget / 2 - 1, props));
    case 4: return mk_release(random_path_star(budget / 2, props), random_path_star(budget - budget / 2 - 1, props));
    default: return random_ctlstar(budget, props);
  }
}

}  // namespace testsupport

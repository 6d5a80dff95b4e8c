#include <cmath>

#include "automata_support.hpp"
#include "branchsat/omega.hpp"
#include "doctest.h"

using namespace branchsat;
using namespace testsupport;

namespace {

constexpr int kInstances = 1000;
constexpr int kLassos = 12;


int alphabet() { return pick(1, 3); }

}  // namespace

TEST_CASE("explicit automata reject letters outside the alphabet") {
  auto a = std::make_shared<ExplicitAutomaton>(AccKind::DBA, 1, 1);
  a->add_edge(0, 0, 0);
  a->set_priority(0, 2);
  CHECK(lasso_accepts<int>(*a, {{}, {0}}));
  CHECK_THROWS_AS(lasso_accepts<int>(*a, {{}, {1}}), std::out_of_range);
}

TEST_CASE("complement examples") {
  auto a = std::make_shared<ExplicitAutomaton>(AccKind::DcoBA, 1, 2);
  a->add_edge(0, 0, 0);
  a->add_edge(0, 1, 0);
  a->set_priority(0, 0);
  auto c = complement_dcoba<int>(a);
  CHECK(c->kind() == AccKind::DBA);
  for (int i = 0; i < 50; ++i) {
    auto w = random_lasso(2);
    CHECK(lasso_accepts(*a, w));
    CHECK_FALSE(lasso_accepts(*c, w));
  }
  auto d = std::make_shared<ExplicitAutomaton>(AccKind::DPA, 1, 1);
  d->add_edge(0, 0, 0);
  d->set_priority(0, 0);
  auto cd = complement_dpa<int>(d);
  CHECK(cd->priority(cd->initial()) == 1);
  CHECK_FALSE(lasso_accepts<int>(*cd, {{}, {0}}));
}

TEST_CASE("complements flip lasso membership") {
  for (int i = 0; i < kInstances; ++i) {
    int k = alphabet();
    auto a = random_automaton(AccKind::DcoBA, pick(1, 5), k);
    auto ca = complement_dcoba<int>(a);
    auto d = random_automaton(AccKind::DPA, pick(1, 5), k);
    auto cd = complement_dpa<int>(d);
    for (int j = 0; j < kLassos; ++j) {
      auto w = random_lasso(k);
      CHECK(lasso_accepts(*ca, w) == !reference_accepts(*a, w));
      CHECK(lasso_accepts(*cd, w) == !reference_accepts(*d, w));
    }
  }
}

TEST_CASE("double DPA complement keeps structure and parity") {
  for (int i = 0; i < 200; ++i) {
    int k = alphabet();
    auto d = random_automaton(AccKind::DPA, pick(1, 5), k);
    auto cc = complement_dpa<int>(complement_dpa<int>(d));
    auto reach = explore<int>(*d, [&] {
      std::vector<int> s;
      for (int x = 0; x < k; ++x) s.push_back(x);
      return s;
    }());
    for (State q : reach) {
      State mapped = q + 2;  // one sink slot per complement
      CHECK(cc->priority(mapped) % 2 == d->priority(q) % 2);
      for (int x = 0; x < k; ++x) {
        auto n1 = d->step(q, x);
        auto n2 = cc->step(mapped, x);
        REQUIRE(n2.has_value());
        if (n1) CHECK(*n2 == *n1 + 2);
      }
    }
  }
}

TEST_CASE("Miyano-Hayashi complement") {
  auto one = std::make_shared<ExplicitAutomaton>(AccKind::NcoBA, 1, 1);
  one->add_edge(0, 0, 0);
  one->set_priority(0, 0);
  CHECK_FALSE(lasso_accepts<int>(*mh_complement_ncoba<int>(one), {{}, {0}}));
  auto none = std::make_shared<ExplicitAutomaton>(AccKind::NcoBA, 2, 2);
  none->add_edge(0, 0, 1);
  none->add_edge(1, 1, 0);
  auto cn = mh_complement_ncoba<int>(none);
  for (int i = 0; i < 30; ++i) CHECK(lasso_accepts(*cn, random_lasso(2)));

  for (int i = 0; i < kInstances; ++i) {
    int k = alphabet();
    int n = pick(1, 5);
    auto a = random_automaton(AccKind::NcoBA, n, k);
    auto c = mh_complement_ncoba<int>(a);
    CHECK(c->kind() == AccKind::DBA);
    for (int j = 0; j < kLassos; ++j) {
      auto w = random_lasso(k);
      CHECK(lasso_accepts(*c, w) == !reference_accepts(*a, w));
    }
    std::vector<int> sigma;
    for (int x = 0; x < k; ++x) sigma.push_back(x);
    CHECK(explore<int>(*c, sigma).size() <= static_cast<std::size_t>(std::pow(3, n)));
  }
}

TEST_CASE("determinization") {
  // finitely many b over {a=0, b=1}
  auto fin = std::make_shared<ExplicitAutomaton>(AccKind::NBA, 2, 2);
  fin->add_edge(0, 0, 0);
  fin->add_edge(0, 1, 0);
  fin->add_edge(0, 0, 1);
  fin->add_edge(1, 0, 1);
  fin->set_priority(0, 1);
  fin->set_priority(1, 2);
  auto d = determinize_nba<int>(fin);
  CHECK_FALSE(lasso_accepts<int>(*d, {{}, {0, 1}}));
  CHECK(lasso_accepts<int>(*d, {{}, {0}}));
  CHECK(lasso_accepts<int>(*d, {{1, 1, 0}, {0}}));

  int index_violations = 0;
  for (int i = 0; i < kInstances; ++i) {
    int k = pick(1, 2);
    int n = pick(1, 5);
    auto a = random_automaton(AccKind::NBA, n, k);
    auto dp = determinize_nba<int>(a);
    for (int j = 0; j < kLassos; ++j) {
      auto w = random_lasso(k);
      CHECK(lasso_accepts(*dp, w) == reference_accepts(*a, w));
    }
    if (n <= 4) {
      std::vector<int> sigma;
      for (int x = 0; x < k; ++x) sigma.push_back(x);
      auto reach = explore<int>(*dp, sigma);
      if (static_cast<double>(reach.size()) > std::pow(n, 2 * n + 2)) MESSAGE("state bound n^(2n+2) exceeded for n = " << n);
      if (priority_index<int>(*dp, reach) > static_cast<std::size_t>(std::max(1, 2 * n - 1))) ++index_violations;
    }
  }
  CHECK(index_violations == 0);
}

TEST_CASE("determinizing a deterministic automaton preserves the language") {
  for (int i = 0; i < 100; ++i) {
    int k = alphabet();
    auto a = random_automaton(AccKind::DBA, pick(1, 5), k);
    auto as_nba = std::make_shared<ExplicitAutomaton>(AccKind::NBA, a->states(), k);
    for (int q = 0; q < a->states(); ++q) {
      as_nba->set_priority(static_cast<State>(q), a->priority(static_cast<State>(q)));
      for (int x = 0; x < k; ++x) {
        std::vector<State> out;
        a->successors(static_cast<State>(q), x, out);
        for (State s : out) as_nba->add_edge(static_cast<State>(q), x, s);
      }
    }
    auto d = determinize_nba<int>(as_nba);
    for (int j = 0; j < 100; ++j) {
      auto w = random_lasso(k);
      CHECK(lasso_accepts(*d, w) == lasso_accepts(*a, w));
    }
  }
}

TEST_CASE("DBA x DPA product") {
  for (int i = 0; i < kInstances; ++i) {
    int k = alphabet();
    auto a = random_automaton(AccKind::DBA, pick(1, 5), k);
    auto b = random_automaton(AccKind::DPA, pick(1, 5), k);
    auto p = intersect_dba_dpa<int>(a, b);
    for (int j = 0; j < kLassos; ++j) {
      auto w = random_lasso(k);
      CHECK(lasso_accepts(*p, w) == (reference_accepts(*a, w) && reference_accepts(*b, w)));
    }
    std::vector<int> sigma;
    for (int x = 0; x < k; ++x) sigma.push_back(x);
    auto rb = explore<int>(*b, sigma);
    auto rp = explore<int>(*p, sigma);
    CHECK(priority_index<int>(*p, rp) <= priority_index<int>(*b, rb) + 1);
  }
  // neutral elements
  auto all_dpa = std::make_shared<ExplicitAutomaton>(AccKind::DPA, 1, 2);
  all_dpa->add_edge(0, 0, 0);
  all_dpa->add_edge(0, 1, 0);
  all_dpa->set_priority(0, 0);
  auto a = random_automaton(AccKind::DBA, 3, 2);
  auto p = intersect_dba_dpa<int>(a, all_dpa);
  for (int j = 0; j < 100; ++j) {
    auto w = random_lasso(2);
    CHECK(lasso_accepts(*p, w) == lasso_accepts(*a, w));
  }
}

TEST_CASE("DBA x DcoBA product") {
  for (int i = 0; i < kInstances; ++i) {
    int k = alphabet();
    auto a = random_automaton(AccKind::DBA, pick(1, 5), k);
    auto b = random_automaton(AccKind::DcoBA, pick(1, 5), k);
    auto p = intersect_dba_dcoba<int>(a, b);
    CHECK(p->kind() == AccKind::NBA);
    for (int j = 0; j < kLassos; ++j) {
      auto w = random_lasso(k);
      CHECK(lasso_accepts(*p, w) == (reference_accepts(*a, w) && reference_accepts(*b, w)));
    }
  }
  auto empty = std::make_shared<ExplicitAutomaton>(AccKind::DBA, 1, 2);
  empty->add_edge(0, 0, 0);
  empty->add_edge(0, 1, 0);
  auto b = random_automaton(AccKind::DcoBA, 3, 2);
  auto p = intersect_dba_dcoba<int>(empty, b);
  for (int j = 0; j < 50; ++j) CHECK_FALSE(lasso_accepts(*p, random_lasso(2)));
}

TEST_CASE("DBA x DBA product") {
  for (int i = 0; i < kInstances; ++i) {
    int k = alphabet();
    auto a = random_automaton(AccKind::DBA, pick(1, 5), k);
    auto b = random_automaton(AccKind::DBA, pick(1, 5), k);
    auto p = intersect_dba_dba<int>(a, b);
    auto self = intersect_dba_dba<int>(a, a);
    for (int j = 0; j < kLassos; ++j) {
      auto w = random_lasso(k);
      bool in_a = reference_accepts(*a, w);
      CHECK(lasso_accepts(*p, w) == (in_a && reference_accepts(*b, w)));
      CHECK(lasso_accepts(*self, w) == in_a);
    }
  }
}

namespace {

// Brute force over right labellings of u·v^j·(v^m)^ω.
bool projection_reference(ExplicitAutomaton& c, int right, const LassoWord<int>& w, int n) {
  for (int j = 0; j <= n; ++j) {
    for (int m = 1; m <= n; ++m) {
      std::vector<int> pre = w.prefix, cyc;
      for (int r = 0; r < j; ++r) pre.insert(pre.end(), w.cycle.begin(), w.cycle.end());
      for (int r = 0; r < m; ++r) cyc.insert(cyc.end(), w.cycle.begin(), w.cycle.end());
      const std::size_t bits = pre.size() + cyc.size();
      std::size_t combos = 1;
      for (std::size_t b = 0; b < bits; ++b) combos *= static_cast<std::size_t>(right);
      for (std::size_t code = 0; code < combos; ++code) {
        std::size_t rest = code;
        LassoWord<int> lw;
        for (int x : pre) {
          lw.prefix.push_back(x * right + static_cast<int>(rest % right));
          rest /= right;
        }
        for (int x : cyc) {
          lw.cycle.push_back(x * right + static_cast<int>(rest % right));
          rest /= right;
        }
        if (reference_accepts(c, lw)) return true;
      }
    }
  }
  return false;
}

}  // namespace

TEST_CASE("projection") {
  for (int i = 0; i < kInstances; ++i) {
    int left = pick(1, 2), right = 2, n = pick(1, 2);
    auto c = random_automaton(AccKind::NBA, n, left * right);
    auto proj = project_nba<int, int>(c, [right](const int& a) {
      std::vector<int> v;
      for (int b = 0; b < right; ++b) v.push_back(a * right + b);
      return v;
    });
    CHECK(proj->state_count() == c->state_count());
    for (int j = 0; j < 4; ++j) {
      LassoWord<int> w;
      int u = pick(0, 2), v = pick(1, 2);
      for (int x = 0; x < u; ++x) w.prefix.push_back(pick(0, left - 1));
      for (int x = 0; x < v; ++x) w.cycle.push_back(pick(0, left - 1));
      CHECK(lasso_accepts(*proj, w) == projection_reference(*c, right, w, n));
    }
  }
  // singleton right component: projection is the erasure
  auto c = random_automaton(AccKind::NBA, 3, 2);
  auto proj = project_nba<int, int>(c, [](const int& a) { return std::vector<int>{a}; });
  for (int j = 0; j < 50; ++j) {
    auto w = random_lasso(2);
    CHECK(lasso_accepts(*proj, w) == reference_accepts(*c, w));
  }
}

TEST_CASE("lasso oracle agrees with the reference check") {
  for (int i = 0; i < kInstances; ++i) {
    int k = alphabet();
    AccKind kinds[] = {AccKind::NBA, AccKind::NcoBA, AccKind::DBA, AccKind::DcoBA, AccKind::DPA};
    auto a = random_automaton(kinds[pick(0, 4)], pick(1, 5), k);
    for (int j = 0; j < kLassos; ++j) {
      auto w = random_lasso(k);
      CHECK(lasso_accepts(*a, w) == reference_accepts(*a, w));
    }
  }
}

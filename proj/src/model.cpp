#include "branchsat/model.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace branchsat {

std::size_t TransitionSystem::max_out_degree() const {
  std::size_t m = 0;
  for (const auto& s : succ) m = std::max(m, s.size());
  return m;
}

bool TransitionSystem::is_total() const {
  if (succ.size() != props.size()) return false;
  for (const auto& s : succ) {
    if (s.empty()) return false;
    for (int w : s)
      if (w < 0 || w >= static_cast<int>(size())) return false;
  }
  return initial >= 0 && initial < static_cast<int>(size());
}

TransitionSystem extract_model(const ParityGame& g, const Solution& s) {
  if (s.winner.at(g.initial) != 0) throw std::invalid_argument("player 0 does not win the initial node");
  auto endpoint = [&](uint32_t v) {
    std::size_t guard = 0;
    while (g.kind[v] == NodeKind::Rule) {
      if (s.strategy[v] < 0) throw std::logic_error("strategy undefined on a winning rule node");
      v = static_cast<uint32_t>(s.strategy[v]);
      if (++guard > g.size()) throw std::logic_error("strategy cycles through rule nodes");
    }
    return v;
  };

  TransitionSystem t;
  std::map<uint32_t, int> id;
  std::vector<uint32_t> order;
  auto state_of = [&](uint32_t v) {
    auto [it, fresh] = id.try_emplace(v, static_cast<int>(order.size()));
    if (fresh) order.push_back(v);
    return it->second;
  };
  t.initial = state_of(endpoint(g.initial));
  for (std::size_t i = 0; i < order.size(); ++i) {
    uint32_t v = order[i];
    std::vector<int> out;
    if (g.kind[v] == NodeKind::Modal) {
      if (g.owner[v] == 1) {
        for (uint32_t w : g.succ[v]) out.push_back(state_of(endpoint(w)));
      } else {
        out.push_back(state_of(endpoint(static_cast<uint32_t>(s.strategy[v]))));
      }
    } else {
      out.push_back(static_cast<int>(i));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    std::vector<std::string> names;
    if (v < g.props.size())
      for (uint16_t p : g.props[v]) names.push_back(g.prop_names.at(p));
    std::sort(names.begin(), names.end());
    t.props.push_back(std::move(names));
    t.succ.push_back(std::move(out));
  }
  return t;
}

namespace {

using Labels = std::vector<char>;

class CtlLabeller {
 public:
  explicit CtlLabeller(const TransitionSystem& t) : t_(t) {}

  Labels state(const FormulaPtr& f) {
    const std::size_t n = t_.size();
    switch (f->op) {
      case Op::True: return Labels(n, 1);
      case Op::False: return Labels(n, 0);
      case Op::Prop:
      case Op::NegProp: {
        Labels r(n);
        for (std::size_t s = 0; s < n; ++s) {
          bool has = std::binary_search(t_.props[s].begin(), t_.props[s].end(), f->name);
          r[s] = (f->op == Op::Prop) == has;
        }
        return r;
      }
      case Op::And:
      case Op::Or: {
        Labels a = state(f->left), b = state(f->right);
        for (std::size_t s = 0; s < n; ++s) a[s] = f->op == Op::And ? (a[s] && b[s]) : (a[s] || b[s]);
        return a;
      }
      case Op::Exists:
      case Op::Forall: return quantified(f->op == Op::Exists, f->left);
      default: throw std::invalid_argument("not a CTL formula: " + print(f));
    }
  }

 private:
  Labels next(bool exists, const Labels& x) {
    Labels r(t_.size());
    for (std::size_t s = 0; s < t_.size(); ++s) {
      bool any = false, all = true;
      for (int w : t_.succ[s]) {
        any = any || x[w];
        all = all && x[w];
      }
      r[s] = exists ? any : all;
    }
    return r;
  }

  Labels quantified(bool exists, const FormulaPtr& path) {
    const std::size_t n = t_.size();
    switch (path->op) {
      case Op::Next: return next(exists, state(path->left));
      case Op::Until: {
        Labels a = state(path->left), b = state(path->right);
        Labels z(n, 0);
        for (;;) {
          Labels nx = next(exists, z);
          Labels z2(n);
          for (std::size_t s = 0; s < n; ++s) z2[s] = b[s] || (a[s] && nx[s]);
          if (z2 == z) return z;
          z = z2;
        }
      }
      case Op::Release: {
        Labels a = state(path->left), b = state(path->right);
        Labels z(n, 1);
        for (;;) {
          Labels nx = next(exists, z);
          Labels z2(n);
          for (std::size_t s = 0; s < n; ++s) z2[s] = b[s] && (a[s] || nx[s]);
          if (z2 == z) return z;
          z = z2;
        }
      }
      default: throw std::invalid_argument("not a CTL path formula: " + print(path));
    }
  }

  const TransitionSystem& t_;
};

void collect_props(const FormulaPtr& f, std::set<std::string>& out) {
  if (!f) return;
  if (f->op == Op::Prop || f->op == Op::NegProp) out.insert(f->name);
  collect_props(f->left, out);
  collect_props(f->right, out);
}

}  // namespace

std::vector<char> label_ctl(const TransitionSystem& t, const FormulaPtr& f) {
  if (!t.is_total()) throw std::invalid_argument("transition system is not total");
  return CtlLabeller(t).state(to_nnf(f));
}

bool check_ctl(const TransitionSystem& t, const FormulaPtr& f) { return label_ctl(t, f)[t.initial] != 0; }

std::optional<TransitionSystem> small_model_search(const FormulaPtr& f, int max_states) {
  FormulaPtr nnf = to_nnf(f);
  std::set<std::string> pset;
  collect_props(nnf, pset);
  std::vector<std::string> props(pset.begin(), pset.end());
  const int np = static_cast<int>(props.size());
  for (int n = 1; n <= max_states; ++n) {
    const int subsets = (1 << n) - 1;
    std::vector<int> succ_mask(n, 1);
    for (;;) {
      TransitionSystem t;
      t.succ.resize(n);
      t.props.resize(n);
      for (int s = 0; s < n; ++s)
        for (int w = 0; w < n; ++w)
          if (succ_mask[s] >> w & 1) t.succ[s].push_back(w);
      const long labellings = 1L << (np * n);
      for (long lab = 0; lab < labellings; ++lab) {
        for (int s = 0; s < n; ++s) {
          t.props[s].clear();
          for (int k = 0; k < np; ++k)
            if (lab >> (s * np + k) & 1) t.props[s].push_back(props[k]);
        }
        Labels r = CtlLabeller(t).state(nnf);
        for (int s = 0; s < n; ++s) {
          if (r[s]) {
            t.initial = s;
            return t;
          }
        }
      }
      int k = 0;
      while (k < n && ++succ_mask[k] > subsets) succ_mask[k++] = 1;
      if (k == n) break;
    }
  }
  return std::nullopt;
}

std::string export_dot(const TransitionSystem& t) {
  std::ostringstream os;
  os << "digraph model {\n";
  for (std::size_t s = 0; s < t.size(); ++s) {
    os << "  s" << s << " [label=\"" << s << ": {";
    for (std::size_t k = 0; k < t.props[s].size(); ++k) os << (k ? ", " : "") << t.props[s][k];
    os << "}\"";
    if (static_cast<int>(s) == t.initial) os << ", peripheries=2";
    os << "];\n";
  }
  for (std::size_t s = 0; s < t.size(); ++s)
    for (int w : t.succ[s]) os << "  s" << s << " -> s" << w << ";\n";
  os << "}\n";
  return os.str();
}

std::string export_json(const TransitionSystem& t) {
  nlohmann::ordered_json j;
  j["initial"] = t.initial;
  j["states"] = nlohmann::ordered_json::array();
  for (std::size_t s = 0; s < t.size(); ++s) {
    nlohmann::ordered_json st;
    st["id"] = s;
    st["props"] = t.props[s];
    j["states"].push_back(st);
  }
  j["edges"] = nlohmann::ordered_json::array();
  for (std::size_t s = 0; s < t.size(); ++s)
    for (int w : t.succ[s]) j["edges"].push_back({static_cast<int>(s), w});
  return j.dump(2) + "\n";
}

TransitionSystem import_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("model JSON: ") + e.what());
  }
  try {
    TransitionSystem t;
    const auto& states = j.at("states");
    std::map<int, int> pos;
    for (const auto& st : states) {
      int id = st.at("id").get<int>();
      if (!pos.emplace(id, static_cast<int>(pos.size())).second)
        throw std::invalid_argument("model JSON: duplicate state id " + std::to_string(id));
    }
    t.props.resize(pos.size());
    t.succ.resize(pos.size());
    for (const auto& st : states) {
      auto ps = st.at("props").get<std::vector<std::string>>();
      std::sort(ps.begin(), ps.end());
      t.props[pos.at(st.at("id").get<int>())] = ps;
    }
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw std::invalid_argument("model JSON: edges must be pairs");
      auto a = pos.find(e[0].get<int>()), b = pos.find(e[1].get<int>());
      if (a == pos.end() || b == pos.end()) throw std::invalid_argument("model JSON: edge to unknown state");
      t.succ[a->second].push_back(b->second);
    }
    for (auto& s : t.succ) {
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    auto init = pos.find(j.at("initial").get<int>());
    if (init == pos.end()) throw std::invalid_argument("model JSON: unknown initial state");
    t.initial = init->second;
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("model JSON: ") + e.what());
  }
}

}  // namespace branchsat

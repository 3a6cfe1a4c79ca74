#include "rgs/strategy_io.hpp"

#include <map>

#include "rgs/error.hpp"

namespace rgs {

using nlohmann::json;

namespace {

json stacked_json(const StackedMixed& a) {
  json rows = json::array();
  for (std::size_t k = 0; k < a.states(); ++k) rows.push_back(std::vector<double>(a.row(k).begin(), a.row(k).end()));
  return rows;
}

StackedMixed stacked_from(const json& j, std::size_t K, std::size_t I, const std::string& where) {
  if (!j.is_array() || j.size() != K) throw ValidationError(where + ": expected " + std::to_string(K) + " rows");
  StackedMixed a(K, I);
  for (std::size_t k = 0; k < K; ++k) {
    if (!j[k].is_array() || j[k].size() != I) throw ValidationError(where + ": row of length " + std::to_string(I) + " expected");
    std::vector<double> r = j[k].get<std::vector<double>>();
    normalize_simplex(r, 1e-9, where.c_str());
    for (std::size_t i = 0; i < I; ++i) a(k, i) = r[i];
  }
  return a;
}

Mixed mixed_from(const json& j, std::size_t J, const std::string& where) {
  if (!j.is_array() || j.size() != J) throw ValidationError(where + ": expected " + std::to_string(J) + " entries");
  Mixed b = j.get<Mixed>();
  normalize_simplex(b, 1e-9, where.c_str());
  return b;
}

Belief belief_from(const json& j, std::size_t K, const std::string& where) {
  if (!j.is_array() || j.size() != K) throw ValidationError(where + ": belief of length " + std::to_string(K) + " expected");
  Belief p = j.get<Belief>();
  normalize_simplex(p, 1e-9, where.c_str());
  return p;
}

class LatticeCache {
 public:
  explicit LatticeCache(std::size_t dim) : dim_(dim) {}
  std::shared_ptr<const SimplexLattice> get(std::size_t n) {
    auto& l = by_[n];
    if (!l) l = std::make_shared<const SimplexLattice>(dim_, n);
    return l;
  }

 private:
  std::size_t dim_;
  std::map<std::size_t, std::shared_ptr<const SimplexLattice>> by_;
};

template <class Action, class Parse>
BeliefRule<Action> rule_from(const json& j, std::size_t K, LatticeCache& lat, const std::string& where, Parse parse) {
  BeliefRule<Action> r;
  if (j.contains("lattice")) {
    r.lattice = lat.get(j.at("lattice").get<std::size_t>());
    const json& acts = j.at("actions");
    if (!acts.is_array() || acts.size() != r.lattice->size())
      throw ValidationError(where + ": lattice rule needs " + std::to_string(r.lattice->size()) + " actions");
    for (std::size_t g = 0; g < acts.size(); ++g) r.lattice_actions.push_back(parse(acts[g], where + " point " + std::to_string(g)));
  } else if (j.contains("table")) {
    for (const json& e : j.at("table"))
      r.table.emplace_back(belief_from(e.at("belief"), K, where), parse(e.at("action"), where));
    if (r.table.empty()) throw ValidationError(where + ": empty table");
  } else {
    throw ValidationError(where + ": rule needs \"lattice\" or \"table\"");
  }
  return r;
}

}  // namespace

json strategy1_to_json(const AuxiliaryGame& game, const MarkovStrategy1& sigma, const BeliefMeasure& u,
                       std::size_t lattice_resolution, std::size_t max_table) {
  const std::size_t L = sigma.period();
  std::vector<std::vector<Belief>> tree;
  std::vector<Belief> cur;
  for (const Atom& a : u.atoms()) cur.push_back(a.point);
  bool fits = true;
  for (std::size_t t = 1; t <= L && fits; ++t) {
    tree.push_back(cur);
    if (t == L) break;
    std::vector<Atom> nxt;
    for (const Belief& p : cur) {
      const BeliefMeasure l = belief_transition(game, p, sigma.action(t, p, nullptr));
      for (const Atom& a : l.atoms()) nxt.push_back({a.point, 1.0});
    }
    for (Atom& a : nxt) a.weight = 1.0 / static_cast<double>(nxt.size());
    cur.clear();
    const BeliefMeasure merged(nxt);
    for (const Atom& a : merged.atoms()) cur.push_back(a.point);
    fits = cur.size() <= max_table;
  }

  json stages = json::array();
  if (fits) {
    for (std::size_t t = 1; t <= L; ++t) {
      json table = json::array();
      for (const Belief& p : tree[t - 1]) table.push_back({{"belief", p}, {"action", stacked_json(sigma.action(t, p, nullptr))}});
      stages.push_back({{"table", table}});
    }
  } else {
    const SimplexLattice lat(game.K(), lattice_resolution);
    for (std::size_t t = 1; t <= L; ++t) {
      json acts = json::array();
      for (std::size_t g = 0; g < lat.size(); ++g) acts.push_back(stacked_json(sigma.action(t, lat.point(g), nullptr)));
      stages.push_back({{"lattice", lattice_resolution}, {"actions", acts}});
    }
  }
  return json{{"player", 1},
              {"kind", "markov"},
              {"label", sigma.name()},
              {"states", game.K()},
              {"actions", game.I()},
              {"tail", "cyclic"},
              {"stages", stages}};
}

json strategy2_to_json(const RepeatedGameSpec& spec, const BlockStrategy2& tau) {
  json blocks = json::object();
  for (const auto& [len, rules] : tau.rules()) {
    json arr = json::array();
    for (const Player2Rule& r : rules) {
      if (r.lattice) {
        arr.push_back({{"lattice", r.lattice->resolution()}, {"actions", r.lattice_actions}});
      } else {
        json table = json::array();
        for (const auto& [p, b] : r.table) table.push_back({{"belief", p}, {"action", b}});
        arr.push_back({{"table", table}});
      }
    }
    blocks[std::to_string(len)] = arr;
  }
  return json{{"player", 2},
              {"kind", "blocks"},
              {"label", tau.name()},
              {"states", spec.K()},
              {"actions", spec.J()},
              {"schedule", tau.schedule() == BlockSchedule::Cyclic ? "cyclic" : "growing"},
              {"blocks", blocks}};
}

std::shared_ptr<MarkovStrategy1> strategy1_from_json(const RepeatedGameSpec& spec, const json& j) {
  try {
    if (j.at("player").get<int>() != 1) throw ValidationError("strategy file is not for player 1");
    if (j.at("states").get<std::size_t>() != spec.K() || j.at("actions").get<std::size_t>() != spec.I())
      throw ValidationError("strategy shape does not match the spec (states/actions1)");
    LatticeCache lat(spec.K());
    std::vector<Player1Rule> rules;
    const json& st = j.at("stages");
    for (std::size_t t = 0; t < st.size(); ++t)
      rules.push_back(rule_from<StackedMixed>(st[t], spec.K(), lat, "stage " + std::to_string(t + 1),
                                              [&](const json& a, const std::string& w) { return stacked_from(a, spec.K(), spec.I(), w); }));
    if (rules.empty()) throw ValidationError("strategy has no stages");
    return std::make_shared<MarkovStrategy1>(std::move(rules), j.value("label", std::string("markov")));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("player 1 strategy: ") + e.what());
  }
}

std::shared_ptr<BlockStrategy2> strategy2_from_json(const RepeatedGameSpec& spec, const json& j) {
  try {
    if (j.at("player").get<int>() != 2) throw ValidationError("strategy file is not for player 2");
    if (j.at("states").get<std::size_t>() != spec.K() || j.at("actions").get<std::size_t>() != spec.J())
      throw ValidationError("strategy shape does not match the spec (states/actions2)");
    const std::string sched = j.at("schedule").get<std::string>();
    if (sched != "cyclic" && sched != "growing") throw ValidationError("unknown block schedule '" + sched + "'");
    LatticeCache lat(spec.K());
    std::map<std::size_t, std::vector<Player2Rule>> by;
    for (const auto& [key, arr] : j.at("blocks").items()) {
      const std::size_t len = std::stoul(key);
      for (std::size_t s = 0; s < arr.size(); ++s)
        by[len].push_back(rule_from<Mixed>(arr[s], spec.K(), lat, "block " + key + " stage " + std::to_string(s + 1),
                                           [&](const json& b, const std::string& w) { return mixed_from(b, spec.J(), w); }));
    }
    try {
      return std::make_shared<BlockStrategy2>(sched == "cyclic" ? BlockSchedule::Cyclic : BlockSchedule::Growing,
                                              std::move(by), j.value("label", std::string("blocks")));
    } catch (const PreconditionError& e) {
      throw ValidationError(e.what());
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("player 2 strategy: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw ValidationError("player 2 strategy: block keys must be lengths");
  }
}

}  // namespace rgs

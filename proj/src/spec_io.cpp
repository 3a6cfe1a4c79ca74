#include "rgs/spec_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "rgs/error.hpp"

namespace rgs {

using nlohmann::json;

namespace {

std::string label_of(const json& v, const char* key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw ValidationError(std::string(key) + ": labels must be strings or integers");
}

std::vector<std::string> labels(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) throw ValidationError(std::string("missing array '") + key + "'");
  std::vector<std::string> out;
  for (const json& v : j[key]) out.push_back(label_of(v, key));
  return out;
}

std::map<std::string, std::size_t> index(const std::vector<std::string>& ls) {
  std::map<std::string, std::size_t> m;
  for (std::size_t x = 0; x < ls.size(); ++x) m[ls[x]] = x;
  return m;
}

std::size_t lookup(const std::map<std::string, std::size_t>& m, const json& v, const char* what,
                   const std::string& where) {
  const std::string l = label_of(v, what);
  auto it = m.find(l);
  if (it == m.end()) throw ValidationError(where + ": unknown " + what + " label '" + l + "'");
  return it->second;
}

double probability(const json& e, const std::string& where) {
  if (!e.contains("prob") || !e["prob"].is_number()) throw ValidationError(where + ": entry without numeric 'prob'");
  return e["prob"].get<double>();
}

std::vector<std::string> split_key(const std::string& key) {
  std::vector<std::string> parts;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, '|')) parts.push_back(part);
  return parts;
}

}  // namespace

RepeatedGameSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("game spec must be a JSON object");
  static const char* allowed[] = {"states", "actions1", "actions2", "signals1", "signals2", "initial",
                                  "payoff", "transition", "payoff_scale", "aumann_maschler", "name", "manifest"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ValidationError("unknown top-level key '" + it.key() + "'");
  }
  RepeatedGameSpec s;
  s.states = labels(j, "states");
  s.actions1 = labels(j, "actions1");
  s.actions2 = labels(j, "actions2");
  s.signals1 = labels(j, "signals1");
  s.signals2 = labels(j, "signals2");
  const auto ks = index(s.states), is = index(s.actions1), js = index(s.actions2), cs = index(s.signals1),
             ds = index(s.signals2);
  if (ks.size() != s.K() || is.size() != s.I() || js.size() != s.J() || cs.size() != s.C() || ds.size() != s.D())
    throw ValidationError("duplicate labels in a label set");

  auto fill_law = [&](const json& arr, double* law, const std::string& where) {
    if (!arr.is_array()) throw ValidationError(where + ": expected an array of {k,c,d,prob}");
    for (const json& e : arr) {
      if (!e.is_object() || !e.contains("k") || !e.contains("c") || !e.contains("d"))
        throw ValidationError(where + ": entry must have keys k, c, d, prob");
      const std::size_t k = lookup(ks, e["k"], "state", where);
      const std::size_t c = lookup(cs, e["c"], "signal1", where);
      const std::size_t d = lookup(ds, e["d"], "signal2", where);
      law[s.outcome(k, c, d)] += probability(e, where);
    }
  };

  s.initial.assign(s.outcomes(), 0.0);
  if (!j.contains("initial")) throw ValidationError("missing 'initial'");
  fill_law(j["initial"], s.initial.data(), "initial");

  if (!j.contains("payoff") || !j["payoff"].is_object()) throw ValidationError("missing object 'payoff'");
  s.payoff.assign(s.K() * s.I() * s.J(), 0.0);
  std::vector<char> seen(s.payoff.size(), 0);
  for (auto it = j["payoff"].begin(); it != j["payoff"].end(); ++it) {
    const auto parts = split_key(it.key());
    if (parts.size() != 3) throw ValidationError("payoff: key '" + it.key() + "' is not of the form k|i|j");
    const std::string where = "payoff " + it.key();
    const std::size_t k = lookup(ks, parts[0], "state", where), i = lookup(is, parts[1], "action1", where),
                      jj = lookup(js, parts[2], "action2", where);
    if (!it.value().is_number()) throw ValidationError(where + ": value must be a number");
    s.payoff[(k * s.I() + i) * s.J() + jj] = it.value().get<double>();
    seen[(k * s.I() + i) * s.J() + jj] = 1;
  }

  if (!j.contains("transition") || !j["transition"].is_object()) throw ValidationError("missing object 'transition'");
  s.transition.assign(s.K() * s.I() * s.J() * s.outcomes(), 0.0);
  std::vector<char> tseen(s.payoff.size(), 0);
  for (auto it = j["transition"].begin(); it != j["transition"].end(); ++it) {
    const auto parts = split_key(it.key());
    if (parts.size() != 3) throw ValidationError("transition: key '" + it.key() + "' is not of the form k|i|j");
    const std::string where = "transition " + it.key();
    const std::size_t k = lookup(ks, parts[0], "state", where), i = lookup(is, parts[1], "action1", where),
                      jj = lookup(js, parts[2], "action2", where);
    const std::size_t row = (k * s.I() + i) * s.J() + jj;
    fill_law(it.value(), s.transition.data() + row * s.outcomes(), where);
    tseen[row] = 1;
  }
  for (std::size_t k = 0; k < s.K(); ++k)
    for (std::size_t i = 0; i < s.I(); ++i)
      for (std::size_t jj = 0; jj < s.J(); ++jj) {
        const std::size_t row = (k * s.I() + i) * s.J() + jj;
        const std::string key = s.states[k] + "|" + s.actions1[i] + "|" + s.actions2[jj];
        if (!seen[row]) throw ValidationError("payoff: missing entry '" + key + "'");
        if (!tseen[row]) throw ValidationError("transition: missing entry '" + key + "'");
      }

  if (j.contains("payoff_scale")) {
    const json& ps = j["payoff_scale"];
    s.scale.offset = ps.value("offset", 0.0);
    s.scale.scale = ps.value("scale", 1.0);
  }
  if (j.contains("aumann_maschler")) {
    const json& am = j["aumann_maschler"];
    AumannMaschlerData d;
    d.prior = am.at("prior").get<std::vector<double>>();
    for (const json& m : am.at("matrices")) {
      const auto rows = m.get<std::vector<std::vector<double>>>();
      Matrix mm(rows.size(), rows.empty() ? 0 : rows[0].size());
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) mm(r, c) = rows[r][c];
      d.matrices.push_back(std::move(mm));
    }
    if (d.matrices.size() != s.K() || d.prior.size() != s.K())
      throw ValidationError("aumann_maschler: one matrix and one prior weight per state required");
    s.aumann_maschler = std::move(d);
  }
  s.validate();
  return s;
}

json spec_to_json(const RepeatedGameSpec& s) {
  json j;
  j["states"] = s.states;
  j["actions1"] = s.actions1;
  j["actions2"] = s.actions2;
  j["signals1"] = s.signals1;
  j["signals2"] = s.signals2;
  auto law_json = [&](const double* law) {
    json arr = json::array();
    for (std::size_t k = 0; k < s.K(); ++k)
      for (std::size_t c = 0; c < s.C(); ++c)
        for (std::size_t d = 0; d < s.D(); ++d) {
          const double m = law[s.outcome(k, c, d)];
          if (m > 0.0) arr.push_back({{"k", s.states[k]}, {"c", s.signals1[c]}, {"d", s.signals2[d]}, {"prob", m}});
        }
    return arr;
  };
  j["initial"] = law_json(s.initial.data());
  json pay = json::object(), tr = json::object();
  for (std::size_t k = 0; k < s.K(); ++k)
    for (std::size_t i = 0; i < s.I(); ++i)
      for (std::size_t jj = 0; jj < s.J(); ++jj) {
        const std::string key = s.states[k] + "|" + s.actions1[i] + "|" + s.actions2[jj];
        pay[key] = s.g(k, i, jj);
        tr[key] = law_json(s.q(k, i, jj));
      }
  j["payoff"] = pay;
  j["transition"] = tr;
  if (s.scale.offset != 0.0 || s.scale.scale != 1.0)
    j["payoff_scale"] = {{"offset", s.scale.offset}, {"scale", s.scale.scale}};
  if (s.aumann_maschler) {
    json ms = json::array();
    for (const Matrix& m : s.aumann_maschler->matrices) {
      json rows = json::array();
      for (std::size_t r = 0; r < m.rows; ++r) {
        std::vector<double> row(m.data.begin() + static_cast<long>(r * m.cols),
                                m.data.begin() + static_cast<long>((r + 1) * m.cols));
        rows.push_back(row);
      }
      ms.push_back(rows);
    }
    j["aumann_maschler"] = {{"matrices", ms}, {"prior", s.aumann_maschler->prior}};
  }
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RepeatedGameSpec load_spec(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": invalid JSON (" + e.what() + ")");
  }
  try {
    return spec_from_json(j);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  } catch (const json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void save_spec(const RepeatedGameSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << spec_to_json(spec).dump(2) << "\n";
}

json measure_to_json(const BeliefMeasure& u) {
  json arr = json::array();
  for (const Atom& a : u.atoms()) arr.push_back({{"atom", a.point}, {"weight", a.weight}});
  return arr;
}

BeliefMeasure measure_from_json(const json& j) {
  std::vector<Atom> atoms;
  for (const json& e : j) atoms.push_back({e.at("atom").get<std::vector<double>>(), e.at("weight").get<double>()});
  return BeliefMeasure(std::move(atoms));
}

}  // namespace rgs

// rgs: command-line front end for the repeated-game solvers.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rgs/error.hpp"
#include "rgs/manifest.hpp"
#include "rgs/parallel.hpp"
#include "rgs/simulator.hpp"
#include "rgs/spec_io.hpp"
#include "rgs/strategy_io.hpp"
#include "rgs/uniform.hpp"

using nlohmann::json;
using namespace rgs;

namespace {

struct Common {
  std::string spec_path, out_path, emit = "json";
  std::size_t jobs = 0;
  std::string grid;
};

double parse_delta(const std::string& text) {
  if (text.empty()) return 0.0;
  try {
    const auto slash = text.find('/');
    double v = slash == std::string::npos ? std::stod(text)
                                          : std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
    if (!(v > 0.0 && v <= 1.0)) throw UsageError("--grid must lie in (0, 1], got " + text);
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("--grid expects a number such as 0.03125 or 1/32, got '" + text + "'");
  }
}

void write_out(const Common& c, const std::string& text) {
  if (c.out_path.empty() || c.out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out_path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + c.out_path);
  f << text;
}

void emit_json(const Common& c, json body, RunManifest& m) {
  m.finish();
  body["manifest"] = m.to_json();
  write_out(c, body.dump(2) + "\n");
}

void emit_csv(const Common& c, const std::string& csv, RunManifest& m) {
  m.finish();
  write_out(c, m.csv_header() + csv);
}

struct Loaded {
  std::string bytes;
  std::shared_ptr<const RepeatedGameSpec> spec;
};

Loaded load(const Common& c) {
  Loaded l;
  l.bytes = read_file(c.spec_path);
  l.spec = std::make_shared<const RepeatedGameSpec>(load_spec(c.spec_path));
  return l;
}

std::unique_ptr<ValueEngine> engine_for(const Common& c, const Loaded& l, std::shared_ptr<const AuxiliaryGame>& game) {
  game = std::make_shared<const AuxiliaryGame>(l.spec);
  EngineConfig cfg;
  cfg.delta = parse_delta(c.grid);
  cfg.jobs = c.jobs ? c.jobs : default_jobs();
  return std::make_unique<ValueEngine>(game, cfg);
}

json bounds_json(const Bounds& b) { return {{"lower", b.lower}, {"upper", b.upper}}; }

json report_json(const HypothesisReport& r) {
  json j{{"hypothesis", r.hypothesis}, {"holds", r.holds}, {"max_violation", r.max_violation}, {"detail", r.detail}};
  if (!r.k_hat.empty()) j["k_hat"] = r.k_hat;
  if (!r.d_hat.empty()) j["d_hat"] = r.d_hat;
  if (!r.unreachable_signals.empty()) j["unreachable_signals"] = r.unreachable_signals;
  if (r.offending)
    j["offending"] = {{"k", r.offending->k},
                      {"i", r.offending->i},
                      {"j", r.offending->j},
                      {"j2", r.offending->j2},
                      {"marginal_j", r.offending->marginal_j},
                      {"marginal_j2", r.offending->marginal_j2}};
  return j;
}

void add_common(CLI::App* sub, Common& c, bool with_grid, bool with_emit) {
  sub->add_option("spec", c.spec_path, "game spec (JSON)")->required();
  sub->add_option("-o,--out", c.out_path, "output file (default stdout)");
  if (with_grid) sub->add_option("--grid", c.grid, "belief grid spacing delta, e.g. 1/32");
  if (with_emit) sub->add_option("--emit", c.emit, "output format")->check(CLI::IsMember({"csv", "json"}));
}

std::shared_ptr<const Player1Strategy> p1_from(const std::string& arg, const Loaded& l) {
  if (arg == "uniform") return std::make_shared<ConstantStrategy1>(StackedMixed::uniform(l.spec->K(), l.spec->I()), "uniform");
  if (arg == "myopic") return std::make_shared<MyopicBestResponse1>(l.spec);
  return strategy1_from_json(*l.spec, json::parse(read_file(arg)));
}

std::shared_ptr<const Player2Strategy> p2_from(const std::string& arg, const Loaded& l) {
  if (arg == "uniform")
    return std::make_shared<ConstantStrategy2>(Mixed(l.spec->J(), 1.0 / static_cast<double>(l.spec->J())), "uniform");
  if (arg == "myopic") return std::make_shared<MyopicBestResponse2>(l.spec);
  return strategy2_from_json(*l.spec, json::parse(read_file(arg)));
}

std::string joined_args(int argc, char** argv) {
  std::string s = "rgs";
  for (int a = 1; a < argc; ++a) s += std::string(" ") + argv[a];
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solvers for zero-sum repeated games with an informed controller"};
  app.require_subcommand(1);
  Common c;
  app.add_option("-j,--jobs", c.jobs, "worker threads (default RGS_JOBS or all cores)");
  const std::string command = joined_args(argc, argv);

  auto* validate = app.add_subcommand("validate", "check the informed-controller hypotheses");
  add_common(validate, c, false, false);

  std::size_t n = 1, m = 0;
  std::string theta_text;
  auto* value = app.add_subcommand("value", "certified bounds on v_theta, v_n or v_{m,n}");
  add_common(value, c, true, true);
  value->add_option("--n", n, "horizon")->check(CLI::PositiveNumber);
  value->add_option("--m", m, "shift");
  value->add_option("--theta", theta_text, "stage weights t1:w1,t2:w2,...");

  std::size_t theta_res = 4;
  auto* wvalue = app.add_subcommand("wvalue", "bounds on w_{m,n} at the initial measure");
  add_common(wvalue, c, true, false);
  wvalue->add_option("--m", m, "shift");
  wvalue->add_option("--n", n, "window")->check(CLI::PositiveNumber);
  wvalue->add_option("--theta-grid", theta_res, "resolution of the grid over stage weights")->check(CLI::PositiveNumber);

  std::size_t max_m = 4, max_n = 4;
  bool no_w = false;
  auto* uniform = app.add_subcommand("uniform", "windowed inf-sup / sup-inf estimate of the uniform value");
  add_common(uniform, c, true, true);
  uniform->add_option("--max-m", max_m, "largest shift M");
  uniform->add_option("--max-n", max_n, "largest window N")->check(CLI::PositiveNumber);
  uniform->add_option("--theta-grid", theta_res, "resolution of the grid over stage weights")->check(CLI::PositiveNumber);
  uniform->add_flag("--no-w", no_w, "skip the w table");

  int player = 1;
  std::string blocks = "cyclic";
  bool exact = false;
  auto* strategy = app.add_subcommand("strategy", "extract a strategy as JSON");
  add_common(strategy, c, true, false);
  strategy->add_option("--player", player, "1 or 2")->check(CLI::IsMember({1, 2}));
  strategy->add_option("--n", n, "horizon (player 1), block length (cyclic) or largest block (growing)")
      ->check(CLI::PositiveNumber);
  strategy->add_option("--blocks", blocks, "player 2 schedule")->check(CLI::IsMember({"cyclic", "growing"}));
  strategy->add_flag("--exact", exact, "player 1 solves the stage program at the exact belief");

  std::string p1_path, p2_path, trace_path;
  std::size_t horizon = 1, reps = 1;
  std::uint64_t seed = 0;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo playout of a strategy pair");
  add_common(simulate_cmd, c, false, false);
  simulate_cmd->add_option("--p1", p1_path, "player 1 strategy file, or uniform / myopic")->required();
  simulate_cmd->add_option("--p2", p2_path, "player 2 strategy file, or uniform / myopic")->required();
  simulate_cmd->add_option("--horizon", horizon, "stages N")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--reps", reps, "replications R")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--seed", seed, "seed");
  simulate_cmd->add_option("--trace", trace_path, "write per-stage trace CSV here");

  std::size_t cav_res = 64;
  auto* oracle = app.add_subcommand("oracle", "independent oracles");
  oracle->require_subcommand(1);
  auto* cavu = oracle->add_subcommand("cavu", "cav u table for the Aumann-Maschler subclass");
  add_common(cavu, c, false, true);
  cavu->add_option("--grid", cav_res, "lattice resolution")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  try {
    const Loaded l = load(c);
    std::shared_ptr<const AuxiliaryGame> game;

    if (validate->parsed()) {
      RunManifest man(command, l.bytes, json::object());
      json out{{"reports",
                {report_json(validate_ha_prime(*l.spec)), report_json(validate_hb_prime(*l.spec)),
                 report_json(validate_ha(*l.spec)), report_json(validate_hb(*l.spec))}},
               {"aumann_maschler", detect_aumann_maschler(*l.spec).has_value()}};
      emit_json(c, out, man);
      return 0;
    }

    if (value->parsed()) {
      auto eng = engine_for(c, l, game);
      const ThetaWeights theta = !theta_text.empty() ? ThetaWeights::parse(theta_text) : ThetaWeights::uniform_window(m, n);
      RunManifest man(command, l.bytes, {{"theta", theta.to_string()}, {"delta", eng->delta()}});
      const auto grid = eng->theta_grid(theta);
      const Bounds at0 = evaluate_measure(*grid, initial_belief_measure(*game));
      const SimplexLattice& L = *grid->lattice;
      if (c.emit == "csv") {
        std::ostringstream os;
        os.precision(12);
        for (std::size_t k = 0; k < L.dim(); ++k) os << 'p' << k << ',';
        os << "lower,upper\n";
        for (std::size_t g = 0; g < L.size(); ++g) {
          for (double x : L.point(g)) os << x << ',';
          os << grid->lower[g] << ',' << grid->upper[g] << '\n';
        }
        emit_csv(c, os.str(), man);
      } else {
        json pts = json::array();
        for (std::size_t g = 0; g < L.size(); ++g)
          pts.push_back({{"belief", L.point(g)}, {"lower", grid->lower[g]}, {"upper", grid->upper[g]}});
        emit_json(c,
                  {{"theta", theta.to_string()},
                   {"grid_delta", eng->delta()},
                   {"max_gap", grid->max_gap()},
                   {"warning", grid->warning},
                   {"initial", bounds_json(at0)},
                   {"payoff_scale", {{"offset", l.spec->scale.offset}, {"scale", l.spec->scale.scale}}},
                   {"points", pts}},
                  man);
      }
      return 0;
    }

    if (wvalue->parsed()) {
      auto eng = engine_for(c, l, game);
      RunManifest man(command, l.bytes, {{"m", m}, {"n", n}, {"theta_grid", theta_res}, {"delta", eng->delta()}});
      WOptions wo;
      wo.theta_resolution = theta_res;
      const WResult w = w_mn(*eng, m, n, initial_belief_measure(*game), wo);
      emit_json(c,
                {{"m", m},
                 {"n", n},
                 {"lower", w.bounds.lower},
                 {"upper", w.bounds.upper},
                 {"lower_is_heuristic", true},
                 {"heuristic_slack", w.heuristic_slack},
                 {"theta_star", w.theta_star.weights()},
                 {"evaluated", w.evaluated}},
                man);
      return 0;
    }

    if (uniform->parsed()) {
      auto eng = engine_for(c, l, game);
      RunManifest man(command, l.bytes,
                      {{"max_m", max_m}, {"max_n", max_n}, {"theta_grid", theta_res}, {"with_w", !no_w}, {"delta", eng->delta()}});
      UniformOptions uo;
      uo.with_w = !no_w;
      uo.w.theta_resolution = theta_res;
      const UniformValueReport r = uniform_value_estimate(*eng, initial_belief_measure(*game), max_m, max_n, uo);
      if (c.emit == "csv")
        emit_csv(c, uniform_report_csv(r), man);
      else
        emit_json(c, uniform_report_json(r), man);
      return 0;
    }

    if (strategy->parsed()) {
      auto eng = engine_for(c, l, game);
      RunManifest man(command, l.bytes, {{"player", player}, {"n", n}, {"blocks", blocks}, {"exact", exact}, {"delta", eng->delta()}});
      json out;
      if (player == 1) {
        const auto sigma = extract_p1_markov(*eng, n, exact);
        out = strategy1_to_json(*game, *sigma, initial_belief_measure(*game), eng->lattice()->resolution());
      } else {
        const auto tau = blocks == "cyclic" ? build_p2_cyclic(*eng, n) : build_p2_growing(*eng, n);
        out = strategy2_to_json(*l.spec, *tau);
      }
      emit_json(c, out, man);
      return 0;
    }

    if (simulate_cmd->parsed()) {
      game = std::make_shared<const AuxiliaryGame>(l.spec);
      const auto s1 = p1_from(p1_path, l);
      const auto s2 = p2_from(p2_path, l);
      RunManifest man(command, l.bytes,
                      {{"p1", p1_path}, {"p2", p2_path}, {"horizon", horizon}, {"reps", reps}, {"seed", seed}});
      PlayoutConfig pc;
      pc.horizon = horizon;
      pc.replications = reps;
      pc.seed = seed;
      pc.jobs = c.jobs ? c.jobs : default_jobs();
      pc.trace = !trace_path.empty();
      const SimulationResult res = simulate(*game, *s1, *s2, pc);
      if (pc.trace) {
        std::ofstream f(trace_path, std::ios::binary);
        if (!f) throw UsageError("cannot write " + trace_path);
        man.finish();
        f << man.csv_header() << trace_csv(res.trace);
      }
      const PayoffStats& st = res.stats;
      emit_json(c,
                {{"p1", s1->name()},
                 {"p2", s2->name()},
                 {"horizon", st.horizon},
                 {"replications", st.replications},
                 {"mean", st.mean},
                 {"stderr", st.stderr_},
                 {"ci95", st.ci},
                 {"mean_original_units", l.spec->scale.to_original(st.mean)},
                 {"stage_means", st.stage_means}},
                man);
      return 0;
    }

    if (cavu->parsed()) {
      const auto am = detect_aumann_maschler(*l.spec);
      if (!am) throw UsageError("oracle cavu: the spec is not in the Aumann-Maschler subclass (constant state, revealed actions)");
      RunManifest man(command, l.bytes, {{"grid", cav_res}});
      const CavuOracle orc = cavu_oracle(am->matrices, cav_res);
      const SimplexLattice& L = orc.lattice();
      if (c.emit == "csv") {
        std::ostringstream os;
        os.precision(12);
        for (std::size_t k = 0; k < L.dim(); ++k) os << 'p' << k << ',';
        os << "u,cav_u\n";
        for (std::size_t g = 0; g < L.size(); ++g) {
          for (double x : L.point(g)) os << x << ',';
          os << orc.u_values()[g] << ',' << orc.value(L.point(g)) << '\n';
        }
        emit_csv(c, os.str(), man);
      } else {
        json pts = json::array();
        for (std::size_t g = 0; g < L.size(); ++g)
          pts.push_back({{"belief", L.point(g)}, {"u", orc.u_values()[g]}, {"cav_u", orc.value(L.point(g))}});
        emit_json(c,
                  {{"prior", am->prior},
                   {"cav_u_at_prior", orc.value(am->prior)},
                   {"error_bound", orc.error_bound()},
                   {"points", pts}},
                  man);
      }
      return 0;
    }
  } catch (const ValidationError& e) {
    std::cerr << "rgs: invalid input: " << e.what() << '\n';
    return 2;
  } catch (const GuardError& e) {
    std::cerr << "rgs: size guard: " << e.what() << '\n';
    return 4;
  } catch (const UsageError& e) {
    std::cerr << "rgs: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "rgs: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

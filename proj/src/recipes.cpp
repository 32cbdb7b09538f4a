// Copyright 2026 The qproto-bench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "qproto/recipes.hpp"

#include <cmath>
#include <set>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include "qproto/anon.hpp"
#include "qproto/backbench.hpp"
#include "qproto/errors.hpp"
#include "qproto/money.hpp"
#include "qproto/qds.hpp"
#include "qproto/rng.hpp"
#include "qproto/vbqc.hpp"

namespace qproto::recipes {
namespace {

using csv::Row;
using csv::Table;

class Params {
 public:
  Params(const RecipeInfo& info, const ExperimentSpec& spec) : values_(info.defaults) {
    for (const auto& [key, value] : spec.params) {
      if (!values_.count(key)) {
        throw ConfigError("recipe '" + info.name + "' has no parameter '" + key + "'");
      }
      values_[key] = value;
    }
  }
  double operator()(const std::string& key) const { return values_.at(key); }
  std::uint64_t count(const std::string& key) const {
    const double v = values_.at(key);
    if (!(v >= 0.0) || v != std::floor(v)) throw ConfigError("parameter '" + key + "' must be a non-negative integer");
    return static_cast<std::uint64_t>(v);
  }

 private:
  std::map<std::string, double> values_;
};

// i * step for i = 0..n with n = round(max / step); avoids accumulating
// rounding error in the grid.
std::vector<double> grid(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) throw ConfigError("grid needs step > 0 and max >= min");
  const auto n = static_cast<int>(std::llround((hi - lo) / step));
  std::vector<double> out;
  for (int i = 0; i <= n; ++i) out.push_back(lo + i * step);
  return out;
}

std::string fmt(double x) { return csv::format_double(x); }

noise::HardwareProfile money_profile(const Params& p) {
  return {p("t1"), p("t2"), {p("p1"), p("p2")}};
}

ExperimentResult run_fig1(const ExperimentSpec& spec, const Params& p) {
  money::BanknoteConfig cfg;
  cfg.profile = money_profile(p);
  const auto block = spec.trials.value_or(p.count("block_size"));
  const auto reps = static_cast<int>(p.count("repetitions"));
  Table table;
  double first_insecure = -1.0;
  const auto ts = grid(0.0, p("t_max"), p("t_step"));
  for (std::size_t i = 0; i < ts.size(); ++i) {
    cfg.wait_time = ts[i];
    const auto c = money::estimate_c(cfg, block, reps, derive_seed(spec.seed, 1, i), spec.threads);
    if (first_insecure < 0.0 && c.mean <= 0.875) first_insecure = ts[i];
    table.add({{"T_seconds", ts[i]},
               {"c_analytic", money::analytic_c(ts[i], cfg.profile)},
               {"c_lower", c.lower},
               {"c_mean", c.mean},
               {"c_upper", c.upper}});
  }
  // Analytic crossing of 0.875: q(T) = 2 (0.125 - m) / (1 - 2m).
  const double m = 0.5 * (p("p1") + p("p2"));
  const double q = 2.0 * (0.125 - m) / (1.0 - 2.0 * m);
  const double t_cross = q < 0.5 ? -p("t2") * std::log(1.0 - 2.0 * q) : INFINITY;
  std::string summary = "fig1: analytic c crosses 0.875 at T = " + fmt(t_cross) + " s; ";
  summary += first_insecure >= 0.0 ? "first simulated grid point with c <= 0.875: T = " + fmt(first_insecure) + " s"
                                   : "simulated c stays above 0.875 on the grid";
  return {std::move(table), summary};
}

ExperimentResult run_fig2(const ExperimentSpec& spec, const Params& p) {
  money::BanknoteConfig cfg;
  cfg.profile = money_profile(p);
  const auto block = spec.trials.value_or(p.count("block_size"));
  const auto reps = static_cast<int>(p.count("repetitions"));
  const double target = p("forge_target");
  Table table;
  std::ostringstream summary;
  summary << "fig2:";
  const double waits[] = {p("wait_a"), p("wait_b")};
  for (std::size_t w = 0; w < 2; ++w) {
    cfg.wait_time = waits[w];
    const auto c = money::estimate_c(cfg, block, reps, derive_seed(spec.seed, 2, w), spec.threads);
    std::int64_t n_min = -1;
    try {
      n_min = static_cast<std::int64_t>(money::min_pairs_for_forge(c.mean, target));
    } catch (const InsecureRegime&) {
    }
    summary << " T=" << fmt(waits[w]) << " s: c=" << fmt(c.mean) << ", n_min=" << n_min << ";";
    for (const double nd : grid(p("n_step"), p("n_max"), p("n_step"))) {
      const auto n = static_cast<std::uint64_t>(nd);
      double pc = 0.0;
      double pf = 1.0;
      if (c.mean >= 0.875) {
        pc = money::p_correct_bound(c.mean, n);
        pf = money::p_forge_bound(c.mean, n);
      }
      table.add({{"T_seconds", waits[w]},
                 {"c_mean", c.mean},
                 {"n_min_forge", n_min},
                 {"n_pairs", static_cast<std::int64_t>(n)},
                 {"p_correct", pc},
                 {"p_forge", pf}});
    }
  }
  return {std::move(table), summary.str()};
}

ExperimentResult run_fig4(const ExperimentSpec&, const Params& p) {
  Table table;
  anon::AnonConfig cfg;
  cfg.n_parties = static_cast<int>(p.count("n_parties"));
  double at_02 = NAN;
  for (const double q1 : grid(0.0, p("q1_max"), p("q_step"))) {
    for (const double q2 : grid(q1, p("q2_max"), p("q_step"))) {
      cfg.q1 = q1;
      cfg.q2 = q2;
      const double f = anon::average_fidelity(cfg);
      if (std::abs(q1 - 0.2) < 1e-12 && std::abs(q2 - 0.2) < 1e-12) at_02 = f;
      table.add({{"f_ave", f}, {"q1", q1}, {"q2", q2}});
    }
  }
  return {std::move(table), "fig4: F_ave(q1=q2=0.2) = " + fmt(at_02)};
}

ExperimentResult run_fig5(const ExperimentSpec&, const Params& p) {
  Table table;
  anon::AnonConfig cfg;
  cfg.n_parties = static_cast<int>(p.count("n_parties"));
  std::ostringstream summary;
  summary << "fig5: largest q with F_ave >= 0.9:";
  for (const auto kind : {noise::ChannelKind::Dephasing, noise::ChannelKind::Depolarizing}) {
    const std::string name = kind == noise::ChannelKind::Dephasing ? "dephasing" : "depolarizing";
    double last_ok = NAN;
    for (const double q : grid(0.0, p("q_max"), p("q_step"))) {
      cfg.gate_noise = noise::NoiseChannel{kind, 0.0, 0.0, q};
      const double f = anon::average_fidelity(cfg);
      if (f >= 0.9) last_ok = q;
      table.add({{"f_ave", f}, {"noise", name}, {"q", q}});
    }
    summary << " " << name << " " << fmt(last_ok) << ";";
  }
  return {std::move(table), summary.str()};
}

ExperimentResult run_fig6(const ExperimentSpec& spec, const Params& p) {
  Table table;
  anon::LossConfig cfg;
  cfg.eta_d = p("eta_d");
  cfg.eta_bsm = p("eta_bsm");
  cfg.eta0 = p("eta0");
  cfg.sender_ratio = p("sender_ratio");
  cfg.receiver_ratio = p("receiver_ratio");
  const auto trials = spec.trials.value_or(p.count("trials"));
  std::ostringstream summary;
  summary << "fig6: smallest loss with P_fail >= 0.99:";
  std::uint64_t row = 0;
  for (const double nd : grid(p("n_min"), p("n_max"), 2.0)) {
    cfg.n_parties = static_cast<int>(nd);
    double reach = NAN;
    for (const double db : grid(0.0, p("db_max"), p("db_step"))) {
      cfg.eta_tr = noise::db_to_transmittance(db);
      const double pf = anon::p_fail(cfg);
      if (std::isnan(reach) && pf >= 0.99) reach = db;
      const auto mc = anon::p_fail_monte_carlo(cfg, trials, derive_seed(spec.seed, 6, row++), spec.threads);
      table.add({{"loss_db", db},
                 {"n_parties", static_cast<std::int64_t>(cfg.n_parties)},
                 {"p_fail", pf},
                 {"p_fail_mc", mc.mean},
                 {"p_fail_mc_lower", mc.lower},
                 {"p_fail_mc_upper", mc.upper}});
    }
    summary << " N=" << cfg.n_parties << " " << fmt(reach) << " dB;";
  }
  return {std::move(table), summary.str()};
}

ExperimentResult run_fig7(const ExperimentSpec& spec, const Params& p) {
  Table table;
  vbqc::VbqcProfile profile;
  profile.flips = {p("p1"), p("p2")};
  const auto trials = spec.trials.value_or(p.count("trials"));
  const int k = static_cast<int>(p.count("k"));
  std::ostringstream summary;
  summary << "fig7: feasible w/t at 95% for q in {";
  bool first = true;
  const auto qs = grid(0.0, p("q_max"), p("q_step"));
  for (std::size_t i = 0; i < qs.size(); ++i) {
    profile.gate_depolarizing_q = qs[i];
    const auto base = vbqc::estimate_test_failure(profile, trials, 0.95, derive_seed(spec.seed, 7, i), spec.threads);
    const auto failures = static_cast<std::uint64_t>(std::llround(base.mean * static_cast<double>(trials)));
    for (const double conf : {0.95, 0.9995}) {
      const auto est = stats::wilson_interval(failures, trials, conf);
      const bool feasible = vbqc::wt_feasible_range(est.upper, k).has_value();
      if (feasible && conf == 0.95) {
        summary << (first ? "" : ", ") << fmt(qs[i]);
        first = false;
      }
      table.add({{"confidence", conf},
                 {"feasible", static_cast<std::int64_t>(feasible)},
                 {"p_max", est.upper},
                 {"p_mean", est.mean},
                 {"p_min", est.lower},
                 {"q", qs[i]},
                 {"wt_upper", 1.0 / (2.0 * k)}});
    }
  }
  summary << "}";
  return {std::move(table), summary.str()};
}

ExperimentResult run_table4(const ExperimentSpec& spec, const Params& p) {
  Table table;
  const backbench::Genome baseline{p("t1_baseline"), p("t2_baseline")};
  const backbench::CostWeights weights{p("w1"), p("w2"), 0.875};
  backbench::GaParams ga;
  ga.population = static_cast<int>(p.count("population"));
  ga.generations = static_cast<int>(p.count("generations"));
  ga.tournament_size = static_cast<int>(p.count("tournament_size"));
  ga.mutation_sigma = p("mutation_sigma");
  ga.elitism = static_cast<int>(p.count("elitism"));
  ga.upper_factor = p("upper_factor");
  const auto block = spec.trials.value_or(p.count("block_size"));
  const auto reps = static_cast<int>(p.count("repetitions"));
  const noise::MeasurementFlip flips{p("p1"), p("p2")};
  std::ostringstream summary;
  summary << "table4:";
  const double storages[] = {p("storage_a"), p("storage_b")};
  for (std::size_t s = 0; s < 2; ++s) {
    ga.seed = derive_seed(spec.seed, 4, s);
    const auto objective = backbench::money_objective(storages[s], baseline, weights, flips, block, reps);
    const auto res = backbench::ga_optimize(objective, baseline, ga, spec.threads);
    table.add({{"cost", res.best_cost},
               {"storage_seconds", storages[s]},
               {"t1_hours", res.best.t1 / 3600.0},
               {"t2_over_storage", res.best.t2 / storages[s]},
               {"t2_seconds", res.best.t2}});
    summary << " storage " << fmt(storages[s]) << " s -> T1 " << fmt(res.best.t1 / 3600.0) << " h, T2 "
            << fmt(res.best.t2) << " s;";
  }
  return {std::move(table), summary.str()};
}

ExperimentResult run_table5(const ExperimentSpec& spec, const Params& p) {
  Table table;
  qds::QdsConfig cfg;
  cfg.n_photons = spec.trials.value_or(p.count("n_photons"));
  cfg.p_x = p("p_x");
  cfg.r = p("r");
  cfg.epsilon = p("epsilon");
  cfg.epsilon_pe = p("epsilon_pe");
  cfg.a = p("a");
  cfg.loss.eta_sys = p("eta_sys");
  cfg.loss.attenuation = p("attenuation");
  std::ostringstream summary;
  summary << "table5: p_rep";
  std::uint64_t row = 0;
  for (const double e_d : {0.0, 0.015}) {
    for (const double length : {5.0, 10.0, 20.0}) {
      cfg.e_d = e_d;
      cfg.loss.fibre_length = length;
      const auto rep = qds::evaluate(cfg, derive_seed(spec.seed, 5, row++), spec.threads);
      table.add({{"L_km", length},
                 {"e_d", e_d},
                 {"e_u_x", rep.e_u_x},
                 {"l", static_cast<std::int64_t>(rep.l)},
                 {"p_abort", rep.p_abort},
                 {"p_e", rep.p_e},
                 {"p_for", rep.p_for},
                 {"p_rep", rep.p_rep},
                 {"phi_u_x", rep.phi_u_x},
                 {"s_a", rep.s_a},
                 {"s_v", rep.s_v}});
      summary << " (" << fmt(length) << " km, e_d " << fmt(e_d) << ") " << fmt(rep.p_rep) << ";";
    }
  }
  return {std::move(table), summary.str()};
}

std::vector<RecipeInfo> build_recipes() {
  const std::map<std::string, double> money_hw{{"t1", 36000.0}, {"t2", 1.0}, {"p1", 0.05}, {"p2", 0.005}};
  auto with = [](std::map<std::string, double> base, std::map<std::string, double> extra) {
    base.insert(extra.begin(), extra.end());
    return base;
  };
  const std::map<std::string, double> loss{{"eta_d", 0.8},         {"eta_bsm", 0.8},   {"eta0", 0.8},
                                           {"sender_ratio", 0.002}, {"receiver_ratio", 0.004}};
  return {
      {"fig1", "money", "Fig 1", "c versus client wait time T", "pairs per block",
       with(money_hw, {{"block_size", 10000}, {"repetitions", 10}, {"t_max", 1.0}, {"t_step", 0.05}})},
      {"fig2", "money", "Fig 2", "P_correct and P_forge versus n at two wait times", "pairs per block",
       with(money_hw, {{"block_size", 10000},
                       {"repetitions", 10},
                       {"wait_a", 0.01},
                       {"wait_b", 0.1},
                       {"n_step", 5000},
                       {"n_max", 100000},
                       {"forge_target", 1e-7}})},
      {"fig4", "anon", "Fig 4", "teleportation F_ave over (q1, q2) memory dephasing", "unused (exact)",
       {{"n_parties", 4}, {"q1_max", 0.3}, {"q2_max", 0.45}, {"q_step", 0.05}}},
      {"fig5", "anon", "Fig 5", "teleportation F_ave versus correction-gate noise q", "unused (exact)",
       {{"n_parties", 4}, {"q_max", 0.3}, {"q_step", 0.025}}},
      {"fig6", "anon", "Fig 6", "P_fail versus transmission loss for N = 4, 6, 8", "Monte Carlo trials per point",
       with(loss, {{"trials", 20000}, {"db_max", 15.0}, {"db_step", 0.5}, {"n_min", 4}, {"n_max", 8}})},
      {"fig7", "vbqc", "Fig 7", "test-round failure bounds P_min/P_max versus gate depolarizing q", "test rounds",
       {{"trials", 3000}, {"q_max", 0.05}, {"q_step", 0.01}, {"p1", 0.05}, {"p2", 0.005}, {"k", 2}}},
      {"table4", "backbench", "Table 4", "GA-optimal (T1, T2) for storage times 1 s and 5 s",
       "pairs per block in each c estimate",
       {{"t1_baseline", 36000.0},
        {"t2_baseline", 1.0},
        {"w1", 1000.0},
        {"w2", 1.0},
        {"p1", 0.05},
        {"p2", 0.005},
        {"block_size", 1000},
        {"repetitions", 5},
        {"storage_a", 1.0},
        {"storage_b", 5.0},
        {"population", 32},
        {"generations", 60},
        {"tournament_size", 3},
        {"mutation_sigma", 0.3},
        {"elitism", 2},
        {"upper_factor", 100.0}}},
      {"table5", "qds", "Table 5", "QDS security levels for L in {5, 10, 20} km and e_d in {0, 0.015}",
       "photons per KGP",
       {{"n_photons", 50000},
        {"p_x", 0.5},
        {"r", 0.1},
        {"epsilon", 1e-10},
        {"epsilon_pe", 1e-5},
        {"a", 1e-5},
        {"eta_sys", 0.5},
        {"attenuation", 0.2}}},
  };
}

}  // namespace

const std::vector<RecipeInfo>& all_recipes() {
  static const std::vector<RecipeInfo> recipes = build_recipes();
  return recipes;
}

const RecipeInfo& find_recipe(const std::string& name) {
  for (const auto& r : all_recipes()) {
    if (r.name == name) return r;
  }
  throw ConfigError("unknown recipe '" + name + "'");
}

std::string list_recipes() {
  std::ostringstream os;
  for (const auto& r : all_recipes()) {
    os << r.name << '\t' << r.protocol << '\t' << r.anchor << '\t' << r.description << " (--trials: "
       << r.trials_meaning << ")\n";
  }
  return os.str();
}

void apply_config_file(const std::filesystem::path& path, ExperimentSpec& spec) {
  toml::table tbl;
  try {
    tbl = toml::parse_file(path.string());
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << "cannot parse config " << path.string() << ": " << e.description() << " (" << e.source().begin << ")";
    throw ConfigError(os.str());
  }
  static const std::set<std::string> known{"seed", "trials", "threads", "protocol", "recipe", "out", "params"};
  for (const auto& [key, _] : tbl) {
    if (!known.count(std::string(key.str()))) throw ConfigError("unknown config key '" + std::string(key.str()) + "'");
  }
  auto integer = [&](const char* key) -> std::optional<std::uint64_t> {
    const auto node = tbl[key];
    if (!node) return std::nullopt;
    const auto v = node.value<std::int64_t>();
    if (!v || *v < 0) throw ConfigError(std::string("config key '") + key + "' must be a non-negative integer");
    return static_cast<std::uint64_t>(*v);
  };
  auto text = [&](const char* key) -> std::optional<std::string> {
    const auto node = tbl[key];
    if (!node) return std::nullopt;
    const auto v = node.value<std::string>();
    if (!v) throw ConfigError(std::string("config key '") + key + "' must be a string");
    return v;
  };
  if (auto v = integer("seed")) spec.seed = *v;
  if (auto v = integer("trials")) spec.trials = *v;
  if (auto v = integer("threads")) spec.threads = static_cast<unsigned>(*v);
  if (auto v = text("protocol")) spec.protocol = *v;
  if (auto v = text("recipe")) spec.recipe = *v;
  if (auto v = text("out")) spec.out = *v;
  if (const auto node = tbl["params"]) {
    const auto* params = node.as_table();
    if (!params) throw ConfigError("config key 'params' must be a table");
    for (const auto& [key, value] : *params) {
      const auto v = value.value<double>();
      if (!v) throw ConfigError("parameter '" + std::string(key.str()) + "' must be a number");
      spec.params[std::string(key.str())] = *v;
    }
  }
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  const RecipeInfo& info = find_recipe(spec.recipe);
  if (spec.protocol != info.protocol) {
    throw ConfigError("recipe '" + info.name + "' belongs to protocol '" + info.protocol + "', not '" +
                      spec.protocol + "'");
  }
  if (spec.trials && *spec.trials == 0) throw ConfigError("--trials must be positive");
  const Params p(info, spec);
  try {
    if (info.name == "fig1") return run_fig1(spec, p);
    if (info.name == "fig2") return run_fig2(spec, p);
    if (info.name == "fig4") return run_fig4(spec, p);
    if (info.name == "fig5") return run_fig5(spec, p);
    if (info.name == "fig6") return run_fig6(spec, p);
    if (info.name == "fig7") return run_fig7(spec, p);
    if (info.name == "table4") return run_table4(spec, p);
    if (info.name == "table5") return run_table5(spec, p);
  } catch (const DegenerateInput&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid parameters: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw ConfigError(std::string("invalid parameters: ") + e.what());
  }
  throw ConfigError("recipe '" + info.name + "' has no runner");
}

}  // namespace qproto::recipes

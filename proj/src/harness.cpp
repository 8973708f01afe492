#include "dfa/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "dfa/bounds.hpp"
#include "dfa/learners.hpp"
#include "dfa/two_loss.hpp"

namespace dfa {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_eps(double eps) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", eps);
  return buf;
}

std::vector<double> default_epsilon_grid(int pool) {
  std::vector<double> eps = {0.5, 0.25, 0.125};
  const double last = 1.0 / static_cast<double>(pool);
  if (std::none_of(eps.begin(), eps.end(), [&](double e) { return std::fabs(e - last) < 1e-15; }))
    eps.push_back(last);
  return eps;
}

ModificationRule rule_from_spec(const RuleSpec& spec, int n) {
  StochMatrix m = StochMatrix::identity(n);
  if (spec.kind == "identity") {
    m = StochMatrix::identity(n);
  } else if (spec.kind == "swap") {
    m = StochMatrix::swap(n, spec.a, spec.b);
  } else if (spec.kind == "constant") {
    m = StochMatrix::constant_action(n, spec.action);
  } else {
    throw std::invalid_argument("unknown rule kind: " + spec.kind);
  }
  std::function<double(std::int64_t)> sel;
  if (spec.selection == "always") {
    sel = [](std::int64_t) { return 1.0; };
  } else if (spec.selection == "alternating") {
    sel = ModificationRule::alternating(spec.phase);
  } else if (spec.selection == "join") {
    sel = ModificationRule::join_at(spec.join);
  } else {
    throw std::invalid_argument("unknown selection kind: " + spec.selection);
  }
  return ModificationRule::fixed_with_selection(std::move(m), std::move(sel));
}

std::string mode_string(const LearnerStepInfo& info) {
  if (!info.solved) return "closed_form";
  return info.mode == SupMode::ExactVertices ? "exact_vertices" : "heuristic";
}

RunResult run_two_loss(const RunConfig& cfg) {
  RunResult result;
  result.config = cfg;
  result.config.epsilon_grid.clear();
  const int K = cfg.two_loss_square;
  const int M = cfg.two_loss_binary;
  TwoLossLearner learner(K, M, cfg.eta_nodes);

  Rng latent = Rng::stream(cfg.seed, 21);
  Rng noise = Rng::stream(cfg.seed, 22);
  Rng outcome_rng = Rng::stream(cfg.seed, 23);

  auto clamp01 = [](double v) { return std::min(1.0, std::max(0.0, v)); };
  double q = 0.5;
  std::vector<double> sq(K);
  std::vector<int> bn(M);

  RunSummary& s = result.summary;
  s.max_residual_minus_tol = -std::numeric_limits<double>::infinity();
  double prev_f = 1.0;
  for (std::int64_t t = 1; t <= cfg.T; ++t) {
    q = std::min(0.95, std::max(0.05, q + 0.2 * (latent.uniform01() - 0.5)));
    for (int k = 0; k < K; ++k) {
      const double bias = K > 1 ? -0.2 + 0.4 * k / (K - 1) : 0.0;
      sq[k] = clamp01(q + bias + 0.2 * (noise.uniform01() - 0.5));
    }
    for (int m = 0; m < M; ++m) {
      const double bias = M > 1 ? -0.2 + 0.4 * m / (M - 1) : 0.0;
      bn[m] = clamp01(q + bias + 0.3 * (noise.uniform01() - 0.5)) > 0.5 ? 1 : 0;
    }
    const TwoLossDecision dec = learner.decide(sq, bn);
    if (!dec.consistent()) s.two_loss_consistent = false;
    s.max_residual_minus_tol =
        std::max({s.max_residual_minus_tol,
                  learner.last_step().residual_0 - learner.last_step().tol_f,
                  learner.last_step().residual_1 - learner.last_step().tol_f});
    const int w = outcome_rng.bernoulli(q) ? 1 : 0;
    learner.observe(w);

    TraceRow row;
    row.t = t;
    row.learner_cum = learner.learner_square_cum();
    row.f_value = learner.last_step().f_realized;
    row.threshold = 1.0;
    row.mode = "bisection";
    row.decision = {dec.p, dec.p_tilde};
    s.max_f_over_threshold = std::max(s.max_f_over_threshold, row.f_value / row.threshold - 1.0);
    s.max_threshold = std::max(s.max_threshold, row.threshold);
    if (row.f_value > prev_f * (1.0 + 1e-9)) s.f_nonincreasing = false;
    prev_f = row.f_value;
    result.rows.push_back(std::move(row));
  }
  s.final_learner_cum = learner.learner_square_cum();
  s.final_learner_abs_cum = learner.learner_abs_cum();
  s.final_expert_cum.assign(learner.expert_square_cum().begin(), learner.expert_square_cum().end());
  s.final_expert_cum.insert(s.final_expert_cum.end(), learner.expert_abs_cum().begin(),
                            learner.expert_abs_cum().end());
  return result;
}

}  // namespace

RunResult run_experiment(const RunConfig& cfg_in) {
  RunConfig cfg = cfg_in;
  if (cfg.algorithm == "two_loss") return run_two_loss(cfg);

  Environment env = make_environment(cfg.env, cfg.seed);
  const int N = env.num_experts();
  cfg.N = N;

  // late arrivals are carried as always-present rules whose selection switches on
  if ((cfg.algorithm == "awake" || cfg.algorithm == "internal") && cfg.rules.empty() &&
      cfg.env.kind == EnvironmentSpec::Kind::LateArrival) {
    for (int n = 0; n < N; ++n) {
      RuleSpec rs;
      rs.kind = "constant";
      rs.action = n;
      rs.selection = "join";
      rs.join = env.join_steps()[n];
      cfg.rules.push_back(rs);
    }
  }

  std::vector<ModificationRule> rules;
  for (const auto& rs : cfg.rules) rules.push_back(rule_from_spec(rs, N));

  SolverConfig solver = cfg.solver;
  solver.seed = cfg.seed;

  DtolLearner learner = [&]() -> DtolLearner {
    if (cfg.algorithm == "fixed_horizon") return make_fixed_horizon(cfg.T, N, solver);
    if (cfg.algorithm == "quantile")
      return make_quantile(std::vector<double>(N, 1.0 / N), cfg.eta_nodes, solver);
    if (cfg.algorithm == "anytime")
      return make_anytime(std::vector<double>(N, 1.0 / N), cfg.i_max, solver);
    if (cfg.algorithm == "internal") return make_internal(N, rules, cfg.i_max, solver);
    if (cfg.algorithm == "awake") return make_awake(N, rules, cfg.eta_nodes, solver);
    if (cfg.algorithm == "hedge") return make_hedge_baseline(N, /*anytime_eta=*/true);
    throw std::invalid_argument("unknown algorithm: " + cfg.algorithm);
  }();

  const bool rule_based = learner.rule_based();
  const int pool = rule_based ? static_cast<int>(rules.size()) : N;
  if (cfg.epsilon_grid.empty()) cfg.epsilon_grid = default_epsilon_grid(pool);

  RunResult result;
  result.config = cfg;
  RunSummary& s = result.summary;
  s.epsilon_grid = cfg.epsilon_grid;
  const std::size_t ne = cfg.epsilon_grid.size();
  s.max_bound_gap.assign(ne, -std::numeric_limits<double>::infinity());

  double prev_f = std::numeric_limits<double>::infinity();
  for (std::int64_t t = 1; t <= cfg.T; ++t) {
    const SimplexVector gamma = learner.decide();
    const std::vector<double> omega = env.losses(t, gamma);
    learner.observe(omega);
    const LearnerStepInfo& info = learner.last_step();

    TraceRow row;
    row.t = t;
    row.learner_cum = learner.ledger().learner_cum;
    row.f_value = info.f_realized;
    row.threshold = info.threshold;
    row.mode = mode_string(info);
    row.decision = gamma.weights;
    row.leps.resize(ne);
    row.reps.resize(ne);
    row.bound.resize(ne);
    for (std::size_t i = 0; i < ne; ++i) {
      const double eps = cfg.epsilon_grid[i];
      if (rule_based) {
        row.reps[i] = quantile_regret(learner.rule_ledger().rule_regret,
                                      std::vector<double>(rules.size(), 1.0 / rules.size()), eps);
        row.leps[i] = row.learner_cum - row.reps[i];
      } else {
        const QuantileReport qr = quantile_loss(learner.ledger(), eps);
        row.leps[i] = qr.quantile_loss;
        row.reps[i] = qr.quantile_regret;
      }
      row.bound[i] = bound17(t, eps);
      s.max_bound_gap[i] = std::max(s.max_bound_gap[i], row.reps[i] - row.bound[i]);
    }
    row.ref_cum = rule_based ? learner.rule_ledger().rule_regret : learner.ledger().expert_cum;

    s.max_f_over_threshold = std::max(s.max_f_over_threshold, row.f_value / row.threshold - 1.0);
    s.max_threshold = std::max(s.max_threshold, row.threshold);
    if (row.f_value > prev_f * (1.0 + 1e-9)) s.f_nonincreasing = false;
    prev_f = row.f_value;
    s.max_solver_iterations = std::max(s.max_solver_iterations, info.solver_iterations);
    if (info.warm_start_accepted) s.warm_start_steps += 1;

    result.rows.push_back(std::move(row));
  }

  s.final_learner_cum = learner.ledger().learner_cum;
  s.final_leps.resize(ne);
  s.final_reps.resize(ne);
  s.final_bound.resize(ne);
  if (!result.rows.empty()) {
    s.final_leps = result.rows.back().leps;
    s.final_reps = result.rows.back().reps;
    s.final_bound = result.rows.back().bound;
  }
  s.final_expert_cum = learner.ledger().expert_cum;
  if (rule_based) s.final_rule_regret = learner.rule_ledger().rule_regret;
  return result;
}

void emit_trace_csv(const RunResult& result, std::ostream& os) {
  if (result.rows.empty()) throw std::invalid_argument("emit_trace_csv: empty trace");
  const std::size_t nd = result.rows.front().decision.size();
  const auto& eps = result.config.epsilon_grid;
  os << "t,learner_loss,f_value,threshold,solver_mode";
  for (std::size_t j = 0; j < nd; ++j) os << ",decision_" << j;
  for (double e : eps) os << ",Leps_" << fmt_eps(e);
  for (double e : eps) os << ",Reps_" << fmt_eps(e);
  for (double e : eps) os << ",bound17_" << fmt_eps(e);
  os << "\n";
  for (const auto& row : result.rows) {
    os << row.t << ',' << fmt17(row.learner_cum) << ',' << fmt17(row.f_value) << ','
       << fmt17(row.threshold) << ',' << row.mode;
    for (double d : row.decision) os << ',' << fmt17(d);
    for (double v : row.leps) os << ',' << fmt17(v);
    for (double v : row.reps) os << ',' << fmt17(v);
    for (double v : row.bound) os << ',' << fmt17(v);
    os << "\n";
  }
}

void write_trace_csv(const RunResult& result, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  emit_trace_csv(result, os);
}

std::string summary_json(const RunResult& result) {
  const RunSummary& s = result.summary;
  json j;
  j["config"] = json::parse(config_to_json_text(result.config));
  j["seed"] = result.config.seed;
  j["steps"] = result.rows.size();
  j["final_learner_loss"] = s.final_learner_cum;
  j["epsilon_grid"] = s.epsilon_grid;
  j["final_quantile_loss"] = s.final_leps;
  j["final_quantile_regret"] = s.final_reps;
  j["final_bound"] = s.final_bound;
  j["max_bound_gap"] = s.max_bound_gap;
  j["max_f_over_threshold"] = s.max_f_over_threshold;
  j["max_threshold"] = s.max_threshold;
  j["f_nonincreasing"] = s.f_nonincreasing;
  j["final_expert_loss"] = s.final_expert_cum;
  if (!s.final_rule_regret.empty()) j["final_rule_regret"] = s.final_rule_regret;
  if (result.config.algorithm == "two_loss") j["final_learner_abs_loss"] = s.final_learner_abs_cum;
  j["max_solver_iterations"] = s.max_solver_iterations;
  j["warm_start_steps"] = s.warm_start_steps;
  return j.dump(2);
}

void write_summary_json(const RunResult& result, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << summary_json(result) << "\n";
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

ParsedTrace parse_trace_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("trace: empty file");
  const std::vector<std::string> header = split_csv_line(line);
  const std::vector<std::string> prefix = {"t", "learner_loss", "f_value", "threshold",
                                           "solver_mode"};
  if (header.size() < prefix.size())
    throw std::runtime_error("trace: header too short");
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (header[i] != prefix[i]) throw std::runtime_error("trace: unexpected header column " + header[i]);

  ParsedTrace parsed;
  std::size_t pos = prefix.size();
  while (pos < header.size() && header[pos].rfind("decision_", 0) == 0) {
    ++parsed.num_decisions;
    ++pos;
  }
  std::size_t leps_at = pos;
  while (pos < header.size() && header[pos].rfind("Leps_", 0) == 0) {
    parsed.epsilon_grid.push_back(std::stod(header[pos].substr(5)));
    ++pos;
  }
  const std::size_t ne = parsed.epsilon_grid.size();
  for (std::size_t i = 0; i < ne; ++i, ++pos)
    if (pos >= header.size() || header[pos].rfind("Reps_", 0) != 0)
      throw std::runtime_error("trace: Reps columns do not mirror Leps columns");
  for (std::size_t i = 0; i < ne; ++i, ++pos)
    if (pos >= header.size() || header[pos].rfind("bound17_", 0) != 0)
      throw std::runtime_error("trace: bound17 columns do not mirror Leps columns");
  if (pos != header.size()) throw std::runtime_error("trace: trailing unexpected columns");

  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != header.size()) throw std::runtime_error("trace: ragged row");
    TraceRow row;
    row.t = std::stoll(cells[0]);
    row.learner_cum = std::stod(cells[1]);
    row.f_value = std::stod(cells[2]);
    row.threshold = std::stod(cells[3]);
    row.mode = cells[4];
    for (int j = 0; j < parsed.num_decisions; ++j) row.decision.push_back(std::stod(cells[5 + j]));
    for (std::size_t i = 0; i < ne; ++i) row.leps.push_back(std::stod(cells[leps_at + i]));
    for (std::size_t i = 0; i < ne; ++i) row.reps.push_back(std::stod(cells[leps_at + ne + i]));
    for (std::size_t i = 0; i < ne; ++i)
      row.bound.push_back(std::stod(cells[leps_at + 2 * ne + i]));
    parsed.rows.push_back(std::move(row));
  }
  return parsed;
}

ParsedTrace parse_trace_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  return parse_trace_csv(is);
}

std::optional<TraceViolation> verify_decrease(
    const std::vector<std::pair<double, double>>& f_and_threshold, TraceStyle style, double tol) {
  double prev_f = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < f_and_threshold.size(); ++i) {
    const auto [f, c] = f_and_threshold[i];
    if (style == TraceStyle::Decreasing) {
      if (f > 1.0 + tol)
        return TraceViolation{static_cast<std::int64_t>(i), "realized value above 1"};
      if (f > prev_f * (1.0 + tol))
        return TraceViolation{static_cast<std::int64_t>(i), "realized value increased"};
      prev_f = f;
    } else {
      if (c > 1.0 + tol)
        return TraceViolation{static_cast<std::int64_t>(i), "threshold above 1"};
      if (f > c * (1.0 + tol) + tol)
        return TraceViolation{static_cast<std::int64_t>(i), "realized value above threshold"};
    }
  }
  return std::nullopt;
}

VerifyReport verify_trace_file(const std::string& path) {
  VerifyReport report;
  ParsedTrace parsed;
  try {
    parsed = parse_trace_csv_file(path);
  } catch (const std::exception& e) {
    report.ok = false;
    report.violations.push_back(std::string("malformed trace: ") + e.what());
    return report;
  }
  const double tol = 1e-9;
  auto flag = [&](std::int64_t t, const std::string& what) {
    report.ok = false;
    report.violations.push_back("t=" + std::to_string(t) + ": " + what);
  };

  bool dfa_linked = parsed.rows.size() > 1;
  for (std::size_t i = 1; i < parsed.rows.size(); ++i) {
    const double prev_f = parsed.rows[i - 1].f_value;
    if (std::fabs(parsed.rows[i].threshold - prev_f) > 1e-7 * std::max(1.0, std::fabs(prev_f)))
      dfa_linked = false;
  }

  double prev_f = std::numeric_limits<double>::infinity();
  for (const auto& row : parsed.rows) {
    if (row.mode != "bisection") {
      const std::string msg = simplex_violation(row.decision);
      if (!msg.empty()) flag(row.t, "decision is not a probability vector: " + msg);
    }
    if (row.threshold > 1.0 + tol) flag(row.t, "threshold above 1");
    if (row.f_value > row.threshold * (1.0 + tol) + 1e-12)
      flag(row.t, "realized mixture value above threshold");
    if (dfa_linked && row.f_value > prev_f * (1.0 + tol))
      flag(row.t, "realized mixture value increased on a decreasing-style trace");
    prev_f = row.f_value;
    for (std::size_t i = 0; i < parsed.epsilon_grid.size(); ++i) {
      const double want = row.learner_cum - row.leps[i];
      if (std::fabs(row.reps[i] - want) > tol * std::max(1.0, std::fabs(row.learner_cum)))
        flag(row.t, "quantile regret does not match learner loss minus quantile loss");
      if (row.reps[i] > row.bound[i] + tol) flag(row.t, "quantile regret above the bound column");
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// configuration (de)serialization

namespace {

json env_to_json(const EnvironmentSpec& env) {
  json j;
  switch (env.kind) {
    case EnvironmentSpec::Kind::IidBernoulli:
      j["kind"] = "iid_bernoulli";
      j["means"] = env.means;
      break;
    case EnvironmentSpec::Kind::AdversarialLeader:
      j["kind"] = "adversarial_leader";
      j["num_actions"] = env.num_actions;
      break;
    case EnvironmentSpec::Kind::Duplicated:
      j["kind"] = "duplicated";
      j["copies"] = env.copies;
      j["base"] = env_to_json(*env.base);
      break;
    case EnvironmentSpec::Kind::ManyGood:
      j["kind"] = "many_good";
      j["pool_size"] = env.pool_size;
      j["fraction_good"] = env.fraction_good;
      j["gap"] = env.gap;
      break;
    case EnvironmentSpec::Kind::LateArrival:
      j["kind"] = "late_arrival";
      j["means"] = env.means;
      j["join_steps"] = env.join_steps;
      break;
  }
  return j;
}

EnvironmentSpec env_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "iid_bernoulli")
    return EnvironmentSpec::iid_bernoulli(j.at("means").get<std::vector<double>>());
  if (kind == "adversarial_leader")
    return EnvironmentSpec::adversarial_leader(j.at("num_actions").get<int>());
  if (kind == "duplicated")
    return EnvironmentSpec::duplicated(env_from_json(j.at("base")), j.at("copies").get<int>());
  if (kind == "many_good")
    return EnvironmentSpec::many_good(j.at("pool_size").get<int>(),
                                      j.at("fraction_good").get<double>(),
                                      j.at("gap").get<double>());
  if (kind == "late_arrival")
    return EnvironmentSpec::late_arrival(j.at("means").get<std::vector<double>>(),
                                         j.at("join_steps").get<std::vector<std::int64_t>>());
  throw std::invalid_argument("unknown environment kind: " + kind);
}

}  // namespace

std::string config_to_json_text(const RunConfig& cfg) {
  json j;
  if (!cfg.name.empty()) j["name"] = cfg.name;
  j["algorithm"] = cfg.algorithm;
  j["environment"] = env_to_json(cfg.env);
  j["T"] = cfg.T;
  j["N"] = cfg.N;
  j["seed"] = cfg.seed;
  j["epsilon_grid"] = cfg.epsilon_grid;
  j["eta_nodes"] = cfg.eta_nodes;
  j["i_max"] = cfg.i_max;
  j["solver"] = {{"slack", cfg.solver.feasibility_slack},
                 {"max_iter", cfg.solver.max_iterations},
                 {"restarts", cfg.solver.heuristic_restarts},
                 {"vertex_exact_max_n", cfg.solver.vertex_exact_max_n}};
  if (!cfg.rules.empty()) {
    json rules = json::array();
    for (const auto& r : cfg.rules) {
      json jr;
      jr["kind"] = r.kind;
      if (r.kind == "constant") jr["action"] = r.action;
      if (r.kind == "swap") {
        jr["a"] = r.a;
        jr["b"] = r.b;
      }
      jr["selection"] = r.selection;
      if (r.selection == "alternating") jr["phase"] = r.phase;
      if (r.selection == "join") jr["join"] = r.join;
      rules.push_back(jr);
    }
    j["rules"] = rules;
  }
  if (cfg.algorithm == "two_loss")
    j["two_loss"] = {{"square", cfg.two_loss_square}, {"binary", cfg.two_loss_binary}};
  return j.dump(2);
}

RunConfig config_from_json_text(const std::string& text) {
  const json j = json::parse(text);
  RunConfig cfg;
  if (j.contains("name")) cfg.name = j["name"].get<std::string>();
  cfg.algorithm = j.at("algorithm").get<std::string>();
  if (cfg.algorithm != "two_loss" || j.contains("environment"))
    cfg.env = env_from_json(j.at("environment"));
  cfg.T = j.at("T").get<std::int64_t>();
  if (j.contains("N")) cfg.N = j["N"].get<int>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("epsilon_grid")) cfg.epsilon_grid = j["epsilon_grid"].get<std::vector<double>>();
  if (j.contains("eta_nodes")) cfg.eta_nodes = j["eta_nodes"].get<int>();
  if (j.contains("i_max")) cfg.i_max = j["i_max"].get<int>();
  if (j.contains("solver")) {
    const json& s = j["solver"];
    if (s.contains("slack")) cfg.solver.feasibility_slack = s["slack"].get<double>();
    if (s.contains("max_iter")) cfg.solver.max_iterations = s["max_iter"].get<int>();
    if (s.contains("restarts")) cfg.solver.heuristic_restarts = s["restarts"].get<int>();
    if (s.contains("vertex_exact_max_n"))
      cfg.solver.vertex_exact_max_n = s["vertex_exact_max_n"].get<int>();
  }
  if (j.contains("rules")) {
    for (const auto& jr : j["rules"]) {
      RuleSpec r;
      r.kind = jr.at("kind").get<std::string>();
      if (jr.contains("action")) r.action = jr["action"].get<int>();
      if (jr.contains("a")) r.a = jr["a"].get<int>();
      if (jr.contains("b")) r.b = jr["b"].get<int>();
      if (jr.contains("selection")) r.selection = jr["selection"].get<std::string>();
      if (jr.contains("phase")) r.phase = jr["phase"].get<int>();
      if (jr.contains("join")) r.join = jr["join"].get<std::int64_t>();
      cfg.rules.push_back(r);
    }
  }
  if (j.contains("two_loss")) {
    cfg.two_loss_square = j["two_loss"].at("square").get<int>();
    cfg.two_loss_binary = j["two_loss"].at("binary").get<int>();
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return config_from_json_text(ss.str());
}

// ---------------------------------------------------------------------------
// shipped presets

std::vector<RunConfig> shipped_presets() {
  std::vector<RunConfig> out;
  const std::vector<double> means8 = {0.15, 0.25, 0.35, 0.45, 0.55, 0.65, 0.75, 0.85};
  const std::vector<double> means4 = {0.2, 0.4, 0.6, 0.8};

  {
    RunConfig c;
    c.name = "fixed_horizon_iid";
    c.algorithm = "fixed_horizon";
    c.env = EnvironmentSpec::iid_bernoulli(means8);
    c.T = 500;
    c.seed = 1;
    out.push_back(c);
  }
  {
    RunConfig c;
    c.name = "fixed_horizon_adversarial";
    c.algorithm = "fixed_horizon";
    c.env = EnvironmentSpec::adversarial_leader(8);
    c.T = 500;
    c.seed = 2;
    out.push_back(c);
  }
  {
    RunConfig c;
    c.name = "quantile_iid";
    c.algorithm = "quantile";
    c.env = EnvironmentSpec::iid_bernoulli(means8);
    c.T = 400;
    c.seed = 3;
    out.push_back(c);
  }
  {
    RunConfig c;
    c.name = "anytime_iid";
    c.algorithm = "anytime";
    c.env = EnvironmentSpec::iid_bernoulli(means8);
    c.T = 400;
    c.seed = 4;
    out.push_back(c);
  }
  {
    RunConfig c;
    c.name = "anytime_many_good";
    c.algorithm = "anytime";
    c.env = EnvironmentSpec::many_good(10, 0.4, 0.2);
    c.T = 300;
    c.seed = 5;
    out.push_back(c);
  }
  {
    RunConfig c;
    c.name = "anytime_duplicated";
    c.algorithm = "anytime";
    c.env = EnvironmentSpec::duplicated(EnvironmentSpec::iid_bernoulli(means4), 25);
    c.T = 300;
    c.seed = 6;
    c.i_max = 4;
    c.epsilon_grid = {0.25};
    out.push_back(c);
  }
  {
    RunConfig c;
    c.name = "anytime_duplicated_base";
    c.algorithm = "anytime";
    c.env = EnvironmentSpec::iid_bernoulli(means4);
    c.T = 300;
    c.seed = 6;
    c.i_max = 4;
    c.epsilon_grid = {0.25};
    out.push_back(c);
  }
  {
    RunConfig c;
    c.name = "internal_rules";
    c.algorithm = "internal";
    c.env = EnvironmentSpec::iid_bernoulli({0.3, 0.6});
    c.T = 400;
    c.seed = 7;
    c.rules = {RuleSpec{}, RuleSpec{.kind = "swap", .a = 0, .b = 1},
               RuleSpec{.kind = "constant", .action = 0},
               RuleSpec{.kind = "constant", .action = 1}};
    out.push_back(c);
  }
  {
    RunConfig c;
    c.name = "awake_rules";
    c.algorithm = "awake";
    c.env = EnvironmentSpec::iid_bernoulli({0.3, 0.6});
    c.T = 400;
    c.seed = 8;
    c.rules = {RuleSpec{.selection = "alternating", .phase = 0},
               RuleSpec{.kind = "swap", .a = 0, .b = 1, .selection = "alternating", .phase = 1},
               RuleSpec{.kind = "constant", .action = 0, .selection = "alternating", .phase = 0},
               RuleSpec{.kind = "constant", .action = 1, .selection = "alternating", .phase = 1}};
    out.push_back(c);
  }
  {
    RunConfig c;
    c.name = "late_arrival_awake";
    c.algorithm = "awake";
    c.env = EnvironmentSpec::late_arrival({0.3, 0.5, 0.7}, {1, 100, 200});
    c.T = 300;
    c.seed = 9;
    out.push_back(c);
  }
  {
    RunConfig c;
    c.name = "two_loss_rain";
    c.algorithm = "two_loss";
    c.T = 1000;
    c.seed = 10;
    c.two_loss_square = 3;
    c.two_loss_binary = 3;
    out.push_back(c);
  }
  return out;
}

std::optional<RunConfig> find_preset(const std::string& name) {
  for (auto& p : shipped_presets())
    if (p.name == name) return p;
  return std::nullopt;
}

}  // namespace dfa

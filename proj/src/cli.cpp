#include "bcgame/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bcgame/config.hpp"
#include "bcgame/duality.hpp"
#include "bcgame/errors.hpp"
#include "bcgame/pareto.hpp"
#include "bcgame/penalty.hpp"
#include "bcgame/sampling.hpp"
#include "bcgame/uniqueness.hpp"

namespace bcgame::cli {

using nlohmann::json;

namespace {

struct Args {
  std::string config;
  std::string weights;
  std::string gamma;
  std::string order;
  std::string profile;
  std::string out;
  std::string format;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::size_t gamma_grid = 101;
  std::size_t samples = 10000;
  unsigned jobs = 1;
  double damping = 0.5;
  int max_iter = 5000;
  std::optional<double> price;
  bool simultaneous = false;
  bool subgradient = false;
  double step = 1.0;
  std::size_t users = 3;
  std::size_t dim = 2;
  bool timing = false;
};

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError(std::string("--") + what + ": cannot parse '" + item + "'");
    }
  }
  if (out.empty()) throw ValidationError(std::string("--") + what + ": empty list");
  return out;
}

json numbers_json(std::span<const double> v) { return json(std::vector<double>(v.begin(), v.end())); }

json certificate_json(const EquilibriumCertificate& c) {
  return {{"shadow_price", c.shadow_price},
          {"stationarity", c.stationarity},
          {"multiplier_min_eig", c.multiplier_min_eig},
          {"complementarity", c.complementarity},
          {"power_residual", c.power_residual},
          {"best_response_gaps", c.best_response_gaps},
          {"weighted_gap", c.weighted_gap},
          {"active", c.active},
          {"max_kkt_residual", c.max_kkt_residual()},
          {"max_gap", c.max_gap()}};
}

json weight_map_json(const WeightMapResult& w) {
  std::vector<double> b(w.b.data(), w.b.data() + w.b.size());
  return {{"A", matrix_to_json(w.a)},   {"b", b},
          {"eta", w.eta},               {"weights", w.weights},
          {"active", w.active},         {"degenerate", w.degenerate},
          {"all_positive", w.all_positive}};
}

json channel_json(const BCChannel& bc) {
  json j{{"type", "bc"}, {"channels", profile_to_json(bc.channels)}, {"power", {{"sum", bc.power_budget}}}};
  if (const auto* w = std::get_if<WhiteNoise>(&bc.noise)) {
    j["noise"] = {{"white", w->level}};
  } else {
    j["noise"] = {{"covariances", profile_to_json(std::get<ColoredNoise>(bc.noise).covariances)}};
  }
  return j;
}

json channel_json(const MACChannel& mac) {
  json j{{"type", "mac"}, {"channels", profile_to_json(mac.channels)}, {"noise", {{"white", mac.noise_level}}}};
  if (const auto* s = std::get_if<SumPower>(&mac.power)) {
    j["power"] = {{"sum", s->total}};
  } else {
    j["power"] = {{"individual", std::get<IndividualPowers>(mac.power).powers}};
  }
  return j;
}

json duality_json(const DualityReport& r) {
  return {{"rate_deltas", r.rate_deltas},
          {"max_rate_delta", r.max_rate_delta()},
          {"power_delta", r.power_delta},
          {"min_eigenvalues", r.min_eigenvalues},
          {"fallback_users", r.fallback_users}};
}

class Runner {
 public:
  Runner(const Args& args, std::ostream& out) : args_(args), out_(out) {}

  int validate_cmd() {
    const Config cfg = load_config(require_config());
    const auto report = validate_config(cfg);
    json outputs{{"valid", report.ok()}, {"violations", report.violations}};
    if (cfg.is_broadcast() && report.ok()) {
      const auto deg = is_aligned_degraded(std::get<BCChannel>(cfg.channel));
      outputs["aligned_degraded"] = deg.aligned_degraded;
      if (deg.aligned_degraded) {
        std::vector<std::size_t> one_based;
        for (auto k : deg.ordering) one_based.push_back(k + 1);
        outputs["degradedness_ordering"] = one_based;
      }
    }
    emit("validate", cfg.digest, outputs);
    return report.ok() ? ok : validation_error;
  }

  int solve_noe_cmd() {
    const Config cfg = load_config(require_config());
    const Game game = game_of(cfg);
    const NoEWeights r = weights_of(cfg, game);
    const NoESolution sol = solve_noe(game, r, solve_options());
    if (format() == "csv") {
      std::ostringstream os;
      os.precision(12);
      os << "user,trace,rate\n";
      for (std::size_t k = 0; k < game.num_users(); ++k) {
        os << k + 1 << ',' << sol.profile[k].trace() << ',' << sol.rates[k] << '\n';
      }
      write(os.str());
      return ok;
    }
    emit("solve-noe", cfg.digest,
         {{"order", order_to_one_based(game.order())},
          {"weights", numbers_json(r.values())},
          {"profile", profile_to_json(sol.profile)},
          {"rates", sol.rates},
          {"iterations", sol.iterations},
          {"fixed_point_residual", sol.fixed_point_residual},
          {"certificate", certificate_json(sol.certificate)}});
    return ok;
  }

  int certify_cmd() {
    const Config cfg = load_config(require_config());
    const Game game = game_of(cfg);
    const NoEWeights r = weights_of(cfg, game);
    const Profile q = profile_of(cfg, game);
    const auto cert = certify(game, q, r);
    const bool passes = cert.passes(tol(1e-6));
    emit("certify", cfg.digest,
         {{"weights", numbers_json(r.values())},
          {"tol", tol(1e-6)},
          {"passes", passes},
          {"certificate", certificate_json(cert)}});
    return passes ? ok : verification_error;
  }

  int pareto_sweep_cmd() {
    const Config cfg = load_config(require_config());
    const Game game = game_of(cfg);
    if (game.num_users() != 2) throw ValidationError("pareto-sweep: the gamma grid needs exactly two users");
    ParetoOptions opts;
    opts.seed = args_.seed.value_or(0);
    const auto points = frontier_sweep(game, two_user_grid(args_.gamma_grid), opts, args_.jobs);
    const auto k_users = game.num_users();
    if (format("csv") == "csv") {
      std::ostringstream os;
      os.precision(12);
      for (std::size_t k = 1; k <= k_users; ++k) os << "gamma_" << k << ',';
      for (std::size_t k = 1; k <= k_users; ++k) os << "rate_" << k << ',';
      for (std::size_t k = 1; k <= k_users; ++k) os << "r_" << k << ',';
      os << "eta,active_mask\n";
      for (const auto& p : points) {
        for (double g : p.gamma) os << g << ',';
        for (std::size_t k = 0; k < k_users; ++k) {
          os << (p.rates.empty() ? std::numeric_limits<double>::quiet_NaN() : p.rates[k]) << ',';
        }
        for (std::size_t k = 0; k < k_users; ++k) {
          os << (p.weight_map ? p.weight_map->weights[k] : std::numeric_limits<double>::quiet_NaN()) << ',';
        }
        os << (p.weight_map ? p.weight_map->eta : std::numeric_limits<double>::quiet_NaN()) << ',';
        for (std::size_t k = 0; k < k_users; ++k) os << (p.weight_map && p.weight_map->active[k] ? '1' : '0');
        os << '\n';
      }
      write(os.str());
    } else {
      json rows = json::array();
      for (const auto& p : points) {
        json row{{"gamma", p.gamma}, {"rates", p.rates}, {"profile", profile_to_json(p.profile)},
                 {"warnings", p.warnings}};
        if (p.weight_map) row["weight_map"] = weight_map_json(*p.weight_map);
        if (!p.error.empty()) row["error"] = p.error;
        rows.push_back(std::move(row));
      }
      emit("pareto-sweep", cfg.digest, {{"points", rows}});
    }
    for (const auto& p : points) {
      if (!p.error.empty()) err_notes_.push_back("gamma_1 = " + std::to_string(p.gamma[0]) + ": " + p.error);
    }
    return ok;
  }

  int map_weights_cmd() {
    const Config cfg = load_config(require_config());
    const Game game = game_of(cfg);
    const bool have_gamma = !args_.gamma.empty() || (cfg.gamma && args_.weights.empty());
    if (have_gamma) {
      const ParetoWeights gamma(args_.gamma.empty() ? *cfg.gamma : parse_list(args_.gamma, "gamma"));
      ParetoOptions opts;
      opts.seed = args_.seed.value_or(0);
      const auto sol = pareto_solve(game, gamma, opts);
      const auto map = weight_map_gamma_to_r(game, gamma, sol.profile);
      emit("map-weights", cfg.digest,
           {{"direction", "gamma_to_r"},
            {"gamma", numbers_json(gamma.values())},
            {"profile", profile_to_json(sol.profile)},
            {"rates", sol.rates},
            {"warnings", sol.warnings},
            {"pareto_kkt_residual", sol.kkt.max_residual()},
            {"map", weight_map_json(map)}});
      return ok;
    }
    const NoEWeights r = weights_of(cfg, game);
    const auto sol = solve_noe(game, r, solve_options());
    const auto map = weight_map_r_to_gamma(game, r, sol.profile);
    emit("map-weights", cfg.digest,
         {{"direction", "r_to_gamma"},
          {"weights", numbers_json(r.values())},
          {"profile", profile_to_json(sol.profile)},
          {"rates", sol.rates},
          {"map", weight_map_json(map)}});
    return ok;
  }

  int dual_transform_cmd() {
    const Config cfg = load_config(require_config());
    const Game game = game_of(cfg);
    Profile q;
    bool solved = false;
    if (!args_.profile.empty() || cfg.profile) {
      q = profile_of(cfg, game);
    } else {
      q = solve_noe(game, weights_of(cfg, game), solve_options()).profile;
      solved = true;
    }
    json outputs{{"source_profile", profile_to_json(q)}};
    std::optional<Game> dual;
    Profile target;
    if (game.is_broadcast()) {
      const auto d = bc_to_mac(game.bc(), q, game.order(), tol(1e-8));
      outputs["dual"] = channel_json(d.channel);
      outputs["dual"]["order"] = order_to_one_based(d.order);
      outputs["profile"] = profile_to_json(d.profile);
      outputs["report"] = duality_json(d.report);
      dual.emplace(d.channel, d.order);
      target = d.profile;
    } else {
      const auto d = mac_to_bc(game.mac(), q, game.order(), tol(1e-8));
      outputs["dual"] = channel_json(d.channel);
      outputs["dual"]["order"] = order_to_one_based(d.order);
      outputs["profile"] = profile_to_json(d.profile);
      outputs["report"] = duality_json(d.report);
      dual.emplace(d.channel, d.order);
      target = d.profile;
    }
    outputs["rates"] = dual->rates(target);
    if (solved) {
      const auto gne = certify_gne(*dual, target);
      outputs["dual_certificate"] = {{"rescaled_weights", gne.rescaled_weights},
                                     {"certificate", certificate_json(gne.certificate)}};
    }
    emit("dual-transform", cfg.digest, outputs);
    return ok;
  }

  int check_dsc_cmd() {
    const Config cfg = load_config(require_config());
    const Game game = game_of(cfg);
    const NoEWeights r = weights_of(cfg, game);
    const std::uint64_t seed = args_.seed.value_or(0);
    const auto report = sample_dsc(game, r, args_.samples, seed, args_.jobs);
    json outputs{{"weights", numbers_json(r.values())},
                 {"samples", report.samples},
                 {"min_gap", report.min_gap},
                 {"verdict", report.verdict == DSCReport::Verdict::no_violation ? "no_violation" : "counterexample"},
                 {"conclusion", report.conclusion()}};
    if (game.is_broadcast()) outputs["aligned_degraded"] = is_aligned_degraded(game.bc()).aligned_degraded;
    if (report.verdict == DSCReport::Verdict::counterexample) {
      outputs["argmin_first"] = profile_to_json(report.argmin_first);
      outputs["argmin_second"] = profile_to_json(report.argmin_second);
    }
    emit("check-dsc", cfg.digest, outputs);
    return ok;
  }

  int trace_ineq_cmd() {
    if (args_.users < 1 || args_.dim < 1) throw ValidationError("trace-ineq: --users and --dim must be positive");
    const std::uint64_t seed = args_.seed.value_or(0);
    double min_lemma = std::numeric_limits<double>::infinity();
    double min_pair = std::numeric_limits<double>::infinity();
    std::size_t arg_lemma = 0;
    std::size_t arg_pair = 0;
    std::uniform_real_distribution<double> log_w(-3.0, 3.0);
    for (std::size_t i = 0; i < args_.samples; ++i) {
      sampling::Rng rng = sampling::stream(seed, i);
      std::vector<Matrix> a;
      std::vector<Matrix> b;
      for (std::size_t k = 0; k < args_.users; ++k) {
        a.push_back(sampling::random_psd(rng, args_.dim));
        b.push_back(sampling::random_psd(rng, args_.dim));
      }
      const double lemma = trace_inequality(a, b);
      if (lemma < min_lemma) {
        min_lemma = lemma;
        arg_lemma = i;
      }
      const Matrix a2 = sampling::random_psd(rng, args_.dim);
      const Matrix b2 = sampling::random_psd(rng, args_.dim);
      const double w = std::exp(log_w(rng));
      const double pair = trace_inequality_tight2(a[0], b[0], a2, b2, w);
      if (pair < min_pair) {
        min_pair = pair;
        arg_pair = i;
      }
    }
    constexpr double kFloor = -1e-10;
    const bool holds = min_lemma >= kFloor && min_pair >= kFloor;
    emit("trace-ineq", "",
         {{"samples", args_.samples},
          {"users", args_.users},
          {"dim", args_.dim},
          {"min_lemma", min_lemma},
          {"argmin_lemma", arg_lemma},
          {"min_two_matrix", min_pair},
          {"argmin_two_matrix", arg_pair},
          {"holds", holds}});
    return holds ? ok : verification_error;
  }

  int penalty_sim_cmd() {
    const Config cfg = load_config(require_config());
    const Game game = game_of(cfg);
    const NoEWeights r = weights_of(cfg, game);
    const NoESolution ref = solve_noe(game, r, solve_options());
    PenaltyConfig pc;
    pc.shadow_price = args_.price.value_or(ref.certificate.shadow_price);
    pc.weights.assign(r.values().begin(), r.values().end());
    pc.damping = args_.damping;
    pc.max_iterations = args_.max_iter;
    pc.simultaneous = args_.simultaneous;
    pc.update = args_.subgradient ? PenaltyUpdate::subgradient : PenaltyUpdate::best_response;
    pc.step = args_.step;
    pc.tol = tol(1e-10);
    const auto res = run_penalty_game(game, pc, &ref.profile);
    if (format() == "csv") {
      std::ostringstream os;
      write_trajectory_csv(os, res.trajectory);
      write(os.str());
      return ok;
    }
    emit("penalty-sim", cfg.digest,
         {{"shadow_price", pc.shadow_price},
          {"weights", pc.weights},
          {"mode", pc.simultaneous ? "simultaneous" : "round_robin"},
          {"update", args_.subgradient ? "subgradient" : "best_response"},
          {"profile", profile_to_json(res.profile)},
          {"rates", game.rates(res.profile)},
          {"iterations", res.iterations},
          {"residual", res.residual},
          {"feasible", res.feasible},
          {"reference_profile", profile_to_json(ref.profile)},
          {"distance_to_reference", *res.distance_to_reference},
          {"notes", res.notes}});
    return ok;
  }

  void set_start(std::chrono::steady_clock::time_point t) { start_ = t; }
  const std::vector<std::string>& notes() const { return err_notes_; }

 private:
  const std::string& require_config() const {
    if (args_.config.empty()) throw ValidationError("--config is required");
    return args_.config;
  }

  double tol(double fallback) const { return args_.tol.value_or(fallback); }

  std::string format(const char* fallback = "json") const { return args_.format.empty() ? fallback : args_.format; }

  Game game_of(const Config& cfg) const {
    Game game = cfg.game();
    if (!args_.order.empty()) {
      std::vector<long long> users;
      for (double u : parse_list(args_.order, "order")) {
        if (u != static_cast<double>(static_cast<long long>(u))) throw ValidationError("--order: users must be integers");
        users.push_back(static_cast<long long>(u));
      }
      const Order order = order_from_one_based(users);
      if (order.size() != game.num_users()) throw ValidationError("--order: length does not match number of users");
      game = game.with_order(order);
    }
    return game;
  }

  NoEWeights weights_of(const Config& cfg, const Game& game) const {
    std::vector<double> w;
    if (!args_.weights.empty()) {
      w = parse_list(args_.weights, "weights");
    } else if (cfg.weights) {
      w = *cfg.weights;
    } else {
      w.assign(game.num_users(), 1.0);
    }
    if (w.size() != game.num_users()) throw ValidationError("weights: length does not match number of users");
    return NoEWeights(std::move(w));
  }

  Profile profile_of(const Config& cfg, const Game& game) const {
    Profile q;
    if (!args_.profile.empty()) {
      const json j = read_json_file(args_.profile);
      // Accept a bare profile or any report carrying one.
      if (j.is_object() && j.contains("outputs") && j["outputs"].contains("profile")) {
        q = profile_from_json(j["outputs"]["profile"]);
      } else if (j.is_object() && j.contains("profile")) {
        q = profile_from_json(j["profile"]);
      } else {
        q = profile_from_json(j);
      }
    } else if (cfg.profile) {
      q = *cfg.profile;
    } else {
      throw ValidationError("a profile is required (--profile or \"profile\" in the config)");
    }
    game.check_profile(q);
    return q;
  }

  SolveOptions solve_options() const {
    SolveOptions o;
    o.damping = args_.damping;
    o.max_iterations = args_.max_iter;
    o.seed = args_.seed;
    o.certificate_tol = tol(1e-6);
    return o;
  }

  void emit(const std::string& command, const std::string& digest, json outputs) {
    if (format() == "csv") throw ValidationError(command + ": csv output is not supported");
    json report{{"command", command}, {"config_digest", digest}, {"outputs", std::move(outputs)}};
    report["seed"] = args_.seed ? json(*args_.seed) : json(nullptr);
    if (args_.timing) {
      report["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }
    write(report.dump(2) + "\n");
  }

  void write(const std::string& text) {
    if (args_.out.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(args_.out);
    if (!f) throw ValidationError("cannot write " + args_.out);
    f << text;
  }

  const Args& args_;
  std::ostream& out_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
  std::vector<std::string> err_notes_;
};

enum Flag : unsigned {
  kConfig = 1u << 0,
  kWeights = 1u << 1,
  kGamma = 1u << 2,
  kOrder = 1u << 3,
  kSeed = 1u << 4,
  kTol = 1u << 5,
  kSolve = 1u << 6,
  kProfile = 1u << 7,
  kJobs = 1u << 8,
  kSamples = 1u << 9,
};

void add_flags(CLI::App* sub, Args& a, unsigned flags) {
  sub->add_option("--out", a.out, "Write the report to this file instead of stdout");
  sub->add_option("--format", a.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_flag("--timing", a.timing, "Add wall-clock time to the JSON report");
  if (flags & kConfig) sub->add_option("--config", a.config, "Problem file (JSON)");
  if (flags & kWeights) sub->add_option("--weights", a.weights, "Equilibrium weights r, comma separated");
  if (flags & kGamma) sub->add_option("--gamma", a.gamma, "Pareto weights, comma separated");
  if (flags & kOrder) sub->add_option("--order", a.order, "Interference order, 1-based, comma separated");
  if (flags & kSeed) sub->add_option("--seed", a.seed, "Root seed");
  if (flags & kTol) sub->add_option("--tol", a.tol, "Tolerance (1e-6 for certificates, 1e-8 for transforms)");
  if (flags & kSolve) {
    sub->add_option("--damping", a.damping, "Damping of the fixed-point update")->capture_default_str();
    sub->add_option("--max-iter", a.max_iter, "Iteration limit")->capture_default_str();
  }
  if (flags & kProfile) sub->add_option("--profile", a.profile, "Covariance profile or report JSON");
  if (flags & kJobs) sub->add_option("--jobs", a.jobs, "Worker threads")->capture_default_str();
  if (flags & kSamples) sub->add_option("--samples", a.samples, "Number of random samples")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  Args a;
  CLI::App app{"Equilibria of Gaussian broadcast and sum-power MAC rate games", "bcgame"};
  app.require_subcommand(1);
  const unsigned base = kConfig | kWeights | kOrder | kSeed | kTol;

  auto* validate = app.add_subcommand("validate", "Check a problem file");
  add_flags(validate, a, kConfig);
  auto* solve = app.add_subcommand("solve-noe", "Compute and certify a normalized equilibrium");
  add_flags(solve, a, base | kSolve);
  auto* cert = app.add_subcommand("certify", "Certify a given profile as an equilibrium");
  add_flags(cert, a, base | kProfile);
  auto* sweep = app.add_subcommand("pareto-sweep", "Weighted sum-rate frontier over a gamma grid");
  add_flags(sweep, a, kConfig | kOrder | kSeed | kJobs);
  sweep->add_option("--gamma-grid", a.gamma_grid, "Number of grid points")->capture_default_str();
  auto* map = app.add_subcommand("map-weights", "Map Pareto weights to equilibrium weights or back");
  add_flags(map, a, base | kGamma | kSolve);
  auto* dual = app.add_subcommand("dual-transform", "MAC/BC covariance transform");
  add_flags(dual, a, base | kSolve | kProfile);
  auto* dsc = app.add_subcommand("check-dsc", "Sample the diagonal strict concavity condition");
  add_flags(dsc, a, kConfig | kWeights | kOrder | kSeed | kJobs | kSamples);
  auto* ineq = app.add_subcommand("trace-ineq", "Sample the trace inequalities");
  add_flags(ineq, a, kSeed | kSamples);
  ineq->add_option("--users", a.users, "Tuple length")->capture_default_str();
  ineq->add_option("--dim", a.dim, "Matrix size")->capture_default_str();
  auto* pen = app.add_subcommand("penalty-sim", "Best-response dynamics of the penalized game");
  add_flags(pen, a, base | kSolve);
  pen->add_option("--price", a.price, "Shadow price (default: certified NoE price)");
  pen->add_flag("--simultaneous", a.simultaneous, "Update all players from the same iterate");
  pen->add_flag("--subgradient", a.subgradient, "Projected subgradient steps instead of best responses");
  pen->add_option("--step", a.step, "Subgradient step scale")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return validation_error;
  }

  Runner runner(a, out);
  runner.set_start(start);
  try {
    int code = ok;
    if (validate->parsed()) code = runner.validate_cmd();
    else if (solve->parsed()) code = runner.solve_noe_cmd();
    else if (cert->parsed()) code = runner.certify_cmd();
    else if (sweep->parsed()) code = runner.pareto_sweep_cmd();
    else if (map->parsed()) code = runner.map_weights_cmd();
    else if (dual->parsed()) code = runner.dual_transform_cmd();
    else if (dsc->parsed()) code = runner.check_dsc_cmd();
    else if (ineq->parsed()) code = runner.trace_ineq_cmd();
    else if (pen->parsed()) code = runner.penalty_sim_cmd();
    for (const auto& n : runner.notes()) err << "warning: " << n << '\n';
    return code;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return validation_error;
  } catch (const ConvergenceError& e) {
    err << "convergence error: " << e.what() << " (residual " << e.residual() << ")\n";
    return convergence_error;
  } catch (const VerificationError& e) {
    err << "verification error: " << e.what() << '\n';
    return verification_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return validation_error;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace bcgame::cli

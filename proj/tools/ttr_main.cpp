// Command line front end: instance generation, training, solving,
// validation, exhaustive search, LP export, batch evaluation, and plot-data
// emission.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ttr/evaluation.hpp"
#include "ttr/event_graph.hpp"
#include "ttr/instance_gen.hpp"
#include "ttr/local_search.hpp"
#include "ttr/lp_export.hpp"
#include "ttr/nn/checkpoint.hpp"
#include "ttr/objective.hpp"
#include "ttr/oracle.hpp"
#include "ttr/orders.hpp"
#include "ttr/rollout.hpp"
#include "ttr/serialization.hpp"
#include "ttr/trainer.hpp"
#include "ttr/validation.hpp"

namespace fs = std::filesystem;
using namespace ttr;

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("TTR_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 0;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

ValidationProfile parse_profile(const std::string& name) {
  if (name == "strict-milp") return ValidationProfile::StrictMilp;
  if (name == "operational") return ValidationProfile::Operational;
  throw CLI::ValidationError("--profile", "expected strict-milp or operational");
}

std::vector<fs::path> expand_instances(const std::vector<std::string>& args) {
  std::vector<fs::path> files;
  for (const auto& a : args) {
    fs::path p(a);
    if (fs::is_directory(p)) {
      for (const auto& entry : fs::directory_iterator(p)) {
        if (!entry.is_regular_file()) continue;
        const auto name = entry.path().filename().string();
        if (entry.path().extension() != ".json") continue;
        if (name == "manifest.json" || name.ends_with(".sol.json")) continue;
        files.push_back(entry.path());
      }
    } else {
      files.push_back(p);
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw std::runtime_error("no instance files found");
  return files;
}

/// A solving method selected on the command line: a dispatch rule or a
/// policy checkpoint.
struct Method {
  std::string label;
  enum { Fcfs, Fsfs, Policy } kind = Fcfs;
  std::string checkpoint;
};

Method parse_method(const std::string& arg) {
  Method m;
  if (arg == "fcfs") {
    m.label = "fcfs";
    m.kind = Method::Fcfs;
  } else if (arg == "fsfs") {
    m.label = "fsfs";
    m.kind = Method::Fsfs;
  } else {
    m.label = fs::path(arg).stem().string();
    m.kind = Method::Policy;
    m.checkpoint = arg;
  }
  return m;
}

struct SolveOutput {
  ScheduleResult schedule;
  double wall_s = 0;
};

SolveOutput run_method(const Method& m, const Instance& inst,
                       nn::PolicyParams* params, RolloutMode mode,
                       std::uint64_t seed, int local_search_iters) {
  SolveOutput out;
  const auto start = std::chrono::steady_clock::now();
  switch (m.kind) {
    case Method::Fcfs:
      out.schedule = solve_fcfs(inst);
      break;
    case Method::Fsfs:
      out.schedule = solve_fsfs(inst);
      break;
    case Method::Policy: {
      std::mt19937_64 rng(seed);
      auto res = rollout(inst, *params, mode, rng, {}, /*record_states=*/false);
      out.schedule = std::move(res.schedule);
      break;
    }
  }
  if (out.schedule.feasible && local_search_iters > 0) {
    SearchConfig cfg;
    cfg.max_iterations = local_search_iters;
    cfg.seed = seed;
    out.schedule = local_search(out.schedule, inst, cfg);
  }
  out.wall_s = seconds_since(start);
  return out;
}

TrainConfig read_train_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config: " + path);
  TrainConfig cfg;
  cfg.seed = default_seed();
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) continue;
    try {
      if (key == "gamma") cfg.gamma = std::stod(value);
      else if (key == "clip") cfg.clip = std::stod(value);
      else if (key == "w1") cfg.w1 = std::stod(value);
      else if (key == "w2") cfg.w2 = std::stod(value);
      else if (key == "w3_stage1") cfg.w3_stage1 = std::stod(value);
      else if (key == "w3_stage2") cfg.w3_stage2 = std::stod(value);
      else if (key == "w4") cfg.w4 = std::stod(value);
      else if (key == "lr") cfg.lr = std::stof(value);
      else if (key == "episodes") cfg.episodes = std::stoi(value);
      else if (key == "epochs_per_episode") cfg.epochs_per_episode = std::stoi(value);
      else if (key == "p_small") cfg.p_small = std::stod(value);
      else if (key == "p_large") cfg.p_large = std::stod(value);
      else if (key == "stage") cfg.stage = std::stoi(value);
      else if (key == "seed") cfg.seed = std::stoull(value);
      else if (key == "stations") cfg.num_stations = std::stoi(value);
      else if (key == "trains") cfg.num_trains = std::stoi(value);
      else if (key == "tau1") cfg.tau1 = std::stoll(value);
      else if (key == "tau3") cfg.tau3 = std::stod(value);
      else if (key == "tau2_small") cfg.tau2_small = std::stoll(value);
      else if (key == "tau2_large") cfg.tau2_large = std::stoll(value);
      else if (key == "eval_interval") cfg.eval_interval = std::stoi(value);
      else if (key == "eval_set_size") cfg.eval_set_size = std::stoi(value);
      else if (key == "gin_input_dim") cfg.net.input_dim = std::stoi(value);
      else throw std::runtime_error("unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw std::runtime_error("bad value for '" + key + "' at " + path + ":" +
                               std::to_string(lineno));
    }
  }
  return cfg;
}

int cmd_generate(int stations, int trains, Minutes tau1, Minutes tau2,
                 double tau3, int count, std::uint64_t seed,
                 const std::string& out_dir) {
  GenConfig cfg;
  cfg.num_stations = stations;
  cfg.num_trains = trains;
  cfg.tau1 = tau1;
  cfg.tau2 = tau2;
  cfg.tau3 = tau3;
  cfg.count = count;
  cfg.seed = seed;
  fs::create_directories(out_dir);
  const auto instances = generate_batch(cfg);
  nlohmann::json manifest;
  manifest["stations"] = stations;
  manifest["trains"] = trains;
  manifest["tau1"] = tau1;
  manifest["tau2"] = tau2;
  manifest["tau3"] = tau3;
  manifest["seed"] = seed;
  manifest["count"] = count;
  for (int n = 0; n < count; ++n) {
    std::ostringstream name;
    name << "inst_" << std::setw(4) << std::setfill('0') << n << ".json";
    save_instance(instances[n], (fs::path(out_dir) / name.str()).string());
    manifest["files"].push_back(name.str());
  }
  std::ofstream ms(fs::path(out_dir) / "manifest.json");
  ms << manifest.dump(1) << '\n';
  std::cout << "wrote " << count << " instances to " << out_dir << "\n";
  return 0;
}

int cmd_train(const std::string& config_path, int stage_override,
              const std::string& teacher_path, const std::string& out_dir) {
  TrainConfig cfg = read_train_config(config_path);
  if (stage_override > 0) cfg.stage = stage_override;
  cfg.check();
  std::optional<nn::PolicyParams> teacher;
  if (cfg.stage == 2) {
    if (teacher_path.empty())
      throw std::runtime_error("stage 2 needs --teacher <stage-1 checkpoint>");
    teacher = nn::load_checkpoint(teacher_path).first;
  }
  fs::create_directories(out_dir);
  std::ofstream curve((fs::path(out_dir) / "train_log.csv").string());
  const auto start = std::chrono::steady_clock::now();
  auto result = train(cfg, teacher ? &*teacher : nullptr, {}, &curve);
  nn::CheckpointMeta meta;
  meta.stage = cfg.stage;
  meta.seed = cfg.seed;
  const std::string ckpt = (fs::path(out_dir) / "model.ckpt").string();
  nn::save_checkpoint(result.params, meta, ckpt);
  std::cout << "trained " << cfg.episodes << " episodes in "
            << seconds_since(start) << " s\n";
  if (!result.curve.empty())
    std::cout << "final mean validation objective: "
              << result.curve.back().mean_eval_objective << "\n";
  std::cout << "checkpoint: " << ckpt << "\n";
  return 0;
}

int cmd_solve(const std::string& policy, const std::string& instance_path,
              int ls_iters, const std::string& out_path, std::uint64_t seed,
              const std::string& mode_name) {
  const Instance inst = load_instance(instance_path);
  Method method = parse_method(policy);
  std::optional<nn::PolicyParams> params;
  if (method.kind == Method::Policy)
    params = nn::load_checkpoint(method.checkpoint).first;
  const RolloutMode mode =
      mode_name == "sample" ? RolloutMode::Sample : RolloutMode::Greedy;
  auto out = run_method(method, inst, params ? &*params : nullptr, mode, seed,
                        ls_iters);
  if (!out.schedule.feasible) {
    std::cout << "feasible: no\nreason: " << out.schedule.reason << "\n";
    return 2;
  }
  const ObjectiveConfig obj;
  std::cout << "objective: " << objective(out.schedule.sol, inst, obj) << "\n";
  std::cout << "feasible: yes\n";
  std::cout << "wall_time_s: " << out.wall_s << "\n";
  if (!out_path.empty()) {
    save_solution(out.schedule.sol, out_path);
    std::cout << "solution: " << out_path << "\n";
  }
  return 0;
}

int cmd_validate(const std::string& instance_path, const std::string& solution_path,
                 const std::string& profile_name) {
  const Instance inst = load_instance(instance_path);
  const Solution sol = load_solution(solution_path);
  const auto violations = validate(sol, inst, parse_profile(profile_name));
  for (const auto& v : violations) std::cout << to_string(v) << "\n";
  std::cout << (violations.empty() ? "valid" : "invalid") << " ("
            << violations.size() << " violations)\n";
  return violations.empty() ? 0 : 2;
}

int cmd_oracle(const std::string& instance_path, const std::string& out_path,
               std::uint64_t guard) {
  const Instance inst = load_instance(instance_path);
  OracleConfig cfg;
  if (guard > 0) cfg.guard = guard;
  const auto start = std::chrono::steady_clock::now();
  auto res = oracle_search(inst, cfg);
  if (!res.ok) {
    std::cerr << "error: oracle guard bound exceeded after " << res.replays
              << " section timings\n";
    return 1;
  }
  const ObjectiveConfig obj;
  std::cout << "objective: " << res.objective.value(obj) << "\n";
  std::cout << "replays: " << res.replays << "\n";
  std::cout << "wall_time_s: " << seconds_since(start) << "\n";
  if (!out_path.empty()) {
    save_solution(res.schedule.sol, out_path);
    std::cout << "solution: " << out_path << "\n";
  }
  return 0;
}

int cmd_export_lp(const std::string& instance_path, const std::string& out_path,
                  const std::string& profile_name, Minutes big_m, double lambda) {
  const Instance inst = load_instance(instance_path);
  ObjectiveConfig obj;
  obj.lambda = lambda;
  LpExportConfig lp;
  lp.big_m = big_m;
  export_lp_file(inst, obj, lp, out_path, parse_profile(profile_name));
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int cmd_evaluate(const std::vector<std::string>& policies,
                 const std::vector<std::string>& instance_args,
                 const std::string& baseline, const std::string& report_path,
                 int ls_iters, std::uint64_t seed, int threads) {
  const auto files = expand_instances(instance_args);
  std::vector<Instance> instances;
  instances.reserve(files.size());
  for (const auto& f : files) instances.push_back(load_instance(f.string()));

  std::vector<Method> methods;
  for (const auto& p : policies) methods.push_back(parse_method(p));
  const bool with_oracle = baseline == "oracle";
  std::optional<fs::path> baseline_dir;
  if (!baseline.empty() && !with_oracle) baseline_dir = fs::path(baseline);

  // Policy parameters are loaded once and copied per worker.
  std::vector<std::optional<nn::PolicyParams>> loaded(methods.size());
  for (std::size_t m = 0; m < methods.size(); ++m)
    if (methods[m].kind == Method::Policy)
      loaded[m] = nn::load_checkpoint(methods[m].checkpoint).first;

  const ObjectiveConfig obj;
  EvalReport report;
  std::mutex report_mutex;
  std::atomic<std::size_t> next{0};
  const int workers = threads > 0
                          ? threads
                          : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  auto work = [&] {
    for (std::size_t idx = next.fetch_add(1); idx < instances.size();
         idx = next.fetch_add(1)) {
      const Instance& inst = instances[idx];
      const std::string name = files[idx].stem().string();
      std::vector<EvalRow> local;
      for (std::size_t m = 0; m < methods.size(); ++m) {
        std::optional<nn::PolicyParams> params = loaded[m];  // private copy
        auto out = run_method(methods[m], inst, params ? &*params : nullptr,
                              RolloutMode::Greedy, seed, ls_iters);
        EvalRow row;
        row.instance = name;
        row.method = methods[m].label;
        row.feasible = out.schedule.feasible;
        row.wall_time_s = out.wall_s;
        row.objective =
            out.schedule.feasible ? objective(out.schedule.sol, inst, obj) : 0;
        local.push_back(std::move(row));
      }
      if (with_oracle) {
        const auto start = std::chrono::steady_clock::now();
        auto res = oracle_search(inst);
        EvalRow row;
        row.instance = name;
        row.method = "oracle";
        row.feasible = res.ok;
        row.wall_time_s = seconds_since(start);
        row.objective = res.ok ? res.objective.value(obj) : 0;
        local.push_back(std::move(row));
      } else if (baseline_dir) {
        fs::path sol_path = *baseline_dir;
        if (fs::is_directory(sol_path)) sol_path /= name + ".sol.json";
        if (fs::exists(sol_path)) {
          const Solution sol = load_solution(sol_path.string());
          EvalRow row;
          row.instance = name;
          row.method = "baseline";
          row.feasible = true;
          row.objective = objective(sol, inst, obj);
          local.push_back(std::move(row));
        }
      }
      std::lock_guard<std::mutex> lock(report_mutex);
      for (auto& r : local) report.rows.push_back(std::move(r));
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();

  std::sort(report.rows.begin(), report.rows.end(),
            [](const EvalRow& a, const EvalRow& b) {
              return std::tie(a.instance, a.method) < std::tie(b.instance, b.method);
            });
  report.save_csv(report_path);

  const std::string base_label = with_oracle ? "oracle" : "baseline";
  std::cout << "method,instances,infeasible,mean_objective,gap_vs_" << base_label
            << ",mean_wall_s\n";
  for (const auto& m : report.methods()) {
    std::cout << m << ',' << report.count(m) << ',' << report.infeasible_count(m)
              << ',';
    if (auto mean = report.mean_objective(m))
      std::cout << *mean;
    std::cout << ',';
    if (auto gap = report.gap_percent(m, base_label))
      std::cout << *gap << '%';
    std::cout << ',';
    if (auto t = report.mean_wall_time(m)) std::cout << *t;
    std::cout << '\n';
  }
  std::cout << "report: " << report_path << "\n";
  return 0;
}

int cmd_plot_data(const std::string& report_path, const std::string& curve_path,
                  const std::string& instance_path, const std::string& solution_path,
                  const std::string& out_dir) {
  fs::create_directories(out_dir);
  bool wrote = false;
  if (!report_path.empty()) {
    const EvalReport report = EvalReport::load_csv(report_path);
    std::ofstream os(fs::path(out_dir) / "methods_summary.csv");
    os << "method,instances,infeasible,mean_objective,mean_wall_s\n";
    for (const auto& m : report.methods()) {
      os << m << ',' << report.count(m) << ',' << report.infeasible_count(m) << ',';
      if (auto mean = report.mean_objective(m)) os << *mean;
      os << ',';
      if (auto t = report.mean_wall_time(m)) os << *t;
      os << '\n';
    }
    std::cout << "wrote " << (fs::path(out_dir) / "methods_summary.csv").string()
              << "\n";
    wrote = true;
  }
  if (!curve_path.empty()) {
    std::ifstream is(curve_path);
    if (!is) throw std::runtime_error("cannot open curve log: " + curve_path);
    std::ofstream os(fs::path(out_dir) / "learning_curve.csv");
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
      if (first) {
        if (!line.starts_with("episode,"))
          throw std::runtime_error("unexpected curve header: " + line);
        os << "episode,mean_objective\n";
        first = false;
        continue;
      }
      std::istringstream row(line);
      std::string episode, mean;
      if (std::getline(row, episode, ',') && std::getline(row, mean, ','))
        os << episode << ',' << mean << '\n';
    }
    std::cout << "wrote " << (fs::path(out_dir) / "learning_curve.csv").string()
              << "\n";
    wrote = true;
  }
  if (!instance_path.empty() && !solution_path.empty()) {
    const Instance inst = load_instance(instance_path);
    const Solution sol = load_solution(solution_path);
    std::ofstream os(fs::path(out_dir) / "timetable.csv");
    os << "train,station,planned_arrival,planned_departure,arrival,departure,"
          "track\n";
    for (int k = 0; k < inst.num_trains; ++k)
      for (int i = 0; i < inst.num_stations; ++i)
        os << k << ',' << i << ',' << inst.planned_arrival[k][i] << ','
           << inst.planned_departure[k][i] << ',' << sol.arrival[k][i] << ','
           << sol.departure[k][i] << ',' << sol.track[k][i] << '\n';
    std::cout << "wrote " << (fs::path(out_dir) / "timetable.csv").string() << "\n";
    wrote = true;
  }
  if (!wrote)
    throw std::runtime_error(
        "nothing to do: give --report, --curve, or --instance with --solution");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"train timetable rescheduling toolkit"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write augmented problem instances");
  int g_stations = 5, g_trains = 5, g_count = 10;
  Minutes g_tau1 = 20, g_tau2 = 60;
  double g_tau3 = 0.3;
  std::uint64_t g_seed = default_seed();
  std::string g_out = "instances";
  gen->add_option("--stations", g_stations, "stations per instance");
  gen->add_option("--trains", g_trains, "trains per instance");
  gen->add_option("--tau1", g_tau1, "timetable jitter bound (min)");
  gen->add_option("--tau2", g_tau2, "entry delay bound (min): 60 disturbance, 180 disruption");
  gen->add_option("--tau3", g_tau3, "minimum run time fraction");
  gen->add_option("--count", g_count, "number of instances");
  gen->add_option("--seed", g_seed, "master seed");
  gen->add_option("--out", g_out, "output directory");

  // train
  auto* tr = app.add_subcommand("train", "train the decision model");
  std::string t_config, t_teacher, t_out = "run";
  int t_stage = 0;
  tr->add_option("--config", t_config, "key = value config file")->required();
  tr->add_option("--stage", t_stage, "override the config's stage (1 or 2)");
  tr->add_option("--teacher", t_teacher, "stage-1 checkpoint for stage 2");
  tr->add_option("--out", t_out, "output directory");

  // solve
  auto* so = app.add_subcommand("solve", "reschedule one instance");
  std::string s_policy, s_instance, s_out, s_mode = "greedy";
  int s_ls = 0;
  std::uint64_t s_seed = default_seed();
  so->add_option("--policy", s_policy, "fcfs, fsfs, or a checkpoint path")->required();
  so->add_option("--instance", s_instance, "instance file")->required();
  so->add_option("--local-search", s_ls, "improvement iterations after solving");
  so->add_option("--out", s_out, "write the solution here");
  so->add_option("--seed", s_seed, "seed for sampling and local search");
  so->add_option("--mode", s_mode, "greedy or sample (checkpoint policies)");

  // validate
  auto* va = app.add_subcommand("validate", "check a solution against an instance");
  std::string v_instance, v_solution, v_profile = "operational";
  va->add_option("--instance", v_instance)->required();
  va->add_option("--solution", v_solution)->required();
  va->add_option("--profile", v_profile, "strict-milp or operational");

  // oracle
  auto* orc = app.add_subcommand("oracle", "exhaustive order-space search");
  std::string o_instance, o_out;
  std::uint64_t o_guard = 0;
  orc->add_option("--instance", o_instance)->required();
  orc->add_option("--out", o_out, "write the best solution here");
  orc->add_option("--guard", o_guard, "maximum section timings");

  // export-lp
  auto* lp = app.add_subcommand("export-lp", "write the mixed-integer model");
  std::string l_instance, l_out, l_profile = "strict-milp";
  Minutes l_bigm = 0;
  double l_lambda = 0.3;
  lp->add_option("--instance", l_instance)->required();
  lp->add_option("--out", l_out)->required();
  lp->add_option("--profile", l_profile, "strict-milp or operational");
  lp->add_option("--big-m", l_bigm, "override the derived big-M");
  lp->add_option("--lambda", l_lambda, "early-arrival weight");

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "score methods over an instance set");
  std::vector<std::string> e_policies, e_instances;
  std::string e_baseline, e_report = "report.csv";
  int e_ls = 0, e_threads = 0;
  std::uint64_t e_seed = default_seed();
  ev->add_option("--policy", e_policies, "fcfs, fsfs, or checkpoint (repeatable)")
      ->required()
      ->take_all();
  ev->add_option("--instances", e_instances, "instance files or directories")
      ->required()
      ->take_all();
  ev->add_option("--baseline", e_baseline,
                 "'oracle' or a directory of <name>.sol.json solutions");
  ev->add_option("--report", e_report, "CSV report path");
  ev->add_option("--local-search", e_ls, "improvement iterations per solve");
  ev->add_option("--seed", e_seed);
  ev->add_option("--threads", e_threads, "worker threads (default: hardware)");

  // plot-data
  auto* pd = app.add_subcommand("plot-data", "emit CSV series for plots");
  std::string p_report, p_curve, p_instance, p_solution, p_out = "plots";
  pd->add_option("--report", p_report, "evaluation report CSV");
  pd->add_option("--curve", p_curve, "training log CSV");
  pd->add_option("--instance", p_instance, "instance for a timetable diagram");
  pd->add_option("--solution", p_solution, "solution for a timetable diagram");
  pd->add_option("--out", p_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return cmd_generate(g_stations, g_trains, g_tau1, g_tau2, g_tau3, g_count,
                          g_seed, g_out);
    if (tr->parsed()) return cmd_train(t_config, t_stage, t_teacher, t_out);
    if (so->parsed())
      return cmd_solve(s_policy, s_instance, s_ls, s_out, s_seed, s_mode);
    if (va->parsed()) return cmd_validate(v_instance, v_solution, v_profile);
    if (orc->parsed()) return cmd_oracle(o_instance, o_out, o_guard);
    if (lp->parsed())
      return cmd_export_lp(l_instance, l_out, l_profile, l_bigm, l_lambda);
    if (ev->parsed())
      return cmd_evaluate(e_policies, e_instances, e_baseline, e_report, e_ls,
                          e_seed, e_threads);
    if (pd->parsed())
      return cmd_plot_data(p_report, p_curve, p_instance, p_solution, p_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

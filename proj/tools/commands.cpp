#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "fendec/fendec.h"

namespace fendec::cli {

namespace {

namespace fs = std::filesystem;

struct InstanceDeleter {
  void operator()(fendec_instance* p) const { fendec_instance_free(p); }
};
struct ReportDeleter {
  void operator()(fendec_report* p) const { fendec_report_free(p); }
};
struct TraceDeleter {
  void operator()(fendec_isg_trace* p) const { fendec_isg_trace_free(p); }
};
using InstancePtr = std::unique_ptr<fendec_instance, InstanceDeleter>;
using ReportPtr = std::unique_ptr<fendec_report, ReportDeleter>;
using TracePtr = std::unique_ptr<fendec_isg_trace, TraceDeleter>;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::uint64_t resolve_seed(const CLI::Option* flag, std::uint64_t value) {
  if (flag->count() > 0) return value;
  if (const char* env = std::getenv("FENDEC_SEED"); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw UsageError(std::string("FENDEC_SEED is not an integer: ") + env);
    return v;
  }
  return value;
}

fendec_algorithm parse_algorithm(const std::string& name) {
  if (name == "sfd") return FENDEC_ALG_SFD;
  if (name == "sfd-r") return FENDEC_ALG_SFD_R;
  if (name == "direct") return FENDEC_ALG_DIRECT;
  throw UsageError("unknown algorithm '" + name + "' (expected sfd, sfd-r or direct)");
}

struct Row {
  std::string instance;
  std::string group;  // instance name without its replication tag
  std::string algorithm;
  std::size_t scens = 0;
  double mips = 0, cuts = 0, lb = NAN, ub = NAN, gap = NAN, iterations = 0, wall = 0;
  std::uint64_t seed = 0;
  bool crashed = false;
  std::string error;
};

std::string csv_line(const Row& r) {
  std::ostringstream os;
  os << r.instance << ',' << r.algorithm << ',' << r.scens << ',' << num(r.mips) << ','
     << num(r.cuts) << ',' << num(r.lb) << ',' << num(r.ub) << ',' << num(r.gap) << ','
     << num(r.iterations) << ',' << num(r.wall) << ',' << r.seed;
  return os.str();
}

// k.10.20.50a -> k.10.20.50
std::string group_of(const std::string& name) {
  if (name.size() > 2 && name.rfind("k.", 0) == 0 && std::isalpha(static_cast<unsigned char>(name.back())))
    return name.substr(0, name.size() - 1);
  return name;
}

// Appends to path, writing the header first when the file is new or empty.
bool append_csv(const std::string& path, const std::vector<Row>& rows, std::ostream& err) {
  std::error_code ec;
  const bool fresh = !fs::exists(path, ec) || fs::file_size(path, ec) == 0;
  std::ofstream f(path, std::ios::app);
  if (!f) {
    err << "error: cannot open " << path << " for writing\n";
    return false;
  }
  if (fresh) f << kCsvHeader << '\n';
  for (const auto& r : rows) f << csv_line(r) << '\n';
  return static_cast<bool>(f);
}

struct SolveSettings {
  double budget = 60.0;
  std::size_t budget_iters = 0;
  double eps = 1e-6;
  bool l1 = false;
};

Row solve_cell(const fendec_instance* inst, const std::string& alg, const SolveSettings& st,
               std::uint64_t seed) {
  Row row;
  row.instance = fendec_instance_name(inst);
  row.group = group_of(row.instance);
  row.algorithm = alg;
  row.seed = seed;
  fendec_dims dims{};
  fendec_instance_dims(inst, &dims);
  row.scens = dims.scenarios;

  fendec_solve_options opt;
  fendec_solve_options_default(&opt);
  opt.eps = st.eps;
  opt.time_limit_seconds = st.budget;
  opt.iteration_limit = st.budget_iters;
  opt.l1_domain = st.l1 ? 1 : 0;
  fendec_report* raw = nullptr;
  if (fendec_solve(inst, parse_algorithm(alg), &opt, &raw) != FENDEC_OK) {
    row.crashed = true;
    row.error = fendec_last_error();
    return row;
  }
  const ReportPtr rep(raw);
  fendec_report_summary s{};
  fendec_report_get_summary(rep.get(), &s);
  row.mips = static_cast<double>(s.mips_solved);
  row.cuts = static_cast<double>(s.fenchel_cuts);
  row.lb = s.lb;
  row.ub = s.ub;
  row.gap = s.gap_pct;
  row.iterations = static_cast<double>(s.iterations);
  row.wall = s.wall_seconds;
  if (s.status == FENDEC_SOLVE_FAILED) row.error = fendec_report_message(rep.get());
  return row;
}

void add_solve_flags(CLI::App* app, SolveSettings& st) {
  app->add_option("--budget", st.budget, "Wall-clock budget per run in seconds")
      ->check(CLI::PositiveNumber);
  app->add_option("--budget-iters", st.budget_iters,
                  "Iteration budget (master solves, or B&B nodes for direct); 0 = none");
  app->add_option("--eps", st.eps, "Relative optimality tolerance")->check(CLI::PositiveNumber);
  app->add_flag("--l1", st.l1, "Fenchel coefficients in the L1 ball instead of the box");
}

// ---- gen ----

struct GenArgs {
  fendec_gen_config cfg{};
  std::size_t reps = 1;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  CLI::Option* seed_flag = nullptr;
};

void add_gen_flags(CLI::App* app, GenArgs& g, bool require_scens) {
  fendec_gen_config_default(&g.cfg);
  app->add_option("--n1", g.cfg.n1, "First-stage binaries")->check(CLI::PositiveNumber);
  app->add_option("--n2", g.cfg.n2, "Second-stage integers")->check(CLI::PositiveNumber);
  app->add_option("--m1", g.cfg.m1, "First-stage rows")->check(CLI::PositiveNumber);
  app->add_option("--m2", g.cfg.m2, "Second-stage rows")->check(CLI::PositiveNumber);
  auto* scens = app->add_option("--scens", g.cfg.scenarios, "Scenario count")
                    ->check(CLI::PositiveNumber);
  if (require_scens) scens->required();
  app->add_option("--reps", g.reps, "Replications, tagged a, b, c, ...")->check(CLI::Range(1, 26));
  app->add_option("--v-ub", g.cfg.v_ub, "Upper bound of every second-stage variable")
      ->check(CLI::Range(1.0, 1e6));
  app->add_option("--m-const", g.cfg.m_const, "Coupling multiplier")->check(CLI::PositiveNumber);
  g.seed_flag = app->add_option("--seed", g.seed, "Generator seed (falls back to FENDEC_SEED)");
}

std::vector<InstancePtr> generate_all(GenArgs& g, std::ostream& err) {
  g.cfg.seed = resolve_seed(g.seed_flag, g.seed);
  g.seed = g.cfg.seed;
  std::vector<InstancePtr> out;
  for (std::size_t r = 0; r < g.reps; ++r) {
    g.cfg.rep = static_cast<char>('a' + r);
    fendec_instance* raw = nullptr;
    if (fendec_generate(&g.cfg, &raw) != FENDEC_OK) {
      err << "error: " << fendec_last_error() << '\n';
      return {};
    }
    out.emplace_back(raw);
  }
  return out;
}

int cmd_gen(GenArgs& g, std::ostream& out, std::ostream& err) {
  auto instances = generate_all(g, err);
  if (instances.empty()) return kUsage;
  std::error_code ec;
  fs::create_directories(g.out_dir, ec);
  for (const auto& inst : instances) {
    const auto path = (fs::path(g.out_dir) / (std::string(fendec_instance_name(inst.get())) + ".sipx")).string();
    if (fendec_instance_write(inst.get(), path.c_str()) != FENDEC_OK) {
      err << "error: " << fendec_last_error() << '\n';
      return kIoError;
    }
    out << path << '\n';
  }
  return kOk;
}

// ---- solve ----

struct SolveArgs {
  std::string path;
  std::string alg = "sfd-r";
  SolveSettings st;
  std::string csv;
  std::uint64_t seed = 0;
  CLI::Option* seed_flag = nullptr;
};

int cmd_solve(SolveArgs& a, std::ostream& out, std::ostream& err) {
  const std::uint64_t seed = resolve_seed(a.seed_flag, a.seed);
  parse_algorithm(a.alg);
  fendec_instance* raw = nullptr;
  if (const auto s = fendec_instance_read(a.path.c_str(), &raw); s != FENDEC_OK) {
    err << "error: " << fendec_last_error() << '\n';
    return s == FENDEC_ERR_IO ? kIoError : kUsage;
  }
  const InstancePtr inst(raw);
  const Row row = solve_cell(inst.get(), a.alg, a.st, seed);
  if (row.crashed) {
    err << "error: " << row.error << '\n';
    return kIoError;
  }
  if (!row.error.empty()) err << "warning: " << row.error << '\n';
  if (a.csv.empty()) {
    out << kCsvHeader << '\n' << csv_line(row) << '\n';
    return kOk;
  }
  out << row.instance << ' ' << row.algorithm << ": lb " << num(row.lb) << " ub " << num(row.ub)
      << " gap " << num(row.gap) << "% cuts " << num(row.cuts) << " mips " << num(row.mips)
      << " iterations " << num(row.iterations) << " wall " << num(row.wall) << "s\n";
  return append_csv(a.csv, {row}, err) ? kOk : kIoError;
}

// ---- bench ----

struct BenchArgs {
  std::vector<std::string> paths;
  std::vector<std::string> algs{"sfd", "sfd-r", "direct"};
  SolveSettings st;
  std::string csv;
  std::string svg;
  std::size_t jobs = 1;
  bool generate = false;
  GenArgs gen;
};

Row average(const std::vector<const Row*>& rows) {
  Row avg;
  avg.instance = "avg:" + rows.front()->group;
  avg.group = rows.front()->group;
  avg.algorithm = rows.front()->algorithm;
  avg.scens = rows.front()->scens;
  avg.seed = rows.front()->seed;
  avg.lb = avg.ub = avg.gap = 0.0;
  for (const auto* r : rows) {
    avg.mips += r->mips;
    avg.cuts += r->cuts;
    avg.lb += r->lb;
    avg.ub += r->ub;
    avg.gap += r->gap;
    avg.iterations += r->iterations;
    avg.wall += r->wall;
  }
  const double n = static_cast<double>(rows.size());
  for (double* v : {&avg.mips, &avg.cuts, &avg.lb, &avg.ub, &avg.gap, &avg.iterations, &avg.wall})
    *v /= n;
  return avg;
}

std::string svg_escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '<') o += "&lt;";
    else if (c == '>') o += "&gt;";
    else if (c == '&') o += "&amp;";
    else o += c;
  }
  return o;
}

// One panel per metric; bars are the per-group algorithm averages.
std::string render_svg(const std::vector<Row>& averages) {
  struct Metric {
    const char* title;
    double Row::*field;
  };
  const Metric metrics[] = {{"gap (%)", &Row::gap}, {"MIPs solved", &Row::mips},
                            {"Fenchel cuts", &Row::cuts}};
  const char* colors[] = {"#4477aa", "#ee6677", "#228833", "#ccbb44", "#66ccee"};
  const double panel_w = 320, panel_h = 240, bar_area = 170, left = 40, top = 30;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << panel_w * 3 << "\" height=\""
     << panel_h + 40 << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (std::size_t m = 0; m < 3; ++m) {
    const double x0 = panel_w * static_cast<double>(m);
    double vmax = 0.0;
    for (const auto& r : averages)
      if (std::isfinite(r.*metrics[m].field)) vmax = std::max(vmax, r.*metrics[m].field);
    if (vmax <= 0.0) vmax = 1.0;
    os << "<text x=\"" << x0 + left << "\" y=\"16\" font-weight=\"bold\">" << metrics[m].title
       << "</text>\n";
    const double slot = (panel_w - left - 20) / static_cast<double>(std::max<std::size_t>(1, averages.size()));
    for (std::size_t b = 0; b < averages.size(); ++b) {
      const double raw = averages[b].*metrics[m].field;
      const double v = std::isfinite(raw) ? raw : vmax;
      const double h = bar_area * v / vmax;
      const double x = x0 + left + slot * static_cast<double>(b);
      os << "<rect x=\"" << x + 2 << "\" y=\"" << top + bar_area - h << "\" width=\"" << slot - 4
         << "\" height=\"" << h << "\" fill=\"" << colors[b % 5] << "\"/>\n";
      os << "<text x=\"" << x + slot / 2 << "\" y=\"" << top + bar_area - h - 3
         << "\" text-anchor=\"middle\">" << num(raw) << "</text>\n";
      os << "<text x=\"" << x + slot / 2 << "\" y=\"" << top + bar_area + 14
         << "\" text-anchor=\"middle\">" << svg_escape(averages[b].algorithm) << "</text>\n";
      os << "<text x=\"" << x + slot / 2 << "\" y=\"" << top + bar_area + 28
         << "\" text-anchor=\"middle\" font-size=\"9\">" << svg_escape(averages[b].group)
         << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

int cmd_bench(BenchArgs& b, std::ostream& out, std::ostream& err) {
  if (b.algs.empty()) throw UsageError("bench needs at least one algorithm");
  for (const auto& a : b.algs) parse_algorithm(a);
  if (b.jobs == 0) b.jobs = 1;

  std::vector<InstancePtr> instances;
  std::uint64_t seed = 0;
  if (b.generate) {
    instances = generate_all(b.gen, err);
    if (instances.empty()) return kUsage;
    seed = b.gen.seed;
  } else {
    seed = resolve_seed(b.gen.seed_flag, 0);
  }
  for (const auto& p : b.paths) {
    fendec_instance* raw = nullptr;
    if (fendec_instance_read(p.c_str(), &raw) != FENDEC_OK) {
      err << "error: " << fendec_last_error() << '\n';
      return kIoError;
    }
    instances.emplace_back(raw);
  }
  if (instances.empty()) throw UsageError("bench needs instance files or --gen");

  // Cells run on up to --jobs threads; rows are collected by index and
  // written by this thread once all cells finish.
  const std::size_t cells = instances.size() * b.algs.size();
  std::vector<Row> rows(cells);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c; (c = next.fetch_add(1)) < cells;) {
      const auto& inst = instances[c / b.algs.size()];
      rows[c] = solve_cell(inst.get(), b.algs[c % b.algs.size()], b.st, seed);
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(b.jobs, cells); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<std::string> groups;
  std::map<std::pair<std::string, std::string>, std::vector<const Row*>> by_cell;
  bool crashed = false;
  for (const auto& r : rows) {
    if (r.crashed) {
      crashed = true;
      err << "error: " << r.instance << ' ' << r.algorithm << ": " << r.error << '\n';
      continue;
    }
    if (std::find(groups.begin(), groups.end(), r.group) == groups.end()) groups.push_back(r.group);
    by_cell[{r.group, r.algorithm}].push_back(&r);
  }
  std::vector<Row> averages;
  for (const auto& g : groups)
    for (const auto& a : b.algs)
      if (auto it = by_cell.find({g, a}); it != by_cell.end()) averages.push_back(average(it->second));

  std::vector<Row> all = rows;
  all.insert(all.end(), averages.begin(), averages.end());
  if (b.csv.empty()) {
    out << kCsvHeader << '\n';
    for (const auto& r : all) out << csv_line(r) << '\n';
  } else if (!append_csv(b.csv, all, err)) {
    return kIoError;
  }

  std::ostream& summary = b.csv.empty() ? err : out;
  for (const auto& g : groups) {
    const Row* best = nullptr;
    for (const auto& a : averages)
      if (a.group == g && std::isfinite(a.gap) && (!best || a.gap < best->gap)) best = &a;
    if (best)
      summary << "min average gap on " << g << ": " << best->algorithm << " (" << num(best->gap)
              << "%)\n";
    else
      summary << "min average gap on " << g << ": none finite\n";
  }

  if (!b.svg.empty()) {
    std::ofstream f(b.svg);
    if (!(f << render_svg(averages))) {
      err << "error: cannot write " << b.svg << '\n';
      return kIoError;
    }
  }
  return crashed ? kIoError : kOk;
}

// ---- isg-demo ----

struct DemoCase {
  std::string name;
  std::string mode;
  std::size_t m, n;
  std::vector<double> W, tau, u, yhat;
  bool lookahead;
  std::vector<double> expected;
};

// LP optimum of a single knapsack row when the objective ratio favors y1:
// fill y1 to its bound, then y2 with what is left.
std::vector<double> greedy_lp(const std::vector<double>& w, double tau, const std::vector<double>& u) {
  const double y1 = std::min(u[0], tau / w[0]);
  const double y2 = std::min(u[1], (tau - w[0] * y1) / w[1]);
  return {y1, y2};
}

std::vector<DemoCase> demo_cases(double ip3_u) {
  std::vector<DemoCase> c;
  c.push_back({"IP1", "distance", 1, 2, {0.4, 1.0}, {3.4}, {3, 3}, {3.0, 2.2}, false, {1, 2}});
  const double v = 3.4 / 1.4;
  c.push_back({"IP2", "distance", 2, 2, {0.4, 1.0, 1.0, 0.4}, {3.4, 3.4}, {3, 3}, {v, v}, false, {1, 2}});
  const std::vector<double> u3{ip3_u, ip3_u};
  const auto y3 = greedy_lp({6.0, 5.0}, 37.4, u3);
  c.push_back({"IP3", "distance", 1, 2, {6.0, 5.0}, {37.4}, u3, y3, false, {4, 0}});
  c.push_back({"IP3", "full", 1, 2, {6.0, 5.0}, {37.4}, u3, y3, true, {2, 0}});
  return c;
}

const char* action_name(fendec_isg_action a) {
  switch (a) {
    case FENDEC_ISG_KEEP: return "keep";
    case FENDEC_ISG_LOWER_I: return "lower-i";
    case FENDEC_ISG_LOWER_J: return "lower-j";
    case FENDEC_ISG_INTEGER_POINT: return "integer-point";
  }
  return "unknown";
}

std::string vec_text(const std::vector<double>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v[i]);
  return s + ")";
}

int cmd_isg_demo(bool as_json, double ip3_u, std::ostream& out, std::ostream& err) {
  if (!(ip3_u >= 1.0)) throw UsageError("--ip3-u must be at least 1");
  bool all_pass = true;
  nlohmann::json doc;
  doc["examples"] = nlohmann::json::array();
  for (const auto& c : demo_cases(ip3_u)) {
    fendec_isg_trace* raw = nullptr;
    if (fendec_isg_run(c.m, c.n, c.W.data(), c.tau.data(), c.u.data(), c.yhat.data(),
                       c.lookahead ? 1 : 0, &raw) != FENDEC_OK) {
      err << "error: " << fendec_last_error() << '\n';
      return kSelfCheckFailed;
    }
    const TracePtr trace(raw);
    std::vector<double> ybar(c.n);
    fendec_isg_trace_ybar(trace.get(), ybar.data(), ybar.size());
    const bool pass = ybar == c.expected;
    all_pass = all_pass && pass;

    nlohmann::json steps = nlohmann::json::array();
    if (!as_json) out << c.name << " [" << c.mode << "] yhat=" << vec_text(c.yhat) << '\n';
    for (std::size_t t = 0; t < fendec_isg_trace_step_count(trace.get()); ++t) {
      fendec_isg_step s{};
      fendec_isg_trace_step(trace.get(), t, &s);
      std::vector<double> after(c.n);
      fendec_isg_trace_step_ybar(trace.get(), t, after.data(), after.size());
      // Axes and rows are printed 1-based.
      if (as_json) {
        steps.push_back({{"i", s.i + 1}, {"j", s.j + 1}, {"k", s.k + 1}, {"d", s.d},
                         {"action", action_name(s.action)}, {"ybar", after}});
      } else {
        char d[32];
        std::snprintf(d, sizeof d, "%.4f", s.d);
        out << "  i=" << s.i + 1 << " j=" << s.j + 1 << " k=" << s.k + 1 << " d=" << d << ' '
            << action_name(s.action) << " -> " << vec_text(after) << '\n';
      }
    }
    if (as_json) {
      doc["examples"].push_back({{"name", c.name}, {"mode", c.mode}, {"yhat", c.yhat},
                                 {"ybar", ybar}, {"expected", c.expected}, {"pass", pass},
                                 {"trace", steps}});
    } else {
      out << (pass ? "PASS " : "FAIL ") << c.name << " [" << c.mode << "] ybar=" << vec_text(ybar)
          << " expected " << vec_text(c.expected) << '\n';
    }
  }
  if (as_json) {
    doc["pass"] = all_pass;
    out << doc.dump(2) << '\n';
  }
  return all_pass ? kOk : kSelfCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-stage stochastic integer programs by Fenchel decomposition", "fendec"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fendec_version()));
  app.fallthrough(false);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write random k.<n1>.<n2>.<S> instances as SIPX files");
  add_gen_flags(gen_cmd, gen, true);
  gen_cmd->add_option("--out", gen.out_dir, "Output directory");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one SIPX instance");
  solve_cmd->add_option("instance", solve.path, "SIPX file")->required();
  solve_cmd->add_option("--alg", solve.alg, "sfd, sfd-r or direct");
  add_solve_flags(solve_cmd, solve.st);
  solve_cmd->add_option("--csv", solve.csv, "Append the result row to this CSV file");
  solve.seed_flag = solve_cmd->add_option("--seed", solve.seed, "Seed recorded in the CSV row");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run algorithms over instances and tabulate");
  bench_cmd->add_option("instances", bench.paths, "SIPX files");
  bench_cmd->add_option("--alg", bench.algs, "Algorithms to run (repeatable)")->delimiter(',');
  add_solve_flags(bench_cmd, bench.st);
  bench_cmd->add_option("--csv", bench.csv, "Append rows to this CSV file instead of stdout");
  bench_cmd->add_option("--svg", bench.svg, "Write bar charts of the averages");
  bench_cmd->add_option("--jobs", bench.jobs, "Cells run in parallel")->check(CLI::PositiveNumber);
  bench_cmd->add_flag("--gen", bench.generate, "Generate instances from the --n1.. flags");
  add_gen_flags(bench_cmd, bench.gen, false);

  bool as_json = false;
  double ip3_u = 5.0;
  auto* demo_cmd = app.add_subcommand("isg-demo", "Print integer set generation traces");
  demo_cmd->add_flag("--json", as_json, "Machine-readable output");
  demo_cmd->add_option("--ip3-u", ip3_u, "Override the IP3 variable bounds (self-check)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    // --help and --version, for the subcommand that asked
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, out, err);
    if (*solve_cmd) return cmd_solve(solve, out, err);
    if (*bench_cmd) return cmd_bench(bench, out, err);
    if (*demo_cmd) return cmd_isg_demo(as_json, ip3_u, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace fendec::cli

// Copyright 2026 The qconverse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Batch front-end: the three figure sweeps, single bound evaluations on a
// serialized channel, and a few helpers for producing channel files.

#include <qconverse/qconverse.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSolver = 1;
constexpr int kExitInput = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitUnknownName = 4;

struct InputError {
  int exit_code;
  std::string message;
};

int exit_code_for(qc_status s) {
  switch (s) {
    case QC_OK: return kExitOk;
    case QC_ERR_SOLVER: return kExitSolver;
    case QC_ERR_INVARIANT: return kExitInvariant;
    case QC_ERR_UNKNOWN_NAME: return kExitUnknownName;
    case QC_ERR_PARSE:
    case QC_ERR_INVALID_ARGUMENT: return kExitInput;
    case QC_ERR_INTERNAL: break;
  }
  return kExitSolver;
}

struct ChannelDeleter {
  void operator()(qc_channel* c) const { qc_channel_free(c); }
};
using ChannelPtr = std::unique_ptr<qc_channel, ChannelDeleter>;

void check(qc_status s, const std::string& context) {
  if (s != QC_OK) {
    throw InputError{exit_code_for(s), context + ": " + qc_status_name(s) + ": " +
                                           qc_last_error()};
  }
}

struct Sweep {
  std::string experiment = "fig1_ad";
  double eps = 0.01;
  double p = 0.2;
  double r_min = 0.05;
  double r_max = 0.1;
  int steps = 11;
  int n_max = 30;
  bool allow_large_n = false;
  int rounds = 5;
  double m_hat = 0.0;
  std::string out;
  int jobs = 0;
  double feas_tol = 1e-8;
  double gap_tol = 1e-8;
  std::uint64_t seed = 1;
  std::string channel;
  std::vector<int> random_dims{2, 2, 2};
  std::string bound = "q_gamma";
};

// Experiment-dependent defaults, applied before config and flags.
void apply_experiment_defaults(Sweep& s) {
  if (s.experiment == "fig1_ad") {
    s.eps = 0.01;
    s.r_min = 0.05;
    s.r_max = 0.1;
    s.steps = 11;
  } else if (s.experiment == "fig2_depol") {
    s.eps = 0.004;
    s.p = 0.2;
    s.rounds = 5;
    s.n_max = 30;
  } else if (s.experiment == "fig3_nr") {
    s.r_min = 0.0;
    s.r_max = 0.5;
    s.steps = 26;
  } else if (s.experiment == "custom") {
    s.eps = 0.01;
  } else {
    throw InputError{kExitInput, "unknown experiment '" + s.experiment +
                                     "'; expected fig1_ad, fig2_depol, fig3_nr "
                                     "or custom"};
  }
}

void validate(const Sweep& s) {
  auto bad = [](const std::string& m) { throw InputError{kExitInput, m}; };
  if (s.experiment != "fig3_nr" && !(s.eps > 0.0 && s.eps < 1.0)) {
    bad("--eps must lie in (0, 1)");
  }
  if (s.experiment == "fig1_ad" || s.experiment == "fig3_nr") {
    if (!(s.r_min >= 0.0 && s.r_min < s.r_max && s.r_max <= 1.0)) {
      bad("need 0 <= r-min < r-max <= 1");
    }
    if (s.steps < 2) bad("--steps must be >= 2");
    if (s.experiment == "fig3_nr" && s.r_max > 0.5) {
      bad("the N_r family is defined for r in [0, 0.5]");
    }
  }
  if (s.experiment == "fig2_depol") {
    if (s.n_max < 1) bad("--n-max must be >= 1");
    if (s.n_max > 30 && !s.allow_large_n) {
      bad("--n-max above 30 needs --allow-large-n");
    }
    if (!(s.p >= 0.0 && s.p <= 1.0)) bad("--p must lie in [0, 1]");
  }
  if (s.rounds < 1) bad("--rounds must be >= 1");
  if (!(s.feas_tol > 0.0) || !(s.gap_tol > 0.0)) {
    bad("solver tolerances must be positive");
  }
  if (s.jobs < 0) bad("--jobs must be >= 0");
}

// Keys mirror the long flag names with '-' replaced by '_'.
void load_config(const std::string& path, Sweep& s,
                 const std::function<bool(const char*)>& on_cli) {
  std::ifstream in(path);
  if (!in) throw InputError{kExitInput, "cannot open config " + path};
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InputError{kExitInput, "config " + path + ": " + e.what()};
  }
  if (!doc.is_object()) throw InputError{kExitInput, "config must be an object"};
  try {
    auto take = [&](const char* key, const char* flag, auto& field) {
      if (doc.contains(key) && !on_cli(flag)) {
        doc.at(key).get_to(field);
      }
    };
    take("eps", "--eps", s.eps);
    take("p", "--p", s.p);
    take("r_min", "--r-min", s.r_min);
    take("r_max", "--r-max", s.r_max);
    take("steps", "--steps", s.steps);
    take("n_max", "--n-max", s.n_max);
    take("allow_large_n", "--allow-large-n", s.allow_large_n);
    take("rounds", "--rounds", s.rounds);
    take("m_hat", "--m-hat", s.m_hat);
    take("out", "--out", s.out);
    take("jobs", "--jobs", s.jobs);
    take("feas_tol", "--feas-tol", s.feas_tol);
    take("gap_tol", "--gap-tol", s.gap_tol);
    take("seed", "--seed", s.seed);
    take("channel", "--channel", s.channel);
    take("random_dims", "--random-dims", s.random_dims);
    take("bound", "--bound", s.bound);
  } catch (const nlohmann::json::exception& e) {
    throw InputError{kExitInput, "config " + path + ": " + e.what()};
  }
}

std::string cell(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Row {
  std::vector<double> cells;
  std::string status = "optimal";
  bool ok = true;
};

void note(Row& row, qc_status s, const qc_bound_result& r) {
  if (s != QC_OK) {
    row.ok = false;
    row.status = std::string(qc_status_name(s));
  } else if (r.solver_status != QC_SOLVE_OPTIMAL && row.ok) {
    row.ok = false;
    row.status = qc_solve_status_name(r.solver_status);
  }
}

double value_of(qc_status s, const qc_bound_result& r) {
  return s == QC_OK && r.solver_status == QC_SOLVE_OPTIMAL
             ? r.log_value
             : std::nan("");
}

// Runs job(i) for i in [0, n) on `jobs` threads. Results land in their own
// slots, so output order equals grid order.
std::vector<Row> run_pool(int n, int jobs, const std::function<Row(int)>& job) {
  std::vector<Row> rows(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) rows[i] = job(i);
  };
  const int t = std::max(1, std::min(jobs, n));
  std::vector<std::thread> pool;
  for (int k = 1; k < t; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return rows;
}

std::vector<double> grid(double lo, double hi, int steps) {
  std::vector<double> g(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) g[i] = lo + (hi - lo) * i / (steps - 1);
  g.back() = hi;
  return g;
}

qc_solver_options options_of(const Sweep& s) {
  qc_solver_options o = qc_default_solver_options();
  o.feas_tol = s.feas_tol;
  o.gap_tol = s.gap_tol;
  return o;
}

int write_csv(std::ostream& out, const std::vector<std::string>& header,
              const std::vector<double>& keys, const std::vector<Row>& rows,
              bool integer_key) {
  for (std::size_t j = 0; j < header.size(); ++j) out << header[j] << ',';
  out << "status\n";
  bool all_ok = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (integer_key) {
      out << static_cast<long long>(keys[i]);
    } else {
      out << cell(keys[i]);
    }
    for (double v : rows[i].cells) out << ',' << cell(v);
    out << ',' << rows[i].status << '\n';
    all_ok = all_ok && rows[i].ok;
  }
  out.flush();
  return all_ok ? kExitOk : kExitSolver;
}

int run_fig1(const Sweep& s, std::ostream& out) {
  const std::vector<double> rs = grid(s.r_min, s.r_max, s.steps);
  const qc_solver_options opts = options_of(s);
  const auto rows = run_pool(s.steps, s.jobs, [&](int i) {
    Row row;
    qc_channel* base = nullptr;
    qc_channel* two = nullptr;
    qc_status st = qc_channel_amplitude_damping(rs[i], &base);
    if (st == QC_OK) st = qc_channel_tensor_power(base, 2, &two);
    ChannelPtr hold_base(base), hold_two(two);
    if (st != QC_OK) {
      row.ok = false;
      row.status = qc_status_name(st);
      row.cells.assign(3, std::nan(""));
      return row;
    }
    qc_bound_result r;
    st = qc_bound_f(two, s.eps, &opts, &r);
    note(row, st, r);
    row.cells.push_back(value_of(st, r));
    st = qc_bound_g(two, s.eps, &opts, &r);
    note(row, st, r);
    row.cells.push_back(value_of(st, r));
    st = qc_bound_g_tilde(two, s.eps, &opts, &r);
    note(row, st, r);
    row.cells.push_back(value_of(st, r));
    return row;
  });
  return write_csv(out, {"r", "neg_log2_f", "neg_log2_g", "neg_log2_g_tilde"},
                   rs, rows, false);
}

int run_fig2(const Sweep& s, std::ostream& out) {
  const qc_solver_options opts = options_of(s);
  std::vector<double> ns;
  for (int n = 1; n <= s.n_max; ++n) ns.push_back(n);
  const auto rows = run_pool(s.n_max, s.jobs, [&](int i) {
    Row row;
    const int n = i + 1;
    qc_bound_result r;
    qc_status st = qc_depol_lp_f(n, s.p, s.eps, &opts, &r);
    note(row, st, r);
    row.cells.push_back(value_of(st, r));
    std::vector<qc_bound_result> seq(static_cast<std::size_t>(s.rounds));
    st = qc_depol_lp_g_hat_iterate(n, s.p, s.eps, s.rounds, &opts, seq.data());
    note(row, st, seq.back());
    row.cells.push_back(value_of(st, seq.back()));
    return row;
  });
  return write_csv(out, {"n", "neg_log2_f", "neg_log2_g_hat_" + std::to_string(s.rounds)},
                   ns, rows, true);
}

int run_fig3(const Sweep& s, std::ostream& out) {
  const std::vector<double> rs = grid(s.r_min, s.r_max, s.steps);
  const qc_solver_options opts = options_of(s);
  const auto rows = run_pool(s.steps, s.jobs, [&](int i) {
    Row row;
    qc_channel* ch = nullptr;
    qc_status st = qc_channel_nr(rs[i], &ch);
    ChannelPtr hold(ch);
    if (st != QC_OK) {
      row.ok = false;
      row.status = qc_status_name(st);
      row.cells.assign(2, std::nan(""));
      return row;
    }
    qc_bound_result r;
    st = qc_q_gamma(ch, 0, &opts, &r);
    note(row, st, r);
    row.cells.push_back(value_of(st, r));
    st = qc_q_theta(ch, &opts, &r);
    note(row, st, r);
    row.cells.push_back(value_of(st, r));
    return row;
  });
  return write_csv(out, {"r", "q_gamma", "q_theta"}, rs, rows, false);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError{kExitInput, "cannot open channel file " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ChannelPtr load_channel(const Sweep& s) {
  if (s.channel.empty()) {
    throw InputError{kExitInput, "custom experiment needs --channel <file|random>"};
  }
  qc_channel* ch = nullptr;
  if (s.channel == "random") {
    if (s.random_dims.size() != 3) {
      throw InputError{kExitInput, "--random-dims takes d_in,d_out,d_env"};
    }
    check(qc_channel_random(s.random_dims[0], s.random_dims[1], s.random_dims[2],
                            s.seed, &ch),
          "random channel");
  } else {
    check(qc_channel_from_json(read_file(s.channel).c_str(), &ch), s.channel);
  }
  return ChannelPtr(ch);
}

qc_bound_params params_of(const Sweep& s) { return {s.eps, s.m_hat, s.rounds}; }

int run_custom(const Sweep& s, bool dump, std::ostream& out) {
  ChannelPtr ch = load_channel(s);
  const qc_bound_params params = params_of(s);
  if (dump) {
    char* text = nullptr;
    check(qc_program_dump(ch.get(), s.bound.c_str(), &params, &text), "dump");
    out << text;
    qc_string_free(text);
    return kExitOk;
  }
  const qc_solver_options opts = options_of(s);
  qc_bound_result r;
  check(qc_bound_by_name(ch.get(), s.bound.c_str(), &params, &opts, &r), s.bound);
  char* json = nullptr;
  check(qc_bound_result_to_json(&r, &json), "serialize");
  out << json << '\n';
  qc_string_free(json);
  return r.solver_status == QC_SOLVE_OPTIMAL ? kExitOk : kExitSolver;
}

// "identity:d", "amplitude_damping:r", "depolarizing:p", "nr:r" or
// "random:d_in,d_out,d_env[,seed]", optionally followed by "^n".
ChannelPtr make_channel(const std::string& desc) {
  std::string body = desc;
  int power = 1;
  if (const auto caret = body.find('^'); caret != std::string::npos) {
    try {
      power = std::stoi(body.substr(caret + 1));
    } catch (const std::exception&) {
      throw InputError{kExitInput, "bad tensor power in '" + desc + "'"};
    }
    body.resize(caret);
  }
  const auto colon = body.find(':');
  if (colon == std::string::npos) {
    throw InputError{kExitInput, "channel descriptor '" + desc + "' needs kind:args"};
  }
  const std::string kind = body.substr(0, colon);
  std::vector<double> args;
  std::stringstream ss(body.substr(colon + 1));
  for (std::string tok; std::getline(ss, tok, ',');) {
    try {
      args.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw InputError{kExitInput, "bad number '" + tok + "' in '" + desc + "'"};
    }
  }
  qc_channel* ch = nullptr;
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) {
      throw InputError{kExitInput, "wrong argument count in '" + desc + "'"};
    }
  };
  if (kind == "identity") {
    need(1, 1);
    check(qc_channel_identity(static_cast<int>(args[0]), &ch), desc);
  } else if (kind == "amplitude_damping") {
    need(1, 1);
    check(qc_channel_amplitude_damping(args[0], &ch), desc);
  } else if (kind == "depolarizing") {
    need(1, 1);
    check(qc_channel_depolarizing(args[0], &ch), desc);
  } else if (kind == "nr") {
    need(1, 1);
    check(qc_channel_nr(args[0], &ch), desc);
  } else if (kind == "random") {
    need(3, 4);
    const auto seed = args.size() == 4 ? static_cast<std::uint64_t>(args[3]) : 1;
    check(qc_channel_random(static_cast<int>(args[0]), static_cast<int>(args[1]),
                            static_cast<int>(args[2]), seed, &ch),
          desc);
  } else {
    throw InputError{kExitInput, "unknown channel kind '" + kind + "'"};
  }
  ChannelPtr base(ch);
  if (power == 1) return base;
  qc_channel* pow = nullptr;
  check(qc_channel_tensor_power(base.get(), power, &pow), desc);
  return ChannelPtr(pow);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Converse bounds on quantum communication over finite channel uses"};
  app.set_version_flag("--version", std::string(qc_version()));

  Sweep s;
  std::string config;
  std::string make;
  bool dump = false;
  std::string random_dims_text;

  app.add_option("--experiment", s.experiment,
                 "fig1_ad, fig2_depol, fig3_nr or custom");
  app.add_option("--config", config, "JSON file of option values");
  app.add_option("--eps", s.eps, "error tolerance");
  app.add_option("--p", s.p, "depolarizing parameter (fig2_depol)");
  app.add_option("--r-min", s.r_min, "grid start");
  app.add_option("--r-max", s.r_max, "grid end");
  app.add_option("--steps", s.steps, "grid points, endpoints included");
  app.add_option("--n-max", s.n_max, "largest number of channel uses (fig2_depol)");
  app.add_flag("--allow-large-n", s.allow_large_n, "lift the n-max <= 30 guard");
  app.add_option("--rounds", s.rounds, "refinement rounds for g_hat");
  app.add_option("--m-hat", s.m_hat, "m_hat for a single g_hat evaluation");
  app.add_option("--out", s.out, "output file (default stdout)");
  app.add_option("--jobs", s.jobs, "worker threads (0: logical cores)");
  app.add_option("--feas-tol", s.feas_tol, "solver feasibility tolerance");
  app.add_option("--gap-tol", s.gap_tol, "solver relative gap tolerance");
  app.add_option("--seed", s.seed, "seed for --channel random");
  app.add_option("--channel", s.channel, "channel JSON file, or 'random'");
  app.add_option("--random-dims", random_dims_text, "d_in,d_out,d_env for random");
  app.add_option("--bound", s.bound, std::string("bound name: ") + qc_bound_names());
  app.add_flag("--dump", dump, "print the conic program instead of solving");
  app.add_option("--make-channel", make,
                 "write the JSON of a named channel, e.g. amplitude_damping:0.3^2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    std::ofstream file;
    auto sink = [&]() -> std::ostream& {
      if (s.out.empty() || s.out == "-") return std::cout;
      file.open(s.out);
      if (!file) throw InputError{kExitInput, "cannot write " + s.out};
      return file;
    };

    if (!make.empty()) {
      ChannelPtr ch = make_channel(make);
      char* json = nullptr;
      check(qc_channel_to_json(ch.get(), &json), "serialize");
      sink() << json << '\n';
      qc_string_free(json);
      return kExitOk;
    }

    // Defaults, then config, then flags. Experiment selection itself follows
    // the same order.
    const auto on_cli = [&](const char* flag) { return app.count(flag) > 0; };
    Sweep from_cli = s;
    if (!config.empty() && !on_cli("--experiment")) {
      std::ifstream in(config);
      nlohmann::json doc;
      try {
        if (in) in >> doc;
      } catch (const nlohmann::json::exception&) {
      }
      if (doc.is_object() && doc.contains("experiment") &&
          doc["experiment"].is_string()) {
        s.experiment = doc["experiment"].get<std::string>();
      }
    }
    apply_experiment_defaults(s);
    if (!config.empty()) load_config(config, s, on_cli);
    // Re-apply every flag given on the command line over the defaults.
    const auto keep = [&](const char* flag, auto& dst, const auto& src) {
      if (on_cli(flag)) dst = src;
    };
    keep("--eps", s.eps, from_cli.eps);
    keep("--p", s.p, from_cli.p);
    keep("--r-min", s.r_min, from_cli.r_min);
    keep("--r-max", s.r_max, from_cli.r_max);
    keep("--steps", s.steps, from_cli.steps);
    keep("--n-max", s.n_max, from_cli.n_max);
    keep("--rounds", s.rounds, from_cli.rounds);
    keep("--m-hat", s.m_hat, from_cli.m_hat);
    if (!random_dims_text.empty()) {
      s.random_dims.clear();
      std::stringstream ss(random_dims_text);
      for (std::string tok; std::getline(ss, tok, ',');) {
        try {
          s.random_dims.push_back(std::stoi(tok));
        } catch (const std::exception&) {
          throw InputError{kExitInput, "bad --random-dims '" + random_dims_text + "'"};
        }
      }
    }
    if (s.jobs == 0) {
      s.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    }
    validate(s);

    std::ostream& out = sink();
    if (s.experiment == "fig1_ad") return run_fig1(s, out);
    if (s.experiment == "fig2_depol") return run_fig2(s, out);
    if (s.experiment == "fig3_nr") return run_fig3(s, out);
    return run_custom(s, dump, out);
  } catch (const InputError& e) {
    std::cerr << "qconverse: " << e.message << '\n';
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "qconverse: " << e.what() << '\n';
    return kExitInput;
  }
}

// Copyright 2026 The toricqdl Authors
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

// tqdl: command-line driver for dataset generation, training and analysis.
//
// Every subcommand accepts --config FILE (a JSON object keyed by long option
// names); flags given on the command line win over file values. The merged
// configuration is echoed to <out>/config.json.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "CLI11.hpp"
#include "commands.h"
#include "tqdl/errors.h"

namespace tqdl::cli {
namespace {

std::string strip_trailing_slash(std::string s) {
  while (s.size() > 1 && s.back() == '/') s.pop_back();
  return s;
}

// Merges a JSON config into options the user did not set on the command line.
void apply_config(CLI::App& sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read config " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw DataError("config " + path + ": " + e.what());
  }
  if (!j.is_object()) throw DataError("config " + path + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "command") {
      if (value != sub.get_name()) {
        throw std::invalid_argument("config " + path + " is for '" + value.dump() + "'");
      }
      continue;
    }
    CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config") {
      throw std::invalid_argument("config " + path + ": unknown option '" + key + "'");
    }
    if (opt->count() > 0) continue;
    auto text = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    if (value.is_array()) {
      for (const auto& v : value) opt->add_result(text(v));
    } else if (opt->get_type_size() == 0) {
      if (!value.is_boolean()) throw std::invalid_argument("config: '" + key + "' is a flag");
      if (!value.get<bool>()) continue;
      opt->add_result("true");
    } else {
      opt->add_result(text(value));
    }
    opt->run_callback();
  }
}

Json typed(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  std::int64_t i = 0;
  if (auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), i);
      ec == std::errc() && p == s.data() + s.size()) {
    return i;
  }
  double d = 0;
  if (auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), d);
      ec == std::errc() && p == s.data() + s.size() && !s.empty()) {
    return d;
  }
  return s;
}

// CLI11 captures defaults at stream precision (6 digits); echoed configs
// must replay bit-exactly, so floating defaults get full precision.
template <typename T>
CLI::Option* option(CLI::App* app, const std::string& name, T& var, const std::string& help) {
  CLI::Option* o = app->add_option(name, var, help);
  if constexpr (std::is_floating_point_v<T>) o->default_str(num(var));
  return o;
}

Json effective_config(const CLI::App& sub, const fs::path& out) {
  Json j;
  j["command"] = sub.get_name();
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string& name = opt->get_single_name();
    if (name == "help" || name == "config") continue;
    if (name == "out") {
      j["out"] = out.string();
      continue;
    }
    if (opt->get_type_size() == 0) {
      j[name] = opt->count() > 0;
      continue;
    }
    std::vector<std::string> vals;
    if (opt->count() > 0) {
      vals = opt->results();
    } else {
      std::string d = opt->get_default_str();
      if (d.size() >= 2 && d.front() == '[' && d.back() == ']') {
        d = d.substr(1, d.size() - 2);
        for (std::size_t pos = 0; !d.empty();) {
          const auto comma = d.find(',', pos);
          vals.push_back(d.substr(pos, comma - pos));
          if (comma == std::string::npos) break;
          pos = comma + 1;
        }
      } else {
        vals.push_back(d);
      }
    }
    if (opt->get_items_expected_max() > 1) {
      Json arr = Json::array();
      for (const auto& v : vals) arr.push_back(typed(v));
      j[name] = arr;
    } else {
      j[name] = vals.empty() ? Json(nullptr) : typed(vals.front());
    }
  }
  return j;
}

void print_summary(const fs::path& out) {
  std::vector<std::string> header;
  for (const auto& r : read_csv(out / "summary.csv", header)) {
    std::cout << r[0] << ": " << r[1] << "\n";
  }
}

struct Command {
  CLI::App* app = nullptr;
  std::string config;
  std::string out;
  std::function<int(const fs::path&)> run;
  std::function<std::string()> default_name;
};

int run_main(int argc, char** argv) {
  CLI::App app{"Quantum data learning pipeline for the toric-code loop-gas model."};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  std::map<std::string, Command> commands;

  auto add = [&](const std::string& name, const std::string& help) -> Command& {
    Command& c = commands[name];
    c.app = app.add_subcommand(name, help);
    option(c.app, "--config", c.config, "JSON config file (flags override it)");
    option(c.app, "--out", c.out, std::string("Output directory (default $") + kOutRootEnv + "/<name>)");
    return c;
  };

  // gen-data
  GenDataOptions gen;
  bool gen_quiet = false;
  {
    Command& c = add("gen-data", "Generate a VQE phase dataset for one lattice");
    auto* a = c.app;
    option(a, "--rows", gen.rows, "Vertex rows")->check(CLI::PositiveNumber);
    option(a, "--cols", gen.cols, "Vertex columns")->check(CLI::PositiveNumber);
    option(a, "--seed", gen.dataset.vqe.seed, "Base seed");
    option(a, "--iterations", gen.dataset.vqe.iterations, "SPSA iterations per trial");
    option(a, "--trials", gen.dataset.vqe.trials, "Random restarts per point");
    option(a, "--lr", gen.dataset.vqe.learning_rate, "SPSA gain a");
    option(a, "--perturbation", gen.dataset.vqe.perturbation_scale, "SPSA gain c");
    option(a, "--lr-exponent", gen.dataset.vqe.lr_exponent, "Decay exponent of a (0 keeps it constant)");
    option(a, "--perturbation-exponent", gen.dataset.vqe.perturbation_exponent,
                  "Decay exponent of c (0 keeps it constant)");
    option(a, "--points-per-phase", gen.dataset.points_per_phase, "Samples per phase");
    option(a, "--x-c-ref", gen.dataset.x_c_ref, "Labeling threshold");
    option(a, "--ferro-offset", gen.dataset.ferro_offset, "Gap between the two grids");
    a->add_flag("--quiet", gen_quiet, "No progress on stderr");
    c.default_name = [&] { return "data-" + std::to_string(gen.rows) + "x" + std::to_string(gen.cols); };
    c.run = [&](const fs::path& out) {
      const PhaseDataset ds = cmd_gen_data(gen, out, !gen_quiet);
      std::cout << "wrote " << ds.samples.size() << " samples to " << out.string() << "\n";
      return kExitOk;
    };
  }

  // validate-ed
  ValidateEdOptions ved;
  {
    Command& c = add("validate-ed", "Compare VQE states against exact diagonalization");
    auto* a = c.app;
    option(a, "--data", ved.data, "Dataset directory (omit for a fresh VQE sweep)");
    option(a, "--rows", ved.rows, "Vertex rows (fresh sweep)");
    option(a, "--cols", ved.cols, "Vertex columns (fresh sweep)");
    option(a, "--grid", ved.grid, "Points on [0, 1] (fresh sweep)");
    option(a, "--stride", ved.stride, "Use every n-th dataset sample");
    option(a, "--seed", ved.vqe.seed, "VQE seed (fresh sweep)");
    option(a, "--iterations", ved.vqe.iterations, "SPSA iterations (fresh sweep)");
    option(a, "--trials", ved.vqe.trials, "VQE restarts (fresh sweep)");
    option(a, "--krylov-dim", ved.lanczos.krylov_dim, "Lanczos basis size");
    option(a, "--tolerance", ved.lanczos.tolerance, "Residual tolerance");
    option(a, "--max-restarts", ved.lanczos.max_restarts, "Lanczos restarts");
    c.default_name = [] { return std::string("validate-ed"); };
    c.run = [&](const fs::path& out) {
      const EdSummary s = cmd_validate_ed(ved, out);
      print_summary(out);
      if (s.failures > 0) {
        std::cerr << "validate-ed: " << s.failures << " point(s) did not converge\n";
        return kExitNumerical;
      }
      return kExitOk;
    };
  }

  // train-qcnn
  TrainQcnnOptions tq;
  {
    Command& c = add("train-qcnn", "Train the QCNN classifier");
    auto* a = c.app;
    option(a, "--data", tq.data, "Dataset directory");
    option(a, "--split", tq.split, "random | physics")->check(CLI::IsMember({"random", "physics"}));
    option(a, "--train-fraction", tq.train_fraction, "Random split training share");
    option(a, "--window-lo", tq.window_lo, "Physics split: lower test bound");
    option(a, "--window-hi", tq.window_hi, "Physics split: upper test bound");
    option(a, "--reps", tq.reps, "Repetitions; rep r uses seed + r");
    option(a, "--seed", tq.train.seed, "Base seed");
    option(a, "--epochs", tq.train.epochs, "Maximum epochs");
    option(a, "--batch-size", tq.train.batch_size, "Minibatch size");
    option(a, "--lr", tq.train.learning_rate, "Adam learning rate");
    option(a, "--l2", tq.train.l2_strength, "L2 strength");
    option(a, "--lr-decay-factor", tq.train.lr_decay_factor, "Step decay factor");
    option(a, "--lr-decay-every", tq.train.lr_decay_every, "Epochs per decay step");
    option(a, "--convergence-delta", tq.train.convergence_delta, "Early-stop threshold (0 disables)");
    option(a, "--convergence-patience", tq.train.convergence_patience,
                  "Consecutive quiet epochs before stopping");
    option(a, "--init-scale", tq.train.init_scale, "Uniform init half-width");
    c.default_name = [] { return std::string("train-qcnn"); };
    c.run = [&](const fs::path& out) {
      if (tq.data.empty()) throw std::invalid_argument("--data is required");
      const PhaseDataset ds = load_dataset(tq.data);
      cmd_train_qcnn(tq, ds, out);
      print_summary(out);
      return kExitOk;
    };
  }

  // eval-qcnn
  EvalQcnnOptions eq;
  {
    Command& c = add("eval-qcnn", "Evaluate trained QCNN parameters on a dataset");
    option(c.app, "--data", eq.data, "Dataset directory");
    option(c.app, "--params", eq.params, "Parameter file from train-qcnn");
    c.default_name = [] { return std::string("eval-qcnn"); };
    c.run = [&](const fs::path& out) {
      if (eq.data.empty() || eq.params.empty()) {
        throw std::invalid_argument("--data and --params are required");
      }
      const PhaseDataset ds = load_dataset(eq.data);
      cmd_eval_qcnn(eq, ds, out);
      print_summary(out);
      return kExitOk;
    };
  }

  // qkmeans
  std::string km_data;
  {
    Command& c = add("qkmeans", "Two-cluster k-medoids on state fidelities");
    option(c.app, "--data", km_data, "Dataset directory");
    c.default_name = [] { return std::string("qkmeans"); };
    c.run = [&](const fs::path& out) {
      if (km_data.empty()) throw std::invalid_argument("--data is required");
      const KMeansSummary k = cmd_qkmeans(load_dataset(km_data), out);
      print_summary(out);
      if (k.oriented.degenerate) {
        std::cerr << "qkmeans: every sample landed in one cluster\n";
        return kExitNumerical;
      }
      return kExitOk;
    };
  }

  // baseline
  BaselineOptions bl;
  {
    Command& c = add("baseline", "Classical baselines on the physics-aware window");
    auto* a = c.app;
    option(a, "--data", bl.data, "Dataset directory");
    option(a, "--model", bl.model, "logreg | cnn")->check(CLI::IsMember({"logreg", "cnn"}));
    option(a, "--input", bl.input, "amps | params")->check(CLI::IsMember({"amps", "params"}));
    option(a, "--sizes", bl.sizes, "Training subset sizes")->delimiter(',');
    option(a, "--reps", bl.reps, "Repetitions per size");
    option(a, "--window-lo", bl.window_lo, "Lower test bound");
    option(a, "--window-hi", bl.window_hi, "Upper test bound");
    option(a, "--seed", bl.train.seed, "Base seed");
    option(a, "--epochs", bl.train.epochs, "Epochs");
    option(a, "--batch-size", bl.train.batch_size, "Minibatch size");
    option(a, "--lr", bl.train.learning_rate, "Adam learning rate");
    option(a, "--l2", bl.train.l2_strength, "L2 strength");
    option(a, "--init-scale", bl.train.init_scale, "Normal init stddev");
    c.default_name = [] { return std::string("baseline"); };
    c.run = [&](const fs::path& out) {
      if (bl.data.empty()) throw std::invalid_argument("--data is required");
      const PhaseDataset ds = load_dataset(bl.data);
      cmd_baseline(bl, ds, out);
      print_summary(out);
      return kExitOk;
    };
  }

  // flip
  FlipOptions fl;
  {
    Command& c = add("flip", "Flip-interval estimate from a labeled CSV");
    option(c.app, "--in", fl.in, "CSV with x and label columns");
    option(c.app, "--x-column", fl.x_column, "Column holding x");
    option(c.app, "--label-column", fl.label_column, "Column holding -1/+1 labels");
    c.default_name = [] { return std::string("flip"); };
    c.run = [&](const fs::path& out) {
      if (fl.in.empty()) throw std::invalid_argument("--in is required");
      const FlipIntervalEstimate e = cmd_flip(fl, out);
      std::printf("x_c' = %.6f +- %.6f\n", e.center, e.half_width);
      return kExitOk;
    };
  }

  // fss
  FssOptions fs_opts;
  {
    Command& c = add("fss", "Finite-size extrapolation against 1/sqrt(plaquettes)");
    option(c.app, "--in", fs_opts.in, "CSV with plaquettes,estimate[,uncertainty]");
    c.app->add_flag("--weighted", fs_opts.weighted, "Weight by 1/uncertainty^2");
    c.default_name = [] { return std::string("fss"); };
    c.run = [&](const fs::path& out) {
      if (fs_opts.in.empty()) throw std::invalid_argument("--in is required");
      const ScalingFit f = cmd_fss(fs_opts, out);
      std::printf("intercept %.6f +- %.6f, slope %.6f\n", f.intercept, f.intercept_stderr, f.slope);
      return kExitOk;
    };
  }

  // report
  std::vector<std::string> report_runs;
  {
    Command& c = add("report", "Concatenate run summaries into one table");
    option(c.app, "--runs", report_runs, "Run directories");
    c.default_name = [] { return std::string("report"); };
    c.run = [&](const fs::path& out) {
      std::vector<std::string> runs;
      for (const auto& r : report_runs) runs.push_back(strip_trailing_slash(r));
      cmd_report(runs, out);
      std::cout << "wrote " << (out / "report.csv").string() << "\n";
      return kExitOk;
    };
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  for (auto& [name, c] : commands) {
    if (!c.app->parsed()) continue;
    if (!c.config.empty()) apply_config(*c.app, c.config);
    const fs::path out = resolve_out(c.out, c.default_name());
    fs::create_directories(out);
    write_json(out / "config.json", effective_config(*c.app, out));
    return c.run(out);
  }
  return kExitUsage;
}

}  // namespace
}  // namespace tqdl::cli

int main(int argc, char** argv) {
  using namespace tqdl;
  try {
    return cli::run_main(argc, argv);
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return cli::kExitData;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return cli::kExitNumerical;
  } catch (const std::domain_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return cli::kExitNumerical;
  } catch (const std::logic_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return cli::kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return cli::kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitNumerical;
  }
}

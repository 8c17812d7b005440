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

#include "commands.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "tqdl/errors.h"
#include "tqdl/hamiltonian.h"
#include "tqdl/random.h"
#include "tqdl/vqe.h"

namespace tqdl::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create " + dir.string() + ": " + ec.message());
}

// Summary files are two-column key/value tables so `report` can merge them.
class Summary {
 public:
  Summary& set(const std::string& key, const std::string& value) {
    csv_.add({key, value});
    return *this;
  }
  Summary& set(const std::string& key, double value) { return set(key, num(value)); }
  void write(const fs::path& out) const { csv_.write(out / "summary.csv"); }

 private:
  Csv csv_{{"key", "value"}};
};

std::size_t column(const std::vector<std::string>& header, const std::string& name,
                   const fs::path& path) {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw DataError(path.string() + ": no column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

double parse_double(const std::string& s, const fs::path& path) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DataError(path.string() + ": bad number '" + s + "'");
  }
}

std::vector<int> binary_labels(const PhaseDataset& ds, std::span<const std::size_t> rows) {
  std::vector<int> y;
  y.reserve(rows.size());
  for (auto i : rows) y.push_back(ds.samples[i].label > 0 ? 1 : 0);
  return y;
}

// Flip estimate over test rows, which are already in ascending x.
bool try_flip(const std::vector<double>& xs, const std::vector<int>& labels,
              FlipIntervalEstimate& out) {
  try {
    out = flip_interval(xs, labels);
    return true;
  } catch (const std::domain_error&) {
    return false;
  }
}

void add_flip(Summary& s, bool has, const FlipIntervalEstimate& e, std::size_t flips) {
  s.set("flip_center", has ? e.center : kNaN)
      .set("flip_half_width", has ? e.half_width : kNaN)
      .set("flip_count", num(flips));
}

Split make_split(const TrainQcnnOptions& o, const std::vector<double>& xs,
                 std::uint64_t seed) {
  if (o.split == "random") return split_random(xs.size(), o.train_fraction, seed);
  if (o.split == "physics") return split_physics_aware(xs, o.window_lo, o.window_hi);
  throw std::invalid_argument("split must be 'random' or 'physics', got '" + o.split + "'");
}

}  // namespace

fs::path resolve_out(const std::string& out, const std::string& name) {
  if (!out.empty()) return out;
  if (const char* root = std::getenv(kOutRootEnv); root != nullptr && *root != '\0') {
    return fs::path(root) / name;
  }
  return fs::path("runs") / name;
}

Csv::Csv(std::vector<std::string> header) : header_(std::move(header)) {}

Csv& Csv::add(std::vector<std::string> row) {
  if (row.size() != header_.size()) throw std::logic_error("csv row width mismatch");
  rows_.push_back(std::move(row));
  return *this;
}

void Csv::write(const fs::path& path) const {
  if (path.has_parent_path()) ensure_dir(path.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw DataError("cannot write " + path.string());
  auto line = [&f](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) f << (i ? "," : "") << cells[i];
    f << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  if (!f) throw DataError("write failed: " + path.string());
}

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string num(std::int64_t v) { return std::to_string(v); }

std::vector<std::vector<std::string>> read_csv(const fs::path& path,
                                               std::vector<std::string>& header) {
  std::ifstream f(path);
  if (!f) throw DataError("cannot read " + path.string());
  auto split = [](std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
  };
  std::string line;
  if (!std::getline(f, line)) throw DataError(path.string() + ": empty file");
  header = split(line);
  std::vector<std::vector<std::string>> rows;
  while (std::getline(f, line)) {
    if (line.empty() || line == "\r") continue;
    auto cells = split(line);
    if (cells.size() != header.size()) {
      throw DataError(path.string() + ": row " + std::to_string(rows.size() + 1) +
                      " has " + std::to_string(cells.size()) + " cells, header has " +
                      std::to_string(header.size()));
    }
    rows.push_back(std::move(cells));
  }
  return rows;
}

void write_json(const fs::path& path, const Json& value) {
  if (path.has_parent_path()) ensure_dir(path.parent_path());
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw DataError("cannot write " + path.string());
  f << value.dump(2) << '\n';
}

PhaseDataset cmd_gen_data(const GenDataOptions& options, const fs::path& out,
                          bool verbose) {
  const LatticeGeometry g = build_lattice(options.rows, options.cols);
  ProgressFn progress;
  if (verbose) {
    progress = [](std::size_t done, std::size_t total) {
      if (done % 25 == 0 || done == total) {
        std::cerr << "gen-data: " << done << "/" << total << "\n";
      }
    };
  }
  return generate_and_save(g, options.dataset, out, progress);
}

EdSummary compare_vqe_ed(const LatticeGeometry& geometry, const std::vector<double>& xs,
                         const std::vector<const StateVector*>& vqe_states,
                         const LanczosConfig& lanczos) {
  if (xs.size() != vqe_states.size()) throw std::invalid_argument("compare_vqe_ed: length mismatch");
  const auto n = static_cast<double>(geometry.num_qubits);
  EdSummary s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    EdRow r;
    r.x = xs[i];
    r.e_vqe = energy(*vqe_states[i], build_hamiltonian(geometry, r.x)) / n;
    r.mz_vqe = magnetization_per_qubit(*vqe_states[i]);
    try {
      const EDResult ed = ground_state_ed(geometry, r.x, lanczos);
      r.e_ed = ed.energy / n;
      r.mz_ed = magnetization_per_qubit(ed.state);
      r.residual = ed.residual;
      s.max_energy_dev = std::max(s.max_energy_dev, std::abs(r.e_vqe - r.e_ed));
      s.max_mz_dev = std::max(s.max_mz_dev, std::abs(r.mz_vqe - r.mz_ed));
    } catch (const NumericalError&) {
      r.e_ed = r.mz_ed = r.residual = kNaN;
      r.status = "ed-not-converged";
      ++s.failures;
    }
    s.rows.push_back(r);
  }
  return s;
}

EdSummary cmd_validate_ed(const ValidateEdOptions& o, const fs::path& out) {
  validate(o.lanczos);
  LatticeGeometry g;
  std::vector<double> xs;
  std::vector<StateVector> fresh;
  std::vector<const StateVector*> states;
  PhaseDataset ds;
  if (!o.data.empty()) {
    if (o.stride < 1) throw std::invalid_argument("stride must be >= 1");
    ds = load_dataset(o.data);
    g = build_lattice(ds.rows, ds.cols);
    for (std::size_t i = 0; i < ds.samples.size(); i += o.stride) {
      xs.push_back(ds.samples[i].x);
      states.push_back(&ds.samples[i].state);
    }
  } else {
    if (o.grid < 2) throw std::invalid_argument("grid must be >= 2");
    validate(o.vqe);
    g = build_lattice(o.rows, o.cols);
    for (std::size_t i = 0; i < o.grid; ++i) {
      const double x = static_cast<double>(i) / static_cast<double>(o.grid - 1);
      xs.push_back(x);
      fresh.push_back(vqe_ground_state(g, x, o.vqe).state);
    }
    for (const auto& s : fresh) states.push_back(&s);
  }
  EdSummary s = compare_vqe_ed(g, xs, states, o.lanczos);

  Csv csv({"x", "e_vqe_per_qubit", "e_ed_per_qubit", "delta_e", "mz_vqe", "mz_ed",
           "delta_mz", "ed_residual", "status"});
  for (const auto& r : s.rows) {
    csv.add({num(r.x), num(r.e_vqe), num(r.e_ed), num(r.e_vqe - r.e_ed), num(r.mz_vqe),
             num(r.mz_ed), num(r.mz_vqe - r.mz_ed), num(r.residual), r.status});
  }
  csv.write(out / "ed.csv");
  Summary sum;
  sum.set("command", "validate-ed")
      .set("rows", num(g.rows))
      .set("cols", num(g.cols))
      .set("points", num(s.rows.size()))
      .set("max_abs_delta_e_per_qubit", s.max_energy_dev)
      .set("max_abs_delta_mz", s.max_mz_dev)
      .set("ed_failures", num(s.failures));
  sum.write(out);
  return s;
}

QcnnSummary cmd_train_qcnn(const TrainQcnnOptions& o, const PhaseDataset& ds,
                           const fs::path& out) {
  if (o.reps < 1) throw std::invalid_argument("reps must be >= 1");
  validate(o.train);
  const QCNNArchitecture arch = build_architecture(ds.num_qubits());
  const std::vector<double> xs = ds.xs();
  ensure_dir(out);

  Csv metrics({"rep", "seed", "epochs", "final_loss", "test_accuracy", "flip_center",
               "flip_half_width", "flip_count"});
  Csv predictions({"rep", "index", "x", "label", "split", "y_out", "predicted"});
  Csv losses({"rep", "epoch", "loss"});
  QcnnSummary summary;
  std::vector<FlipIntervalEstimate> estimates;
  for (int r = 0; r < o.reps; ++r) {
    const std::uint64_t seed = o.train.seed + static_cast<std::uint64_t>(r);
    const Split split = make_split(o, xs, seed);
    std::vector<const StateVector*> train_states;
    for (auto i : split.train) train_states.push_back(&ds.samples[i].state);
    TrainConfig cfg = o.train;
    cfg.seed = seed;
    const TrainResult tr =
        train_qcnn(train_states, binary_labels(ds, split.train), arch, cfg);

    std::vector<double> y(ds.samples.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = qcnn_forward(ds.samples[i].state, arch, tr.params);
    std::vector<bool> is_test(y.size(), false);
    for (auto i : split.test) is_test[i] = true;

    QcnnRep rep;
    rep.seed = seed;
    rep.epochs = tr.loss_history.size();
    rep.final_loss = tr.loss_history.back();
    std::vector<double> tx;
    std::vector<int> tl;
    std::size_t correct = 0;
    Csv test({"index", "x", "label", "y_out", "predicted"});
    for (auto i : split.test) {
      const int p = phase_from_output(y[i]);
      correct += p == ds.samples[i].label;
      tx.push_back(xs[i]);
      tl.push_back(p);
      test.add({num(i), num(xs[i]), num(ds.samples[i].label), num(y[i]), num(p)});
    }
    rep.accuracy = static_cast<double>(correct) / static_cast<double>(split.test.size());
    rep.has_flip = try_flip(tx, tl, rep.flip);
    rep.flips = count_flips(tl);
    if (rep.has_flip) estimates.push_back(rep.flip);

    for (std::size_t i = 0; i < y.size(); ++i) {
      predictions.add({num(r), num(i), num(xs[i]), num(ds.samples[i].label),
                       is_test[i] ? "test" : "train", num(y[i]), num(phase_from_output(y[i]))});
    }
    for (std::size_t e = 0; e < tr.loss_history.size(); ++e) {
      losses.add({num(r), num(e + 1), num(tr.loss_history[e])});
    }
    metrics.add({num(r), num(static_cast<std::int64_t>(seed)), num(rep.epochs),
                 num(rep.final_loss), num(rep.accuracy),
                 num(rep.has_flip ? rep.flip.center : kNaN),
                 num(rep.has_flip ? rep.flip.half_width : kNaN), num(rep.flips)});
    test.write(out / ("test_r" + std::to_string(r) + ".csv"));
    std::ofstream pf(out / ("params_r" + std::to_string(r) + ".json"));
    write_params(pf, arch, tr.params);
    if (!pf) throw DataError("cannot write params file");
    summary.reps.push_back(rep);
  }
  metrics.write(out / "metrics.csv");
  predictions.write(out / "predictions.csv");
  losses.write(out / "loss.csv");

  summary.min_accuracy = 1.0;
  for (const auto& r : summary.reps) {
    summary.mean_accuracy += r.accuracy / static_cast<double>(summary.reps.size());
    summary.min_accuracy = std::min(summary.min_accuracy, r.accuracy);
  }
  summary.missing_flips = summary.reps.size() - estimates.size();
  if (!estimates.empty()) summary.flip = aggregate_repetitions(estimates);

  Summary sum;
  sum.set("command", "train-qcnn")
      .set("rows", num(ds.rows))
      .set("cols", num(ds.cols))
      .set("split", o.split)
      .set("reps", num(o.reps))
      .set("mean_accuracy", summary.mean_accuracy)
      .set("min_accuracy", summary.min_accuracy)
      .set("flip_mean", estimates.empty() ? kNaN : summary.flip.mean)
      .set("flip_stddev", estimates.empty() ? kNaN : summary.flip.stddev)
      .set("flip_mean_half_width", estimates.empty() ? kNaN : summary.flip.mean_half_width)
      .set("missing_flips", num(summary.missing_flips));
  sum.write(out);
  return summary;
}

QcnnRep cmd_eval_qcnn(const EvalQcnnOptions& o, const PhaseDataset& ds, const fs::path& out) {
  std::ifstream in(o.params);
  if (!in) throw DataError("cannot read " + o.params);
  const auto [arch, params] = read_params(in);
  if (arch.num_qubits != ds.num_qubits()) {
    throw DataError("params are for " + std::to_string(arch.num_qubits) +
                    " qubits, dataset has " + std::to_string(ds.num_qubits()));
  }
  Csv csv({"index", "x", "label", "y_out", "predicted"});
  QcnnRep rep;
  std::vector<int> labels;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < ds.samples.size(); ++i) {
    const auto& s = ds.samples[i];
    const double y = qcnn_forward(s.state, arch, params);
    const int p = phase_from_output(y);
    correct += p == s.label;
    labels.push_back(p);
    csv.add({num(i), num(s.x), num(s.label), num(y), num(p)});
  }
  rep.accuracy = static_cast<double>(correct) / static_cast<double>(ds.samples.size());
  rep.has_flip = try_flip(ds.xs(), labels, rep.flip);
  rep.flips = count_flips(labels);
  csv.write(out / "predictions.csv");
  Summary sum;
  sum.set("command", "eval-qcnn")
      .set("rows", num(ds.rows))
      .set("cols", num(ds.cols))
      .set("accuracy", rep.accuracy);
  add_flip(sum, rep.has_flip, rep.flip, rep.flips);
  sum.write(out);
  return rep;
}

KMeansSummary cmd_qkmeans(const PhaseDataset& ds, const fs::path& out) {
  const auto states = ds.states();
  const std::vector<double> xs = ds.xs();
  KMeansSummary k;
  k.clustering = kmedoids_two(hs_distance_matrix(fidelity_matrix(states)));
  k.oriented = orient_clusters(k.clustering, xs);
  if (!k.oriented.degenerate) k.has_flip = try_flip(xs, k.oriented.labels, k.flip);
  k.flips = count_flips(k.oriented.labels);

  Csv csv({"index", "x", "cluster", "label"});
  for (std::size_t i = 0; i < xs.size(); ++i) {
    csv.add({num(i), num(xs[i]), num(k.clustering.assignments[i]), num(k.oriented.labels[i])});
  }
  csv.write(out / "assignments.csv");
  const auto& m = k.clustering.medoids;
  Summary sum;
  sum.set("command", "qkmeans")
      .set("rows", num(ds.rows))
      .set("cols", num(ds.cols))
      .set("loss", k.clustering.loss)
      .set("medoid_0_x", xs[m[0]])
      .set("medoid_1_x", xs[m[1]])
      .set("lloyd_iterations", num(k.clustering.lloyd_iterations))
      .set("refined", k.clustering.refined ? "true" : "false")
      .set("degenerate", k.oriented.degenerate ? "true" : "false");
  add_flip(sum, k.has_flip, k.flip, k.flips);
  sum.write(out);
  return k;
}

std::vector<BaselineSizeSummary> cmd_baseline(const BaselineOptions& o,
                                              const PhaseDataset& ds, const fs::path& out) {
  ModelKind model;
  if (o.model == "logreg") {
    model = ModelKind::kLogReg;
  } else if (o.model == "cnn") {
    model = ModelKind::kCnn1d;
  } else {
    throw std::invalid_argument("model must be 'logreg' or 'cnn', got '" + o.model + "'");
  }
  FeatureKind kind;
  if (o.input == "amps") {
    kind = FeatureKind::kAmplitudeSq;
  } else if (o.input == "params") {
    kind = FeatureKind::kPlgcTheta;
  } else {
    throw std::invalid_argument("input must be 'amps' or 'params', got '" + o.input + "'");
  }
  if (o.reps < 1) throw std::invalid_argument("reps must be >= 1");
  if (o.sizes.empty()) throw std::invalid_argument("sizes must not be empty");
  for (int s : o.sizes) {
    if (s < 2) throw std::invalid_argument("training sizes must be >= 2");
  }
  validate(o.train);

  const std::vector<double> xs = ds.xs();
  const Split window = split_physics_aware(xs, o.window_lo, o.window_hi);
  std::vector<std::size_t> below, above;
  for (auto i : window.train) (xs[i] < o.window_lo ? below : above).push_back(i);
  if (below.empty() || above.empty()) {
    throw DataError("baseline: both phases need off-critical samples");
  }
  const FeatureMatrix raw = extract_features(ds.samples, kind);
  std::vector<double> test_x;
  for (auto i : window.test) test_x.push_back(xs[i]);

  Csv runs({"size", "effective_size", "rep", "seed", "test_accuracy", "flip_center",
            "flip_half_width", "flip_count"});
  Csv table({"model", "input", "size", "effective_size", "feature_dim", "reps", "flip_mean",
             "flip_stddev", "flip_mean_half_width", "mean_flip_count", "mean_accuracy",
             "missing_flips"});
  std::vector<BaselineSizeSummary> result;
  for (int size : o.sizes) {
    BaselineSizeSummary bs;
    bs.size = size;
    bs.feature_dim = raw.cols;
    // Balanced draw from both sides of the window, capped at the pool.
    std::size_t n_lo = std::min<std::size_t>(static_cast<std::size_t>(size) / 2, below.size());
    std::size_t n_hi = std::min<std::size_t>(static_cast<std::size_t>(size) - n_lo, above.size());
    n_lo = std::min<std::size_t>(static_cast<std::size_t>(size) - n_hi, below.size());
    bs.effective_size = n_lo + n_hi;
    std::vector<FlipIntervalEstimate> estimates;
    for (int r = 0; r < o.reps; ++r) {
      const std::uint64_t seed =
          derive_seed(o.train.seed, {static_cast<std::uint64_t>(size), static_cast<std::uint64_t>(r)});
      Rng rng(seed);
      std::vector<std::size_t> lo = below, hi = above;
      shuffle(std::span<std::size_t>(lo), rng);
      shuffle(std::span<std::size_t>(hi), rng);
      std::vector<std::size_t> rows(lo.begin(), lo.begin() + static_cast<std::ptrdiff_t>(n_lo));
      rows.insert(rows.end(), hi.begin(), hi.begin() + static_cast<std::ptrdiff_t>(n_hi));
      std::sort(rows.begin(), rows.end());

      FeatureMatrix f = raw;
      standardize(f, rows);
      BaselineConfig cfg = o.train;
      cfg.seed = seed;
      const auto tr = train_baseline(model, f, rows, binary_labels(ds, rows), cfg);
      const std::vector<int> pred = predict_labels(tr.model, f, window.test);

      std::size_t correct = 0;
      for (std::size_t t = 0; t < pred.size(); ++t) correct += pred[t] == ds.samples[window.test[t]].label;
      const double acc = static_cast<double>(correct) / static_cast<double>(pred.size());
      FlipIntervalEstimate e;
      const bool has = try_flip(test_x, pred, e);
      const std::size_t flips = count_flips(pred);
      if (has) estimates.push_back(e);
      bs.flips_per_rep.push_back(flips);
      bs.mean_flips += static_cast<double>(flips) / o.reps;
      bs.mean_accuracy += acc / o.reps;
      runs.add({num(size), num(bs.effective_size), num(r), num(static_cast<std::int64_t>(seed)),
                num(acc), num(has ? e.center : kNaN), num(has ? e.half_width : kNaN),
                num(flips)});
    }
    bs.missing_flips = static_cast<std::size_t>(o.reps) - estimates.size();
    if (!estimates.empty()) bs.flip = aggregate_repetitions(estimates);
    const bool any = !estimates.empty();
    table.add({o.model, o.input, num(size), num(bs.effective_size), num(bs.feature_dim),
               num(o.reps), num(any ? bs.flip.mean : kNaN), num(any ? bs.flip.stddev : kNaN),
               num(any ? bs.flip.mean_half_width : kNaN), num(bs.mean_flips),
               num(bs.mean_accuracy), num(bs.missing_flips)});
    result.push_back(bs);
  }
  runs.write(out / "baseline_runs.csv");
  table.write(out / "baseline.csv");
  Summary sum;
  sum.set("command", "baseline")
      .set("rows", num(ds.rows))
      .set("cols", num(ds.cols))
      .set("model", o.model)
      .set("input", o.input)
      .set("feature_dim", num(raw.cols));
  for (const auto& bs : result) {
    const std::string p = "size_" + std::to_string(bs.size) + "_";
    sum.set(p + "flip_mean", bs.missing_flips == static_cast<std::size_t>(o.reps) ? kNaN : bs.flip.mean)
        .set(p + "flip_stddev", bs.missing_flips == static_cast<std::size_t>(o.reps) ? kNaN : bs.flip.stddev);
  }
  sum.write(out);
  return result;
}

FlipIntervalEstimate cmd_flip(const FlipOptions& o, const fs::path& out) {
  std::vector<std::string> header;
  const fs::path in = o.in;
  const auto rows = read_csv(in, header);
  const std::size_t cx = column(header, o.x_column, in);
  const std::size_t cl = column(header, o.label_column, in);
  std::vector<std::pair<double, int>> pts;
  for (const auto& r : rows) {
    const double l = parse_double(r[cl], in);
    if (l != 1.0 && l != -1.0) throw DataError(in.string() + ": labels must be -1 or +1");
    pts.emplace_back(parse_double(r[cx], in), static_cast<int>(l));
  }
  std::sort(pts.begin(), pts.end());
  std::vector<double> xs;
  std::vector<int> labels;
  for (const auto& [x, l] : pts) {
    xs.push_back(x);
    labels.push_back(l);
  }
  const FlipIntervalEstimate e = flip_interval(xs, labels);
  Csv csv({"x_lo", "x_hi", "center", "half_width", "flip_count"});
  csv.add({num(e.x_lo), num(e.x_hi), num(e.center), num(e.half_width), num(count_flips(labels))});
  csv.write(out / "flip.csv");
  return e;
}

ScalingFit cmd_fss(const FssOptions& o, const fs::path& out) {
  std::vector<std::string> header;
  const fs::path in = o.in;
  const auto rows = read_csv(in, header);
  const std::size_t cp = column(header, "plaquettes", in);
  const std::size_t ce = column(header, "estimate", in);
  const auto it = std::find(header.begin(), header.end(), "uncertainty");
  std::vector<ScalingPoint> pts;
  for (const auto& r : rows) {
    ScalingPoint p;
    p.plaquettes = parse_double(r[cp], in);
    p.estimate = parse_double(r[ce], in);
    if (it != header.end()) p.uncertainty = parse_double(r[static_cast<std::size_t>(it - header.begin())], in);
    pts.push_back(p);
  }
  if (o.weighted && it == header.end()) throw DataError(in.string() + ": weighted fit needs an uncertainty column");
  const ScalingFit fit = fit_finite_size(pts, o.weighted);
  Csv csv({"intercept", "intercept_stderr", "slope", "points", "weighted"});
  csv.add({num(fit.intercept), num(fit.intercept_stderr), num(fit.slope), num(pts.size()),
           o.weighted ? "true" : "false"});
  csv.write(out / "fss.csv");
  return fit;
}

void cmd_report(const std::vector<std::string>& runs, const fs::path& out) {
  if (runs.empty()) throw std::invalid_argument("report needs at least one run directory");
  Csv csv({"run", "key", "value"});
  for (const auto& run : runs) {
    std::vector<std::string> header;
    const fs::path dir(run);
    const fs::path path = dir / "summary.csv";
    // "runs/a/" has an empty filename; name it after the last real component.
    const std::string name = (dir.has_filename() ? dir : dir.parent_path()).filename().string();
    for (const auto& r : read_csv(path, header)) {
      if (header.size() != 2) throw DataError(path.string() + ": expected key,value columns");
      csv.add({name, r[0], r[1]});
    }
  }
  csv.write(out / "report.csv");
}

}  // namespace tqdl::cli

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

// Pipeline commands behind the tqdl CLI. Each writes plot-ready CSVs plus the
// effective config into its output directory; the acceptance binary drives
// the same functions.

#ifndef TQDL_TOOLS_COMMANDS_H_
#define TQDL_TOOLS_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "tqdl/analysis.h"
#include "tqdl/baselines.h"
#include "tqdl/datastore.h"
#include "tqdl/ed.h"
#include "tqdl/qcnn.h"
#include "tqdl/qkmeans.h"

namespace tqdl::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitNumerical = 3;

// Environment variable naming the default output root.
inline constexpr const char* kOutRootEnv = "TQDL_OUT_ROOT";

// `--out` if given, else $TQDL_OUT_ROOT/<name>, else ./runs/<name>.
fs::path resolve_out(const std::string& out, const std::string& name);

// Minimal CSV writer. Doubles are printed with 17 significant digits so
// reruns compare byte-for-byte and values round-trip.
class Csv {
 public:
  explicit Csv(std::vector<std::string> header);
  Csv& add(std::vector<std::string> row);
  void write(const fs::path& path) const;
  std::size_t size() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string num(double v);
std::string num(std::int64_t v);
inline std::string num(int v) { return num(static_cast<std::int64_t>(v)); }
inline std::string num(std::size_t v) { return num(static_cast<std::int64_t>(v)); }

// Reads a CSV with a header row into named columns.
std::vector<std::vector<std::string>> read_csv(const fs::path& path,
                                               std::vector<std::string>& header);

void write_json(const fs::path& path, const Json& value);

// ---- gen-data

struct GenDataOptions {
  std::size_t rows = 2;
  std::size_t cols = 2;
  DatasetConfig dataset;
};
PhaseDataset cmd_gen_data(const GenDataOptions& options, const fs::path& out,
                          bool verbose);

// ---- validate-ed

struct EdRow {
  double x = 0.0;
  double e_vqe = 0.0;  // per qubit
  double e_ed = 0.0;   // per qubit
  double mz_vqe = 0.0;
  double mz_ed = 0.0;
  double residual = 0.0;
  std::string status = "ok";
};
struct EdSummary {
  std::vector<EdRow> rows;
  double max_energy_dev = 0.0;
  double max_mz_dev = 0.0;
  std::size_t failures = 0;
};

// Compares each (x, VQE state) against Lanczos ED. Non-converged points get
// a status instead of aborting the sweep.
EdSummary compare_vqe_ed(const LatticeGeometry& geometry,
                         const std::vector<double>& xs,
                         const std::vector<const StateVector*>& vqe_states,
                         const LanczosConfig& lanczos);

struct ValidateEdOptions {
  std::string data;  // dataset directory; empty means a fresh VQE sweep
  std::size_t rows = 2;
  std::size_t cols = 2;
  std::size_t grid = 21;    // fresh sweep only
  std::size_t stride = 1;   // dataset only: every stride-th sample
  VQEConfig vqe;            // fresh sweep only
  LanczosConfig lanczos;
};
EdSummary cmd_validate_ed(const ValidateEdOptions& options, const fs::path& out);

// ---- train-qcnn / eval-qcnn

struct TrainQcnnOptions {
  std::string data;
  std::string split = "random";  // random | physics
  double train_fraction = 0.8;
  double window_lo = 0.2;
  double window_hi = 0.4;
  int reps = 1;  // repetition r uses seed + r for init, shuffle and split
  TrainConfig train;
};
struct QcnnRep {
  std::uint64_t seed = 0;
  std::size_t epochs = 0;
  double final_loss = 0.0;
  double accuracy = 0.0;
  bool has_flip = false;
  FlipIntervalEstimate flip;
  std::size_t flips = 0;
};
struct QcnnSummary {
  std::vector<QcnnRep> reps;
  double mean_accuracy = 0.0;
  double min_accuracy = 0.0;
  std::size_t missing_flips = 0;  // reps whose test labels never changed
  RepetitionSummary flip;         // over reps with a flip estimate
};
QcnnSummary cmd_train_qcnn(const TrainQcnnOptions& options, const PhaseDataset& dataset,
                           const fs::path& out);

struct EvalQcnnOptions {
  std::string data;
  std::string params;
};
QcnnRep cmd_eval_qcnn(const EvalQcnnOptions& options, const PhaseDataset& dataset,
                      const fs::path& out);

// ---- qkmeans

struct KMeansSummary {
  Clustering clustering;
  OrientedLabels oriented;
  bool has_flip = false;
  FlipIntervalEstimate flip;
  std::size_t flips = 0;
};
KMeansSummary cmd_qkmeans(const PhaseDataset& dataset, const fs::path& out);

// ---- baseline

struct BaselineOptions {
  std::string data;
  std::string model = "logreg";  // logreg | cnn
  std::string input = "params";  // amps | params
  std::vector<int> sizes{50, 100, 200, 300};
  int reps = 10;
  double window_lo = 0.2;
  double window_hi = 0.4;
  BaselineConfig train;
};
struct BaselineSizeSummary {
  int size = 0;
  std::size_t effective_size = 0;  // capped at the off-critical pool
  std::size_t feature_dim = 0;
  std::size_t missing_flips = 0;
  RepetitionSummary flip;
  double mean_flips = 0.0;
  double mean_accuracy = 0.0;
  std::vector<std::size_t> flips_per_rep;
};
std::vector<BaselineSizeSummary> cmd_baseline(const BaselineOptions& options,
                                              const PhaseDataset& dataset,
                                              const fs::path& out);

// ---- flip / fss / report

struct FlipOptions {
  std::string in;
  std::string x_column = "x";
  std::string label_column = "predicted";
};
FlipIntervalEstimate cmd_flip(const FlipOptions& options, const fs::path& out);

struct FssOptions {
  std::string in;
  bool weighted = false;
};
ScalingFit cmd_fss(const FssOptions& options, const fs::path& out);

void cmd_report(const std::vector<std::string>& runs, const fs::path& out);

}  // namespace tqdl::cli

#endif  // TQDL_TOOLS_COMMANDS_H_

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

#ifndef TQDL_DATASTORE_H_
#define TQDL_DATASTORE_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tqdl/lattice.h"
#include "tqdl/plgc.h"
#include "tqdl/state_vector.h"
#include "tqdl/vqe.h"

namespace tqdl {

inline constexpr int kDatasetFormatVersion = 1;
inline constexpr const char* kPartialMarker = "PARTIAL";

struct PhaseSample {
  double x = 0.0;
  int label = -1;  // -1 topological, +1 ferromagnetic
  PLGCParams thetas;
  double vqe_energy = 0.0;
  std::string state_path;  // relative to the dataset root
  StateVector state{1};
};

struct DatasetConfig {
  VQEConfig vqe;
  double x_c_ref = 0.25;
  int points_per_phase = 150;
  double ferro_offset = 0.01;  // first ferromagnetic x is x_c_ref + offset
};

void validate(const DatasetConfig& config);

struct PhaseDataset {
  std::size_t rows = 0;
  std::size_t cols = 0;
  double x_c_ref = 0.25;
  DatasetConfig config;
  int version = kDatasetFormatVersion;
  std::vector<PhaseSample> samples;

  std::size_t num_qubits() const;
  std::vector<double> xs() const;
  std::vector<const StateVector*> states() const;
};

// Field grid: points_per_phase equidistant values on [0, x_c_ref] and as many
// on [x_c_ref + ferro_offset, 1], both inclusive.
std::vector<double> field_grid(const DatasetConfig& config);

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

// Runs the VQE at every grid point. Samples get state_path
// "states/<index>.lgsv".
PhaseDataset generate_dataset(const LatticeGeometry& geometry,
                              const DatasetConfig& config,
                              const ProgressFn& progress = {});

// generate_dataset followed by save_dataset. A PARTIAL marker file sits in
// `root` for the duration and is left behind, holding the error text, if
// generation fails.
PhaseDataset generate_and_save(const LatticeGeometry& geometry,
                               const DatasetConfig& config,
                               const std::filesystem::path& root,
                               const ProgressFn& progress = {});

// Writes root/manifest.json and root/states/<index>.lgsv, creating
// directories as needed.
void save_dataset(const PhaseDataset& dataset, const std::filesystem::path& root);

// Throws DataError on a missing or malformed manifest, a version mismatch, a
// checksum or length failure, or a PARTIAL marker.
PhaseDataset load_dataset(const std::filesystem::path& root);

// FNV-1a, 64 bit.
std::uint64_t fnv1a64(std::span<const unsigned char> bytes);

struct Split {
  std::vector<std::size_t> train;  // ascending sample indices
  std::vector<std::size_t> test;
};

// Seeded shuffle, first round(fraction * n) samples train; always leaves at
// least one sample on each side. Throws unless 0 < fraction < 1 and n >= 2.
Split split_random(std::size_t num_samples, double train_fraction,
                   std::uint64_t seed);

// Test = samples with lo <= x <= hi. Throws DataError if either side is empty.
Split split_physics_aware(std::span<const double> xs, double lo, double hi);

}  // namespace tqdl

#endif  // TQDL_DATASTORE_H_

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

#include "tqdl/datastore.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "tqdl/errors.h"
#include "tqdl/random.h"

namespace tqdl {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kManifestFormat = "tqdl-phase-dataset";

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string serialize_state(const StateVector& state) {
  std::ostringstream out(std::ios::binary);
  write_state(out, state);
  return std::move(out).str();
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint64_t checksum(const std::string& bytes) {
  return fnv1a64({reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size()});
}

json config_to_json(const DatasetConfig& c) {
  return {{"vqe",
           {{"iterations", c.vqe.iterations},
            {"trials", c.vqe.trials},
            {"learning_rate", c.vqe.learning_rate},
            {"perturbation_scale", c.vqe.perturbation_scale},
            {"lr_exponent", c.vqe.lr_exponent},
            {"perturbation_exponent", c.vqe.perturbation_exponent},
            {"seed", c.vqe.seed}}},
          {"x_c_ref", c.x_c_ref},
          {"points_per_phase", c.points_per_phase},
          {"ferro_offset", c.ferro_offset}};
}

DatasetConfig config_from_json(const json& j) {
  DatasetConfig c;
  const json& v = j.at("vqe");
  c.vqe.iterations = v.at("iterations").get<int>();
  c.vqe.trials = v.at("trials").get<int>();
  c.vqe.learning_rate = v.at("learning_rate").get<double>();
  c.vqe.perturbation_scale = v.at("perturbation_scale").get<double>();
  c.vqe.lr_exponent = v.at("lr_exponent").get<double>();
  c.vqe.perturbation_exponent = v.at("perturbation_exponent").get<double>();
  c.vqe.seed = v.at("seed").get<std::uint64_t>();
  c.x_c_ref = j.at("x_c_ref").get<double>();
  c.points_per_phase = j.at("points_per_phase").get<int>();
  c.ferro_offset = j.at("ferro_offset").get<double>();
  return c;
}

}  // namespace

std::uint64_t fnv1a64(std::span<const unsigned char> bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void validate(const DatasetConfig& config) {
  validate(config.vqe);
  if (config.points_per_phase < 2) throw std::invalid_argument("points_per_phase must be >= 2");
  if (!(config.x_c_ref > 0.0) || !(config.ferro_offset > 0.0) ||
      !(config.x_c_ref + config.ferro_offset < 1.0)) {
    throw std::invalid_argument("need 0 < x_c_ref < x_c_ref + ferro_offset < 1");
  }
}

std::size_t PhaseDataset::num_qubits() const {
  return rows * (cols - 1) + cols * (rows - 1);
}

std::vector<double> PhaseDataset::xs() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.x);
  return out;
}

std::vector<const StateVector*> PhaseDataset::states() const {
  std::vector<const StateVector*> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(&s.state);
  return out;
}

std::vector<double> field_grid(const DatasetConfig& config) {
  validate(config);
  const auto n = static_cast<std::size_t>(config.points_per_phase);
  std::vector<double> xs;
  xs.reserve(2 * n);
  auto linspace = [&](double a, double b) {
    for (std::size_t i = 0; i < n; ++i) {
      xs.push_back(i + 1 == n ? b : a + (b - a) * static_cast<double>(i) /
                                          static_cast<double>(n - 1));
    }
  };
  linspace(0.0, config.x_c_ref);
  linspace(config.x_c_ref + config.ferro_offset, 1.0);
  return xs;
}

PhaseDataset generate_dataset(const LatticeGeometry& geometry,
                              const DatasetConfig& config,
                              const ProgressFn& progress) {
  const std::vector<double> xs = field_grid(config);
  PhaseDataset ds;
  ds.rows = geometry.rows;
  ds.cols = geometry.cols;
  ds.x_c_ref = config.x_c_ref;
  ds.config = config;
  ds.samples.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    VQEResult r = vqe_ground_state(geometry, xs[i], config.vqe);
    PhaseSample s;
    s.x = xs[i];
    s.label = xs[i] <= config.x_c_ref ? -1 : 1;
    s.thetas = std::move(r.params);
    s.vqe_energy = r.energy;
    s.state_path = "states/" + std::to_string(i) + ".lgsv";
    s.state = std::move(r.state);
    ds.samples.push_back(std::move(s));
    if (progress) progress(i + 1, xs.size());
  }
  return ds;
}

PhaseDataset generate_and_save(const LatticeGeometry& geometry,
                               const DatasetConfig& config,
                               const fs::path& root, const ProgressFn& progress) {
  fs::create_directories(root);
  const fs::path marker = root / kPartialMarker;
  std::ofstream(marker) << "generation in progress\n";
  try {
    PhaseDataset ds = generate_dataset(geometry, config, progress);
    save_dataset(ds, root);
    fs::remove(marker);
    return ds;
  } catch (const std::exception& e) {
    std::ofstream(marker) << "generation failed: " << e.what() << "\n";
    throw;
  }
}

void save_dataset(const PhaseDataset& dataset, const fs::path& root) {
  fs::create_directories(root / "states");
  json samples = json::array();
  for (std::size_t i = 0; i < dataset.samples.size(); ++i) {
    const PhaseSample& s = dataset.samples[i];
    const std::string bytes = serialize_state(s.state);
    std::ofstream out(root / s.state_path, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw DataError("failed writing " + (root / s.state_path).string());
    samples.push_back({{"index", i},
                       {"x", s.x},
                       {"label", s.label},
                       {"thetas", s.thetas.thetas},
                       {"vqe_energy", s.vqe_energy},
                       {"state_path", s.state_path},
                       {"checksum", hex64(checksum(bytes))}});
  }
  const json manifest = {{"format", kManifestFormat},
                         {"version", dataset.version},
                         {"rows", dataset.rows},
                         {"cols", dataset.cols},
                         {"num_qubits", dataset.num_qubits()},
                         {"x_c_ref", dataset.x_c_ref},
                         {"config", config_to_json(dataset.config)},
                         {"samples", samples}};
  std::ofstream out(root / "manifest.json", std::ios::trunc);
  out << manifest.dump(1) << "\n";
  if (!out) throw DataError("failed writing manifest in " + root.string());
}

PhaseDataset load_dataset(const fs::path& root) {
  if (fs::exists(root / kPartialMarker)) {
    throw DataError(root.string() + " holds a partial dataset (" +
                    std::string(kPartialMarker) + " marker present)");
  }
  json manifest;
  try {
    manifest = json::parse(read_file(root / "manifest.json"));
  } catch (const json::exception& e) {
    throw DataError("manifest: " + std::string(e.what()));
  }
  PhaseDataset ds;
  try {
    if (manifest.at("format") != kManifestFormat) throw DataError("manifest: wrong format tag");
    ds.version = manifest.at("version").get<int>();
    if (ds.version != kDatasetFormatVersion) {
      throw DataError("manifest: unsupported version " + std::to_string(ds.version));
    }
    ds.rows = manifest.at("rows").get<std::size_t>();
    ds.cols = manifest.at("cols").get<std::size_t>();
    ds.x_c_ref = manifest.at("x_c_ref").get<double>();
    ds.config = config_from_json(manifest.at("config"));
    for (const json& js : manifest.at("samples")) {
      PhaseSample s;
      s.x = js.at("x").get<double>();
      s.label = js.at("label").get<int>();
      s.thetas.thetas = js.at("thetas").get<std::vector<double>>();
      s.vqe_energy = js.at("vqe_energy").get<double>();
      s.state_path = js.at("state_path").get<std::string>();
      const std::string bytes = read_file(root / s.state_path);
      const std::size_t expected = 8 + 16 * (std::size_t{1} << ds.num_qubits());
      if (bytes.size() != expected) {
        throw DataError(s.state_path + ": expected " + std::to_string(expected) +
                        " bytes, found " + std::to_string(bytes.size()));
      }
      if (hex64(checksum(bytes)) != js.at("checksum").get<std::string>()) {
        throw DataError(s.state_path + ": checksum mismatch");
      }
      std::istringstream in(bytes, std::ios::binary);
      s.state = read_state(in);
      ds.samples.push_back(std::move(s));
    }
  } catch (const json::exception& e) {
    throw DataError("manifest: " + std::string(e.what()));
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const DataError*>(&e)) throw;
    throw DataError(e.what());
  }
  return ds;
}

Split split_random(std::size_t num_samples, double train_fraction,
                   std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("train_fraction must lie in (0, 1)");
  }
  if (num_samples < 2) throw std::invalid_argument("split_random needs >= 2 samples");
  std::vector<std::size_t> order(num_samples);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  shuffle(std::span<std::size_t>(order), rng);
  auto n_train = static_cast<std::size_t>(
      std::llround(train_fraction * static_cast<double>(num_samples)));
  n_train = std::clamp<std::size_t>(n_train, 1, num_samples - 1);
  Split split;
  split.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  split.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

Split split_physics_aware(std::span<const double> xs, double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("split_physics_aware: need lo < hi");
  Split split;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    (xs[i] >= lo && xs[i] <= hi ? split.test : split.train).push_back(i);
  }
  if (split.train.empty()) throw DataError("physics-aware split: empty training set");
  if (split.test.empty()) throw DataError("physics-aware split: empty test window");
  return split;
}

}  // namespace tqdl

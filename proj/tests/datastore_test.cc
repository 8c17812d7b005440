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

#include <cmath>
#include <filesystem>
#include <fstream>

#include "gtest/gtest.h"
#include "tqdl/errors.h"
#include "tqdl/hamiltonian.h"

namespace tqdl {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("tqdl_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

DatasetConfig small_config() {
  DatasetConfig cfg;
  cfg.points_per_phase = 6;
  cfg.vqe.iterations = 60;
  cfg.vqe.trials = 2;
  cfg.vqe.seed = 5;
  return cfg;
}

TEST(FieldGrid, DefaultGrid) {
  const auto xs = field_grid(DatasetConfig{});
  ASSERT_EQ(xs.size(), 300u);
  EXPECT_EQ(xs[0], 0.0);
  EXPECT_EQ(xs[149], 0.25);
  EXPECT_NEAR(xs[1], 0.25 / 149, 1e-17);
  EXPECT_EQ(xs[150], 0.26);
  EXPECT_EQ(xs[299], 1.0);
  for (std::size_t i = 1; i < xs.size(); ++i) EXPECT_LT(xs[i - 1], xs[i]);
}

TEST(Dataset, GenerateLabelsAndBalance) {
  const auto g = build_lattice(2, 2);
  const PhaseDataset ds = generate_dataset(g, small_config());
  ASSERT_EQ(ds.samples.size(), 12u);
  int neg = 0;
  for (const auto& s : ds.samples) {
    EXPECT_EQ(s.label, s.x <= 0.25 ? -1 : 1);
    neg += s.label < 0;
    EXPECT_NEAR(energy(s.state, build_hamiltonian(g, s.x)), s.vqe_energy, 1e-9);
  }
  EXPECT_EQ(neg, 6);
  EXPECT_EQ(ds.samples[3].state_path, "states/3.lgsv");
}

TEST(Dataset, RegenerationIsBitIdentical) {
  const auto g = build_lattice(2, 3);
  const PhaseDataset a = generate_dataset(g, small_config());
  const PhaseDataset b = generate_dataset(g, small_config());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].thetas, b.samples[i].thetas);
  }
}

TEST(Dataset, SaveLoadRoundTrip) {
  TempDir dir;
  const auto g = build_lattice(2, 3);
  const PhaseDataset ds = generate_and_save(g, small_config(), dir.path());
  EXPECT_FALSE(fs::exists(dir.path() / kPartialMarker));
  const PhaseDataset back = load_dataset(dir.path());
  EXPECT_EQ(back.rows, 2u);
  EXPECT_EQ(back.cols, 3u);
  EXPECT_EQ(back.x_c_ref, 0.25);
  EXPECT_EQ(back.config.vqe.seed, 5u);
  EXPECT_EQ(back.config.vqe.iterations, 60);
  ASSERT_EQ(back.samples.size(), ds.samples.size());
  for (std::size_t i = 0; i < ds.samples.size(); ++i) {
    EXPECT_EQ(back.samples[i].x, ds.samples[i].x);
    EXPECT_EQ(back.samples[i].label, ds.samples[i].label);
    EXPECT_EQ(back.samples[i].thetas, ds.samples[i].thetas);
    EXPECT_EQ(back.samples[i].vqe_energy, ds.samples[i].vqe_energy);
    EXPECT_EQ(back.samples[i].state, ds.samples[i].state);
  }
}

TEST(Dataset, DetectsCorruption) {
  TempDir dir;
  const auto g = build_lattice(2, 2);
  generate_and_save(g, small_config(), dir.path());

  const fs::path state = dir.path() / "states" / "2.lgsv";
  const auto size = fs::file_size(state);
  fs::resize_file(state, size - 8);
  EXPECT_THROW(load_dataset(dir.path()), DataError);
  fs::resize_file(state, size);
  // Right length, wrong bytes. PLGC amplitudes are real, so the zero-filled
  // tail alone would reproduce the original file.
  {
    std::fstream f(state, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(8);
    f.put('\x7f');
  }
  EXPECT_THROW(load_dataset(dir.path()), DataError);
}

TEST(Dataset, RejectsUnknownVersionAndPartialOutput) {
  TempDir dir;
  generate_and_save(build_lattice(2, 2), small_config(), dir.path());
  const fs::path manifest = dir.path() / "manifest.json";
  std::string text;
  {
    std::ifstream in(manifest);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  const auto pos = text.find("\"version\": 1");
  ASSERT_NE(pos, std::string::npos);
  std::string bumped = text;
  bumped.replace(pos, 12, "\"version\": 2");
  std::ofstream(manifest) << bumped;
  try {
    load_dataset(dir.path());
    FAIL() << "expected a version error";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("version"), std::string::npos);
  }
  std::ofstream(manifest) << text;
  EXPECT_NO_THROW(load_dataset(dir.path()));
  std::ofstream(dir.path() / kPartialMarker) << "x";
  EXPECT_THROW(load_dataset(dir.path()), DataError);
  EXPECT_THROW(load_dataset(dir.path() / "missing"), DataError);
}

TEST(Split, RandomSplitSizesAndDeterminism) {
  const Split s = split_random(300, 0.8, 11);
  EXPECT_EQ(s.train.size(), 240u);
  EXPECT_EQ(s.test.size(), 60u);
  std::vector<int> seen(300, 0);
  for (auto i : s.train) ++seen[i];
  for (auto i : s.test) ++seen[i];
  for (int c : seen) EXPECT_EQ(c, 1);
  const Split t = split_random(300, 0.8, 11);
  EXPECT_EQ(s.train, t.train);
  EXPECT_NE(split_random(300, 0.8, 12).test, s.test);
  EXPECT_EQ(split_random(3, 0.99, 1).test.size(), 1u);
  EXPECT_THROW(split_random(10, 1.0, 1), std::invalid_argument);
  EXPECT_THROW(split_random(10, 0.0, 1), std::invalid_argument);
}

TEST(Split, PhysicsAware) {
  const auto xs = field_grid(DatasetConfig{});
  const Split s = split_physics_aware(xs, 0.2, 0.4);
  for (auto i : s.test) {
    EXPECT_GE(xs[i], 0.2);
    EXPECT_LE(xs[i], 0.4);
  }
  for (auto i : s.train) EXPECT_TRUE(xs[i] < 0.2 || xs[i] > 0.4);
  EXPECT_EQ(s.train.size() + s.test.size(), 300u);
  const std::vector<double> edge{0.1, 0.2, 0.3, 0.4, 0.5};
  EXPECT_EQ(split_physics_aware(edge, 0.2, 0.4).test, (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_THROW(split_physics_aware(xs, 0.0, 1.0), DataError);
  EXPECT_THROW(split_physics_aware(edge, 0.11, 0.12), DataError);
}

TEST(Checksum, KnownVectors) {
  EXPECT_EQ(fnv1a64({}), 0xcbf29ce484222325ULL);
  const unsigned char a[] = {'a'};
  EXPECT_EQ(fnv1a64(a), 0xaf63dc4c8601ec8cULL);
}

}  // namespace
}  // namespace tqdl

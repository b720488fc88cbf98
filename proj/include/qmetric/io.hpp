// Copyright 2026 The qmetric Authors
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

#pragma once

// On-disk formats: dataset CSV, trained-parameter JSON, cost-history CSV and
// the JSON run configuration.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmetric/datasets.hpp"
#include "qmetric/training.hpp"

namespace qmetric {

/// Bad user input: unreadable files, malformed content, invalid settings.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

/// Header `x1,...,xd,label`, label in {-1, +1}.
void write_dataset_csv(const std::filesystem::path& path, const Dataset& d);
Dataset read_dataset_csv(const std::filesystem::path& path);

struct TrainedEmbedding {
  EmbeddingSpec spec;
  ParamVector theta;
};

/// {"n_qubits", "n_features", "n_layers", "theta": [...]}.
std::string theta_json(const TrainedEmbedding& t);
void write_theta_json(const std::filesystem::path& path, const TrainedEmbedding& t);
TrainedEmbedding read_theta_json(const std::filesystem::path& path);

/// Header `step,cost`.
void write_history_csv(const std::filesystem::path& path, const std::vector<CostPoint>& history);

enum class ClassifierKind { Fidelity, HelstromGlobal, HelstromPairwise };

std::string to_string(ClassifierKind kind);
ClassifierKind parse_classifier_kind(const std::string& name);

/// Largest register the dense simulator accepts from user input.
inline constexpr int kMaxQubits = 12;

struct RunConfig {
  TrainConfig train;
  std::filesystem::path dataset;     // resolved against the config directory
  std::filesystem::path output_dir;  // resolved against the config directory
  ClassifierKind classifier = ClassifierKind::Fidelity;
  bool standardize = false;
};

/// Parses a run configuration. Unknown keys are rejected. `n_features`
/// defaults to -1 (taken from the dataset) when absent.
RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir);
RunConfig read_run_config(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace qmetric

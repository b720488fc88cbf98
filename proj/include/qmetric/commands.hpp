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

// Command implementations behind the qmetric executable. Each returns the
// process exit code: 0 success, 1 user error, 2 internal error.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "qmetric/io.hpp"
#include "qmetric/metrics.hpp"

namespace qmetric {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUserError = 1;
inline constexpr int kExitInternalError = 2;

/// Runs `body`, mapping input and contract errors to exit 1 and anything else
/// to exit 2, with the message written to `err`.
int run_guarded(const std::function<int()>& body, std::ostream& err);

struct GenDataArgs {
  std::string kind;  // "moons" or "bands1d"
  int n_per_class = 75;
  double noise = 0.1;
  std::uint64_t seed = 0;
  std::filesystem::path out;
};

int cmd_gen_data(const GenDataArgs& args, std::ostream& out, std::ostream& err);

/// Trains from a JSON run configuration; writes theta.json and history.csv to
/// the configured output directory.
int cmd_train(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err);

/// Scores inputs with a trained embedding and a classifier built on the
/// embedded training set.
class Scorer {
 public:
  Scorer(TrainedEmbedding embedding, const Dataset& train, ClassifierKind kind,
         std::int64_t shots = 0, std::uint64_t seed = 0);

  double score(const FeatureVector& x, std::uint64_t stream = 0) const;
  double helstrom_global(const FeatureVector& x) const;
  double helstrom_pairwise(const FeatureVector& x) const;
  HsTerms<double> training_terms() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

struct EvalArgs {
  std::filesystem::path theta;
  std::filesystem::path train;
  std::filesystem::path eval;
  std::string classifier = "fidelity";
  std::int64_t shots = 0;
  std::uint64_t seed = 0;
  std::filesystem::path out = "scores.csv";
  bool standardize = false;
};

struct EvalReport {
  double accuracy = 0;
  double risk = 0;
  double purity_a = 0;  // tr rho^2
  double purity_b = 0;  // tr sigma^2
  double cross = 0;     // tr rho sigma
  double hs_distance = 0;
  // Mean |global - pairwise| Helstrom score over the evaluated rows; only set
  // for the Helstrom classifiers.
  double helstrom_gap = 0;
  std::vector<double> scores;
};

EvalReport evaluate(const EvalArgs& args);
int cmd_eval(const EvalArgs& args, std::ostream& out, std::ostream& err);

struct Grid {
  double xmin = -1, xmax = 1, ymin = -1, ymax = 1;
  int steps = 2;
};

/// Parses "xmin,xmax,ymin,ymax,steps".
Grid parse_grid(const std::string& text);

struct BoundaryArgs {
  std::filesystem::path theta;
  std::filesystem::path train;
  std::string classifier = "fidelity";
  Grid grid;
  std::filesystem::path out = "boundary.csv";
  bool standardize = false;
};

int cmd_boundary(const BoundaryArgs& args, std::ostream& out, std::ostream& err);

int cmd_capacity(const CapacityParams& params, std::ostream& out, std::ostream& err);

}  // namespace qmetric

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

// qmetric: train quantum embeddings and classify with fidelity or Helstrom
// measurements.

#include <iostream>

#include <CLI11.hpp>

#include "qmetric/commands.hpp"

int main(int argc, char** argv) {
  using namespace qmetric;
  CLI::App app{"Quantum metric learning: embedding training and optimal-measurement classifiers"};
  app.require_subcommand(1);

  GenDataArgs gen;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen-data", "Generate a toy dataset as CSV");
  gen_cmd->add_option("kind", gen.kind, "moons or bands1d")->required();
  gen_cmd->add_option("--n", gen.n_per_class, "Samples per class")->capture_default_str();
  gen_cmd->add_option("--noise", gen.noise, "Gaussian noise std (moons only)")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--out", gen_out, "Output CSV path")->required();

  std::string config_path;
  auto* train_cmd = app.add_subcommand("train", "Train an embedding from a JSON run configuration");
  train_cmd->add_option("--config", config_path, "Run configuration JSON")->required();

  EvalArgs eval;
  std::string eval_theta, eval_train, eval_set, eval_out = "scores.csv";
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a trained embedding with a classifier");
  eval_cmd->add_option("--theta", eval_theta, "Trained parameter JSON")->required();
  eval_cmd->add_option("--train", eval_train, "Training CSV defining the class ensembles")->required();
  eval_cmd->add_option("--eval", eval_set, "CSV to score")->required();
  eval_cmd->add_option("--classifier", eval.classifier, "fidelity, helstrom-global or helstrom-pairwise")
      ->capture_default_str();
  eval_cmd->add_option("--shots", eval.shots, "Inversion-test shots per overlap (0 = exact)")
      ->capture_default_str();
  eval_cmd->add_option("--seed", eval.seed, "Seed for shot sampling")->capture_default_str();
  eval_cmd->add_option("--out", eval_out, "Per-row scores CSV")->capture_default_str();
  eval_cmd->add_flag("--standardize", eval.standardize, "Standardize features with training-split statistics");

  BoundaryArgs boundary;
  std::string b_theta, b_train, b_grid, b_out = "boundary.csv";
  auto* boundary_cmd = app.add_subcommand("boundary", "Export classifier scores over a 2-d grid");
  boundary_cmd->add_option("--theta", b_theta, "Trained parameter JSON")->required();
  boundary_cmd->add_option("--train", b_train, "Training CSV defining the class ensembles")->required();
  boundary_cmd->add_option("--classifier", boundary.classifier, "fidelity, helstrom-global or helstrom-pairwise")
      ->capture_default_str();
  boundary_cmd->add_option("--grid", b_grid, "xmin,xmax,ymin,ymax,steps")->required();
  boundary_cmd->add_option("--out", b_out, "Grid CSV")->capture_default_str();
  boundary_cmd->add_flag("--standardize", boundary.standardize,
                         "Standardize features with training-split statistics");

  CapacityParams cap;
  auto* cap_cmd = app.add_subcommand("capacity", "Classical bits a device can embed within its coherence time");
  cap_cmd->add_option("--bandwidth-hz", cap.bandwidth_hz, "Pulse bandwidth in Hz")->required();
  cap_cmd->add_option("--coherence-s", cap.coherence_s, "Coherence time in seconds")->required();
  cap_cmd->add_option("--qubits", cap.n_qubits, "Number of qubits")->required();
  cap_cmd->add_option("--bits", cap.bits_per_sample, "Bits per field sample")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUserError;
  }

  if (*gen_cmd) {
    gen.out = gen_out;
    return cmd_gen_data(gen, std::cout, std::cerr);
  }
  if (*train_cmd) return cmd_train(config_path, std::cout, std::cerr);
  if (*eval_cmd) {
    eval.theta = eval_theta;
    eval.train = eval_train;
    eval.eval = eval_set;
    eval.out = eval_out;
    return cmd_eval(eval, std::cout, std::cerr);
  }
  if (*boundary_cmd) {
    boundary.theta = b_theta;
    boundary.train = b_train;
    boundary.out = b_out;
    return run_guarded([&] {
      boundary.grid = parse_grid(b_grid);
      return cmd_boundary(boundary, std::cout, std::cerr);
    }, std::cerr);
  }
  if (*cap_cmd) return cmd_capacity(cap, std::cout, std::cerr);
  return kExitInternalError;
}

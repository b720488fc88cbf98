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

#include "qmetric/commands.hpp"

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>

#include "qmetric/classifiers.hpp"

namespace qmetric {

namespace fs = std::filesystem;

int run_guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUserError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUserError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitUserError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
}

int cmd_gen_data(const GenDataArgs& args, std::ostream& out, std::ostream& err) {
  return run_guarded([&] {
    Dataset d;
    if (args.kind == "moons") {
      d = gen_moons(args.n_per_class, args.noise, args.seed);
    } else if (args.kind == "bands1d") {
      d = gen_bands1d(args.n_per_class, args.seed);
    } else {
      throw InputError("unknown dataset kind '" + args.kind + "' (expected moons or bands1d)");
    }
    if (args.out.empty()) throw InputError("--out is required");
    write_dataset_csv(args.out, d);
    out << "wrote " << d.size() << " rows to " << args.out.string() << "\n";
    return kExitOk;
  }, err);
}

namespace {

Dataset load_dataset(const fs::path& path) {
  if (!fs::exists(path)) throw InputError("dataset file not found: " + path.string());
  return read_dataset_csv(path);
}

// Standardization statistics always come from the training split.
std::optional<Standardizer> standardizer_for(const Dataset& train, bool enabled) {
  if (!enabled) return std::nullopt;
  return Standardizer::fit(train.inputs);
}

Dataset maybe_apply(const std::optional<Standardizer>& s, const Dataset& d) {
  return s ? s->apply(d) : d;
}

std::vector<StateVector<double>> embed_inputs(const TrainedEmbedding& t, const FeatureVectors& xs) {
  std::vector<StateVector<double>> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(embed(t.spec, t.theta, x));
  return out;
}

}  // namespace

struct Scorer::Impl {
  TrainedEmbedding embedding;
  FeatureVectors class_a, class_b;
  ClassifierKind kind;
  std::int64_t shots;
  std::uint64_t seed;
  ClassEnsembles<double> ensembles;
  std::optional<ComplexMatrix<double>> helstrom;

  Impl(TrainedEmbedding e, const Dataset& train, ClassifierKind k, std::int64_t s, std::uint64_t sd)
      : embedding(std::move(e)),
        class_a(train.class_a()),
        class_b(train.class_b()),
        kind(k),
        shots(s),
        seed(sd),
        ensembles(embed_inputs(embedding, class_a), embed_inputs(embedding, class_b)) {
    if (kind != ClassifierKind::Fidelity) helstrom = helstrom_observable(ensembles);
  }
};

Scorer::Scorer(TrainedEmbedding embedding, const Dataset& train, ClassifierKind kind,
               std::int64_t shots, std::uint64_t seed) {
  train.validate();
  if (train.n_features() != embedding.spec.n_features) {
    throw InputError("training set has " + std::to_string(train.n_features()) +
                     " features, embedding expects " + std::to_string(embedding.spec.n_features));
  }
  if (shots < 0) throw InputError("shots must be >= 0");
  if (shots > 0 && kind != ClassifierKind::Fidelity) {
    throw InputError("shot-based scoring is available for the fidelity classifier only");
  }
  impl_ = std::make_shared<const Impl>(std::move(embedding), train, kind, shots, seed);
}

double Scorer::score(const FeatureVector& x, std::uint64_t stream) const {
  const auto& e = impl_->embedding;
  switch (impl_->kind) {
    case ClassifierKind::Fidelity:
      if (impl_->shots > 0) {
        return fidelity_score(e.spec, e.theta, x, impl_->class_a, impl_->class_b, impl_->shots,
                              derive_seed(impl_->seed, stream));
      }
      return qmetric::fidelity_score(embed(e.spec, e.theta, x), impl_->ensembles);
    case ClassifierKind::HelstromGlobal:
      return helstrom_global(x);
    case ClassifierKind::HelstromPairwise:
      return helstrom_pairwise(x);
  }
  return 0;
}

double Scorer::helstrom_global(const FeatureVector& x) const {
  const auto& e = impl_->embedding;
  if (!impl_->helstrom) throw std::logic_error("Helstrom observable not built for this classifier");
  return expectation(*impl_->helstrom, embed(e.spec, e.theta, x));
}

double Scorer::helstrom_pairwise(const FeatureVector& x) const {
  const auto& e = impl_->embedding;
  return helstrom_pairwise_score(embed(e.spec, e.theta, x), impl_->ensembles);
}

HsTerms<double> Scorer::training_terms() const {
  return hs_terms_from_overlaps<double>(impl_->ensembles.states_a(), impl_->ensembles.states_b(), 0, 0);
}

int cmd_train(const fs::path& config_path, std::ostream& out, std::ostream& err) {
  return run_guarded([&] {
    RunConfig rc = read_run_config(config_path);
    const Dataset raw = load_dataset(rc.dataset);
    if (rc.train.spec.n_features < 0) rc.train.spec.n_features = raw.n_features();
    const auto scaler = standardizer_for(raw, rc.standardize);
    const Dataset data = maybe_apply(scaler, raw);

    const TrainResult result = train(data, rc.train);
    const TrainedEmbedding trained{rc.train.spec, result.theta};
    write_theta_json(rc.output_dir / "theta.json", trained);
    write_history_csv(rc.output_dir / "history.csv", result.history);

    const double final_cost = cost(trained.spec, trained.theta, data.class_a(), data.class_b(), rc.train.cost);
    const Scorer scorer(trained, data, rc.classifier);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      correct += predict(scorer.score(data.inputs[i], i)).label == data.labels[i];
    }
    out << "steps: " << result.history.size() << "\n"
        << "final_batch_cost: " << format_double(result.history.back().cost) << "\n"
        << "final_cost: " << format_double(final_cost) << "\n"
        << "train_accuracy (" << to_string(rc.classifier)
        << "): " << format_double(double(correct) / double(data.size())) << "\n"
        << "wrote " << (rc.output_dir / "theta.json").string() << " and "
        << (rc.output_dir / "history.csv").string() << "\n";
    return kExitOk;
  }, err);
}

EvalReport evaluate(const EvalArgs& args) {
  const TrainedEmbedding trained = read_theta_json(args.theta);
  const Dataset raw_train = load_dataset(args.train);
  const Dataset raw_eval = load_dataset(args.eval);
  const auto scaler = standardizer_for(raw_train, args.standardize);
  const Dataset train_set = maybe_apply(scaler, raw_train);
  const Dataset eval_set = maybe_apply(scaler, raw_eval);
  if (eval_set.n_features() != trained.spec.n_features) {
    throw InputError("evaluation set has " + std::to_string(eval_set.n_features()) +
                     " features, embedding expects " + std::to_string(trained.spec.n_features));
  }
  const ClassifierKind kind = parse_classifier_kind(args.classifier);
  const Scorer scorer(trained, train_set, kind, args.shots, args.seed);

  EvalReport report;
  std::size_t correct = 0;
  double gap = 0;
  std::string csv;
  for (int i = 0; i < eval_set.n_features(); ++i) csv += "x" + std::to_string(i + 1) + ",";
  csv += "label,score,prediction\n";
  for (std::size_t r = 0; r < eval_set.size(); ++r) {
    const double s = scorer.score(eval_set.inputs[r], r);
    const Prediction p = predict(s);
    report.scores.push_back(s);
    correct += p.label == eval_set.labels[r];
    if (kind != ClassifierKind::Fidelity) {
      gap += std::abs(scorer.helstrom_global(eval_set.inputs[r]) -
                      scorer.helstrom_pairwise(eval_set.inputs[r]));
    }
    for (Eigen::Index i = 0; i < raw_eval.inputs[r].size(); ++i) {
      csv += format_double(raw_eval.inputs[r](i)) + ",";
    }
    csv += std::to_string(eval_set.labels[r]) + "," + format_double(s) + "," + std::to_string(p.label) + "\n";
  }
  write_text_file(args.out, csv);

  const auto terms = scorer.training_terms();
  report.accuracy = double(correct) / double(eval_set.size());
  report.risk = empirical_risk(report.scores, eval_set.labels);
  report.purity_a = terms.purity_a;
  report.purity_b = terms.purity_b;
  report.cross = terms.cross;
  report.hs_distance = terms.distance();
  report.helstrom_gap = gap / double(eval_set.size());
  return report;
}

int cmd_eval(const EvalArgs& args, std::ostream& out, std::ostream& err) {
  return run_guarded([&] {
    const EvalReport r = evaluate(args);
    out << "classifier: " << args.classifier << "\n"
        << "accuracy: " << format_double(r.accuracy) << "\n"
        << "empirical_risk: " << format_double(r.risk) << "\n"
        << "purity_rho: " << format_double(r.purity_a) << "\n"
        << "purity_sigma: " << format_double(r.purity_b) << "\n"
        << "overlap_rho_sigma: " << format_double(r.cross) << "\n"
        << "hs_distance: " << format_double(r.hs_distance) << "\n";
    if (args.classifier != "fidelity") {
      out << "helstrom_global_pairwise_gap: " << format_double(r.helstrom_gap) << "\n";
    }
    out << "wrote " << args.out.string() << "\n";
    return kExitOk;
  }, err);
}

Grid parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 5) throw InputError("grid must be xmin,xmax,ymin,ymax,steps");
  Grid g;
  try {
    std::size_t used = 0;
    auto num = [&](const std::string& s) {
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    };
    g.xmin = num(parts[0]);
    g.xmax = num(parts[1]);
    g.ymin = num(parts[2]);
    g.ymax = num(parts[3]);
    g.steps = std::stoi(parts[4], &used);
    if (used != parts[4].size()) throw std::invalid_argument(parts[4]);
  } catch (const std::exception&) {
    throw InputError("grid must be xmin,xmax,ymin,ymax,steps");
  }
  if (g.steps < 1) throw InputError("grid steps must be >= 1");
  return g;
}

int cmd_boundary(const BoundaryArgs& args, std::ostream& out, std::ostream& err) {
  return run_guarded([&] {
    const TrainedEmbedding trained = read_theta_json(args.theta);
    if (trained.spec.n_features != 2) {
      throw InputError("boundary export needs a 2-feature embedding, got " +
                       std::to_string(trained.spec.n_features));
    }
    const Dataset raw_train = load_dataset(args.train);
    const auto scaler = standardizer_for(raw_train, args.standardize);
    const Scorer scorer(trained, maybe_apply(scaler, raw_train), parse_classifier_kind(args.classifier));

    const Grid& g = args.grid;
    auto coord = [&](double lo, double hi, int i) {
      return g.steps == 1 ? lo : lo + (hi - lo) * double(i) / double(g.steps - 1);
    };
    std::string csv = "x1,x2,score\n";
    for (int i = 0; i < g.steps; ++i) {
      for (int j = 0; j < g.steps; ++j) {
        Eigen::VectorXd x(2);
        x << coord(g.xmin, g.xmax, i), coord(g.ymin, g.ymax, j);
        const double s = scorer.score(scaler ? scaler->apply(x) : x);
        csv += format_double(x(0)) + "," + format_double(x(1)) + "," + format_double(s) + "\n";
      }
    }
    write_text_file(args.out, csv);
    out << "wrote " << g.steps * g.steps << " grid points to " << args.out.string() << "\n";
    return kExitOk;
  }, err);
}

int cmd_capacity(const CapacityParams& params, std::ostream& out, std::ostream& err) {
  return run_guarded([&] {
    out << "capacity_bits: " << format_double(capacity(params)) << "\n";
    return kExitOk;
  }, err);
}

}  // namespace qmetric

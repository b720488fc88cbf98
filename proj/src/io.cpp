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

#include "qmetric/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qmetric {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf.data(), end);
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw InputError("error writing '" + path.string() + "'");
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_number(std::string_view field, const std::string& where) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw InputError(where + ": cannot parse number '" + std::string(field) + "'");
  }
  return v;
}

}  // namespace

void write_dataset_csv(const fs::path& path, const Dataset& d) {
  d.validate();
  std::string out;
  for (int i = 0; i < d.n_features(); ++i) out += "x" + std::to_string(i + 1) + ",";
  out += "label\n";
  for (std::size_t r = 0; r < d.size(); ++r) {
    for (Eigen::Index i = 0; i < d.inputs[r].size(); ++i) out += format_double(d.inputs[r](i)) + ",";
    out += std::to_string(d.labels[r]) + "\n";
  }
  write_text_file(path, out);
}

Dataset read_dataset_csv(const fs::path& path) {
  const std::string text = read_text_file(path);
  std::istringstream in(text);
  std::string line;
  const std::string name = path.string();
  if (!std::getline(in, line)) throw InputError(name + ": empty dataset file");
  const auto header = split_fields(line);
  if (header.size() < 2 || header.back() != "label") {
    throw InputError(name + ": header must be x1,...,xd,label");
  }
  for (std::size_t i = 0; i + 1 < header.size(); ++i) {
    if (header[i] != "x" + std::to_string(i + 1)) {
      throw InputError(name + ": header must be x1,...,xd,label");
    }
  }
  const std::size_t d = header.size() - 1;
  Dataset data;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    const std::string where = name + ":" + std::to_string(line_no);
    if (fields.size() != d + 1) throw InputError(where + ": expected " + std::to_string(d + 1) + " fields");
    Eigen::VectorXd x(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) x(Eigen::Index(i)) = parse_number(fields[i], where);
    const double label = parse_number(fields[d], where);
    if (label != 1.0 && label != -1.0) throw InputError(where + ": label must be -1 or +1");
    data.inputs.push_back(std::move(x));
    data.labels.push_back(int(label));
  }
  try {
    data.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(name + ": " + e.what());
  }
  return data;
}

std::string theta_json(const TrainedEmbedding& t) {
  json j;
  j["n_qubits"] = t.spec.n_qubits;
  j["n_features"] = t.spec.n_features;
  j["n_layers"] = t.spec.n_layers;
  j["theta"] = std::vector<double>(t.theta.data(), t.theta.data() + t.theta.size());
  return j.dump(2) + "\n";
}

void write_theta_json(const fs::path& path, const TrainedEmbedding& t) {
  write_text_file(path, theta_json(t));
}

TrainedEmbedding read_theta_json(const fs::path& path) {
  const std::string name = path.string();
  try {
    const json j = json::parse(read_text_file(path));
    if (!j.is_object()) throw InputError(name + ": expected a JSON object");
    TrainedEmbedding t;
    t.spec.n_qubits = j.at("n_qubits").get<int>();
    t.spec.n_features = j.at("n_features").get<int>();
    t.spec.n_layers = j.at("n_layers").get<int>();
    t.spec.validate();
    if (t.spec.n_qubits > kMaxQubits) throw InputError(name + ": n_qubits exceeds " + std::to_string(kMaxQubits));
    const auto theta = j.at("theta").get<std::vector<double>>();
    t.theta = Eigen::Map<const Eigen::VectorXd>(theta.data(), Eigen::Index(theta.size()));
    if (t.theta.size() != param_count(t.spec)) {
      throw InputError(name + ": theta length does not match the embedding");
    }
    return t;
  } catch (const json::exception& e) {
    throw InputError(name + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(name + ": " + e.what());
  }
}

void write_history_csv(const fs::path& path, const std::vector<CostPoint>& history) {
  std::string out = "step,cost\n";
  for (const auto& p : history) out += std::to_string(p.step) + "," + format_double(p.cost) + "\n";
  write_text_file(path, out);
}

std::string to_string(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::Fidelity: return "fidelity";
    case ClassifierKind::HelstromGlobal: return "helstrom-global";
    case ClassifierKind::HelstromPairwise: return "helstrom-pairwise";
  }
  return "?";
}

ClassifierKind parse_classifier_kind(const std::string& name) {
  if (name == "fidelity") return ClassifierKind::Fidelity;
  if (name == "helstrom-global") return ClassifierKind::HelstromGlobal;
  if (name == "helstrom-pairwise") return ClassifierKind::HelstromPairwise;
  throw InputError("unknown classifier '" + name + "'");
}

RunConfig parse_run_config(const std::string& text, const fs::path& base_dir) {
  static const std::array<const char*, 15> kKeys = {
      "dataset",    "output_dir", "classifier", "n_qubits", "n_features",
      "n_layers",   "cost",       "optimizer",  "learning_rate", "batch_size",
      "steps",      "seed",       "shots",      "init_scale",    "standardize"};
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw InputError("config: expected a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (std::find_if(kKeys.begin(), kKeys.end(), [&](const char* k) { return key == k; }) == kKeys.end()) {
      throw InputError("config: unknown key '" + key + "'");
    }
  }
  try {
    RunConfig rc;
    auto resolve = [&](const std::string& p) { return (base_dir / p).lexically_normal(); };
    rc.dataset = resolve(j.at("dataset").get<std::string>());
    rc.output_dir = resolve(j.value("output_dir", std::string(".")));
    rc.classifier = parse_classifier_kind(j.value("classifier", std::string("fidelity")));
    rc.standardize = j.value("standardize", false);
    auto& t = rc.train;
    t.spec.n_qubits = j.at("n_qubits").get<int>();
    t.spec.n_layers = j.at("n_layers").get<int>();
    t.spec.n_features = j.value("n_features", -1);
    t.cost = parse_cost_kind(j.value("cost", std::string("hilbert-schmidt")));
    t.optimizer = parse_optimizer_kind(j.value("optimizer", std::string("rmsprop")));
    t.learning_rate = j.value("learning_rate", t.learning_rate);
    t.batch_size = j.value("batch_size", t.batch_size);
    t.steps = j.value("steps", t.steps);
    t.seed = j.value("seed", t.seed);
    t.shots = j.value("shots", t.shots);
    t.init_scale = j.value("init_scale", t.init_scale);
    if (t.spec.n_qubits < 1 || t.spec.n_qubits > kMaxQubits) {
      throw InputError("config: n_qubits must be in [1, " + std::to_string(kMaxQubits) + "]");
    }
    TrainConfig probe = t;
    if (probe.spec.n_features < 0) probe.spec.n_features = 1;
    probe.validate();
    return rc;
  } catch (const json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("config: ") + e.what());
  }
}

RunConfig read_run_config(const fs::path& path) {
  return parse_run_config(read_text_file(path), path.parent_path());
}

}  // namespace qmetric

// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#include "tempograph/nn/checkpoint.hpp"

#include <fstream>
#include <set>

#include "json.hpp"
#include "tempograph/errors.hpp"

namespace tempograph::nn {

using nlohmann::json;

void save_checkpoint(const ParamSet& params, const std::string& model,
                     const std::filesystem::path& path) {
  json doc;
  doc["format"] = "tempograph-checkpoint";
  doc["version"] = kCheckpointVersion;
  doc["model"] = model;
  json list = json::array();
  for (std::size_t i = 0; i < params.size(); ++i) {
    const Parameter& p = params[i];
    const Matrix& v = p.value();
    list.push_back({{"name", p.name()},
                    {"shape", {v.rows(), v.cols()}},
                    {"values", std::vector<double>(v.data(), v.data() + v.size())}});
  }
  doc["params"] = std::move(list);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write checkpoint " + path.string());
  out << doc.dump() << '\n';
}

std::string load_checkpoint(ParamSet& params, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open checkpoint " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw SchemaError("checkpoint " + path.string() + ": " + e.what());
  }
  if (doc.value("format", "") != "tempograph-checkpoint")
    throw SchemaError("checkpoint " + path.string() + ": not a tempograph checkpoint");
  if (doc.value("version", 0) != kCheckpointVersion)
    throw SchemaError("checkpoint " + path.string() + ": unsupported version");

  const json& list = doc.at("params");
  if (list.size() != params.size())
    throw SchemaError("checkpoint holds " + std::to_string(list.size()) + " parameters, model has " +
                      std::to_string(params.size()));
  std::vector<Matrix> values(params.size());
  std::set<std::string> seen;
  for (const json& entry : list) {
    const auto name = entry.at("name").get<std::string>();
    if (!seen.insert(name).second) throw SchemaError("checkpoint repeats parameter " + name);
    Parameter* p = params.find(name);
    if (p == nullptr) throw SchemaError("checkpoint parameter " + name + " not in model");
    const auto shape = entry.at("shape").get<std::vector<Eigen::Index>>();
    if (shape.size() != 2 || shape[0] != p->value().rows() || shape[1] != p->value().cols())
      throw SchemaError("checkpoint parameter " + name + " has the wrong shape");
    const auto flat = entry.at("values").get<std::vector<double>>();
    if (flat.size() != p->size()) throw SchemaError("checkpoint parameter " + name + " is truncated");
    Matrix m(shape[0], shape[1]);
    std::copy(flat.begin(), flat.end(), m.data());
    for (std::size_t i = 0; i < params.size(); ++i)
      if (&params[i] == p) values[i] = std::move(m);
  }
  params.restore(values);
  return doc.value("model", "");
}

}  // namespace tempograph::nn

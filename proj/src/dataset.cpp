// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#include "tempograph/dataset.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <string_view>
#include <unordered_map>

#include "tempograph/errors.hpp"

namespace tempograph {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view field, std::size_t line, const char* what) {
  field = trim(field);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v))
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(field) + "'");
  return v;
}

std::int64_t parse_id(std::string_view field, std::size_t line, const char* what) {
  const double v = parse_number(field, line, what);
  if (v != std::floor(v) || std::abs(v) > 9.0e15)
    throw ParseError(line, std::string(what) + " is not an integer id");
  return static_cast<std::int64_t>(v);
}

bool parse_bool(std::string_view v) {
  return v == "1" || v == "true" || v == "True" || v == "yes";
}

}  // namespace

Dataset ingest_csv(const std::filesystem::path& path, bool has_header) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dataset " + path.string());

  Dataset ds;
  ds.name = path.stem().string();
  std::unordered_map<std::int64_t, NodeId> remap;
  auto dense = [&](std::int64_t raw) {
    auto [it, fresh] = remap.try_emplace(raw, static_cast<NodeId>(ds.original_ids.size()));
    if (fresh) ds.original_ids.push_back(raw);
    return it->second;
  };

  std::string text;
  std::vector<std::string_view> fields;
  std::vector<double> feats;
  std::size_t line = 0;
  bool first_row = true;
  Time last_t = 0.0;
  while (std::getline(in, text)) {
    ++line;
    if (has_header && line == 1) continue;
    const std::string_view row = trim(text);
    if (row.empty()) continue;

    fields.clear();
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = row.find(',', start);
      fields.push_back(row.substr(start, comma == std::string_view::npos ? comma : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() < 4)
      throw ParseError(line, "expected src,dst,timestamp,label[,features], got " +
                                 std::to_string(fields.size()) + " columns");

    const std::size_t k = fields.size() - 4;
    if (first_row) {
      ds.stream.features = std::make_shared<FeatureTable>(k);
    } else if (k != ds.stream.feature_dim()) {
      throw SchemaError("line " + std::to_string(line) + ": " + std::to_string(k) +
                        " features, expected " + std::to_string(ds.stream.feature_dim()));
    }
    const std::int64_t src = parse_id(fields[0], line, "src");
    const std::int64_t dst = parse_id(fields[1], line, "dst");
    const Time t = parse_number(fields[2], line, "timestamp");
    parse_number(fields[3], line, "label");
    if (t < 0.0) throw ParseError(line, "negative timestamp");
    if (!first_row && t < last_t)
      throw OrderingError(line, "timestamp goes backwards");
    feats.resize(k);
    for (std::size_t f = 0; f < k; ++f) feats[f] = parse_number(fields[4 + f], line, "feature");

    const NodeId s = dense(src);
    const NodeId d = dense(dst);
    ds.stream.add_edge(s, d, t, feats);
    last_t = t;
    first_row = false;
  }
  ds.stream.num_nodes = ds.original_ids.size();
  return ds;
}

DatasetManifest parse_manifest(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw Error("cannot open manifest " + manifest_path.string());
  DatasetManifest m;
  m.name = manifest_path.stem().string();
  std::string text;
  std::size_t line = 0;
  bool have_path = false;
  while (std::getline(in, text)) {
    ++line;
    std::string_view row = trim(text);
    if (row.empty() || row.front() == '#') continue;
    const std::size_t sep = row.find_first_of("=:");
    if (sep == std::string_view::npos) throw ParseError(line, "expected key = value");
    const std::string_view key = trim(row.substr(0, sep));
    const std::string_view value = trim(row.substr(sep + 1));
    if (key == "path") {
      m.path = std::filesystem::path(std::string(value));
      if (m.path.is_relative()) m.path = manifest_path.parent_path() / m.path;
      have_path = true;
    } else if (key == "feature_dim") {
      m.feature_dim = static_cast<std::size_t>(parse_id(value, line, "feature_dim"));
    } else if (key == "bipartite") {
      m.bipartite = parse_bool(value);
    } else if (key == "has_header") {
      m.has_header = parse_bool(value);
    } else if (key == "name") {
      m.name = std::string(value);
    } else {
      throw ParseError(line, "unknown manifest key '" + std::string(key) + "'");
    }
  }
  if (!have_path) throw SchemaError("manifest " + manifest_path.string() + " has no path");
  return m;
}

std::filesystem::path data_root() {
  if (const char* dir = std::getenv("TEMPOGRAPH_DATA_DIR"); dir != nullptr && *dir != '\0')
    return dir;
  return "data";
}

namespace {

/// A bare CSV carries no manifest; guess the header from the first byte.
DatasetManifest manifest_for_csv(const std::filesystem::path& csv) {
  DatasetManifest m;
  m.name = csv.stem().string();
  m.path = csv;
  std::ifstream in(csv);
  std::string first;
  std::getline(in, first);
  const std::string_view f = trim(first);
  m.has_header = !f.empty() && !(std::isdigit(static_cast<unsigned char>(f.front())) ||
                                 f.front() == '-' || f.front() == '.');
  return m;
}

}  // namespace

std::optional<DatasetManifest> locate_dataset(const std::string& name_or_path) {
  namespace fs = std::filesystem;
  const fs::path direct(name_or_path);
  if (fs::is_regular_file(direct)) {
    if (direct.extension() == ".manifest") return parse_manifest(direct);
    return manifest_for_csv(direct);
  }
  const fs::path root = data_root();
  if (const fs::path p = root / (name_or_path + ".manifest"); fs::is_regular_file(p))
    return parse_manifest(p);
  if (const fs::path p = root / (name_or_path + ".csv"); fs::is_regular_file(p))
    return manifest_for_csv(p);
  if (const fs::path p = root / name_or_path / (name_or_path + ".csv"); fs::is_regular_file(p))
    return manifest_for_csv(p);
  return std::nullopt;
}

Dataset load_dataset(const DatasetManifest& manifest) {
  Dataset ds = ingest_csv(manifest.path, manifest.has_header);
  ds.name = manifest.name;
  ds.bipartite = manifest.bipartite;
  if (manifest.feature_dim != 0 && manifest.feature_dim != ds.stream.feature_dim())
    throw SchemaError("dataset " + manifest.name + " has " +
                      std::to_string(ds.stream.feature_dim()) + " features, manifest says " +
                      std::to_string(manifest.feature_dim));
  return ds;
}

}  // namespace tempograph

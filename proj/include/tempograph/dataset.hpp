// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPOGRAPH_DATASET_HPP
#define TEMPOGRAPH_DATASET_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tempograph/event.hpp"

namespace tempograph {

/// Event stream loaded from disk together with the dense node-id mapping.
struct Dataset {
  std::string name;
  EventStream stream;
  /// original_ids[dense] is the id as written in the file.
  std::vector<std::int64_t> original_ids;
  bool bipartite = false;
};

/// Reads rows `src,dst,timestamp,label,f1..fk`. Every row becomes an AddEdge
/// with seq equal to its row index. Node ids are remapped to 0..n-1 in order
/// of first appearance.
///
/// Throws ParseError (bad number / too few columns), OrderingError
/// (timestamp decreases) or SchemaError (feature count differs from the
/// first row); all carry the 1-based file line.
Dataset ingest_csv(const std::filesystem::path& path, bool has_header);

/// Key-value description of a dataset on disk:
///
///     path = uci.csv
///     feature_dim = 0
///     bipartite = false
///     has_header = true
///
/// Relative paths resolve against the manifest's directory.
struct DatasetManifest {
  std::string name;
  std::filesystem::path path;
  std::size_t feature_dim = 0;
  bool bipartite = false;
  bool has_header = true;
};

DatasetManifest parse_manifest(const std::filesystem::path& manifest_path);

/// Root directory for named datasets: $TEMPOGRAPH_DATA_DIR, else "./data".
std::filesystem::path data_root();

/// Finds a dataset by name or path. Accepts a path to a .csv or .manifest
/// file, or a bare name looked up as <root>/<name>.manifest, then
/// <root>/<name>.csv, then <root>/<name>/<name>.csv. Returns nullopt if none
/// exists.
std::optional<DatasetManifest> locate_dataset(const std::string& name_or_path);

/// Loads a located dataset and checks the manifest's feature dimension.
Dataset load_dataset(const DatasetManifest& manifest);

}  // namespace tempograph

#endif  // TEMPOGRAPH_DATASET_HPP

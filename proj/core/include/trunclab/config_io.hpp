// trunclab — configuration ingestion and report persistence.
//
// Configs are JSON with a strict schema (docs/config.md): unknown or
// inapplicable fields are rejected by name, all defaults are materialized
// at load time, and the loaded config echoes into every report so that a
// report is self-describing. Reports are serialized canonically — keys in
// lexicographic order, floating-point numbers in shortest round-trip form —
// so that identical (config, seed) pairs produce byte-identical files.
//
// The output directory receives three files:
//   report.json — the canonical report (no timing, no host information)
//   samples.csv — one row per (n, functional_id, replicate, value)
//   run_meta.json — wall clock and worker count; deliberately outside
//                   report.json, which must be a pure function of inputs
//
// Copyright (c) 2026 The trunclab authors.
// Distributed under the MIT License; see LICENSE in the repository root.

#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "trunclab/experiment.hpp"

namespace trunclab {

/// Parses and validates a JSON config document. Throws std::invalid_argument
/// naming the offending field (e.g. "config: unknown field 'model.alpa'"),
/// or with the parser's line/offset diagnostics for malformed JSON.
ExperimentConfig load_config(const std::string& text);

/// Reads the file and delegates to load_config. Throws std::runtime_error
/// when the file cannot be read.
ExperimentConfig load_config_file(const std::string& path);

/// The canonical JSON echo of a config: every semantic field materialized,
/// invocation plumbing (output directory) excluded. load_config of the
/// dumped echo reproduces the config exactly.
nlohmann::json config_to_json(const ExperimentConfig& cfg);

/// The canonical JSON form of a report, excluding per-sample rows (those
/// live in samples.csv, referenced by relative path) and wall-clock
/// telemetry (run_meta.json).
nlohmann::json report_to_json(const ExperimentReport& rep);

/// report_to_json dumped with 2-space indentation and a trailing newline —
/// exactly the bytes of report.json.
std::string report_json_text(const ExperimentReport& rep);

/// The bytes of samples.csv: header "n,functional_id,replicate,value" and
/// one row per sample, numbers in shortest round-trip form.
std::string samples_csv_text(const ExperimentReport& rep);

/// Writes report.json, samples.csv and run_meta.json into out_dir (created
/// if missing). Throws std::runtime_error on I/O failure.
void write_report(const ExperimentReport& rep, const std::string& out_dir);

}  // namespace trunclab

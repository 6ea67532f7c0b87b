#pragma once

// Text (JSON) file formats. All indices in files are 1-based.
//
// Instance:
//   {"name": str, "m": int,
//    "layout": [{"index": int, "machines": [int] | [int, int]}, ...],
//    "jobs": [{"id": int, "ptimes": [{"slot": int, "machine": int, "p": int}, ...]}, ...],
//    "meta": {...}}
//
// Solution:
//   {"instance": str, "sequence": [job ids by position],
//    "splits": [[split per boundary] per job id], "starts": [[start per machine] per position],
//    "ptimes": [[workload per machine] per position] (optional),
//    "makespan": int, "algorithm": str, "params": {...}, "time_ms": int}

#include <filesystem>
#include <string>

#include "fixb/core.hpp"
#include "json.hpp"

namespace fixb {

nlohmann::json instance_to_json(const Instance& inst);
// Parses and validates; throws InvalidInput on malformed or invalid data.
Instance instance_from_json(const nlohmann::json& doc);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& inst, const std::filesystem::path& path);

// Solution plus the bookkeeping fields of the solution file.
struct SolutionRecord {
  std::string instance;
  Solution solution;
  std::string algorithm;
  nlohmann::json params = nlohmann::json::object();
  std::int64_t time_ms = 0;
};

nlohmann::json solution_to_json(const SolutionRecord& record);
// Structural parse only: starts/ptimes are not re-derived. Use
// verify_solution() to check the record against its instance.
SolutionRecord solution_from_json(const nlohmann::json& doc);

SolutionRecord load_solution(const std::filesystem::path& path);
void save_solution(const SolutionRecord& record, const std::filesystem::path& path);

// Re-evaluates (sequence, splits) on `inst` and compares starts and makespan
// with the stored values. Returns an empty string on success, otherwise a
// description of the first mismatch.
std::string verify_solution(const Instance& inst, const SolutionRecord& record);

// Canonical text of a JSON document (two-space indent, trailing newline).
std::string dump_canonical(const nlohmann::json& doc);

// Comma-separated 1-based job ids, e.g. "3,1,2".
Sequence parse_sequence(const std::string& text, int jobs);

}  // namespace fixb

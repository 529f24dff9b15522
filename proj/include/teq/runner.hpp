#pragma once

// Task orchestration: execute the tasks requested by a problem description
// and collect a structured report that renders as plain text or JSON.

#include "teq/problem.hpp"
#include "teq/verifier.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace teq {

inline constexpr const char* teq_version = "0.1.0";

struct RunOptions {
    std::optional<int> levels;    // override the problem's truncation depth
    std::optional<int> mode_cap;  // override the problem's Fourier cap
    uint64_t seed = 20260815;     // verifier seed
    int probes = 200;             // verifier probes
};

struct TaskResult {
    std::string task;
    bool ok = true;
    nlohmann::json data;              // structured payload
    std::vector<std::string> lines;   // human-readable rendering
};

struct RunReport {
    std::string source;  // problem file path, or "-" when none
    std::string digest;  // FNV-1a 64 of the problem file bytes, hex
    uint64_t seed = 0;
    std::vector<TaskResult> tasks;

    bool ok() const;
    nlohmann::json to_json() const;
    std::string render_text() const;
};

// Runs one task against a loaded problem.  Unknown names throw; computational
// failures are captured in the result, not thrown.
TaskResult run_task(const Problem& p, const std::string& task, const RunOptions& opt);

RunReport run_problem(const Problem& p, const std::vector<std::string>& tasks,
                      const RunOptions& opt, const std::string& source,
                      const std::string& digest);

// FNV-1a 64-bit digest, lowercase hex.
std::string fnv1a64_hex(const std::string& bytes);
// Whole-file read (throws on I/O errors); used for report digests.
std::string read_file(const std::string& path);

}  // namespace teq

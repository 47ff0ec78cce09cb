#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "gsnoise/plan.hpp"

namespace gsnoise {

struct ExecuteOptions {
    std::size_t parallelism = 1;
    /// Output directory holding records.csv, failures.log and plan.txt.
    std::filesystem::path out_dir;
    /// Keep existing records and skip their keys; otherwise start fresh.
    bool resume = false;
    /// Called after each persisted record (from the writer, serialized).
    std::function<void(const RunRecord&)> on_record;
};

struct CellFailure {
    std::string key;
    std::string message;
};

struct ExecutionSummary {
    /// Every record now persisted, including ones found on resume.
    std::vector<RunRecord> records;
    std::size_t executed = 0;
    std::size_t skipped = 0;
    std::vector<CellFailure> failures;
};

inline constexpr const char* kRecordsFile = "records.csv";
inline constexpr const char* kFailuresFile = "failures.log";
inline constexpr const char* kPlanFile = "plan.txt";

/// Runs every cell not already persisted, appending each record to
/// out_dir/records.csv through a single writer. A failing cell is logged to
/// failures.log and left unpersisted so a later resume retries it.
ExecutionSummary execute(const ExperimentPlan& plan, const ExecuteOptions& options);

/// Cell runner used by execute; swappable in tests to inject failures.
using CellRunner = std::function<RunRecord(const ExperimentPlan&, const Cell&)>;
ExecutionSummary execute(const ExperimentPlan& plan, const ExecuteOptions& options,
                         const CellRunner& runner);

} // namespace gsnoise

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gsnoise/bench_data.hpp"

namespace gsnoise {

enum class Method { GP, GSGP };

const char* to_string(Method m) noexcept;
Method parse_method(std::string_view text);

/// Outcome of one (method, dataset, noise level, sample, repetition) cell.
struct RunRecord {
    Method method = Method::GP;
    std::string dataset;
    NoiseLevel noise;
    int sample_id = 0;
    int rep_index = 0;
    std::uint64_t seed = 0;
    double final_train_nrmse = 0.0;
    double final_test_nrmse = 0.0;
    double wall_time_s = 0.0;
    std::string config_hash;

    /// Unique cell key: method|dataset|noise bp|sample|rep.
    std::string key() const;

    /// Field-wise equality of everything except wall time.
    bool same_outcome(const RunRecord& other) const;

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

inline constexpr const char* kRecordsHeader =
    "method,dataset,noise_level,sample_id,rep_index,seed,final_train_nrmse,final_test_nrmse,"
    "wall_time_s,config_hash";

std::string serialize_record(const RunRecord& r);
RunRecord parse_record(std::string_view line);

/// Reads a records CSV written by write_records / the executor.
std::vector<RunRecord> read_records(const std::filesystem::path& path);
void write_records(const std::filesystem::path& path, const std::vector<RunRecord>& records);

/// Canonical ordering by key, used for order-insensitive comparisons.
void sort_records(std::vector<RunRecord>& records);

} // namespace gsnoise

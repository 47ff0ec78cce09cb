#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "gsnoise/bench_data.hpp"

namespace gsnoise {

/// Provenance written next to a dataset CSV as `key=value` lines.
struct DatasetManifest {
    std::string name;
    Partition partition = Partition::Train;
    int sample_id = 0;
    NoiseLevel noise;
    std::uint64_t seed = 0;
    std::size_t instances = 0;
    std::size_t listed_instances = 0;
    std::string note;
};

DatasetManifest make_manifest(const DatasetSpec& spec, const Dataset& ds, std::uint64_t seed);

/// Headered CSV `x0,...,x{d-1},y`; values use shortest round-trip formatting.
void write_dataset_csv(const std::filesystem::path& path, const Dataset& ds);
Dataset read_dataset_csv(const std::filesystem::path& path);

void write_manifest(const std::filesystem::path& path, const DatasetManifest& m);
DatasetManifest read_manifest(const std::filesystem::path& path);

/// Shortest decimal representation that parses back to the same double.
std::string format_real(double v);
/// Strict full-string parse; throws IoError on garbage.
double parse_real(std::string_view text);

} // namespace gsnoise

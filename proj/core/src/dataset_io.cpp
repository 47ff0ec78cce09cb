#include "gsnoise/dataset_io.hpp"

#include <charconv>
#include <limits>
#include <fstream>
#include <map>
#include <sstream>

#include "gsnoise/error.hpp"

namespace gsnoise {

std::string format_real(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

double parse_real(std::string_view text)
{
    double v = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        // from_chars rejects "inf"/"nan" spellings produced by some writers.
        if (text == "inf") return std::numeric_limits<double>::infinity();
        if (text == "-inf") return -std::numeric_limits<double>::infinity();
        if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
        throw IoError("cannot parse number '" + std::string(text) + "'");
    }
    return v;
}

DatasetManifest make_manifest(const DatasetSpec& spec, const Dataset& ds, std::uint64_t seed)
{
    DatasetManifest m;
    m.name = ds.name;
    m.partition = ds.partition;
    m.sample_id = ds.sample_id;
    m.noise = ds.noise;
    m.seed = seed;
    m.instances = ds.size();
    m.listed_instances = spec.listed_count(ds.partition);
    m.note = spec.count_discrepancy(ds.partition);
    return m;
}

void write_dataset_csv(const std::filesystem::path& path, const Dataset& ds)
{
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    for (std::size_t j = 0; j < ds.dims(); ++j) {
        out << 'x' << j << ',';
    }
    out << "y\n";
    for (std::size_t i = 0; i < ds.size(); ++i) {
        for (std::size_t j = 0; j < ds.dims(); ++j) {
            out << format_real(ds.inputs.at(i, j)) << ',';
        }
        out << format_real(ds.targets[i]) << '\n';
    }
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

Dataset read_dataset_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw IoError(path.string() + ": missing header");
    }
    std::size_t cols = 1;
    for (char c : line) {
        cols += c == ',';
    }
    if (cols < 2) {
        throw IoError(path.string() + ": need at least one input column and y");
    }
    const std::size_t d = cols - 1;
    std::vector<std::vector<double>> columns(d);
    std::vector<double> targets;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<double> fields;
        std::string_view rest = line;
        while (true) {
            const auto comma = rest.find(',');
            fields.push_back(parse_real(rest.substr(0, comma)));
            if (comma == std::string_view::npos) {
                break;
            }
            rest.remove_prefix(comma + 1);
        }
        if (fields.size() != cols) {
            throw IoError(path.string() + ": ragged row");
        }
        for (std::size_t j = 0; j < d; ++j) {
            columns[j].push_back(fields[j]);
        }
        targets.push_back(fields.back());
    }
    if (targets.empty()) {
        throw IoError(path.string() + ": no data rows");
    }
    std::vector<double> data;
    data.reserve(targets.size() * d);
    for (auto& c : columns) {
        data.insert(data.end(), c.begin(), c.end());
    }
    Dataset ds;
    ds.inputs = EvalContext(targets.size(), d, std::move(data));
    ds.targets = std::move(targets);
    return ds;
}

void write_manifest(const std::filesystem::path& path, const DatasetManifest& m)
{
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << "name=" << m.name << '\n'
        << "partition=" << to_string(m.partition) << '\n'
        << "sample_id=" << m.sample_id << '\n'
        << "noise_level=" << m.noise.label() << '\n'
        << "seed=" << m.seed << '\n'
        << "instances=" << m.instances << '\n'
        << "listed_instances=" << m.listed_instances << '\n';
    if (!m.note.empty()) {
        out << "note=" << m.note << '\n';
    }
}

DatasetManifest read_manifest(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            continue;
        }
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    auto get = [&](const char* key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) {
            throw IoError(path.string() + ": manifest lacks '" + key + "'");
        }
        return it->second;
    };
    DatasetManifest m;
    m.name = get("name");
    const auto& part = get("partition");
    if (part != "train" && part != "test") {
        throw IoError(path.string() + ": bad partition '" + part + "'");
    }
    m.partition = part == "train" ? Partition::Train : Partition::Test;
    m.sample_id = std::stoi(get("sample_id"));
    m.noise = NoiseLevel::parse(get("noise_level"));
    m.seed = std::stoull(get("seed"));
    m.instances = std::stoull(get("instances"));
    m.listed_instances = std::stoull(get("listed_instances"));
    if (auto it = kv.find("note"); it != kv.end()) {
        m.note = it->second;
    }
    return m;
}

} // namespace gsnoise

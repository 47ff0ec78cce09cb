#include "gsnoise/records.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <tuple>
#include <fstream>

#include "gsnoise/dataset_io.hpp"
#include "gsnoise/error.hpp"

namespace gsnoise {

const char* to_string(Method m) noexcept
{
    return m == Method::GP ? "GP" : "GSGP";
}

Method parse_method(std::string_view text)
{
    if (text == "GP" || text == "gp") {
        return Method::GP;
    }
    if (text == "GSGP" || text == "gsgp") {
        return Method::GSGP;
    }
    throw ConfigError("unknown method '" + std::string(text) + "'");
}

std::string RunRecord::key() const
{
    return std::string(to_string(method)) + '|' + dataset + '|'
           + std::to_string(noise.basis_points()) + '|' + std::to_string(sample_id) + '|'
           + std::to_string(rep_index);
}

namespace {

bool same_bits(double a, double b)
{
    return a == b || (std::isnan(a) && std::isnan(b));
}

template <typename Int>
Int parse_int(std::string_view text)
{
    Int v{};
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw IoError("cannot parse integer '" + std::string(text) + "'");
    }
    return v;
}

} // namespace

bool RunRecord::same_outcome(const RunRecord& o) const
{
    return method == o.method && dataset == o.dataset && noise == o.noise
           && sample_id == o.sample_id && rep_index == o.rep_index && seed == o.seed
           && same_bits(final_train_nrmse, o.final_train_nrmse)
           && same_bits(final_test_nrmse, o.final_test_nrmse) && config_hash == o.config_hash;
}

std::string serialize_record(const RunRecord& r)
{
    std::string line;
    line += to_string(r.method);
    line += ',' + r.dataset;
    line += ',' + format_real(r.noise.rate());
    line += ',' + std::to_string(r.sample_id);
    line += ',' + std::to_string(r.rep_index);
    line += ',' + std::to_string(r.seed);
    line += ',' + format_real(r.final_train_nrmse);
    line += ',' + format_real(r.final_test_nrmse);
    line += ',' + format_real(r.wall_time_s);
    line += ',' + r.config_hash;
    return line;
}

RunRecord parse_record(std::string_view line)
{
    std::vector<std::string_view> f;
    while (true) {
        const auto comma = line.find(',');
        f.push_back(line.substr(0, comma));
        if (comma == std::string_view::npos) {
            break;
        }
        line.remove_prefix(comma + 1);
    }
    if (f.size() != 10) {
        throw IoError("record line has " + std::to_string(f.size()) + " fields, expected 10");
    }
    RunRecord r;
    try {
        r.method = parse_method(f[0]);
        r.noise = NoiseLevel::from_rate(parse_real(f[2]));
    } catch (const ConfigError& e) {
        throw IoError(std::string("bad record: ") + e.what());
    }
    r.dataset = std::string(f[1]);
    r.sample_id = parse_int<int>(f[3]);
    r.rep_index = parse_int<int>(f[4]);
    r.seed = parse_int<std::uint64_t>(f[5]);
    r.final_train_nrmse = parse_real(f[6]);
    r.final_test_nrmse = parse_real(f[7]);
    r.wall_time_s = parse_real(f[8]);
    r.config_hash = std::string(f[9]);
    return r;
}

std::vector<RunRecord> read_records(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::string line;
    std::vector<RunRecord> out;
    if (!std::getline(in, line)) {
        return out;
    }
    if (line != kRecordsHeader) {
        throw IoError(path.string() + ": unexpected header");
    }
    while (std::getline(in, line)) {
        if (!line.empty()) {
            out.push_back(parse_record(line));
        }
    }
    return out;
}

void write_records(const std::filesystem::path& path, const std::vector<RunRecord>& records)
{
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << kRecordsHeader << '\n';
    for (const auto& r : records) {
        out << serialize_record(r) << '\n';
    }
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

void sort_records(std::vector<RunRecord>& records)
{
    std::sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
        return std::tie(a.method, a.dataset, a.noise, a.sample_id, a.rep_index)
               < std::tie(b.method, b.dataset, b.noise, b.sample_id, b.rep_index);
    });
}

} // namespace gsnoise

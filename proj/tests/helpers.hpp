#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "gsnoise/bench_data.hpp"
#include "gsnoise/random.hpp"

namespace gsnoise::test {

/// A fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag)
    {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path()
                / ("gsnoise_" + tag + "_" + std::to_string(rd()));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

/// Single-variable dataset with y = f(x) on an evenly spaced grid over [lo, hi].
template <class F>
Dataset line_dataset(F f, std::size_t n, double lo, double hi, Partition p = Partition::Train)
{
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        ys[i] = f(xs[i]);
    }
    Dataset ds;
    ds.name = "line";
    ds.partition = p;
    ds.inputs = EvalContext(n, 1, xs);
    ds.targets = ys;
    return ds;
}

} // namespace gsnoise::test

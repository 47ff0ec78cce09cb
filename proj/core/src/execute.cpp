#include "gsnoise/execute.hpp"

#include <atomic>
#include <fstream>
#include <iterator>
#include <mutex>
#include <set>
#include <thread>

#include "gsnoise/error.hpp"
#include "gsnoise/log.hpp"

namespace gsnoise {

ExecutionSummary execute(const ExperimentPlan& plan, const ExecuteOptions& options)
{
    return execute(plan, options, run_cell);
}

namespace {

/// An interrupted writer can leave an unterminated final line; cut it off.
void drop_partial_line(const std::filesystem::path& path)
{
    std::string text;
    {
        std::ifstream in(path, std::ios::binary);
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    if (text.empty() || text.back() == '\n') {
        return;
    }
    const auto cut = text.find_last_of('\n');
    text.resize(cut == std::string::npos ? 0 : cut + 1);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) {
        throw IoError("cannot repair " + path.string());
    }
}

} // namespace

ExecutionSummary execute(const ExperimentPlan& plan, const ExecuteOptions& options,
                         const CellRunner& runner)
{
    namespace fs = std::filesystem;
    if (options.out_dir.empty()) {
        throw ConfigError("execute needs an output directory");
    }
    std::error_code ec;
    fs::create_directories(options.out_dir, ec);
    if (ec) {
        throw IoError("cannot create " + options.out_dir.string() + ": " + ec.message());
    }
    const auto records_path = options.out_dir / kRecordsFile;
    if (!options.resume) {
        fs::remove(options.out_dir / kFailuresFile, ec);
    }

    ExecutionSummary summary;
    std::set<std::string> done;
    if (options.resume && fs::exists(records_path)) {
        drop_partial_line(records_path);
        summary.records = read_records(records_path);
        for (const auto& r : summary.records) {
            done.insert(r.key());
        }
    }

    std::ofstream out;
    if (options.resume && fs::exists(records_path)) {
        out.open(records_path, std::ios::app);
    } else {
        out.open(records_path, std::ios::trunc);
        out << kRecordsHeader << '\n';
    }
    if (!out) {
        throw IoError("cannot open " + records_path.string() + " for writing");
    }
    {
        std::ofstream plan_out(options.out_dir / kPlanFile);
        plan_out << plan.describe();
    }

    std::vector<const Cell*> pending;
    for (const auto& cell : plan.cells) {
        if (done.contains(cell.key())) {
            ++summary.skipped;
        } else {
            pending.push_back(&cell);
        }
    }

    std::mutex writer;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= pending.size()) {
                return;
            }
            const Cell& cell = *pending[i];
            try {
                auto rec = runner(plan, cell);
                std::lock_guard lock(writer);
                out << serialize_record(rec) << '\n';
                out.flush();
                ++summary.executed;
                if (options.on_record) {
                    options.on_record(rec);
                }
                summary.records.push_back(std::move(rec));
            } catch (const std::exception& e) {
                std::lock_guard lock(writer);
                summary.failures.push_back({cell.key(), e.what()});
                std::ofstream failures(options.out_dir / kFailuresFile, std::ios::app);
                failures << cell.key() << '\t' << e.what() << '\n';
                log_warning("cell " + cell.key() + " failed: " + e.what());
            }
        }
    };

    const std::size_t threads = std::max<std::size_t>(1, std::min(options.parallelism,
                                                                  pending.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    if (!out) {
        throw IoError("write failed for " + records_path.string());
    }
    sort_records(summary.records);
    return summary;
}

} // namespace gsnoise

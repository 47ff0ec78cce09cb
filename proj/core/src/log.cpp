#include "gsnoise/log.hpp"

#include <iostream>
#include <mutex>

namespace gsnoise {

namespace {

std::mutex sink_mutex;

LogSink& current_sink()
{
    static LogSink sink = [](std::string_view msg) { std::cerr << "warning: " << msg << '\n'; };
    return sink;
}

} // namespace

LogSink set_warning_sink(LogSink sink)
{
    std::lock_guard lock(sink_mutex);
    auto previous = std::move(current_sink());
    current_sink() = std::move(sink);
    return previous;
}

void log_warning(std::string_view message)
{
    std::lock_guard lock(sink_mutex);
    if (current_sink()) {
        current_sink()(message);
    }
}

} // namespace gsnoise

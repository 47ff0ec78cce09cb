#include "gsnoise/random.hpp"
#include "gsnoise/error.hpp"

namespace gsnoise {

const char* to_string(ErrorCategory category) noexcept
{
    switch (category) {
    case ErrorCategory::Config: return "config";
    case ErrorCategory::Dimension: return "dimension";
    case ErrorCategory::Domain: return "domain";
    case ErrorCategory::Degenerate: return "degenerate";
    case ErrorCategory::Io: return "io";
    }
    return "unknown";
}

double uniform01(Rng& rng)
{
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

double uniform(Rng& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t uniform_index(Rng& rng, std::size_t n)
{
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

bool bernoulli(Rng& rng, double p)
{
    if (p <= 0.0) {
        return false;
    }
    if (p >= 1.0) {
        return true;
    }
    return uniform01(rng) < p;
}

double standard_normal(Rng& rng)
{
    return std::normal_distribution<double>(0.0, 1.0)(rng);
}

} // namespace gsnoise

#pragma once

#include <cstddef>
#include <iosfwd>
#include <string_view>

namespace tripartite::cli {

inline constexpr const char *tool_name = "tripartite";
inline constexpr const char *tool_version = "1.0.0";

enum ExitCode : int
{
    exit_ok = 0,
    exit_verification_failed = 1,
    exit_config_error = 2,
    exit_singularity = 3,
};

struct RangeSpec
{
    double min = 0.0;
    double max = 0.0;
    std::size_t points = 0;
};

/// Parses "MIN:MAX:POINTS". Throws ConfigError on malformed input,
/// min >= max, or fewer than 2 points.
RangeSpec parse_range(std::string_view text);

/// Entry point shared by the executable and the tests.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace tripartite::cli

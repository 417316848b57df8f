#pragma once

#include <string>

#include "tripartite/config.hpp"

inline std::string fixture_path(const std::string &name)
{
    return std::string(TRIPARTITE_FIXTURES) + "/" + name + ".json";
}

inline tripartite::LoadedConfig load_fixture(const std::string &name)
{
    return tripartite::load_config(fixture_path(name));
}

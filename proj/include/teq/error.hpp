#pragma once

#include <stdexcept>
#include <string>

namespace teq {

// Engine-level contract violation (bad input data, unsupported combination,
// or an internal consistency failure that indicates a bug).
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace teq

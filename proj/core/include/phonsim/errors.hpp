#pragma once

#include <stdexcept>
#include <string>

namespace phonsim {

// Error taxonomy mirrored by the CLI exit codes (2/3/4/5).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

struct data_error : std::runtime_error {
    explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

struct solver_error : std::runtime_error {
    explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace phonsim

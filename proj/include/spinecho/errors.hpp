#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace spinecho {

// Numerical failure that aborts a computation: tau pole, degenerate mode,
// unbracketed peak, quadrature non-convergence. CLI maps these to exit code 2.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid parameters or sweep configuration. Collects every violation found so
// a bad config is reported in one pass. CLI maps these to exit code 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> violations)
        : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string msg = "invalid configuration:";
        for (const auto& s : v) {
            msg += "\n  - ";
            msg += s;
        }
        return msg;
    }
    std::vector<std::string> violations_;
};

}  // namespace spinecho

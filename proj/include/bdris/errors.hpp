#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bdris {

/// Thrown when a RIS coefficient violates its box constraint. Carries the
/// offending (0-based) coefficient index.
class ConstraintViolation : public std::runtime_error {
public:
    ConstraintViolation(std::string what, int index)
        : std::runtime_error(std::move(what)), index_(index) {}

    int index() const noexcept { return index_; }

private:
    int index_;
};

/// Invalid experiment configuration. Collects every offending entry so the
/// user sees all problems at once.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> issues)
        : std::runtime_error(join(issues)), issues_(std::move(issues)) {}

    explicit ConfigError(std::string issue)
        : ConfigError(std::vector<std::string>{std::move(issue)}) {}

    const std::vector<std::string>& issues() const noexcept { return issues_; }

private:
    static std::string join(const std::vector<std::string>& issues) {
        std::string out = "invalid configuration:";
        for (const auto& s : issues) {
            out += "\n  - ";
            out += s;
        }
        return out;
    }

    std::vector<std::string> issues_;
};

}  // namespace bdris

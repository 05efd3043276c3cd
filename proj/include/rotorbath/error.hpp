#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rotorbath {

// Invalid physical or numerical parameters. Carries every violated invariant.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> violations);
    explicit ConfigError(const std::string& message);

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

// A simulation left its numerically trustworthy regime (basis leak, positivity loss, ...).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace rotorbath

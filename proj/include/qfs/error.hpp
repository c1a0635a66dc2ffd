#pragma once

#include <stdexcept>
#include <string>

namespace qfs {

// Every failure surfaced by the library carries a short machine-readable code
// ("unknown-id", "degenerate-configuration", ...) next to the human message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

}  // namespace qfs

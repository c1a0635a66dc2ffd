#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace qfs::cli {

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsage = 2, kInternal = 3 };

struct CommandResult {
    std::string status = "ok";  // ok, inconclusive, failed or error
    nlohmann::json payload = nlohmann::json::object();
    std::vector<std::string> citations;
    std::string human;  // plain-text rendering, used with --human
    int exit_code = kOk;

    nlohmann::json to_json() const;
};

/// Parses argv (without the program name) and runs the command. Never throws.
CommandResult dispatch(const std::vector<std::string>& args);

/// dispatch plus printing; returns the process exit code.
int run(const std::vector<std::string>& args);

}  // namespace qfs::cli

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eqfix {

// Error code taxonomy is part of the CLI contract: codes are stable strings
// such as "NotAGroup", "OrderCapExceeded", "NotNormal", ...
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message, std::vector<long long> data = {})
        : std::runtime_error(message), code_(std::move(code)), data_(std::move(data)) {}

    const std::string& code() const noexcept { return code_; }

    // Optional numeric payload (offending cell ids, violating triples, ...).
    const std::vector<long long>& data() const noexcept { return data_; }

private:
    std::string code_;
    std::vector<long long> data_;
};

[[noreturn]] inline void fail(std::string code, const std::string& message,
                              std::vector<long long> data = {})
{
    throw Error(std::move(code), message, std::move(data));
}

}  // namespace eqfix

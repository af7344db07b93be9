#pragma once

#include <stdexcept>
#include <string>

namespace orgrisk {

// Base for every error the library throws. `code()` is a stable identifier
// (e.g. "UnknownEntity") that the CLI and service map onto exit codes and
// HTTP statuses.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class UnknownEntityError : public Error {
public:
    explicit UnknownEntityError(const std::string& id)
        : Error("UnknownEntity", "unknown entity '" + id + "'"), id_(id) {}

    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

}  // namespace orgrisk

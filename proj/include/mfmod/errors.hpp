#pragma once

#include <stdexcept>
#include <string>

namespace mfmod {

// Base for all structured tool errors. `code` is a short stable identifier
// used in CLI output and exit-code mapping.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

class BackendError : public Error {
public:
    using Error::Error;
};

class InfeasibleError : public Error {
public:
    explicit InfeasibleError(const std::string& message)
        : Error("infeasible", message) {}
};

class UnsupportedPictureError : public Error {
public:
    explicit UnsupportedPictureError(const std::string& message)
        : Error("unsupported-picture", message) {}
};

class ScoringError : public Error {
public:
    explicit ScoringError(const std::string& message)
        : Error("scoring", message) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& message)
        : Error("io", message) {}
};

} // namespace mfmod

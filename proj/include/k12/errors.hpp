#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace k12 {

// Error categories map onto CLI exit codes: numeric failures exit 2,
// everything else (bad input, bad config, bad files) exits 1.
enum class ErrorKind {
    config,
    format,
    io,
    network,
    corrupt,
    range,
    numeric,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string msg)
        : std::runtime_error(std::move(msg)), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

    int exit_code() const { return kind_ == ErrorKind::numeric ? 2 : 1; }

private:
    ErrorKind kind_;
};

struct ConfigError : Error {
    explicit ConfigError(std::string msg) : Error(ErrorKind::config, std::move(msg)) {}
};

struct FormatError : Error {
    explicit FormatError(std::string msg) : Error(ErrorKind::format, std::move(msg)) {}
};

struct IoError : Error {
    explicit IoError(std::string msg) : Error(ErrorKind::io, std::move(msg)) {}
};

// Carries the host so a caller can back off per host and retry.
struct NetworkError : Error {
    NetworkError(std::string host_, std::string msg, bool retryable_ = true)
        : Error(ErrorKind::network, std::move(msg)), host(std::move(host_)), retryable(retryable_) {}
    std::string host;
    bool retryable;
};

struct CorruptError : Error {
    explicit CorruptError(std::string msg) : Error(ErrorKind::corrupt, std::move(msg)) {}
};

struct RangeError : Error {
    explicit RangeError(std::string msg) : Error(ErrorKind::range, std::move(msg)) {}
};

// Raised when training or inference produces non-finite values; names the
// layer where the failure was detected.
struct NumericError : Error {
    NumericError(std::string layer_, std::string msg)
        : Error(ErrorKind::numeric, std::move(msg)), layer(std::move(layer_)) {}
    std::string layer;
};

} // namespace k12

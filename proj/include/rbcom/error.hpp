#pragma once

#include <stdexcept>
#include <string>

namespace rbcom {

/// Base class for every model error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or violated type invariant.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Round-trip small-signal gain cannot overcome the cavity loss; no steady state exists.
class BelowThreshold : public Error {
public:
    using Error::Error;
};

/// One round trip holds fewer than two symbol slots.
class FrameTooShort : public Error {
public:
    using Error::Error;
};

/// A state machine was driven out of order (e.g. k >= 2 without a previous frame).
class ProtocolError : public Error {
public:
    using Error::Error;
};

/// Channel estimation had no usable reference energy.
class EstimationError : public Error {
public:
    using Error::Error;
};

/// Configuration text could not be parsed or failed validation.
class ConfigError : public Error {
public:
    ConfigError(std::string message, std::string key = {}, int line = 0)
        : Error(std::move(message)), key_(std::move(key)), line_(line) {}

    const std::string& key() const noexcept { return key_; }
    int line() const noexcept { return line_; }

private:
    std::string key_;
    int line_;
};

namespace detail {
inline void require(bool ok, const char* what) {
    if (!ok) throw InvalidArgument(what);
}
}  // namespace detail

}  // namespace rbcom

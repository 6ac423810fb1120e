#pragma once

#include <stdexcept>
#include <string>

namespace drfmds {

// Bad parameters, bad config, violated preconditions. CLI exit code 1.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// File-level problems: missing shards, unreadable paths. CLI exit code 2.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Data that contradicts itself: parity violations, corrupt or mismatched
// shard headers. CLI exit code 3.
class IntegrityError : public std::runtime_error {
public:
    explicit IntegrityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace drfmds

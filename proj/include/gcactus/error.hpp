#pragma once

#include <stdexcept>
#include <string>

namespace gcactus {

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class graph_error : public error {
public:
    using error::error;
};

class geometry_error : public error {
public:
    using error::error;
};

class embed_error : public error {
public:
    using error::error;
};

// Raised by the file parsers; carries the 1-based line and the offending field.
class parse_error : public error {
public:
    parse_error(int line, std::string field, const std::string& what)
        : error("line " + std::to_string(line) + " [" + field + "]: " + what),
          line_(line), field_(std::move(field)) {}

    int line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    int line_;
    std::string field_;
};

}  // namespace gcactus

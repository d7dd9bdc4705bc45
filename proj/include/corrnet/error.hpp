#pragma once

#include <stdexcept>
#include <string>

namespace corrnet {

// Base error for every failure raised by the library. Messages are meant to be
// shown to the user verbatim, so they carry file/line/ticker context.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text. `line` is the 1-based physical line number (0 when the
// failure is not tied to a single line).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace corrnet

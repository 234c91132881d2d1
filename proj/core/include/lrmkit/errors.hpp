#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lrmkit {

// Malformed structural input: unbalanced parentheses, forward parent
// pointers, partitions that do not tile the input, mismatched lengths.
class structure_error : public std::runtime_error {
public:
    explicit structure_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An operation was requested that the object was not built to support
// (e.g. tree queries on a code built without its tree retained).
class capability_error : public std::logic_error {
public:
    explicit capability_error(const std::string& msg) : std::logic_error(msg) {}
};

// Failure to read or write a stream/file.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Text input that does not lex as the expected token stream.
// Carries the 1-based line and column of the offending character.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& msg, std::size_t line, std::size_t col)
        : std::runtime_error(msg + " at line " + std::to_string(line) +
                             ", column " + std::to_string(col)),
          m_line(line),
          m_col(col) {}

    std::size_t line() const noexcept { return m_line; }
    std::size_t column() const noexcept { return m_col; }

private:
    std::size_t m_line;
    std::size_t m_col;
};

} // namespace lrmkit

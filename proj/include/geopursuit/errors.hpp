#pragma once

#include <stdexcept>
#include <string>

namespace geopursuit {

// Precondition or type-tag violation (caller bug).
class ContractViolation : public std::invalid_argument {
public:
    explicit ContractViolation(const std::string& what) : std::invalid_argument(what) {}
};

// Operation not defined for the given space/domain combination.
class UnsupportedOperation : public std::runtime_error {
public:
    explicit UnsupportedOperation(const std::string& what) : std::runtime_error(what) {}
};

// A strategy emitted a move that fails validation; aborts the game.
class IllegalMoveError : public std::runtime_error {
public:
    IllegalMoveError(int step_index, const std::string& what)
        : std::runtime_error(what), step_index_(step_index) {}
    int step_index() const { return step_index_; }

private:
    int step_index_;
};

// Config/flag parsing failure; carries the offending key and line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string key, int line, const std::string& what)
        : std::runtime_error(what), key_(std::move(key)), line_(line) {}
    const std::string& key() const { return key_; }
    int line() const { return line_; }

private:
    std::string key_;
    int line_;
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace geopursuit

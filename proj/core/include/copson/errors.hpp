#pragma once

#include <stdexcept>
#include <string>

namespace copson {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed weight grammar, step literal or problem file.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position);
    std::size_t position() const noexcept { return position_; }
    // Message without the offset suffix.
    const std::string& message() const noexcept { return message_; }

private:
    std::string message_;
    std::size_t position_;
};

class NonIntegrableNearZero : public Error {
public:
    using Error::Error;
};

class NotAdmissible : public Error {
public:
    NotAdmissible(const std::string& what, double witness);
    double witness() const noexcept { return witness_; }

private:
    double witness_;
};

class DegenerateAtPoint : public Error {
public:
    using Error::Error;
};

class TargetNotBracketed : public Error {
public:
    using Error::Error;
};

// Bracket failure while building a discretizing sequence.
class LevelSolveFailed : public Error {
public:
    using Error::Error;
};

class IndexOutOfWindow : public Error {
public:
    using Error::Error;
};

class SupportNotCovered : public Error {
public:
    using Error::Error;
};

class NotGeometric : public Error {
public:
    using Error::Error;
};

class DegenerateB : public Error {
public:
    using Error::Error;
};

class ConditionInfinite : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

}  // namespace copson

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cachemodel {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& reason)
        : Error("line " + std::to_string(line) + ": " + reason), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class EmptyTrace : public Error {
public:
    EmptyTrace() : Error("trace contains no records") {}
};

class InvalidSpec : public Error {
public:
    using Error::Error;
};

class GeometryError : public Error {
public:
    using Error::Error;
};

class GeometryMismatch : public Error {
public:
    using Error::Error;
};

class ZeroAccess : public Error {
public:
    using Error::Error;
};

class AllCoresSilent : public Error {
public:
    AllCoresSilent() : Error("no core issued any shared-cache access") {}
};

class EmptyHistogram : public Error {
public:
    EmptyHistogram() : Error("histogram has zero total mass") {}
};

class StreamNotCaptured : public Error {
public:
    StreamNotCaptured() : Error("shared-cache reference stream was not captured") {}
};

class InvalidGrid : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace cachemodel

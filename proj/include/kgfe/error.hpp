#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace kgfe {

// Base class for every error raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Rejected input: empty label, out-of-range id, bad parameter value.
class InvalidInput : public Error {
public:
    using Error::Error;
};

// Token stream that cannot be decompressed back into bytes.
class CorruptStream : public Error {
public:
    using Error::Error;
};

enum class DiagnosticKind {
    MalformedFields,
    EmptyLabel,
    BadTerminator,
    Encoding,
    UnsupportedTerm,  // N-Triples literal or blank node
};

const char* to_string(DiagnosticKind kind);

// Where and why a triple file was rejected. Line numbers are 1-based.
struct ParseDiagnostic {
    std::size_t line = 0;
    DiagnosticKind kind = DiagnosticKind::MalformedFields;
    std::string excerpt;
};

class ParseError : public Error {
public:
    ParseError(ParseDiagnostic diagnostic, const std::string& message)
        : Error(message), diagnostic_(std::move(diagnostic)) {}

    const ParseDiagnostic& diagnostic() const noexcept { return diagnostic_; }

private:
    ParseDiagnostic diagnostic_;
};

}  // namespace kgfe

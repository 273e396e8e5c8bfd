#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nspm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : Error {
    using Error::Error;
};

/// Malformed input in a line-oriented file (N-Triples, score TSV, ...).
struct ParseError : Error {
    std::size_t line;
    ParseError(const std::string& msg, std::size_t line_no)
        : Error(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};

struct ConfigError : Error {
    using Error::Error;
};

// --- SPARQL / codec ---

struct UnsupportedFeature : Error {
    using Error::Error;
};

struct UnprefixableIri : Error {
    using Error::Error;
};

/// Raised by sparql::decode on malformed token sequences. Callers that score
/// model output treat this as a failed translation, never as a crash.
struct DecodeError : Error {
    std::size_t position;
    std::string expected;
    DecodeError(std::size_t pos, const std::string& expected_class)
        : Error("decode error at token " + std::to_string(pos) + ": expected " + expected_class),
          position(pos),
          expected(expected_class) {}
};

struct TypeError : Error {
    using Error::Error;
};

// --- endpoint client ---

struct NetworkError : Error {
    using Error::Error;
};

struct ProtocolError : Error {
    using Error::Error;
};

struct EndpointError : Error {
    int status;
    EndpointError(int http_status, const std::string& body_excerpt)
        : Error("endpoint returned HTTP " + std::to_string(http_status) + ": " + body_excerpt),
          status(http_status) {}
};

struct NotFound : Error {
    using Error::Error;
};

// --- template engine ---

struct VariantError : Error {
    using Error::Error;
};

struct ComposeError : Error {
    using Error::Error;
};

struct DepthExceeded : Error {
    using Error::Error;
};

// --- ranker / dataset ---

struct Unsatisfiable : Error {
    using Error::Error;
};

struct EmptyDataset : Error {
    using Error::Error;
};

struct TooSmall : Error {
    using Error::Error;
};

struct NoHoldoutAvailable : Error {
    using Error::Error;
};

// --- model ---

struct DimMismatch : Error {
    using Error::Error;
};

struct FormatError : Error {
    using Error::Error;
};

struct DivergenceError : Error {
    using Error::Error;
};

struct LengthMismatch : Error {
    using Error::Error;
};

struct IndexError : Error {
    using Error::Error;
};

}  // namespace nspm

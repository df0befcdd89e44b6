#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace taskvec {

// Base class for all toolkit errors. Everything the library throws on purpose
// derives from this, so callers can catch one type at the CLI boundary.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad or missing configuration (maps to CLI exit code 2).
class config_error : public error {
public:
    explicit config_error(const std::string& msg) : error(msg) {}
};

// Malformed structured text: CSV rows, score strings, bundle lines.
class parse_error : public error {
public:
    explicit parse_error(const std::string& msg) : error(msg) {}
};

// A loaded artifact contradicts itself (manifest tally, duplicate ids).
class integrity_error : public error {
public:
    explicit integrity_error(const std::string& msg) : error(msg) {}
};

// Sequence longer than the backend's context limit.
class capacity_error : public error {
public:
    explicit capacity_error(const std::string& msg) : error(msg) {}
};

// A caller violated an operation's stated precondition (bad layer index,
// wrong vector width, empty query, out-of-range request).
class spec_error : public error {
public:
    explicit spec_error(const std::string& msg) : error(msg) {}
};

// Prompt template could not be rendered against the active tokenizer
// (separator count off, span straddles token boundaries, inconsistent
// separator tokenization).
class template_error : public error {
public:
    explicit template_error(const std::string& msg) : error(msg) {}
};

// Transport-level client failure (network, HTTP status, fixture miss).
class transport_error : public error {
public:
    explicit transport_error(const std::string& msg) : error(msg) {}
};

// Judge gave unparseable replies until the attempt budget ran out.
// Carries every raw response for audit.
class judging_error : public error {
public:
    judging_error(const std::string& msg, std::vector<std::string> raw)
        : error(msg), responses(std::move(raw)) {}
    std::vector<std::string> responses;
};

}  // namespace taskvec

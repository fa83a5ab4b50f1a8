#pragma once
// Error taxonomy shared across the library.
//
// ArgumentError  - an operation precondition was violated (bad index, empty
//                  group where one is required, mismatched mask lengths).
// ConfigError    - incompatible bindings or parameters (scorer/sample modality
//                  mismatch, degenerate axes, invalid extractor setup).
// ParseError     - malformed or unreadable input data; carries file/line
//                  context when available.

#include <stdexcept>
#include <string>

namespace fix {

class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    ParseError(const std::string& file, std::size_t line, const std::string& what)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + what) {}
};

// Warning sink. Default prints to stderr; tests may swap it out.
using WarnHandler = void (*)(const std::string&);
WarnHandler set_warn_handler(WarnHandler h);
void warn(const std::string& message);

} // namespace fix

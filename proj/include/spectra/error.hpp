#ifndef SPECTRA_ERROR_HPP
#define SPECTRA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace spectra {

// Error taxonomy mirrors the CLI exit codes: invalid input -> 2,
// budget exhaustion -> 3, internal assertion -> 4.
class invalid_input_error : public std::runtime_error {
public:
    explicit invalid_input_error(const std::string& msg) : std::runtime_error(msg) {}
};

class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& msg) : std::runtime_error(msg) {}
};

class internal_error : public std::runtime_error {
public:
    explicit internal_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Total serialized coefficient bytes allowed per polynomial. Default 1 MiB,
// overridable through SPECLAB_BUDGET_MB (read once).
std::size_t coefficient_budget_bytes();

}  // namespace spectra

#endif

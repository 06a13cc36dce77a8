#pragma once

#include <stdexcept>
#include <string>

namespace qpg {

// Every library failure carries a stable machine-readable code; the CLI maps
// the category onto an exit status.
class Error : public std::runtime_error {
public:
    enum class Category { Domain, Validation, Parse, Numeric };

    Error(Category category, std::string code, const std::string& message)
        : std::runtime_error(message), category_(category), code_(std::move(code)) {}

    Category category() const noexcept { return category_; }
    const std::string& code() const noexcept { return code_; }

private:
    Category category_;
    std::string code_;
};

struct DomainError : Error {
    DomainError(std::string code, const std::string& message)
        : Error(Category::Domain, std::move(code), message) {}
};

struct ValidationError : Error {
    ValidationError(std::string code, const std::string& message)
        : Error(Category::Validation, std::move(code), message) {}
};

struct ParseError : Error {
    ParseError(std::string code, const std::string& message)
        : Error(Category::Parse, std::move(code), message) {}
};

struct NumericError : Error {
    NumericError(std::string code, const std::string& message)
        : Error(Category::Numeric, std::move(code), message) {}
};

/// Grid does not cover a Hermite mode; `lost_norm` is the measured missing
/// fraction of the mode's squared norm.
struct TruncationError : NumericError {
    TruncationError(const std::string& message, double lost_norm)
        : NumericError("truncation", message), lost_norm(lost_norm) {}
    double lost_norm;
};

/// Phasematched ridge leaks out of the frequency window.
struct WindowError : NumericError {
    WindowError(const std::string& message, double boundary_fraction)
        : NumericError("window", message), boundary_fraction(boundary_fraction) {}
    double boundary_fraction;
};

}  // namespace qpg

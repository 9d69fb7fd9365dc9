#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gramlink {

/// 1-based source position. Line 0 means "no position".
struct Pos {
    int line = 0;
    int column = 0;

    bool operator==(const Pos&) const = default;
};

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string message;
    std::string origin;  // file name or other input label
    Pos pos;

    /// Renders as "file:line:col: severity: message".
    std::string format() const;
};

inline bool hasErrors(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags)
        if (d.severity == Severity::Error)
            return true;
    return false;
}

/// Hard failure while reading an input text (grammar or model).
/// Carries the diagnostic so callers can surface it uniformly.
class SyntaxError : public std::runtime_error {
public:
    explicit SyntaxError(Diagnostic diag)
        : std::runtime_error(diag.format()), diag_(std::move(diag)) {}

    const Diagnostic& diagnostic() const { return diag_; }

private:
    Diagnostic diag_;
};

}  // namespace gramlink

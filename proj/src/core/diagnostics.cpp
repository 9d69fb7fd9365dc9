#include "diagnostics.hpp"

namespace gramlink {

std::string Diagnostic::format() const {
    std::string out = origin;
    out += ':';
    out += std::to_string(pos.line);
    out += ':';
    out += std::to_string(pos.column);
    out += ": ";
    out += severity == Severity::Error ? "error" : "warning";
    out += ": ";
    out += message;
    return out;
}

}  // namespace gramlink

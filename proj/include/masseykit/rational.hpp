#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <vector>

namespace masseykit {

/// Exact arbitrary-precision rational. mpq_class keeps values canonical
/// (lowest terms, positive denominator) after every operation.
using Rat = mpq_class;

using RatVec = std::vector<Rat>;

/// Contract violation: a caller broke a documented precondition.
struct ContractViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An operation would need data beyond the truncation degree.
struct CutoffExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

/// Parses "p", "-p" or "p/q". Throws ContractViolation on malformed input
/// or zero denominator.
inline Rat parse_rat(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw ContractViolation("malformed rational: '" + s + "'");
    if (r.get_den() == 0)
        throw ContractViolation("zero denominator in rational: '" + s + "'");
    r.canonicalize();
    return r;
}

}  // namespace masseykit

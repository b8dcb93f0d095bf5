#pragma once

#include <stdexcept>
#include <string>

namespace qmf {

/// Base class for all library exceptions.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A mathematical precondition of an operation was violated
/// (zero leading coefficient, odd valuation, parity mismatch, ...).
struct math_error : error {
    using error::error;
};

/// A coefficient beyond the justified truncation order was requested,
/// or an operation was attempted at insufficient order.
struct order_error : error {
    using error::error;
};

/// Malformed input file or schema violation.
struct io_error : error {
    using error::error;
};

/// Manifold data failed a hard validation check.
struct validation_error : error {
    using error::error;
};

/// Two internal representations that must agree did not.
/// Signals an implementation bug, never bad input.
struct internal_error : error {
    using error::error;
};

} // namespace qmf

#ifndef CAUSALFLOW_ERRORS_HPP
#define CAUSALFLOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace causalflow {

// Error taxonomy mirrors the CLI exit codes: validation 2, data 3, numerical 4.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad arguments, broken invariants, out-of-range requests.
struct ValidationError : Error {
    using Error::Error;
};

// Ingestion problems: unreadable files, malformed rows, insufficient overlap.
struct DataError : Error {
    using Error::Error;
};

// Singular designs, non-PD covariances, nonstationary systems, overflow.
struct NumericalError : Error {
    using Error::Error;
};

}  // namespace causalflow

#endif

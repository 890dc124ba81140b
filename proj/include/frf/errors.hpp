#pragma once

#include <stdexcept>
#include <string>

namespace frf {

// Base class for all library errors. Subclasses map onto CLI exit codes:
// argument/contract -> 2, resource/range -> 3, degenerate/numeric -> 4,
// io -> 5.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid argument or precondition violation.
struct argument_error : error {
    using error::error;
};

// A requested quantity is undefined (e.g. an assumption/k pair with no
// known exponent).
struct not_available_error : argument_error {
    using argument_error::argument_error;
};

// Required sampling resolution not met; counts would be biased.
struct resolution_error : argument_error {
    using argument_error::argument_error;
};

// Missing hypothesis or misuse of an interface contract.
struct contract_error : error {
    using error::error;
};

// Memory or coefficient-availability limits exceeded.
struct resource_error : error {
    using error::error;
};

// Coefficient index beyond sieve/table coverage.
struct range_error : resource_error {
    using resource_error::resource_error;
};

// Data cannot support the requested estimate (all-zero rungs, too few
// usable scales).
struct degenerate_data_error : error {
    using error::error;
};

// Non-finite values encountered mid-computation.
struct numeric_error : error {
    using error::error;
};

// File system failures.
struct io_error : error {
    using error::error;
};

}  // namespace frf

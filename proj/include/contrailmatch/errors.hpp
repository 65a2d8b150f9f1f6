#pragma once

#include <stdexcept>
#include <string>

namespace contrailmatch {

/// Malformed or inconsistent input data (files, configs, annotations).
struct LoadError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Query outside the meteorological grid beyond the clamp margin.
struct OutOfDomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Failure while executing the pipeline on otherwise valid inputs.
struct RuntimeFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace contrailmatch

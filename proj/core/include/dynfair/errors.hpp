#ifndef DYNFAIR_ERRORS_HPP
#define DYNFAIR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dynfair {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A valuation has zero total mass (or zero mass on the set being partitioned).
struct ZeroValueError : Error {
  using Error::Error;
};

/// An internal algorithm invariant was violated; indicates a bug, not bad input.
struct InfeasibleError : Error {
  using Error::Error;
};

/// A demand falls outside the [d, c*d] range the allocator was configured for.
struct DemandRangeError : Error {
  using Error::Error;
};

/// Total allocated size would exceed the whole resource.
struct CapacityError : Error {
  using Error::Error;
};

/// Invalid generator or allocator parameters.
struct ParameterError : Error {
  using Error::Error;
};

/// Malformed instance, trace, or report file.
struct SchemaError : Error {
  using Error::Error;
};

/// Algorithm and instance valuation kinds do not match.
struct CompatibilityError : Error {
  using Error::Error;
};

/// A certified enclosure could not be tightened enough to decide a comparison.
struct PrecisionError : Error {
  using Error::Error;
};

}  // namespace dynfair

#endif  // DYNFAIR_ERRORS_HPP

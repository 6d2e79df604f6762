#pragma once

#include <stdexcept>
#include <string>

namespace chiral_berry {

/// Raised when a frame-dependent quantity is requested within the pole
/// exclusion margin, where theta-hat and phi-hat are undefined.
class PoleSingularity : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The angular quadrature cannot integrate the requested products exactly.
class QuadratureUnderResolved : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotOrthogonal : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A loop whose first and last points differ.
class OpenPath : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace chiral_berry

#pragma once

#include <stdexcept>

namespace qprod {

// A computation would exceed a configured size limit (coefficient count,
// enumeration size, cycle-type order).
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A floating evaluation could not be certified to round to an integer even
// at the maximum working precision.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arguments fall outside the hypotheses of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace qprod

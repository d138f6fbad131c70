#pragma once

#include <stdexcept>

namespace vho {

/// A traversal time maps outside the reachable chord-time interval.
class OutOfSupportError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A probability target exceeds the mass available below the latency bound.
class UnachievableError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Baseline threshold arguments leave the formula's real domain.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// No coverage contour exists at or beyond the reference distance.
class NoContourError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

}  // namespace vho

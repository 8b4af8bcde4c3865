#pragma once

#include <stdexcept>
#include <string>

namespace netloc {

// Anchor geometry whose Fisher information is numerically singular
// (all participants collinear with the target).
class SingularGeometryError : public std::runtime_error {
public:
  explicit SingularGeometryError(const std::string& what)
      : std::runtime_error(what) {}
};

// Numerical integration failed its self-consistency check. Carries the
// tolerance that was actually achieved.
class QuadratureError : public std::runtime_error {
public:
  QuadratureError(const std::string& what, double achieved)
      : std::runtime_error(what + " (achieved tolerance " +
                           std::to_string(achieved) + ")"),
        achieved_tolerance(achieved) {}
  double achieved_tolerance;
};

}  // namespace netloc

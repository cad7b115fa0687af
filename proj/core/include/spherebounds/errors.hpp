#pragma once

#include <stdexcept>
#include <string>

namespace spherebounds {

/// Four tangent spheres whose centers do not span a tetrahedron (or a face
/// normal vanished). Carries the offending radii in the message.
class DegenerateSimplex : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The LP refinement loop could not produce a verified certificate.
class LpNotConverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The truncated LP has no feasible certificate at the requested degree.
class LpInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spherebounds

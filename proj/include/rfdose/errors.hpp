#pragma once

#include <stdexcept>
#include <string>

namespace rfdose {

// All engine errors derive from Error so callers can distinguish engine
// failures from genuine logic bugs.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Cole-Cole parameters outside their physical domain, or a non-finite result.
class ParameterDomainError : public Error {
 public:
  using Error::Error;
};

// Tissue ID not present in the bound table.
class MissingTissueError : public Error {
 public:
  using Error::Error;
};

// Layer or feature does not resolve on the requested grid.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

// Voxel payload shorter/longer than the header promises.
class TruncatedPayloadError : public Error {
 public:
  using Error::Error;
};

// Requested region does not intersect the grid.
class BoundsError : public Error {
 public:
  using Error::Error;
};

// Antenna/scene geometry inconsistent with the grid.
class GeometryError : public Error {
 public:
  using Error::Error;
};

// Antenna placement conflicts with tissue or exceeds the phantom.
class PlacementError : public Error {
 public:
  using Error::Error;
};

// Field update produced a non-finite value.
class InstabilityError : public Error {
 public:
  InstabilityError(const std::string& msg, long step) : Error(msg), step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

// Steady-state detector did not fire within the step budget.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& msg, double last_rel_change)
      : Error(msg), last_rel_change_(last_rel_change) {}
  double last_rel_change() const { return last_rel_change_; }

 private:
  double last_rel_change_;
};

// Not enough tissue mass for the requested averaging volume.
class MassError : public Error {
 public:
  using Error::Error;
};

// Site label cannot be mapped to a limb/trunk region.
class ClassificationError : public Error {
 public:
  using Error::Error;
};

// Malformed configuration or data file.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Requested frequency/value outside the recorded range.
class RangeError : public Error {
 public:
  using Error::Error;
};

}  // namespace rfdose

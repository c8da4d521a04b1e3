#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "reebdom/point.hpp"

namespace reebdom {

enum class ErrorKind {
  NumericalFailure,
  SliceAtCriticalValue,
  DegenerateRay,
  DegenerateEvents,
  SeedOutsideBounded,
  CurveNotTouching,
  TriplePoint,
  TangentialCrossing,
  ExtraPoleOffBoundary,
  NonGenericSweep,
  ResolutionTooCoarse,
  InvalidPointedDisk,
  RegionVanishes,
  RegionDisconnected,
  BasepointNotOnCurves,
  ForbiddenDirection,
  NoLSFound,
  HypothesisViolated,
  GapTooLarge,
  SimilarityBroken,
  InitialDiskInvalid,
  DegenerateGeometry,
  TubeSelfIntersection,
  PlacementCollision,
  RealizationMismatch,
  NotExtremalVertex,
  CheckFailed,
  InvalidInput,
};

const char* to_string(ErrorKind kind);

// Every recoverable failure in the library is reported through this type.
// `where` carries the offending coordinate when there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail, std::optional<Point2> where = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<Point2>& where() const noexcept { return where_; }

 private:
  ErrorKind kind_;
  std::optional<Point2> where_;
};

}  // namespace reebdom

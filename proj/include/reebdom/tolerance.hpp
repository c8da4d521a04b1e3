#pragma once

namespace reebdom {

// Thresholds used by every predicate. All are absolute (plane units) except
// eps_tangent, which bounds the sine of the crossing angle.
struct TolerancePolicy {
  double eps_coincide = 1e-9;
  double eps_tangent = 1e-7;
  double eps_value = 1e-9;

  // Defaults scaled to a scene of the given diameter.
  static TolerancePolicy for_diameter(double diameter);

  // Looser matching slack used when comparing values that passed through a
  // square root near a fold (error grows like sqrt(machine eps)).
  double slack() const { return eps_coincide * 1e3; }

  bool valid_for(double diameter) const;
};

}  // namespace reebdom

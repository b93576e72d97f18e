#pragma once

#include <vector>

#include "thetakit/curve.hpp"

namespace thetakit {

/// Continuous branch of sqrt(lc * prod_{m not skipped} (x - e_m)) along the
/// straight segment [u, v].  Each factor uses a square root whose cut points
/// away from the segment, so no stepwise tracking is needed.
class SegmentBranch {
 public:
  SegmentBranch(const HyperellipticCurve& curve, cplx u, cplx v, std::vector<int> skip = {});
  cplx operator()(cplx x) const;

 private:
  std::vector<cplx> centers_;
  std::vector<cplx> rot_;       // unit direction of the cut-free ray
  std::vector<cplx> sqrt_rot_;  // principal sqrt of rot_
  cplx sqrt_lc_;
};

/// Integrals of the unnormalized basis x^k dx / y along a polyline in the
/// x-plane that starts at a finite branch point.
struct RawPath {
  std::vector<cplx> waypoints;
  CVector integral;
  cplx end_y{};
};

/// Integral from finite branch point `start_branch` to `target`, on the sheet
/// of `target`.  Straight route with detours of radius 1e-3 * scale around
/// branch points the segment passes too closely.  Optional `via` points are
/// visited in order (used to build homotopically different paths).
RawPath integrate_from_branch(const HyperellipticCurve& curve, int start_branch, const CurvePoint& target,
                              double tol, const std::vector<cplx>& via = {});

/// Integral from `start_branch` to the point at infinity, via a finite path to
/// radius `x0` followed by a tail in the local coordinate x = x0 / t^2.
CVector integrate_to_infinity(const HyperellipticCurve& curve, int start_branch, double x0, double tol);

}  // namespace thetakit

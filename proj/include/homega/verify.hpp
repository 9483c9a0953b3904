#pragma once

#include "homega/kernels.hpp"
#include "homega/reports.hpp"
#include "homega/scan.hpp"
#include "homega/weights.hpp"

// Numerical corroboration of the two-sided kernel estimates and of the
// boundedness equivalences: ratio scans compare a kernel quantity with its
// closed-form comparison integral over a geometric grid; probes drive the
// operator with the proofs' test families and watch the norm ratios.
// Probes never claim unboundedness, only growing traces; boundedness
// requires stabilization.

namespace homega {

// Averaged kernel on the segment against its growth integral, over
// (s, t) in the geometric grid squared.
RatioReport ratio_scan_radial_kernel(const Weight& w,
                                     const ScanSchedule& sched = {2, 1, 7});

// First integral mean of the averaged kernel against its estimate, over
// (t, rho) pairs (including the degenerate rho = 0 anchor).
RatioReport ratio_scan_m1(const Weight& w, const ScanSchedule& sched = {2, 1, 6});

struct MqGScans {
  RatioReport derivative_vs_reproducing;  // q-mean^q of G against t^q * that of B
  RatioReport derivative_vs_estimate;     // q-mean^q of G against the integral
};
MqGScans ratio_scan_mq_g(const Weight& w, double q,
                         const ScanSchedule& sched = {2, 1, 6});

// Bloch statistic of the operator applied to bounded test data (the constant
// one and a fixed sign pattern); growth certifies failure of the
// bounded-to-Bloch mapping, stabilization certifies it at desk scale.
ProbeReport probe_hinfty_bloch(const Weight& w,
                               const ScanSchedule& sched = {4, 1, 14});

// Hardy-norm growth of the operator on the unit-norm family f_a; the
// coefficient-sum surrogate of the norm is used throughout.
ProbeReport probe_h1(const Weight& w, const ScanSchedule& sched = {4, 1, 22});

// Lebesgue-norm growth of the operator on the indicator-cut power family;
// falls back to truncated-support surrogates when the family leaves the
// space.
ProbeReport probe_lp(const Weight& w, double p,
                     const ScanSchedule& sched = {3, 1, 11});

}  // namespace homega

#pragma once

#include "homega/reports.hpp"
#include "homega/scan.hpp"
#include "homega/weights.hpp"

// Boundedness criteria as supremum scans on the geometric grid, with the
// inner integrals accumulated incrementally along the grid.  Verdicts follow
// the shared stabilization protocol; every report carries a log-log slope of
// its trace and a flag for whether the weight satisfies the upper doubling
// hypothesis the underlying equivalence needs.

namespace homega {

// Two-factor Muckenhoupt-type condition for mapping the weighted Lebesgue
// space on [0,1) into the Hardy space:
//   sup (1 + ∫_0^r tail^{-p})^{1/p} (∫_r^1 w^{p'})^{1/p'}.
ConditionReport check_lp_hp(const Weight& w, double p,
                            const ScanSchedule& sched = {});

// Weighted-Bergman variant:
//   sup (1 + ∫_0^r nu_tail/tail^p)^{1/p} (∫_r^1 (w/nu_tail^{1/p})^{p'})^{1/p'}.
ConditionReport check_bergman_primary(const Weight& w, const Weight& nu,
                                      double p, const ScanSchedule& sched = {});

// Companion condition implied by the primary one:
//   sup (1-r)^{1/p} nu_tail(r)^{1/p}
//       (∫_0^r (w/nu_tail^{1/p})^{p'} tail^{-p'})^{1/p'}.
ConditionReport check_bergman_secondary(const Weight& w, const Weight& nu,
                                        double p,
                                        const ScanSchedule& sched = {});

// Average criterion for boundedness on the Hardy space of exponent one:
//   sup_a (1/(1-a)) ∫_a^1 w(t) (1 + ∫_0^t ds/tail(s)) dt.
ConditionReport check_h1_average(const Weight& w,
                                 const ScanSchedule& sched = {});

// The same quantity read as a Carleson box condition for the radial measure
// w(t)(1 + ∫_0^t ds/tail) dt: sup_a measure([a,1))/(1-a).  Implemented by
// direct per-box quadrature as a cross-check of check_h1_average.
ConditionReport check_carleson_box(const Weight& w,
                                   const ScanSchedule& sched = {});

// Muckenhoupt-type quotient condition:
//   sup nu_tail(r)^{1/p} (∫_r^1 (w/nu_tail^{1/p})^{p'})^{1/p'} / tail(r).
ConditionReport check_ap(const Weight& w, const Weight& nu, double p,
                         const ScanSchedule& sched = {});

}  // namespace homega

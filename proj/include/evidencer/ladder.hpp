// Inverse-temperature schedules: the deterministic powered-fraction rule and
// the adaptive placement that chases the largest rectangular gap in S_n.
#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "evidencer/quadrature.hpp"

namespace evid {

enum class ScheduleKind { powered_fraction, adaptive };

struct ScheduleSpec {
    ScheduleKind kind = ScheduleKind::powered_fraction;
    int rung_count = 10;     // intervals; the ladder has rung_count + 1 points
    double pf_power = 5.0;   // exponent of the powered-fraction rule
};

// Runs MCMC at the given t and reports the log-deviance moments there. The
// callable owns any warm-start state it needs; returned var_logdev must be
// >= 0. The t field of the result is overwritten by the caller.
using CurveEvaluator = std::function<RungEstimate(double t)>;

namespace ladder {

// t_i = (i/n)^c for i = 0..n. Endpoints are exactly 0 and 1.
Ladder pf_schedule(int n, double c);

// Intersection of the tangents at (t_k, f_k) and (t_next, f_next) with slopes
// v_k and v_next. Empty when the tangents are parallel (v_k == v_next); the
// result may fall outside (t_k, t_next) and callers must range-check.
std::optional<double> intersect_tangents(double t_k, double f_k, double v_k,
                                         double t_next, double f_next, double v_next);

// t_k + v_next/(v_k + v_next) * (t_next - t_k); midpoint when both slopes
// are zero.
double weighted_average_point(double t_k, double v_k, double t_next, double v_next);

// Builds an (n+1)-rung ladder adaptively: evaluate t=1 then t=0, then insert
// interior points one at a time into the interval with the largest |S_n|
// contribution (leftmost on ties). A negative contribution inserts the
// midpoint; otherwise the tangent intersection, falling back to the weighted
// average when the intersection is parallel or leaves the interval. Candidates
// within 1e-12 of an existing rung are replaced by the interval midpoint.
// Calls the evaluator exactly n+1 times.
std::pair<Ladder, DevianceCurve> adaptive_build(int n, const CurveEvaluator& eval);

}  // namespace ladder
}  // namespace evid

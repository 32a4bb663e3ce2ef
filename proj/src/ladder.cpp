#include "evidencer/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace evid::ladder {

Ladder pf_schedule(int n, double c) {
    if (n < 1) throw std::invalid_argument("pf_schedule: interval count must be >= 1");
    if (!(c > 0.0)) throw std::invalid_argument("pf_schedule: exponent must be > 0");
    std::vector<double> rungs(n + 1);
    for (int i = 0; i <= n; ++i)
        rungs[i] = std::pow(static_cast<double>(i) / n, c);
    rungs.front() = 0.0;
    rungs.back() = 1.0;
    return Ladder(std::move(rungs));
}

std::optional<double> intersect_tangents(double t_k, double f_k, double v_k,
                                         double t_next, double f_next, double v_next) {
    if (v_k == v_next) return std::nullopt;  // parallel tangents
    return (f_next - f_k + t_k * v_k - t_next * v_next) / (v_k - v_next);
}

double weighted_average_point(double t_k, double v_k, double t_next, double v_next) {
    if (v_k + v_next == 0.0) return 0.5 * (t_k + t_next);
    return t_k + v_next / (v_k + v_next) * (t_next - t_k);
}

namespace {

struct Point {
    double t;
    RungEstimate est;
};

RungEstimate evaluate_at(const CurveEvaluator& eval, double t) {
    RungEstimate e;
    try {
        e = eval(t);
    } catch (const std::exception& ex) {
        throw std::runtime_error("adaptive_build: evaluator failed at t=" + std::to_string(t) +
                                 ": " + ex.what());
    }
    if (!(e.var_logdev >= 0.0))
        throw std::invalid_argument("adaptive_build: evaluator returned var_logdev < 0 at t=" +
                                    std::to_string(t));
    e.t = t;
    return e;
}

}  // namespace

std::pair<Ladder, DevianceCurve> adaptive_build(int n, const CurveEvaluator& eval) {
    if (n < 1) throw std::invalid_argument("adaptive_build: interval count must be >= 1");

    // Both endpoints are needed by every scheme; posterior end first.
    std::vector<Point> pts;
    pts.push_back({1.0, evaluate_at(eval, 1.0)});
    pts.insert(pts.begin(), {0.0, evaluate_at(eval, 0.0)});

    constexpr double kMinGap = 1e-12;
    while (pts.size() < static_cast<std::size_t>(n) + 1) {
        // Interval with the largest |S_n| contribution; leftmost wins ties.
        std::size_t best = 0;
        double best_abs = -1.0;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const double s = (pts[i + 1].t - pts[i].t) *
                             (pts[i + 1].est.mean_logdev - pts[i].est.mean_logdev);
            if (std::abs(s) > best_abs) {
                best_abs = std::abs(s);
                best = i;
            }
        }
        const Point& a = pts[best];
        const Point& b = pts[best + 1];
        const double s_best = (b.t - a.t) * (b.est.mean_logdev - a.est.mean_logdev);
        const double mid = 0.5 * (a.t + b.t);

        double cand;
        if (s_best < 0.0) {
            // Noise-dominated interval: fall back to the midpoint.
            cand = mid;
        } else {
            auto cross = intersect_tangents(a.t, a.est.mean_logdev, a.est.var_logdev,
                                            b.t, b.est.mean_logdev, b.est.var_logdev);
            if (cross && *cross > a.t && *cross < b.t)
                cand = *cross;
            else
                cand = weighted_average_point(a.t, a.est.var_logdev, b.t, b.est.var_logdev);
        }
        if (cand - a.t < kMinGap || b.t - cand < kMinGap) cand = mid;

        Point np{cand, evaluate_at(eval, cand)};
        pts.insert(pts.begin() + static_cast<std::ptrdiff_t>(best) + 1, std::move(np));
    }

    std::vector<double> rungs;
    std::vector<RungEstimate> ests;
    rungs.reserve(pts.size());
    ests.reserve(pts.size());
    for (auto& p : pts) {
        rungs.push_back(p.t);
        ests.push_back(p.est);
    }
    return {Ladder(std::move(rungs)), DevianceCurve(std::move(ests))};
}

}  // namespace evid::ladder

#include "ffscale/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ffscale::schedule {

std::string kind_name(Kind k) {
    switch (k) {
        case Kind::identity: return "identity";
        case Kind::linear: return "linear";
        case Kind::smooth_ramp: return "smooth_ramp";
        case Kind::pause_segment: return "pause_segment";
        case Kind::rewind_segment: return "rewind_segment";
        case Kind::piecewise: return "piecewise";
    }
    return "?";
}

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw ConfigError("rescaling schedule: " + msg);
}

}  // namespace

RescalingSchedule RescalingSchedule::identity(double t_ref) {
    require(t_ref > 0.0, "t_ref must be positive");
    return RescalingSchedule(Kind::identity, t_ref, t_ref);
}

RescalingSchedule RescalingSchedule::linear(double t_ref, double t_ff) {
    require(t_ref > 0.0 && t_ff > 0.0, "t_ref and t_ff must be positive");
    return RescalingSchedule(Kind::linear, t_ref, t_ff);
}

RescalingSchedule RescalingSchedule::smooth_ramp(double t_ref, double t_ff) {
    require(t_ref > 0.0 && t_ff > 0.0, "t_ref and t_ff must be positive");
    return RescalingSchedule(Kind::smooth_ramp, t_ref, t_ff);
}

RescalingSchedule RescalingSchedule::pause_segment(double t_ref, double t_ff, double t0, double t1,
                                                   double s_hold) {
    RescalingSchedule sched = piecewise(
        t_ref, {{0.0, 0.0}, {t0, s_hold}, {t1, s_hold}, {t_ff, t_ref}});
    sched.kind_ = Kind::pause_segment;
    return sched;
}

RescalingSchedule RescalingSchedule::rewind_segment(double t_ref, double t_ff, double t0, double t1,
                                                    double s0, double s1) {
    require(s1 < s0, "rewind needs s1 < s0");
    RescalingSchedule sched = piecewise(
        t_ref, {{0.0, 0.0}, {t0, s0}, {t1, s1}, {t_ff, t_ref}});
    sched.kind_ = Kind::rewind_segment;
    return sched;
}

RescalingSchedule RescalingSchedule::piecewise(double t_ref, std::vector<Knot> knots) {
    require(t_ref > 0.0, "t_ref must be positive");
    require(knots.size() >= 2, "piecewise needs at least two knots");
    require(knots.front().t == 0.0 && knots.front().s == 0.0, "first knot must be (0, 0)");
    for (size_t i = 0; i + 1 < knots.size(); ++i)
        require(knots[i + 1].t > knots[i].t, "knot times must be strictly increasing");
    for (const Knot& k : knots) {
        require(k.s >= 0.0, "s must stay >= 0 (rewind below the reference origin)");
        require(k.s <= t_ref, "s must stay inside [0, t_ref]");
    }
    RescalingSchedule sched(Kind::piecewise, t_ref, knots.back().t);
    sched.knots_ = std::move(knots);
    return sched;
}

void RescalingSchedule::check_time(double t) const {
    const double slack = 1e-12 * std::max(1.0, t_ff_);
    if (t < -slack || t > t_ff_ + slack) {
        std::ostringstream os;
        os << "rescaling schedule: t = " << t << " outside [0, " << t_ff_ << "]";
        throw DomainError(os.str());
    }
}

RescalingSchedule::Sample RescalingSchedule::eval_impl(double t, bool left) const {
    check_time(t);
    switch (kind_) {
        case Kind::identity:
            return {t, 1.0};
        case Kind::linear: {
            const double r = t_ref_ / t_ff_;
            return {r * t, r};
        }
        case Kind::smooth_ramp: {
            const double x = t / t_ff_;
            return {t_ref_ * x * x * (3.0 - 2.0 * x), (t_ref_ / t_ff_) * 6.0 * x * (1.0 - x)};
        }
        default: {
            // piecewise-linear family
            size_t i = 0;
            while (i + 2 < knots_.size() &&
                   (left ? (t > knots_[i + 1].t) : (t >= knots_[i + 1].t)))
                ++i;
            // with the left convention, t exactly at knot i+1 stays in segment i
            const Knot& a = knots_[i];
            const Knot& b = knots_[i + 1];
            const double r = (b.s - a.s) / (b.t - a.t);
            return {a.s + r * (t - a.t), r};
        }
    }
}

RescalingSchedule::Sample RescalingSchedule::eval(double t) const { return eval_impl(t, false); }
RescalingSchedule::Sample RescalingSchedule::eval_left(double t) const { return eval_impl(t, true); }

bool RescalingSchedule::has_rate_jumps() const {
    if (knots_.size() < 3) return false;
    for (size_t i = 0; i + 2 < knots_.size(); ++i) {
        const double r0 = (knots_[i + 1].s - knots_[i].s) / (knots_[i + 1].t - knots_[i].t);
        const double r1 = (knots_[i + 2].s - knots_[i + 1].s) / (knots_[i + 2].t - knots_[i + 1].t);
        if (r0 != r1) return true;
    }
    return false;
}

}  // namespace ffscale::schedule

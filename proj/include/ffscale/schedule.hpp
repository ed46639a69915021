#ifndef FFSCALE_SCHEDULE_HPP
#define FFSCALE_SCHEDULE_HPP

#include <string>
#include <vector>

#include "ffscale/errors.hpp"

namespace ffscale::schedule {

enum class Kind { identity, linear, smooth_ramp, pause_segment, rewind_segment, piecewise };

std::string kind_name(Kind k);

// The time-rescaling map t -> s(t) over [0, t_ff], with s(0) = 0 and s
// confined to the reference domain [0, t_ref]. ds/dt > 1 is fast-forward,
// 0 < ds/dt < 1 slow-down, 0 a pause, < 0 a rewind.
class RescalingSchedule {
public:
    struct Knot {
        double t;
        double s;
    };
    struct Sample {
        double s;
        double rate;  // ds/dt
    };

    static RescalingSchedule identity(double t_ref);
    static RescalingSchedule linear(double t_ref, double t_ff);
    // C^1 cubic blend: rate ramps 0 -> peak -> 0, s(t_ff) = t_ref.
    static RescalingSchedule smooth_ramp(double t_ref, double t_ff);
    // Linear legs around a hold at s_hold on [t0, t1].
    static RescalingSchedule pause_segment(double t_ref, double t_ff, double t0, double t1,
                                           double s_hold);
    // Forward to s0 by t0, back to s1 by t1, forward again to t_ref.
    static RescalingSchedule rewind_segment(double t_ref, double t_ff, double t0, double t1,
                                            double s0, double s1);
    static RescalingSchedule piecewise(double t_ref, std::vector<Knot> knots);

    // Value and rate at wall time t in [0, t_ff]. At interior segment
    // boundaries the rate is taken from the right segment.
    Sample eval(double t) const;
    // Same, but the rate at a boundary comes from the left segment. Needed
    // by quadratures whose interval ends on a knot.
    Sample eval_left(double t) const;

    double t_ff() const { return t_ff_; }
    double t_ref() const { return t_ref_; }
    Kind kind() const { return kind_; }
    // True when ds/dt jumps at an interior knot (flagged in run metadata).
    bool has_rate_jumps() const;

private:
    RescalingSchedule(Kind kind, double t_ref, double t_ff) : kind_(kind), t_ref_(t_ref), t_ff_(t_ff) {}
    void check_time(double t) const;
    Sample eval_impl(double t, bool left) const;

    Kind kind_;
    double t_ref_;
    double t_ff_;
    std::vector<Knot> knots_;  // only for the piecewise family
};

}  // namespace ffscale::schedule

#endif

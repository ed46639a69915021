#include "doctest.h"

#include <cmath>

#include "ffscale/schedule.hpp"

using namespace ffscale;
using schedule::RescalingSchedule;

TEST_SUITE_BEGIN("schedule");

TEST_CASE("identity: s = t, rate 1") {
    const auto sched = RescalingSchedule::identity(20.0);
    const auto [s, rate] = sched.eval(0.7);
    CHECK(s == doctest::Approx(0.7));
    CHECK(rate == 1.0);
    CHECK(sched.t_ff() == 20.0);
}

TEST_CASE("linear: T_ref=20, T_FF=4 gives s(1) = 5 at rate 5") {
    const auto sched = RescalingSchedule::linear(20.0, 4.0);
    const auto [s, rate] = sched.eval(1.0);
    CHECK(s == doctest::Approx(5.0));
    CHECK(rate == doctest::Approx(5.0));
}

TEST_CASE("pause holds s with zero rate") {
    const auto sched = RescalingSchedule::pause_segment(20.0, 4.0, 1.0, 2.0, 3.0);
    const auto mid = sched.eval(1.5);
    CHECK(mid.s == doctest::Approx(3.0));
    CHECK(mid.rate == 0.0);
}

TEST_CASE("knot conventions: right rate from eval, left rate from eval_left") {
    const auto sched = RescalingSchedule::pause_segment(20.0, 4.0, 1.0, 2.0, 3.0);
    CHECK(sched.eval(1.0).rate == 0.0);                       // right segment starts the pause
    CHECK(sched.eval_left(1.0).rate == doctest::Approx(3.0)); // left segment ramps at 3
    CHECK(sched.eval(1.0).s == doctest::Approx(3.0));
    CHECK(sched.eval_left(1.0).s == doctest::Approx(3.0));    // s itself is continuous
    CHECK(sched.has_rate_jumps());
    CHECK_FALSE(RescalingSchedule::linear(20.0, 4.0).has_rate_jumps());
}

TEST_CASE("rewind keeps s nonnegative and inside the reference domain") {
    const auto sched = RescalingSchedule::rewind_segment(20.0, 6.0, 2.5, 3.5, 12.0, 8.0);
    CHECK(sched.eval(3.0).rate == doctest::Approx(-4.0));
    CHECK(sched.eval(3.0).s == doctest::Approx(10.0));
    // constructions that escape the domain are rejected
    CHECK_THROWS_AS(RescalingSchedule::rewind_segment(20.0, 6.0, 1.0, 2.0, 0.5, -0.5), ConfigError);
    CHECK_THROWS_AS(RescalingSchedule::piecewise(20.0, {{0.0, 0.0}, {1.0, 25.0}}), ConfigError);
    CHECK_THROWS_AS(RescalingSchedule::piecewise(20.0, {{0.0, 1.0}, {1.0, 2.0}}), ConfigError);
}

TEST_CASE("eval outside [0, t_ff] is an error") {
    const auto sched = RescalingSchedule::linear(20.0, 4.0);
    CHECK_THROWS_AS(sched.eval(-0.5), DomainError);
    CHECK_THROWS_AS(sched.eval(4.5), DomainError);
}

TEST_CASE("smooth_ramp: C1, endpoints at rest, covers the domain") {
    const auto sched = RescalingSchedule::smooth_ramp(20.0, 4.0);
    CHECK(sched.eval(0.0).s == 0.0);
    CHECK(sched.eval(0.0).rate == 0.0);
    CHECK(sched.eval(4.0).s == doctest::Approx(20.0));
    CHECK(sched.eval(4.0).rate == doctest::Approx(0.0));
    CHECK(sched.eval(2.0).rate == doctest::Approx(1.5 * 20.0 / 4.0));  // peak 1.5x mean
    CHECK_FALSE(sched.has_rate_jumps());
}

TEST_CASE("rate integrates back to the total displacement") {
    // composite Simpson of ds/dt over [0, t_ff] must reproduce s(t_ff) - s(0);
    // integrate segment-wise so piecewise kinds stay exact
    auto integral = [](const RescalingSchedule& sched, const std::vector<double>& breaks) {
        double total = 0.0;
        for (size_t seg = 0; seg + 1 < breaks.size(); ++seg) {
            const double a = breaks[seg], b = breaks[seg + 1];
            const int n = 200;
            const double h = (b - a) / n;
            double acc = 0.0;
            for (int k = 0; k < n; ++k) {
                const double t0 = a + k * h;
                const double r0 = sched.eval(t0).rate;
                const double rm = sched.eval(t0 + 0.5 * h).rate;
                const double r1 = sched.eval_left(t0 + h).rate;
                acc += h / 6.0 * (r0 + 4.0 * rm + r1);
            }
            total += acc;
        }
        return total;
    };

    const auto lin = RescalingSchedule::linear(20.0, 4.0);
    CHECK(std::abs(integral(lin, {0.0, 4.0}) - 20.0) < 1e-9);

    const auto ramp = RescalingSchedule::smooth_ramp(20.0, 4.0);
    CHECK(std::abs(integral(ramp, {0.0, 4.0}) - 20.0) < 1e-9);

    const auto pause = RescalingSchedule::pause_segment(20.0, 4.0, 1.0, 2.0, 3.0);
    CHECK(std::abs(integral(pause, {0.0, 1.0, 2.0, 4.0}) - 20.0) < 1e-9);

    const auto rew = RescalingSchedule::rewind_segment(20.0, 6.0, 2.5, 3.5, 12.0, 8.0);
    CHECK(std::abs(integral(rew, {0.0, 2.5, 3.5, 6.0}) - 20.0) < 1e-9);
}

TEST_SUITE_END();

#include "doctest.h"

#include "basinreach/schedule.hpp"

#include <cmath>

using namespace basinreach;

TEST_CASE("alpha values")
{
    CHECK(StepSchedule::constant(0.5).alpha(7) == 0.5);
    const auto harmonic = StepSchedule::power(1.0, 1.0);
    CHECK(harmonic.alpha(0) == 1.0);
    CHECK(harmonic.alpha(1) == 0.5);
    CHECK(StepSchedule::power(2.0, 0.5).alpha(3) == 1.0);
    CHECK(alpha(harmonic, 3) == 0.25);
}

TEST_CASE("partial sums")
{
    CHECK(StepSchedule::constant(0.5).partial_sum(4) == 2.0);
    CHECK(StepSchedule::power(1.0, 1.0).partial_sum(3) == doctest::Approx(11.0 / 6.0).epsilon(1e-15));
    CHECK(StepSchedule::constant(0.3).partial_sum(0) == 0.0);
    CHECK(partial_sum(StepSchedule::power(0.7, 0.5), 0) == 0.0);
}

TEST_CASE("admissibility thresholds")
{
    const auto unit = make_builtin("quad", {1.0});
    CHECK(admissible(StepSchedule::constant(1.5), unit, Regime::stability));
    CHECK_FALSE(admissible(StepSchedule::constant(1.5), unit, Regime::prox));
    CHECK(admissible(StepSchedule::constant(0.5), unit, Regime::stability));
    CHECK(admissible(StepSchedule::constant(0.5), unit, Regime::prox));
    const auto two = make_builtin("quad", {2.0});
    CHECK_FALSE(admissible(StepSchedule::power(0.6, 1.0), two, Regime::prox));
    CHECK_FALSE(admissible(StepSchedule::constant(1.0), two, Regime::stability));
}

TEST_CASE("construction and parsing")
{
    CHECK_THROWS_AS(StepSchedule::power(1.0, 1.5), PreconditionError);
    CHECK_THROWS_AS(StepSchedule::power(1.0, -0.1), PreconditionError);
    CHECK_THROWS_AS(StepSchedule::constant(0.0), PreconditionError);
    CHECK_THROWS_AS(StepSchedule::constant(-1.0), PreconditionError);

    const auto c = StepSchedule::parse("constant:0.5");
    CHECK(c.kind() == StepSchedule::Kind::constant);
    CHECK(c.c() == 0.5);
    const auto p = StepSchedule::parse("power:1.0:0.5");
    CHECK(p.kind() == StepSchedule::Kind::power);
    CHECK(p.c() == 1.0);
    CHECK(p.p() == 0.5);
    CHECK_THROWS_AS(StepSchedule::parse("cosine:1"), PreconditionError);
    CHECK_THROWS_AS(StepSchedule::parse("power:1"), PreconditionError);
    CHECK_THROWS_AS(StepSchedule::parse("constant:abc"), PreconditionError);

    // to_string round-trips exactly
    const auto q = StepSchedule::power(0.1 / 3.0, 0.3);
    const auto back = StepSchedule::parse(q.to_string());
    CHECK(back.c() == q.c());
    CHECK(back.p() == q.p());
}

TEST_CASE("partial sums are increasing and exceed every bound")
{
    for (const auto& s : {StepSchedule::constant(0.01), StepSchedule::power(0.5, 0.5), StepSchedule::power(1.0, 1.0),
                          StepSchedule::power(0.2, 0.9)}) {
        CAPTURE(s.to_string());
        double prev = 0.0;
        for (std::int64_t K = 1; K < 2000; ++K) {
            const double cur = s.partial_sum(K);
            CHECK(cur > prev);
            prev = cur;
        }
        for (double M : {0.5, 2.0, 8.0}) {
            const std::int64_t K = s.steps_to_exceed(M);
            CHECK(s.partial_sum(K) > M);
        }
    }
}

TEST_CASE("alpha never exceeds sup_alpha")
{
    for (const auto& s : {StepSchedule::constant(0.3), StepSchedule::power(0.7, 0.5), StepSchedule::power(2.0, 1.0)}) {
        for (std::int64_t k = 0; k <= 1'000'000; k += 997) CHECK(s.alpha(k) <= s.sup_alpha());
        CHECK(s.alpha(1'000'000) <= s.sup_alpha());
    }
}

TEST_CASE("scaled keeps the family")
{
    const auto s = StepSchedule::power(0.8, 0.5).scaled(0.25);
    CHECK(s.kind() == StepSchedule::Kind::power);
    CHECK(s.c() == 0.2);
    CHECK(s.p() == 0.5);
}

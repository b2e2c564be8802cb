#include <doctest.h>

#include "properties.hpp"

TEST_CASE("steady states over the fuzz set are density matrices") {
    const auto w = props::cptp_over_fuzz_set();
    CHECK(w.trace < 1e-12);
    CHECK(w.hermiticity < 1e-12);
    CHECK(w.negativity < 1e-10);
    CHECK(w.residual < 1e-10);
}

TEST_CASE("scaling laws hold to 1e-12") { CHECK(props::scaling_law_worst() < 1e-12); }

TEST_CASE("propagator semigroup to 1e-8") { CHECK(props::semigroup_worst() < 1e-8); }

TEST_CASE("reruns are byte identical, whatever the job count") {
    std::string detail;
    CHECK_MESSAGE(props::byte_identical_reruns(&detail), detail);
}

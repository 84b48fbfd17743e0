#include <catch2/catch_amalgamated.hpp>

#include "roadnet/geo.hpp"
#include "roadnet/rng.hpp"

using namespace roadnet;

TEST_CASE("coincident points have zero distance") {
    const GeoPoint p{44.23, -76.49};
    CHECK(euclidean_chord_m(p, p) == 0.0);
    CHECK(great_circle_m(p, p) == 0.0);
}

TEST_CASE("antipodal points: chord is the diameter, arc is half the circumference") {
    const GeoPoint a{10.0, 20.0};
    const GeoPoint b{-10.0, -160.0};
    CHECK_THAT(euclidean_chord_m(a, b), Catch::Matchers::WithinRel(2.0 * kEarthRadiusM, 1e-12));
    // pi * R, pinned from a 50-digit computation; the haversine angle is
    // ill-conditioned this close to antipodal, so only ~1e-8 relative holds
    CHECK_THAT(great_circle_m(a, b), Catch::Matchers::WithinRel(20015086.796020573, 1e-7));
}

TEST_CASE("pinned Kingston-scale pair matches the high-precision oracle") {
    // Oracle values: chord from a 3D Cartesian embedding, arc from a 50-digit
    // haversine evaluation (mpmath).
    const GeoPoint a{44.23, -76.49};
    const GeoPoint b{44.26, -76.50};
    CHECK_THAT(euclidean_chord_m(a, b), Catch::Matchers::WithinRel(3429.633602079163, 1e-9));
    CHECK_THAT(great_circle_m(a, b), Catch::Matchers::WithinRel(3429.6336434902603, 1e-9));
    CHECK(great_circle_m(a, b) >= euclidean_chord_m(a, b));
}

TEST_CASE("chord never exceeds arc; equality only at coincidence") {
    Rng rng(99);
    for (int i = 0; i < 500; ++i) {
        const GeoPoint a{rng.unit() * 180.0 - 90.0, rng.unit() * 360.0 - 180.0};
        const GeoPoint b{rng.unit() * 180.0 - 90.0, rng.unit() * 360.0 - 180.0};
        const double chord = euclidean_chord_m(a, b);
        const double arc = great_circle_m(a, b);
        CHECK(chord >= 0.0);
        CHECK(arc >= chord);
        if (!(a == b)) CHECK(arc > 0.0);
    }
}

TEST_CASE("haversine is stable for tiny separations") {
    const GeoPoint a{44.0, -76.0};
    const GeoPoint b{44.0 + 1e-7, -76.0};
    const double d = great_circle_m(a, b);
    CHECK(d > 0.0);
    CHECK(d < 0.05);  // ~1.1 cm expected
}

TEST_CASE("coordinate validation rejects out-of-range points") {
    CHECK_THROWS_AS(validate_geo(GeoPoint{91.0, 0.0}), ValidationError);
    CHECK_THROWS_AS(validate_geo(GeoPoint{0.0, -181.0}), ValidationError);
    CHECK_THROWS_AS(validate_geo(GeoPoint{std::nan(""), 0.0}), ValidationError);
    CHECK_NOTHROW(validate_geo(GeoPoint{-90.0, 180.0}));
}

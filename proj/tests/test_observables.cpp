#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hazy/observables.hpp"

using namespace hazy;

TEST_CASE("plateau level") {
    CHECK(plateau_level(SystemQubit::plus()) == 1.0);
    CHECK(plateau_level(SystemQubit(1.0, 0.0)) == 0.0);
    CHECK_THAT(plateau_level(SystemQubit(0.25, 0.1)),
               Catch::Matchers::WithinAbs(0.8112781244591328, 1e-12));
}

TEST_CASE("deficit") {
    const SystemQubit plus = SystemQubit::plus();
    CHECK(deficit(1.0, plus) == 0.0);
    CHECK(deficit(0.0, plus) == 1.0);
    CHECK_THAT(deficit(0.9, plus), Catch::Matchers::WithinAbs(0.1, 1e-14));
    CHECK(deficit(2.0, plus) == 0.0);  // the #F = #E jump clamps to zero deficit
    CHECK_THROWS_AS(deficit(0.5, SystemQubit(1.0, 0.0)), std::domain_error);
}

TEST_CASE("method dispatch") {
    const ModelConfig small(8, SystemQubit::plus(), EnvQubit::from_haziness(0.5));
    const ModelConfig large(100, SystemQubit::plus(), EnvQubit::from_haziness(0.5));
    const ModelConfig tilted(100, SystemQubit::plus(), EnvQubit(0.7, 0.2));
    CHECK(resolve_method(Method::automatic, 0.3, small) == Method::oracle);
    CHECK(resolve_method(Method::automatic, kHalfPi, large) == Method::closed_form);
    CHECK(resolve_method(Method::automatic, 0.3, large) == Method::schur);
    CHECK(resolve_method(Method::automatic, kHalfPi, tilted) == Method::schur);
    CHECK(resolve_method(Method::oracle, 0.3, large) == Method::oracle);

    const ModelConfig huge(14, SystemQubit::plus(), EnvQubit::from_haziness(0.5));
    CHECK_THROWS_AS(info_curve(0.3, huge, Method::oracle), std::domain_error);
}

TEST_CASE("info curve shapes") {
    const SystemQubit plus = SystemQubit::plus();

    // t = 0: no correlations anywhere
    const ModelConfig cfg(6, plus, EnvQubit::from_haziness(0.4));
    for (const InfoPoint& p : info_curve(0.0, cfg).points)
        CHECK_THAT(p.bits, Catch::Matchers::WithinAbs(0.0, 1e-10));

    // pure environment at pi/2: plateau at 1 everywhere, jump to 2 at #F = #E
    const ModelConfig pure(100, plus, EnvQubit::from_haziness(0.0));
    const InfoCurve c = info_curve(kHalfPi, pure);
    CHECK(c.points.front().bits == 0.0);
    for (long f = 1; f <= 99; ++f)
        CHECK_THAT(c.points[f].bits, Catch::Matchers::WithinAbs(1.0, 1e-9));
    CHECK_THAT(c.points[100].bits, Catch::Matchers::WithinAbs(2.0, 1e-9));
    CHECK(c.points[50].method == Method::closed_form);

    // hazier environment: same plateau level, reached later, nondecreasing
    const ModelConfig hazy8(100, plus, EnvQubit::from_haziness(0.8));
    const InfoCurve ch = info_curve(kHalfPi, hazy8);
    CHECK(ch.points[1].bits < 0.5);
    CHECK(ch.points[99].bits > 0.98);
    CHECK(ch.points[99].bits <= 1.0 + 1e-9);
    for (std::size_t i = 1; i < ch.points.size(); ++i)
        CHECK(ch.points[i].bits >= ch.points[i - 1].bits - 1e-9);

    // grid parallelism does not change a single byte of the result
    const InfoCurve serial = info_curve(1.05, ModelConfig(10, plus, EnvQubit::from_haziness(0.3)),
                                        Method::schur);
    SchurOptions par;
    par.threads = 4;
    const InfoCurve parallel = info_curve(1.05, ModelConfig(10, plus, EnvQubit::from_haziness(0.3)),
                                          Method::schur, par);
    for (std::size_t i = 0; i < serial.points.size(); ++i)
        CHECK(serial.points[i].bits == parallel.points[i].bits);
}

TEST_CASE("minimal fragment for a deficit") {
    const SystemQubit plus = SystemQubit::plus();

    // pure environment: a single spin suffices
    const ModelConfig pure(100, plus, EnvQubit::from_haziness(0.0));
    CHECK(min_fragment_for_deficit(0.1, kHalfPi, pure) == 1);

    // golden value from the exhaustive scan of the Eq.-(7) curve
    const ModelConfig h08(100, plus, EnvQubit::from_haziness(0.8));
    const auto got = min_fragment_for_deficit(0.1, kHalfPi, h08);
    long scan = -1;
    for (long f = 1; f <= 100; ++f) {
        if (mutual_info(kHalfPi, f, h08) >= 0.9 * plateau_level(plus) - 1e-12) {
            scan = f;
            break;
        }
    }
    REQUIRE(got.has_value());
    CHECK(*got == scan);
    CHECK(*got == 13);

    // binary search agrees with the exhaustive scan across regimes
    for (double h : {0.2, 0.5, 0.9, 0.97})
        for (double delta : {0.05, 0.1, 0.3}) {
            const ModelConfig cfg(100, plus, EnvQubit::from_haziness(h));
            const auto fast = min_fragment_for_deficit(delta, kHalfPi, cfg);
            long slow = -1;
            for (long f = 1; f <= 100 && slow < 0; ++f)
                if (mutual_info(kHalfPi, f, cfg) >= (1 - delta) * 1.0 - 1e-12) slow = f;
            REQUIRE(fast.has_value());
            CHECK(*fast == slow);
        }

    // the totally hazy environment still qualifies through the #F = #E
    // jump (I = H_S exactly there), so the minimal fragment is all of E
    const ModelConfig hazy1(20, plus, EnvQubit::from_haziness(1.0));
    CHECK(min_fragment_for_deficit(0.1, kHalfPi, hazy1) == 20);
    // ... but never at t = 0
    CHECK_FALSE(min_fragment_for_deficit(0.1, 0.0, hazy1).has_value());

    // degenerate pointer system: no plateau, nothing to acquire
    const ModelConfig ptr(10, SystemQubit(0.0, 0.0), EnvQubit::from_haziness(0.2));
    CHECK_FALSE(min_fragment_for_deficit(0.1, kHalfPi, ptr).has_value());

    CHECK_THROWS_AS(min_fragment_for_deficit(0.0, kHalfPi, pure), std::domain_error);
    CHECK_THROWS_AS(min_fragment_for_deficit(1.0, kHalfPi, pure), std::domain_error);
}

TEST_CASE("redundancy") {
    const SystemQubit plus = SystemQubit::plus();

    const ModelConfig pure(100, plus, EnvQubit::from_haziness(0.0));
    const RedundancyResult r0 = redundancy(0.1, kHalfPi, pure);
    REQUIRE(r0.n_frag_delta.has_value());
    CHECK(*r0.n_frag_delta == 1);
    CHECK(*r0.redundancy() == 100.0);

    // rationality: R * #F_delta = #E exactly
    for (double h : {0.3, 0.8, 0.92}) {
        const ModelConfig cfg(100, plus, EnvQubit::from_haziness(h));
        const RedundancyResult r = redundancy(0.1, kHalfPi, cfg);
        REQUIRE(r.n_frag_delta.has_value());
        CHECK(*r.redundancy() * double(*r.n_frag_delta) == 100.0);
    }

    const ModelConfig h92(100, plus, EnvQubit::from_haziness(0.92));
    CHECK_THAT(*redundancy(0.1, kHalfPi, h92).redundancy(),
               Catch::Matchers::WithinAbs(100.0 / 33.0, 1e-12));

    const ModelConfig ptr(10, SystemQubit(1.0, 0.0), EnvQubit::from_haziness(0.3));
    CHECK_FALSE(redundancy(0.1, kHalfPi, ptr).redundancy().has_value());
}

TEST_CASE("deficit versus overlap is monotone") {
    const SystemQubit plus = SystemQubit::plus();
    std::vector<EnvQubit> envs;
    for (int i = 0; i < 20; ++i) envs.push_back(EnvQubit::from_haziness(i / 20.0));
    const auto curve = deficit_overlap_curve(50, kHalfPi, plus, envs, 100);
    REQUIRE(curve.size() == 20);
    CHECK(curve.front().first == 0.0);                  // h = 0: zero overlap
    CHECK_THAT(curve.front().second, Catch::Matchers::WithinAbs(0.0, 1e-9));
    for (std::size_t i = 1; i < curve.size(); ++i) {
        CHECK(curve[i].first >= curve[i - 1].first);
        CHECK(curve[i].second >= curve[i - 1].second - 1e-12);
    }
}

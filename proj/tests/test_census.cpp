#include <doctest.h>

#include "oracles.hpp"
#include "systole/census.hpp"

using namespace systole;
using namespace systole::census;
using quadfield::QuadField;
using quatalg::make_kalg;

TEST_SUITE("census") {

TEST_CASE("enumerate_classes: only the Bianchi class below 0.31 over Q(i)") {
    auto Qi = QuadField::from_squarefree(-1);
    auto cs = enumerate_classes(Qi, 0.31);
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].algebra.ram_f.empty());
    CHECK(cs[0].volume.value == doctest::Approx(0.3053218647257397).epsilon(1e-9));
}

TEST_CASE("enumerate_classes: precondition on the cutoff") {
    auto K43 = QuadField::from_squarefree(-43);
    double base = covolume::kleinian_covol_norm1(make_kalg(K43, {})).value;
    CHECK_THROWS_AS((void)enumerate_classes(K43, base * 0.9), DomainError);
}

TEST_CASE("enumerate_classes: oracle equivalence, all splitting shapes at 2") {
    // 2 is ramified in Q(i), inert in Q(sqrt(-3)) and Q(sqrt(-43)),
    // split in Q(sqrt(-7)): all norm-2 ideal configurations are covered
    for (long d : {-1L, -3L, -7L, -43L}) {
        auto K = QuadField::from_squarefree(Int(d));
        double base = covolume::kleinian_covol_norm1(make_kalg(K, {})).value;
        std::vector<double> vmaxes = {base * 3.3, base * 20.0};
        if (d == -1) vmaxes.push_back(base * 60.0);
        for (double Vmax : vmaxes) {
            auto fast = enumerate_classes(K, Vmax);
            std::vector<std::string> got;
            for (const auto& c : fast) got.push_back(quatalg::to_string(c.algebra));
            std::sort(got.begin(), got.end());
            std::uint64_t cutoff = static_cast<std::uint64_t>(Vmax / base) + 2;
            auto want = oracles::brute_enumerate_classes(K, Vmax, cutoff);
            CHECK(got == want);
        }
    }
}

TEST_CASE("enumerate_classes: sorted by volume, all admissible, deterministic") {
    auto Qi = QuadField::from_squarefree(-1);
    auto cs = enumerate_classes(Qi, 40.0);
    CHECK(cs.size() > 4);
    for (std::size_t i = 0; i < cs.size(); ++i) {
        CHECK(quatalg::is_admissible(cs[i].algebra));
        CHECK(cs[i].volume.value < 40.0);
        if (i > 0) CHECK(cs[i].volume.value >= cs[i - 1].volume.value * (1 - 1e-12));
    }
    auto again = enumerate_classes(Qi, 40.0, 3); // parallel run merges identically
    REQUIRE(again.size() == cs.size());
    for (std::size_t i = 0; i < cs.size(); ++i)
        CHECK(quatalg::to_string(again[i].algebra) == quatalg::to_string(cs[i].algebra));
}

TEST_CASE("ratio_table over Q(i)") {
    auto Qi = QuadField::from_squarefree(-1);
    auto rows = ratio_table(Qi, {1.0, 10.0, 100.0}, covolume::PiArea(make_rat(1, 2)));
    REQUIRE(rows.size() == 3);
    // the Bianchi class carries surfaces of area pi/3 < pi/2
    CHECK(rows[0].n_total == 1);
    CHECK(rows[0].n_tg == 1);
    CHECK(rows[0].ratio == Rat(1));
    for (const auto& r : rows) CHECK(r.n_tg <= r.n_total);
    CHECK(rows[0].n_total <= rows[1].n_total);
    CHECK(rows[1].n_total <= rows[2].n_total);
    CHECK(rows[2].ratio <= rows[0].ratio); // empirical vanishing trend
    CHECK(rows[2].n_tg == 1);              // sub-pi/2 spectra need tiny base products
}

TEST_CASE("ratio_table: the area threshold comparison is strict") {
    // the Bianchi class over Q(i) has minimal area exactly pi/3
    auto Qi = QuadField::from_squarefree(-1);
    auto at = ratio_table(Qi, {1.0}, covolume::PiArea(make_rat(1, 3)));
    CHECK(at[0].n_tg == 0);
    auto above = ratio_table(Qi, {1.0}, covolume::PiArea(make_rat(34, 100)));
    CHECK(above[0].n_tg == 1);
}

TEST_CASE("ratio_table: thresholds below the universal floor give zero counts") {
    auto Qi = QuadField::from_squarefree(-1);
    auto rows = ratio_table(Qi, {5.0, 50.0}, covolume::PiArea(make_rat(1, 100)));
    for (const auto& r : rows) {
        CHECK(r.n_tg == 0);
        CHECK(r.ratio == Rat(0));
    }
}

TEST_CASE("ratio_table: grid validation") {
    auto Qi = QuadField::from_squarefree(-1);
    CHECK_THROWS_AS(ratio_table(Qi, {}, covolume::PiArea(make_rat(1))), DomainError);
    CHECK_THROWS_AS(ratio_table(Qi, {10.0, 5.0}, covolume::PiArea(make_rat(1))), DomainError);
    CHECK_THROWS_AS(ratio_table(Qi, {0.1, 5.0}, covolume::PiArea(make_rat(1))), DomainError);
}

TEST_CASE("the n_tg shortcut agrees with the depth-1 spectrum") {
    auto gen = oracles::rng(4242);
    for (int iter = 0; iter < 25; ++iter) {
        auto A = oracles::random_tgs_algebra(gen, 60, 1, 20);
        auto min_area = geodesic::tg_spectrum(A, 1).entries.at(0).area;
        CHECK(geodesic::tg_area_upper_witness(A).area == min_area);
    }
}

TEST_CASE("genus_threshold_translate") {
    CHECK(genus_threshold_translate(2.0) == covolume::PiArea(make_rat(4)));
    CHECK(genus_threshold_translate(3.0) == covolume::PiArea(make_rat(8)));
    CHECK_THROWS_AS(genus_threshold_translate(1.5), DomainError);
    // round-trip: the genus range of 4 pi (g - 1) contains g
    for (long g = 2; g <= 40; ++g) {
        auto area = genus_threshold_translate(static_cast<double>(g));
        auto range = covolume::genus_range_from_area(area);
        CHECK(range.g_min <= g);
        CHECK(g <= range.g_max);
    }
}

} // TEST_SUITE

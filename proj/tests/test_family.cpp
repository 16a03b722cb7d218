#include <doctest.h>

#include "oracles.hpp"
#include "systole/family.hpp"

using namespace systole;
using namespace systole::family;
using quadfield::QuadField;
using quadfield::SplitType;
using quadfield::splitting_type;

namespace {

SplitPrescription presc(std::initializer_list<long> split, std::initializer_list<long> inert) {
    SplitPrescription p;
    for (long s : split) p.split_primes.insert(Int(s));
    for (long s : inert) p.inert_primes.insert(Int(s));
    return p;
}

bool in_some_class(std::uint64_t q, const std::vector<arith::ResidueClass>& classes) {
    for (const auto& c : classes)
        if (c.contains(Int(static_cast<unsigned long>(q)))) return true;
    return false;
}

} // namespace

TEST_SUITE("family") {

TEST_CASE("residue_classes: pinned prescriptions") {
    auto cs = residue_classes(presc({13}, {2, 3}));
    CHECK(cs.size() == 6); // (13-1)/2 residues mod 13, one class mod 8 and mod 3
    for (const auto& c : cs) {
        CHECK(c.modulus == 312); // 8 * 3 * 13
        Int m24;
        mpz_mod_ui(m24.get_mpz_t(), c.residue.get_mpz_t(), 24);
        CHECK(m24 == 19); // 3 mod 8 and 1 mod 3
    }
    // smallest admissible prime in the union is 43
    std::uint64_t q = 2;
    while (true) {
        q = arith::next_prime_above(q);
        if (q % 4 == 3 && q != 3 && in_some_class(q, cs)) break;
    }
    CHECK(q == 43);

    auto inert2 = residue_classes(presc({}, {2}));
    REQUIRE(inert2.size() == 1);
    CHECK(inert2[0].residue == 3);
    CHECK(inert2[0].modulus == 8);

    CHECK_THROWS_AS(residue_classes(presc({3}, {3})), InconsistentPrescription);
}

TEST_CASE("residue_classes: characterize admissible primes exactly") {
    for (const auto& p : {presc({13}, {2, 3}), presc({5}, {3, 7}), presc({}, {2, 5})}) {
        auto cs = residue_classes(p);
        for (std::uint64_t q = 5; q < 500; q = arith::next_prime_above(q)) {
            if (q % 4 != 3) continue;
            auto K = QuadField::from_squarefree(Int(-static_cast<long>(q)));
            bool realized = true;
            for (const Int& s : p.split_primes)
                if (splitting_type(s, K) != SplitType::Split) realized = false;
            for (const Int& s : p.inert_primes)
                if (splitting_type(s, K) != SplitType::Inert) realized = false;
            CHECK(realized == in_some_class(q, cs));
        }
    }
}

TEST_CASE("find_fields: pinned searches") {
    auto fs = find_fields(presc({13}, {2, 3}), 2);
    REQUIRE(fs.size() == 2);
    CHECK(fs[0].discriminant() == -43);
    CHECK(fs[1].discriminant() == -139);

    auto f23 = find_fields(presc({13}, {}), 1);
    CHECK(f23[0].discriminant() == -23);

    // postcondition: direct splitting re-verification for every prescribed prime
    for (const auto& K : fs) {
        CHECK(splitting_type(13, K) == SplitType::Split);
        CHECK(splitting_type(2, K) == SplitType::Inert);
        CHECK(splitting_type(3, K) == SplitType::Inert);
    }
}

TEST_CASE("find_fields: never returns 3, never returns non-prime-discriminants") {
    auto fs = find_fields(presc({}, {}), 8);
    for (const auto& K : fs) {
        Int q = -K.discriminant();
        CHECK(arith::is_prime(q));
        CHECK(q != 3);
        Int m4;
        mpz_mod_ui(m4.get_mpz_t(), q.get_mpz_t(), 4);
        CHECK(m4 == 3);
    }
}

TEST_CASE("build_family: two members sharing a depth-2 spectrum") {
    auto rep = build_family(2, 5, 2);
    REQUIRE(rep.members.size() == 2);
    CHECK(rep.members[0].field.discriminant() == -43);
    CHECK(rep.members[1].field.discriminant() == -139);
    REQUIRE(rep.shared_spectrum.entries.size() == 2);
    CHECK(rep.shared_spectrum.entries[0].area == covolume::PiArea(make_rat(4)));
    CHECK(rep.shared_spectrum.entries[1].area == covolume::PiArea(make_rat(8)));
    REQUIRE(rep.shared_spectrum.entries[0].witnesses.size() == 1);
    CHECK(rep.shared_spectrum.entries[0].witnesses[0].ram_f == std::set<Int>{2, 13});
    CHECK(rep.shared_spectrum.entries[1].witnesses[0].ram_f == std::set<Int>{3, 13});

    // pairwise incommensurable: distinct fields
    CHECK(rep.members[0].field.discriminant() != rep.members[1].field.discriminant());
    // sys1 bounds are the volume logs
    for (std::size_t i = 0; i < rep.members.size(); ++i)
        CHECK(rep.sys1_bounds[i] == doctest::Approx(std::log(rep.members[i].volume.value)));
    CHECK(rep.volumes_monotone);
    CHECK(rep.rejected.empty());
    // every member passes the torsion certificate (13 splits in both
    // cyclotomic quadratic fields)
    for (const auto& m : rep.members) CHECK(quatalg::torsion_free_certificate(m.algebra));
}

TEST_CASE("build_family: ceiling too small for the depth raises VerificationFailed") {
    // with only 2 forced inert, the second member loses the area 8*pi
    // (3 splits in Q(sqrt(-107))) and the spectra diverge
    CHECK_THROWS_AS(build_family(4, 3, 2), VerificationFailed);
    try {
        build_family(4, 3, 2);
    } catch (const VerificationFailed& e) {
        CHECK(e.first_difference == "8*pi");
    }
}

TEST_CASE("build_family: argument validation") {
    CHECK_THROWS_AS(build_family(0, 5, 2), DomainError);
    CHECK_THROWS_AS(build_family(2, 2, 2), DomainError);
    CHECK_THROWS_AS(build_family(2, 5, 1), DomainError);
    CHECK_THROWS_AS(build_family(2, 5, 2, Int(12)), DomainError);
}

TEST_CASE("build_family: split-prime override") {
    // 5 = 1 mod 4 but 5 != 1 mod 3: the torsion certificate can never hold,
    // diagnosed up front instead of rejecting every candidate
    CHECK_THROWS_AS(build_family(2, 5, 2, Int(5)), DomainError);
    CHECK_THROWS_AS(build_family(2, 5, 2, Int(7)), DomainError);
    // 37 = 1 mod 12 works
    auto rep = build_family(2, 5, 2, Int(37));
    REQUIRE(rep.members.size() == 2);
    CHECK(rep.members[0].field.discriminant() == -67);
    CHECK(rep.members[1].field.discriminant() == -139);
    CHECK(rep.shared_spectrum.entries[0].area == covolume::PiArea(make_rat(12)));
    CHECK(rep.shared_spectrum.entries[1].area == covolume::PiArea(make_rat(24)));
    for (const auto& m : rep.members) CHECK(quatalg::torsion_free_certificate(m.algebra));
}

TEST_CASE("linnik_report") {
    auto fs = find_fields(presc({13}, {2, 3}), 2);
    auto rows = linnik_report(fs);
    REQUIRE(rows.size() == 2);
    CHECK(std::get<0>(rows[0]) == 1);
    CHECK(std::get<1>(rows[0]) == 43);
    CHECK(std::get<2>(rows[0]) == doctest::Approx(43.0 / std::log(2.0)));
    CHECK(std::get<2>(rows[1]) == doctest::Approx(139.0 / (2.0 * std::log(4.0))));
    auto single = linnik_report({fs[0]});
    CHECK(single.size() == 1);
}

TEST_CASE("volume_bound_report") {
    auto rep = build_family(2, 5, 3);
    auto vb = volume_bound_report(rep);
    CHECK(vb.zeta_bound_ok);
    CHECK(vb.all_within);
    for (std::size_t i = 0; i < rep.members.size(); ++i) {
        double n = static_cast<double>(i + 1);
        CHECK(rep.members[i].volume.value <=
              vb.c1_fit * std::pow(n * std::log(2 * n), 1.5) * (1 + 1e-9));
    }
    // the fit is attained
    bool attained = false;
    for (std::size_t i = 0; i < rep.members.size(); ++i) {
        double n = static_cast<double>(i + 1);
        if (std::abs(rep.members[i].volume.value / std::pow(n * std::log(2 * n), 1.5) - vb.c1_fit) <
            1e-9 * vb.c1_fit)
            attained = true;
    }
    CHECK(attained);
}

TEST_CASE("build_family: parallel verification merges deterministically") {
    auto serial = build_family(2, 5, 3, Int(13), 1);
    auto parallel = build_family(2, 5, 3, Int(13), 4);
    REQUIRE(serial.members.size() == parallel.members.size());
    for (std::size_t i = 0; i < serial.members.size(); ++i) {
        CHECK(serial.members[i].field.discriminant() == parallel.members[i].field.discriminant());
        CHECK(serial.members[i].volume.value == parallel.members[i].volume.value);
    }
    REQUIRE(serial.shared_spectrum.entries.size() == parallel.shared_spectrum.entries.size());
    for (std::size_t i = 0; i < serial.shared_spectrum.entries.size(); ++i)
        CHECK(serial.shared_spectrum.entries[i].area == parallel.shared_spectrum.entries[i].area);
}

TEST_CASE("the conservative sufficient ceiling is reported") {
    auto rep = build_family(2, 5, 2);
    // p_(N+1) = p_3 = 5, so the closed-form sufficient ceiling is 2^10 * 9 * 5
    CHECK(rep.sufficient_inert_ceiling == 1024 * 9 * 5);
    CHECK(rep.inert_ceiling == 5);
}

} // TEST_SUITE

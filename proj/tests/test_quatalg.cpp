#include <doctest.h>

#include "oracles.hpp"
#include "systole/quatalg.hpp"

using namespace systole;
using namespace systole::quatalg;
using quadfield::QuadField;
using quadfield::SplitType;

namespace {

QAlgQ balg(std::initializer_list<long> primes) {
    QAlgQ B;
    for (long p : primes) B.ram_f.insert(Int(p));
    return B;
}

} // namespace

TEST_SUITE("quatalg") {

TEST_CASE("admissibility") {
    CHECK(is_admissible(balg({13, 2})));
    CHECK(!is_admissible(balg({13})));
    CHECK(is_admissible(balg({})));
    QAlgQ definite = balg({13});
    definite.ram_inf = true;
    CHECK(is_admissible(definite));

    auto K43 = QuadField::from_squarefree(-43);
    auto A = split_pair_algebra(K43, {13});
    CHECK(is_admissible(A));
    // lone member of a split pair plus an inert ideal: still admissible
    auto lop = make_kalg(K43, {{13, IdealTag::First}, {3, IdealTag::Unique}});
    CHECK(is_admissible(lop));
    // odd cardinality is not
    CHECK(!is_admissible(make_kalg(K43, {{3, IdealTag::Unique}})));
    // wrong tag for an inert prime is not a valid entry
    CHECK(!is_admissible(make_kalg(K43, {{3, IdealTag::First}, {5, IdealTag::Unique}})));
}

TEST_CASE("type numbers over Q are 1") {
    CHECK(type_number(balg({13, 2})) == 1);
    CHECK(type_number(balg({2, 3})) == 1);
    CHECK(type_number(balg({})) == 1);
}

TEST_CASE("type_number_k: pinned cases") {
    auto K43 = QuadField::from_squarefree(-43);
    CHECK(type_number_k(split_pair_algebra(K43, {13})) == 1); // h = 1
    auto K23 = QuadField::from_squarefree(-23);
    CHECK(type_number_k(split_pair_algebra(K23, {2})) == 1);  // h = 3 odd
    auto K15 = QuadField::from_squarefree(-15);
    CHECK(type_number_k(split_pair_algebra(K15, {17})) == 1); // genus vector (-1,-1)
    CHECK(type_number_k(split_pair_algebra(K15, {19})) == 2); // genus vector (+1,+1)
    CHECK(type_number_k(make_kalg(K15, {})) == 2);            // no relations: full Cl/Cl^2
    // ramified primes contribute their ambiguous classes
    CHECK(type_number_k(make_kalg(K15, {{3, IdealTag::Unique}, {5, IdealTag::Unique}})) == 1);
}

TEST_CASE("type_number_k: ramified primes in a 2-rank-2 field") {
    // D = -84 = (-3)(-7)(-4), h = 4, Cl/Cl^2 of order 4
    auto K = QuadField::from_squarefree(-21);
    REQUIRE(K.discriminant() == -84);
    REQUIRE(quadfield::class_group(K).two_rank == 2);
    // both ramified classes have genus vector (+1,-1,-1): rank 1
    CHECK(quadfield::ramified_genus_vector(K, 3) == std::vector<int>{1, -1, -1});
    CHECK(quadfield::ramified_genus_vector(K, 7) == std::vector<int>{1, -1, -1});
    CHECK(type_number_k(make_kalg(K, {{3, IdealTag::Unique}, {7, IdealTag::Unique}})) == 2);
    CHECK(type_number_k(make_kalg(K, {})) == 4);
    // the form representing 3 confirms the ambiguous class's genus vector
    auto f = oracles::form_representing(K, 3);
    CHECK(oracles::form_genus_vector(K, f) == std::vector<int>{1, -1, -1});
    // inert primes are principal and add no relations
    CHECK(type_number_k(make_kalg(K, {{13, IdealTag::Unique}, {29, IdealTag::Unique}})) == 4);
}

TEST_CASE("type_number_k: against the form-representation route, |D| <= 200") {
    auto gen = oracles::rng(23);
    int tested = 0;
    while (tested < 60) {
        auto K = oracles::random_field(gen, 200);
        auto cg = quadfield::class_group(K);
        std::vector<Int> split;
        for (std::uint64_t p : arith::primes_below(50))
            if (quadfield::splitting_type(Int((unsigned long)p), K) == SplitType::Split)
                split.push_back(Int((unsigned long)p));
        if (split.empty()) continue;
        std::shuffle(split.begin(), split.end(), gen);
        int r = std::uniform_int_distribution<int>(1, 2)(gen);
        std::vector<Int> base(split.begin(), split.begin() + std::min<std::size_t>(r, split.size()));
        auto A = split_pair_algebra(K, base);

        // independent route: genus vectors of the form classes representing
        // each base prime, span rank over F2
        std::vector<std::vector<int>> vecs;
        bool ok = true;
        for (const Int& p : base) {
            try {
                auto f = oracles::form_representing(K, to_i64(p));
                vecs.push_back(oracles::form_genus_vector(K, f));
            } catch (const std::runtime_error&) {
                ok = false; // representation search box too small; skip
            }
        }
        if (!ok) continue;
        unsigned rho = oracles::f2_span_rank(vecs);
        std::uint64_t t = type_number_k(A);
        CHECK(t == (1ull << (cg.two_rank - std::min(rho, cg.two_rank))));
        // always a power of two dividing 2^two_rank
        CHECK((t & (t - 1)) == 0);
        CHECK((1ull << cg.two_rank) % t == 0);
        ++tested;
    }
}

TEST_CASE("local squares in Q_p: against the mod-p^k oracle") {
    for (std::int64_t p : {2, 3, 5, 7, 13}) {
        for (std::int64_t x = -50; x <= 50; ++x) {
            if (x == 0) continue;
            CHECK(is_square_in_qp(Int(x), Int(p)) == oracles::brute_square_in_qp(x, p));
        }
        // some higher p-valuations
        for (std::int64_t u : {1, 2, 3, 5, -1, -2}) {
            std::int64_t x = u * p * p;
            CHECK(is_square_in_qp(Int(x), Int(p)) == oracles::brute_square_in_qp(x, p));
            x = u * p;
            CHECK(is_square_in_qp(Int(x), Int(p)) == oracles::brute_square_in_qp(x, p));
        }
    }
}

TEST_CASE("local squares in k_p: case table against the O_k enumeration oracle") {
    for (long d : {-1L, -2L, -3L, -5L, -7L, -11L, -15L}) {
        auto K = QuadField::from_squarefree(Int(d));
        for (std::int64_t p : {2, 3, 5}) {
            for (std::int64_t x = -20; x <= 20; ++x) {
                if (x == 0) continue;
                bool got = is_square_in_kp(Int(x), Int(p), K);
                bool want = oracles::brute_square_in_kp(x, p, K);
                CAPTURE(d);
                CAPTURE(p);
                CAPTURE(x);
                CHECK(got == want);
            }
        }
    }
}

TEST_CASE("embeds_quadratic: pinned paper cases") {
    auto K43 = QuadField::from_squarefree(-43);
    auto A = split_pair_algebra(K43, {13});
    // 13 splits in Q(i) and in Q(sqrt(-3)), so neither k(i) nor k(sqrt(-3)) embeds
    CHECK(!embeds_quadratic(A, -1));
    CHECK(!embeds_quadratic(A, -3));
    auto matrix = make_kalg(K43, {});
    CHECK(embeds_quadratic(matrix, -1));
    CHECK(embeds_quadratic(matrix, -3));
    CHECK(embeds_quadratic(matrix, 7));
    CHECK_THROWS_AS(embeds_quadratic(A, -43), NotQuadratic); // sqrt(-43) already in k
    CHECK_THROWS_AS(embeds_quadratic(A, 4), NotQuadratic);
    // x = d * square is a square in k too
    auto K2 = QuadField::from_squarefree(-2);
    auto A2 = make_kalg(K2, {{5, IdealTag::Unique}, {7, IdealTag::Unique}});
    CHECK_THROWS_AS(embeds_quadratic(A2, -8), NotQuadratic);  // -8 = -2 * 4
    CHECK_THROWS_AS(embeds_quadratic(A2, -18), NotQuadratic); // -18 = -2 * 9
}

TEST_CASE("embeds_quadratic: local criterion is prime-by-prime") {
    // an inert ramified pair over Q(sqrt(-43)): 3 inert, 43 ramified
    auto K43 = QuadField::from_squarefree(-43);
    auto A = make_kalg(K43, {{3, IdealTag::Unique}, {43, IdealTag::Unique}});
    REQUIRE(is_admissible(A));
    bool e1 = embeds_quadratic(A, -1);
    // consistency with the local tests it is defined by
    bool split3 = is_square_in_kp(-1, 3, K43);
    bool split43 = is_square_in_kp(-1, 43, K43);
    CHECK(e1 == (!split3 && !split43));
}

TEST_CASE("torsion_free_certificate") {
    auto K43 = QuadField::from_squarefree(-43);
    CHECK(torsion_free_certificate(split_pair_algebra(K43, {13})));
    auto Ki = QuadField::from_squarefree(-1);
    CHECK_THROWS_AS(torsion_free_certificate(make_kalg(Ki, {})), FieldExcluded);
    auto K3 = QuadField::from_squarefree(-3);
    CHECK_THROWS_AS(torsion_free_certificate(make_kalg(K3, {})), FieldExcluded);
    // matrix algebra over a safe field: both cyclotomic extensions embed
    CHECK(!torsion_free_certificate(make_kalg(K43, {})));
}

TEST_CASE("compatible: pinned cases") {
    auto K43 = QuadField::from_squarefree(-43);
    auto A = split_pair_algebra(K43, {13});
    CHECK(compatible(balg({13, 2}), A));
    CHECK(!compatible(balg({2, 3}), A));  // 13 missing
    CHECK(compatible(balg({13, 5}), A));  // 5 inert in Q(sqrt(-43))
    CHECK(!compatible(balg({13, 11}), A)); // 11 splits in Q(sqrt(-43))
    CHECK(compatible(balg({}), make_kalg(QuadField::from_squarefree(-1), {})));
}

TEST_CASE("compatible: stable under inert growth, destroyed by split growth") {
    auto gen = oracles::rng(31);
    int done = 0;
    while (done < 100) {
        auto A = oracles::random_tgs_algebra(gen, 150, 2, 60);
        auto tgs = geodesic::has_tgs(A);
        REQUIRE(tgs.ok);
        QAlgQ B;
        for (const Int& p : tgs.base_primes) B.ram_f.insert(p);
        std::vector<Int> inert, split_extra;
        for (std::uint64_t q : arith::primes_below(80)) {
            Int qi((unsigned long)q);
            if (B.ram_f.count(qi)) continue;
            if (quadfield::splitting_type(qi, A.field) == SplitType::Split)
                split_extra.push_back(qi);
            else
                inert.push_back(qi);
        }
        // grow by an even number of non-split primes: stays compatible
        std::shuffle(inert.begin(), inert.end(), gen);
        std::size_t take = std::uniform_int_distribution<std::size_t>(0, 2)(gen) * 2;
        if (B.ram_f.size() % 2 == 1) take += 1; // restore admissibility parity
        if (take > inert.size()) continue;
        for (std::size_t i = 0; i < take; ++i) B.ram_f.insert(inert[i]);
        if (!is_admissible(B)) continue;
        CHECK(compatible(B, A));
        // adding any split prime outside the base breaks it (parity kept by
        // pairing it with one more inert prime)
        if (split_extra.empty() || take >= inert.size()) continue;
        QAlgQ Bad = B;
        Bad.ram_f.insert(split_extra[0]);
        Bad.ram_f.insert(inert[take]);
        if (!is_admissible(Bad)) continue;
        CHECK(!compatible(Bad, A));
        ++done;
    }
}

TEST_CASE("norm identity: prod (N(P)-1) is the square of prod (p-1)") {
    auto gen = oracles::rng(43);
    for (int iter = 0; iter < 100; ++iter) {
        auto A = oracles::random_tgs_algebra(gen);
        auto tgs = geodesic::has_tgs(A);
        REQUIRE(tgs.ok);
        Int lhs = 1;
        for (const auto& ideal : A.ram_f) lhs *= ideal_norm(ideal, A.field) - 1;
        Int rhs = 1;
        for (const Int& p : tgs.base_primes) rhs *= p - 1;
        CHECK(lhs == rhs * rhs);
    }
}

TEST_CASE("text grammar round-trips") {
    CHECK(to_string(balg({13, 2})) == "Q{2,13}");
    CHECK(parse_qalg_q("Q{13,2}") == balg({13, 2}));
    CHECK(parse_qalg_q("Q{}") == balg({}));
    CHECK(parse_qalg_q(" Q { 13 , 2 } ") == balg({13, 2}));

    auto K43 = QuadField::from_squarefree(-43);
    auto A = split_pair_algebra(K43, {13});
    CHECK(to_string(A) == "K[-43]{13+,13-}");
    CHECK(parse_qalg_k("K[-43]{13+,13-}") == A);
    CHECK(parse_qalg_k("K[-43]{13}") == A); // bare prime: whole fiber
    auto r2 = parse_qalg_k("K[-4]{2r}");
    CHECK(to_string(r2) == "K[-4]{2r}");
    auto i3 = parse_qalg_k("K[-43]{3i,43r}");
    CHECK(to_string(i3) == "K[-43]{3i,43r}");
    // field canonicalization: -1 is the squarefree part of Q(i)
    CHECK(parse_qalg_k("K[-1]{2r}") == r2);
}

TEST_CASE("text grammar errors carry column positions") {
    CHECK_THROWS_AS(parse_qalg_q("Q{4}"), ParseError);
    CHECK_THROWS_AS(parse_qalg_q("Q{13,13}"), ParseError);
    CHECK_THROWS_AS(parse_qalg_k("K[-43]{3+}"), ParseError);  // 3 is inert, '+' invalid
    CHECK_THROWS_AS(parse_qalg_k("K[-43]{13i}"), ParseError); // 13 splits, 'i' invalid
    CHECK_THROWS_AS(parse_qalg_k("K[12]{}"), ParseError);     // not a field
    CHECK_THROWS_AS(parse_qalg_k("K[-43]{13+,13+}"), ParseError);
    CHECK_THROWS_AS(parse_qalg_k("K[5]{}"), ParseError);      // real field
    try {
        parse_qalg_k("K[-43]{3+}");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.column >= 8);
    }
}

} // TEST_SUITE

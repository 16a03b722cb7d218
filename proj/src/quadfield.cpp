#include "systole/quadfield.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <shared_mutex>

namespace systole::quadfield {

using arith::kronecker;

const char* to_string(SplitType t) {
    switch (t) {
        case SplitType::Split: return "split";
        case SplitType::Inert: return "inert";
        case SplitType::Ramified: return "ramified";
    }
    return "?";
}

QuadField QuadField::from_squarefree(const Int& d) {
    if (d == 0 || d == 1) throw DomainError("d must not be 0 or 1");
    if (!arith::is_squarefree(d)) throw NotSquarefree(d.get_str() + " is not squarefree");
    Int dm4;
    mpz_mod_ui(dm4.get_mpz_t(), d.get_mpz_t(), 4); // nonnegative remainder
    Int D = (dm4 == 1) ? d : Int(4 * d);
    return QuadField(d, D);
}

QuadField QuadField::rationals() { return QuadField(1, 1); }

QuadField QuadField::from_d_or_discriminant(const Int& v) {
    if (v == 1) return rationals();
    if (is_fundamental_discriminant(v)) {
        Int m4;
        mpz_mod_ui(m4.get_mpz_t(), v.get_mpz_t(), 4);
        Int d = (m4 == 1) ? v : Int(v / 4);
        return QuadField(d, v);
    }
    return from_squarefree(v);
}

bool is_fundamental_discriminant(const Int& D) {
    if (D == 1) return true;
    Int m4;
    mpz_mod_ui(m4.get_mpz_t(), D.get_mpz_t(), 4);
    if (m4 == 1) return arith::is_squarefree(D);
    if (m4 != 0) return false;
    Int m = D / 4;
    Int mm4;
    mpz_mod_ui(mm4.get_mpz_t(), m.get_mpz_t(), 4);
    return (mm4 == 2 || mm4 == 3) && arith::is_squarefree(m);
}

std::vector<Int> prime_discriminant_factors(const Int& D) {
    if (!is_fundamental_discriminant(D) || D == 1)
        throw DomainError("prime discriminant factorization needs a fundamental discriminant != 1");
    std::vector<Int> out;
    Int rest = D;
    for (const auto& [p, e] : arith::factor(abs(D))) {
        if (p == 2) continue;
        Int pm4;
        mpz_mod_ui(pm4.get_mpz_t(), p.get_mpz_t(), 4);
        Int dp = (pm4 == 1) ? p : Int(-p);
        out.push_back(dp);
        rest /= dp;
    }
    // rest is now 1, -4, 8 or -8
    if (rest != 1) out.push_back(rest);
    return out;
}

SplitType splitting_type(const Int& p, const QuadField& K) {
    if (!arith::is_prime(p)) throw DomainError("splitting_type expects a prime");
    const Int& D = K.discriminant();
    if (D != 1 && D % p == 0) return SplitType::Ramified;
    return kronecker(D, p) == 1 ? SplitType::Split : SplitType::Inert;
}

// ---------------------------------------------------------------------------
// Class groups by reduced-form enumeration
// ---------------------------------------------------------------------------

namespace {

std::shared_mutex memo_mu;
std::map<long, ClassGroup> memo_clsgrp;
std::map<long, ValidatedReal> memo_l2;

ClassGroup class_group_uncached(const QuadField& K) {
    const Int& Dz = K.discriminant();
    std::int64_t D = to_i64(Dz);
    ClassGroup g;
    // reduced: |b| <= a <= c, and b >= 0 when |b| = a or a = c
    for (std::int64_t a = 1; 3 * a * a <= -D; ++a) {
        std::int64_t bstart = (D % 2 == 0) ? 0 : 1;
        for (std::int64_t b = bstart; b <= a; b += 2) {
            std::int64_t num = b * b - D;
            if (num % (4 * a) != 0) continue;
            std::int64_t c = num / (4 * a);
            if (c < a) continue;
            g.forms.push_back({a, b, c});
            if (b != 0 && b != a && a != c) g.forms.push_back({a, -b, c});
        }
    }
    std::sort(g.forms.begin(), g.forms.end());
    g.h = g.forms.size();
    g.prime_discriminant_factors = prime_discriminant_factors(Dz);
    g.two_rank = static_cast<unsigned>(g.prime_discriminant_factors.size()) - 1;
    return g;
}

} // namespace

ClassGroup class_group(const QuadField& K) {
    if (!K.imaginary()) throw DomainError("class_group implemented for imaginary fields only");
    long key = to_i64(K.discriminant());
    {
        std::shared_lock lock(memo_mu);
        auto it = memo_clsgrp.find(key);
        if (it != memo_clsgrp.end()) return it->second;
    }
    ClassGroup g = class_group_uncached(K);
    {
        std::unique_lock lock(memo_mu);
        memo_clsgrp.emplace(key, g);
    }
    return g;
}

std::uint64_t class_number_analytic(const QuadField& K) {
    const Int& Dz = K.discriminant();
    if (Dz >= -4) throw DomainError("analytic class number formula used only for D < -4");
    std::int64_t D = to_i64(Dz);
    std::int64_t q = -D;
    if (q > 50'000'000) throw ResourceError("analytic class number sum too large");
    // h = -(1/|D|) * sum_{a=1}^{|D|-1} a * chi_D(a), exact for D < -4
    std::int64_t sum = 0;
    for (std::int64_t a = 1; a < q; ++a) sum += a * kronecker(D, a);
    if (sum % q != 0 || sum >= 0)
        throw DomainError("class number character sum is inconsistent");
    return static_cast<std::uint64_t>(-sum / q);
}

// ---------------------------------------------------------------------------
// L(2, chi_D)
// ---------------------------------------------------------------------------

namespace {

// Hurwitz zeta(2, x) for 0 < x <= 1 by Euler-Maclaurin. With N direct terms
// and Bernoulli tail through B12 the truncation error is below
// 2*|B14|*(N+x)^-15; rounding is folded into the caller's budget.
struct Hurwitz2 {
    static constexpr int N = 8;
    // B2, B4, ..., B12
    static constexpr double B[6] = {1.0 / 6,  -1.0 / 30,     1.0 / 42,
                                    -1.0 / 30, 5.0 / 66, -691.0 / 2730};

    static double eval(double x, double& trunc_bound) {
        double s = 0.0;
        for (int n = 0; n < N; ++n) {
            double t = n + x;
            s += 1.0 / (t * t);
        }
        double T = N + x;
        double u = 1.0 / T;
        double u2 = u * u;
        s += u;            // (N+x)^(1-s)/(s-1)
        s += 0.5 * u2;     // (N+x)^(-s)/2
        double up = u * u2; // u^(2j+1), starting j = 1
        for (double b : B) {
            s += b * up;
            up *= u2;
        }
        // up is now u^15: the first omitted term is B14 * (N+x)^-15; doubled
        trunc_bound = 2.0 * (7.0 / 6.0) * up;
        return s;
    }
};

ValidatedReal zeta2_rational() {
    // zeta(2) = pi^2/6
    double v = std::numbers::pi * std::numbers::pi / 6.0;
    return ValidatedReal::with_error(v, 4e-16 * v);
}

ValidatedReal l_value_uncached(const QuadField& K) {
    if (K.is_rationals()) return zeta2_rational();
    std::int64_t D = to_i64(K.discriminant());
    std::uint64_t Q = static_cast<std::uint64_t>(D < 0 ? -D : D);
    if (Q > 100'000'000) {
        // the Hurwitz decomposition costs O(|D|); past this point direct
        // summation with the Polya-Vinogradov tail bound is the cheaper
        // route (the bound it can certify is reported honestly)
        double pv = std::sqrt(static_cast<double>(Q)) * std::log(static_cast<double>(Q));
        double want = std::sqrt(2.0 * pv * 1e12);
        std::uint64_t M = static_cast<std::uint64_t>(std::min(want, 2.0e8)) + 16;
        return l_value_direct(K, M);
    }

    // L(2,chi) = Q^-2 * sum_{a=1}^{Q} chi(a) zeta(2, a/Q), Kahan-compensated
    double sum = 0.0, comp = 0.0, abs_sum = 0.0, trunc_total = 0.0;
    double invQ2 = 1.0 / (static_cast<double>(Q) * static_cast<double>(Q));
    for (std::uint64_t a = 1; a < Q; ++a) {
        int chi = kronecker(D, static_cast<std::int64_t>(a));
        if (chi == 0) continue;
        double tb = 0.0;
        double term = chi * Hurwitz2::eval(static_cast<double>(a) / Q, tb) * invQ2;
        trunc_total += tb * invQ2;
        abs_sum += std::abs(term);
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    // rounding: compensated summation + per-evaluation arithmetic error
    double round_bound = abs_sum * 64.0 * std::numeric_limits<double>::epsilon();
    return ValidatedReal::with_error(sum, trunc_total + round_bound);
}

} // namespace

ValidatedReal l_value(const QuadField& K) {
    if (K.is_rationals()) return zeta2_rational();
    long key = to_i64(K.discriminant());
    {
        std::shared_lock lock(memo_mu);
        auto it = memo_l2.find(key);
        if (it != memo_l2.end()) return it->second;
    }
    ValidatedReal v = l_value_uncached(K);
    {
        std::unique_lock lock(memo_mu);
        memo_l2.emplace(key, v);
    }
    return v;
}

ValidatedReal l_value_direct(const QuadField& K, std::uint64_t terms) {
    if (terms < 8) throw DomainError("need a few terms");
    if (K.is_rationals()) {
        // zeta(2) partial sum, tail bounded by the integral: 1/M
        double s = 0.0, comp = 0.0;
        for (std::uint64_t n = 1; n <= terms; ++n) {
            double term = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
            double y = term - comp;
            double t = s + y;
            comp = (t - s) - y;
            s = t;
        }
        return ValidatedReal::with_error(s + 0.5 / terms, 0.5 / terms + 1e-14);
    }
    std::int64_t D = to_i64(K.discriminant());
    std::uint64_t Q = static_cast<std::uint64_t>(D < 0 ? -D : D);

    // character partial-sum amplitude: exact scan for small moduli, the
    // Polya-Vinogradov bound sqrt(Q) log Q (primitive chi) otherwise
    bool tabulate = Q <= 10'000'000;
    std::vector<int> chi;
    double amp;
    if (tabulate) {
        chi.resize(Q);
        for (std::uint64_t a = 0; a < Q; ++a) chi[a] = kronecker(D, static_cast<std::int64_t>(a));
        std::int64_t run = 0, amp_i = 0;
        for (std::uint64_t a = 1; a <= Q; ++a) {
            run += chi[a % Q];
            amp_i = std::max(amp_i, std::abs(run));
        }
        amp = static_cast<double>(amp_i);
    } else {
        amp = std::sqrt(static_cast<double>(Q)) * std::log(static_cast<double>(Q));
    }

    double s = 0.0, comp = 0.0, abs_sum = 0.0;
    for (std::uint64_t n = 1; n <= terms; ++n) {
        int c = tabulate ? chi[n % Q] : kronecker(D, static_cast<std::int64_t>(n));
        if (c == 0) continue;
        double term = c / (static_cast<double>(n) * static_cast<double>(n));
        abs_sum += std::abs(term);
        double y = term - comp;
        double t = s + y;
        comp = (t - s) - y;
        s = t;
    }
    // Abel summation: the tail is -S(M)/(M+1)^2 plus a telescoping series,
    // both bounded by amp/(M+1)^2
    double tail = 2.0 * amp / (static_cast<double>(terms + 1) * static_cast<double>(terms + 1));
    double round_bound = abs_sum * 16.0 * std::numeric_limits<double>::epsilon();
    return ValidatedReal::with_error(s, tail + round_bound);
}

ValidatedReal zeta_k2(const QuadField& K) {
    if (K.is_rationals()) return zeta2_rational();
    return zeta2_rational() * l_value(K);
}

std::vector<int> genus_character_vector(const QuadField& K, const Int& p) {
    if (!K.imaginary()) throw DomainError("genus characters need an imaginary field");
    const Int& D = K.discriminant();
    if (D % p == 0)
        throw PrimeDividesDiscriminant("prime " + p.get_str() + " divides " + D.get_str());
    std::vector<int> v;
    for (const Int& Di : prime_discriminant_factors(D)) v.push_back(kronecker(Di, p));
    return v;
}

std::vector<int> ramified_genus_vector(const QuadField& K, const Int& p) {
    if (!K.imaginary()) throw DomainError("genus characters need an imaginary field");
    const Int& D = K.discriminant();
    if (D % p != 0) throw DomainError("ramified_genus_vector expects p | D");
    auto factors = prime_discriminant_factors(D);
    std::vector<int> v;
    for (const Int& Di : factors) {
        if (Di % p == 0) {
            // complementary factor evaluated at p
            Int comp = D / Di;
            v.push_back(comp == 1 ? 1 : kronecker(comp, p));
        } else {
            v.push_back(kronecker(Di, p));
        }
    }
    return v;
}

MemoSnapshot memo_snapshot() {
    std::shared_lock lock(memo_mu);
    return {memo_clsgrp, memo_l2};
}

void memo_seed(const MemoSnapshot& snap) {
    std::unique_lock lock(memo_mu);
    for (const auto& [k, v] : snap.class_groups) memo_clsgrp.insert_or_assign(k, v);
    for (const auto& [k, v] : snap.l_values) memo_l2.insert_or_assign(k, v);
}

void memo_clear() {
    std::unique_lock lock(memo_mu);
    memo_clsgrp.clear();
    memo_l2.clear();
}

} // namespace systole::quadfield

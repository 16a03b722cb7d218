#include "systole/arith.hpp"

#include <algorithm>
#include <mutex>

namespace systole::arith {

namespace {

// Jacobi symbol (a|m) for odd m > 0, a already reduced to 0 <= a < m.
template <typename T>
int jacobi_odd(T a, T m) {
    int t = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            T r = m % 8;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, m);
        if (a % 4 == 3 && m % 4 == 3) t = -t;
        a %= m;
    }
    return m == 1 ? t : 0;
}

} // namespace

int kronecker(std::int64_t a, std::int64_t n) noexcept {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int res = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) res = -res;
    }
    while (n % 2 == 0) {
        n /= 2;
        if (a % 2 == 0) return 0;
        std::int64_t r = a % 8;
        if (r < 0) r += 8;
        if (r == 3 || r == 5) res = -res;
    }
    // n odd and positive now
    std::int64_t am = a % n;
    if (am < 0) am += n;
    return res * jacobi_odd<std::int64_t>(am, n);
}

int kronecker(const Int& a, const Int& n) {
    if (fits_i64(a) && fits_i64(n)) return kronecker(to_i64(a), to_i64(n));
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

// ---------------------------------------------------------------------------
// Prime sieve. One process-wide table of primes, extended on demand by
// segmented sieving, capped by a configurable ceiling.
// ---------------------------------------------------------------------------

namespace {

struct Sieve {
    std::mutex mu;
    std::uint64_t ceiling = 100'000'000;
    std::uint64_t sieved_to = 0; // primes < sieved_to are all present
    std::vector<std::uint64_t> primes;

    // Extend the table so that all primes < want are known.
    void extend(std::uint64_t want) {
        if (want <= sieved_to) return;
        if (want > ceiling)
            throw ResourceError("prime request " + std::to_string(want) +
                                " exceeds sieve ceiling " + std::to_string(ceiling));
        if (sieved_to < 2) {
            std::uint64_t hi = std::min<std::uint64_t>(std::max<std::uint64_t>(want, 1024), ceiling);
            primes.clear();
            std::vector<bool> comp(hi, false);
            for (std::uint64_t i = 2; i * i < hi; ++i)
                if (!comp[i])
                    for (std::uint64_t j = i * i; j < hi; j += i) comp[j] = true;
            for (std::uint64_t i = 2; i < hi; ++i)
                if (!comp[i]) primes.push_back(i);
            sieved_to = hi;
        }
        // Segmented extension, each segment end capped by sieved_to^2 so the
        // base primes always cover the segment's square root.
        while (sieved_to < want) {
            std::uint64_t lo = sieved_to;
            std::uint64_t cap = lo >= (1ull << 32) ? UINT64_MAX : lo * lo;
            std::uint64_t hi = std::min({std::max(want, 2 * lo), cap, ceiling});
            std::vector<bool> comp(hi - lo, false);
            for (std::uint64_t p : primes) {
                if (p * p >= hi) break;
                std::uint64_t start = ((lo + p - 1) / p) * p;
                if (start < p * p) start = p * p;
                for (std::uint64_t j = start; j < hi; j += p) comp[j - lo] = true;
            }
            for (std::uint64_t i = lo; i < hi; ++i)
                if (!comp[i - lo]) primes.push_back(i);
            sieved_to = hi;
        }
    }
};

Sieve& sieve() {
    static Sieve s;
    return s;
}

Int factor_ceiling_value = Int("1000000000000");
std::mutex factor_mu;

} // namespace

void set_sieve_ceiling(std::uint64_t ceiling) {
    std::lock_guard lock(sieve().mu);
    sieve().ceiling = ceiling;
}

std::uint64_t sieve_ceiling() {
    std::lock_guard lock(sieve().mu);
    return sieve().ceiling;
}

std::uint64_t nth_prime(std::uint64_t n) {
    if (n == 0) throw DomainError("nth_prime is 1-based");
    auto& s = sieve();
    std::lock_guard lock(s.mu);
    while (s.primes.size() < n) {
        std::uint64_t want = s.sieved_to < 1024 ? 1024 : s.sieved_to * 2;
        if (s.sieved_to >= s.ceiling)
            throw ResourceError("nth_prime(" + std::to_string(n) + ") exceeds sieve ceiling");
        s.extend(std::min(want, s.ceiling));
    }
    return s.primes[n - 1];
}

std::vector<std::uint64_t> primes_below(std::uint64_t bound) {
    auto& s = sieve();
    std::lock_guard lock(s.mu);
    s.extend(bound);
    auto end = std::lower_bound(s.primes.begin(), s.primes.end(), bound);
    return {s.primes.begin(), end};
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    Int z(static_cast<unsigned long>(n));
    return mpz_probab_prime_p(z.get_mpz_t(), 32) != 0;
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

std::uint64_t next_prime_above(std::uint64_t n) {
    std::uint64_t c = n + 1;
    if (c <= 2) return 2;
    if (c % 2 == 0) ++c;
    std::uint64_t cap = sieve_ceiling();
    for (; c <= cap; c += 2)
        if (is_prime(c)) return c;
    throw ResourceError("next_prime_above exceeded sieve ceiling");
}

// ---------------------------------------------------------------------------

ResidueClass crt(const std::vector<ResidueClass>& classes) {
    if (classes.empty()) throw DomainError("crt of empty list");
    Int r = classes[0].residue, m = classes[0].modulus;
    for (std::size_t i = 1; i < classes.size(); ++i) {
        const Int& r2 = classes[i].residue;
        const Int& m2 = classes[i].modulus;
        Int g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t(), m2.get_mpz_t());
        Int diff = r2 - r;
        if (diff % g != 0)
            throw IncompatibleCongruences("congruences contradict on gcd " + g.get_str());
        Int lcm = m / g * m2;
        // r + m * ((diff/g * s) mod (m2/g)) solves both congruences
        Int step = (diff / g) * s;
        Int m2g = m2 / g;
        mpz_mod(step.get_mpz_t(), step.get_mpz_t(), m2g.get_mpz_t());
        r = r + m * step;
        m = lcm;
        mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
    }
    return ResidueClass(r, m);
}

void set_factor_ceiling(const Int& ceiling) {
    std::lock_guard lock(factor_mu);
    factor_ceiling_value = ceiling;
}

std::vector<std::pair<Int, unsigned>> factor(const Int& n) {
    if (n < 1) throw DomainError("factor expects n >= 1");
    {
        std::lock_guard lock(factor_mu);
        if (n > factor_ceiling_value)
            throw ResourceError("factor input " + n.get_str() + " exceeds ceiling " +
                                factor_ceiling_value.get_str());
    }
    std::vector<std::pair<Int, unsigned>> out;
    Int m = n;
    for (Int p = 2; p * p <= m; p == 2 ? p = 3 : p += 2) {
        if (m % p == 0) {
            unsigned e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
    }
    if (m > 1) out.emplace_back(m, 1);
    return out;
}

bool is_squarefree(const Int& n) {
    if (n == 0) return false;
    Int m = abs(n);
    if (m % 4 == 0) return false;
    for (const auto& [p, e] : factor(m))
        if (e > 1) return false;
    return true;
}

Int isqrt(const Int& n) {
    if (n < 0) throw DomainError("isqrt of negative");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(const Int& n) {
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

} // namespace systole::arith

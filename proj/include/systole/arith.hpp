#ifndef SYSTOLE_ARITH_HPP
#define SYSTOLE_ARITH_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "systole/numeric.hpp"

namespace systole::arith {

// A congruence "residue mod modulus" with 0 <= residue < modulus.
struct ResidueClass {
    Int residue;
    Int modulus;

    ResidueClass(Int r, Int m) : residue(std::move(r)), modulus(std::move(m)) {
        if (modulus <= 0) throw DomainError("residue class needs a positive modulus");
        mpz_mod(residue.get_mpz_t(), residue.get_mpz_t(), modulus.get_mpz_t());
    }

    bool contains(const Int& n) const {
        Int r;
        mpz_mod(r.get_mpz_t(), n.get_mpz_t(), modulus.get_mpz_t());
        return r == residue;
    }

    friend bool operator==(const ResidueClass& a, const ResidueClass& b) {
        return a.residue == b.residue && a.modulus == b.modulus;
    }
};

// Kronecker symbol (a|n), fully extended: n = 0, n < 0 and even n all defined.
int kronecker(std::int64_t a, std::int64_t n) noexcept;
int kronecker(const Int& a, const Int& n);

// Prime generation by segmented sieve with a configurable ceiling.
// Requests past the ceiling raise ResourceError rather than degrade.
void set_sieve_ceiling(std::uint64_t ceiling);
std::uint64_t sieve_ceiling();

// p_1 = 2.
std::uint64_t nth_prime(std::uint64_t n);

// All primes p < bound, ascending.
std::vector<std::uint64_t> primes_below(std::uint64_t bound);

bool is_prime(std::uint64_t n);
bool is_prime(const Int& n);

// Smallest prime strictly greater than n (guarded by the sieve ceiling).
std::uint64_t next_prime_above(std::uint64_t n);

// Combine congruences; moduli need not be coprime but must agree on shared
// factors. Throws IncompatibleCongruences otherwise.
ResidueClass crt(const std::vector<ResidueClass>& classes);

// Trial-division factorization, ascending primes with multiplicities.
// Inputs above the factoring ceiling (default 10^12) raise ResourceError.
void set_factor_ceiling(const Int& ceiling);
std::vector<std::pair<Int, unsigned>> factor(const Int& n);

bool is_squarefree(const Int& n);

// Largest integer s with s^2 <= n; exact.
Int isqrt(const Int& n);
bool is_square(const Int& n);

} // namespace systole::arith

#endif

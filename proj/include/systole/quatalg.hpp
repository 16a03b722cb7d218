#ifndef SYSTOLE_QUATALG_HPP
#define SYSTOLE_QUATALG_HPP

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "systole/quadfield.hpp"

namespace systole::quatalg {

using quadfield::QuadField;
using quadfield::SplitType;

// Prime ideals are carried symbolically: the rational prime below plus a tag
// distinguishing the two conjugates above a split prime. Norms and pairing
// structure are all the covolume formulas ever need.
enum class IdealTag { First, Second, Unique };

struct PrimeIdeal {
    Int p;
    IdealTag tag;

    friend bool operator==(const PrimeIdeal& a, const PrimeIdeal& b) {
        return a.p == b.p && a.tag == b.tag;
    }
    friend bool operator<(const PrimeIdeal& a, const PrimeIdeal& b) {
        if (a.p != b.p) return a.p < b.p;
        return static_cast<int>(a.tag) < static_cast<int>(b.tag);
    }
};

// Quaternion algebra over Q by its finite ramification set; ram_inf true
// means ramified at the real place (definite). The Fuchsian constructions
// here always use indefinite algebras (ram_inf = false).
struct QAlgQ {
    std::set<Int> ram_f;
    bool ram_inf = false;

    friend bool operator==(const QAlgQ& a, const QAlgQ& b) {
        return a.ram_f == b.ram_f && a.ram_inf == b.ram_inf;
    }
    friend bool operator<(const QAlgQ& a, const QAlgQ& b) {
        if (a.ram_inf != b.ram_inf) return a.ram_inf < b.ram_inf;
        return a.ram_f < b.ram_f;
    }
};

// Quaternion algebra over an imaginary quadratic field.
struct QAlgK {
    QuadField field = QuadField::rationals();
    std::vector<PrimeIdeal> ram_f; // kept sorted, no duplicates

    friend bool operator==(const QAlgK& a, const QAlgK& b) {
        return a.field == b.field && a.ram_f == b.ram_f;
    }
};

// Sorted/deduplicated constructor; throws DomainError on duplicate ideals.
QAlgK make_kalg(const QuadField& field, std::vector<PrimeIdeal> ram);

// Algebra ramified exactly at the conjugate pairs above the given split
// rational primes (throws if some p is not split in the field).
QAlgK split_pair_algebra(const QuadField& field, const std::vector<Int>& split_primes);

Int ideal_norm(const PrimeIdeal& ideal, const QuadField& field);

// Every entry consistent with the field's splitting behaviour?
bool entries_valid(const QAlgK& alg);

// Hilbert reciprocity parity check (plus entry validity for QAlgK).
bool is_admissible(const QAlgQ& alg);
bool is_admissible(const QAlgK& alg);

// Type number of an indefinite rational quaternion algebra: always 1.
unsigned type_number(const QAlgQ& alg);

// Type number over the quadratic field, computed from genus theory:
// 2^two_rank / 2^(F2-rank of the ramified primes' genus vectors).
std::uint64_t type_number_k(const QAlgK& alg);

// Is rational x a square in Q_p / in the completion k_p?
bool is_square_in_qp(const Int& x, const Int& p);
bool is_square_in_kp(const Int& x, const Int& p, const QuadField& field);

// Does k(sqrt(x)) embed into the algebra? True iff no ramified prime splits
// in k(sqrt(x))/k. Throws NotQuadratic if x is already a square in k.
bool embeds_quadratic(const QAlgK& alg, const Int& x);

// Certifies absence of 2- and 3-torsion via the two cyclotomic quadratic
// extensions; inconclusive (FieldExcluded) over Q(i) and Q(sqrt(-3)).
bool torsion_free_certificate(const QAlgK& alg);

// If Ram_f(A) is a disjoint union of conjugate pairs above split rational
// primes, returns those primes (ascending); otherwise nullopt.
std::optional<std::vector<Int>> split_pair_base(const QAlgK& alg);

// A = B tensor k, decided by ramification: the split-pair base of A must be
// contained in ram_f(B) and everything else in ram_f(B) must be inert or
// ramified in k.
bool compatible(const QAlgQ& B, const QAlgK& A);

// Text grammar: Q{13,2} / K[-43]{13+,13-} / K[-4]{2r} / K[-43]{3i}.
std::string to_string(const QAlgQ& alg);
std::string to_string(const QAlgK& alg);
QAlgQ parse_qalg_q(std::string_view text);
QAlgK parse_qalg_k(std::string_view text);

} // namespace systole::quatalg

#endif

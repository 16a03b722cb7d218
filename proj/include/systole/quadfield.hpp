#ifndef SYSTOLE_QUADFIELD_HPP
#define SYSTOLE_QUADFIELD_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "systole/arith.hpp"
#include "systole/numeric.hpp"

namespace systole::quadfield {

enum class SplitType { Split, Inert, Ramified };

const char* to_string(SplitType t);

// A quadratic field Q(sqrt(d)) carried by its squarefree part d and
// fundamental discriminant D. The rational field rides along as the
// degenerate D = 1 instance so base-field code shares one interface.
class QuadField {
  public:
    // d squarefree, d != 0, 1; throws NotSquarefree.
    static QuadField from_squarefree(const Int& d);
    // Accepts either a squarefree d or a fundamental discriminant D.
    static QuadField from_d_or_discriminant(const Int& v);
    static QuadField rationals();

    const Int& squarefree_part() const { return d_; }
    const Int& discriminant() const { return D_; }
    bool imaginary() const { return D_ < 0; }
    bool is_rationals() const { return D_ == 1; }

    friend bool operator==(const QuadField& a, const QuadField& b) { return a.D_ == b.D_; }
    friend bool operator<(const QuadField& a, const QuadField& b) { return a.D_ < b.D_; }

  private:
    QuadField(Int d, Int D) : d_(std::move(d)), D_(std::move(D)) {}
    Int d_;
    Int D_;
};

// Reduced binary quadratic form a x^2 + b x y + c y^2 of discriminant D < 0.
struct Form {
    std::int64_t a, b, c;
    friend bool operator==(const Form& f, const Form& g) {
        return f.a == g.a && f.b == g.b && f.c == g.c;
    }
    friend bool operator<(const Form& f, const Form& g) {
        if (f.a != g.a) return f.a < g.a;
        if (f.b != g.b) return f.b < g.b;
        return f.c < g.c;
    }
};

struct ClassGroup {
    std::uint64_t h = 0;
    std::vector<Form> forms;
    unsigned two_rank = 0;
    std::vector<Int> prime_discriminant_factors;
};

bool is_fundamental_discriminant(const Int& D);

// Unique factorization of a fundamental discriminant into prime
// discriminants (-4, 8, -8, p for p = 1 mod 4, -p for p = 3 mod 4).
std::vector<Int> prime_discriminant_factors(const Int& D);

SplitType splitting_type(const Int& p, const QuadField& K);

// Exhaustive reduced-form enumeration; requires imaginary K.
ClassGroup class_group(const QuadField& K);

// Finite character-sum class number formula, exact; requires D < -4.
// Independent of the form enumeration route.
std::uint64_t class_number_analytic(const QuadField& K);

// L(2, chi_D) by the Hurwitz-zeta / Euler-Maclaurin decomposition,
// certified absolute error (<= 1e-12 for |D| <= 1e8).
ValidatedReal l_value(const QuadField& K);

// Independent route: direct character sum to `terms` with an Abel-summation
// tail bound from the character's exact partial-sum amplitude.
ValidatedReal l_value_direct(const QuadField& K, std::uint64_t terms);

// zeta_K(2) = zeta(2) * L(2, chi_D), propagated bound.
ValidatedReal zeta_k2(const QuadField& K);

// Genus character values (kronecker(D_i, p)) for p not dividing D.
std::vector<int> genus_character_vector(const QuadField& K, const Int& p);

// Genus vector of the ambiguous class of the unique prime above a ramified
// p | D, via the complementary discriminant factorization.
std::vector<int> ramified_genus_vector(const QuadField& K, const Int& p);

// Memo table shared by class_group / l_value: concurrent reads, serialized
// writes. Snapshot/seed exist so the CLI disk cache can warm and persist it.
struct MemoSnapshot {
    std::map<long, ClassGroup> class_groups;   // keyed by D
    std::map<long, ValidatedReal> l_values;    // keyed by D
};

MemoSnapshot memo_snapshot();
void memo_seed(const MemoSnapshot& snap);
void memo_clear();

} // namespace systole::quadfield

#endif

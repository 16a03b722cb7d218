#ifndef SYSTOLE_COVOLUME_HPP
#define SYSTOLE_COVOLUME_HPP

#include <optional>
#include <string>

#include "systole/quatalg.hpp"

namespace systole::covolume {

using quatalg::QAlgK;
using quatalg::QAlgQ;
using quadfield::QuadField;

// An exact hyperbolic area: a positive rational multiple of pi. Fuchsian
// coareas over Q are always of this shape, which makes spectrum equality an
// exact comparison rather than a float one.
struct PiArea {
    Rat coefficient;

    explicit PiArea(Rat c) : coefficient(std::move(c)) {
        if (coefficient <= 0) throw DomainError("PiArea must be positive");
    }

    double value() const;
    std::string str() const; // "4*pi", "1/3*pi"
    static PiArea parse(const std::string& text);

    friend bool operator==(const PiArea& a, const PiArea& b) {
        return a.coefficient == b.coefficient;
    }
    friend bool operator!=(const PiArea& a, const PiArea& b) { return !(a == b); }
    friend bool operator<(const PiArea& a, const PiArea& b) {
        return a.coefficient < b.coefficient;
    }
    friend bool operator<=(const PiArea& a, const PiArea& b) {
        return a.coefficient <= b.coefficient;
    }
    friend PiArea operator*(const PiArea& a, const Rat& r) { return PiArea(a.coefficient * r); }
};

using ValidatedVolume = ValidatedReal;

// A commensurability class of arithmetic Kleinian groups, identified by its
// field and quaternion algebra, with the class volume covol(Gamma_O^1).
struct CommClass {
    QuadField field;
    QAlgK algebra;
    ValidatedVolume volume;
};

CommClass make_class(const QAlgK& algebra);

// coarea(Gamma_O^1) for indefinite B over Q: (pi/3) * prod (p - 1).
PiArea fuchsian_coarea_norm1(const QAlgQ& B);

// coarea(Gamma_O) for indefinite B over Q with nonempty ramification:
// (pi/6) * prod (p - 1)/2. The empty set is refused (EmptyRamification):
// the formula's value there disagrees with the modular group's coarea.
PiArea fuchsian_coarea_maximal(const QAlgQ& B);

// covol(Gamma_O^1) = |D|^(3/2) zeta_k(2) / (4 pi^2) * prod (N(P) - 1).
ValidatedVolume kleinian_covol_norm1(const QAlgK& A);

// covol(Gamma_O) = |D|^(3/2) zeta_k(2) / (8 pi^2 t(A)) * prod (N(P) - 1)/2.
ValidatedVolume kleinian_covol_maximal(const QAlgK& A);

// [Gamma_O : Gamma_O^1] as an exact rational: 2^(|Ram_f|+1) * t(A);
// the transcendental factors of the two covolumes cancel symbolically.
Rat generalized_index(const QAlgK& A);

// sys_1(M) < log(Vol(M)); DomainError for vol <= 1 where the bound is vacuous.
double sys1_upper(double vol);

// sysg(M) >= e^((1/2 - eps) sys_1(M)) for sufficiently large systole; the
// caller acknowledges that hypothesis explicitly.
double genus_lower_from_sys1(double sys1, double eps, bool assume_systole_large);

// Genus range allowed by 2 pi (g-1) <= area <= 4 pi (g-1), clamped to g >= 2.
struct GenusRange {
    long g_min = 0;
    long g_max = -1;
    bool empty() const { return g_min > g_max; }
};

GenusRange genus_range_from_area(double area);
GenusRange genus_range_from_area(const PiArea& area); // exact boundaries

} // namespace systole::covolume

#endif

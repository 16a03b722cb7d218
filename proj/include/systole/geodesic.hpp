#ifndef SYSTOLE_GEODESIC_HPP
#define SYSTOLE_GEODESIC_HPP

#include "systole/covolume.hpp"

namespace systole::geodesic {

using covolume::CommClass;
using covolume::PiArea;
using quatalg::QAlgK;
using quatalg::QAlgQ;
using quadfield::QuadField;

struct TgsResult {
    bool ok = false;
    std::vector<Int> base_primes; // the split rational primes under the pairs
    explicit operator bool() const { return ok; }
};

// Does the class carry totally geodesic surfaces? True iff Ram_f(A) is a
// disjoint union of conjugate pairs above split rational primes (vacuously
// true for empty ramification, the Bianchi case).
TgsResult has_tgs(const QAlgK& A);

enum class SpectrumKind { Norm1, Maximal };

struct EnumOptions {
    SpectrumKind kind = SpectrumKind::Norm1;
    // Drop the matrix algebra witness (the noncocompact Fuchsian class).
    bool cocompact_only = false;
};

// All admissible indefinite B compatible with A whose coarea is <= max_area,
// sorted by (area, ramification set). Complete below the bound.
std::vector<QAlgQ> enumerate_compatible(const QAlgK& A, const PiArea& max_area,
                                        const EnumOptions& opts = {});

struct SpectrumEntry {
    PiArea area;
    std::vector<QAlgQ> witnesses;
};

struct TgSpectrum {
    std::vector<SpectrumEntry> entries; // strictly increasing areas
    std::uint64_t requested_n = 0;
    bool truncated = false; // enumeration hit the configured prime ceiling
};

// First N distinct compatible-Fuchsian areas with all witnesses at each.
TgSpectrum tg_spectrum(const QAlgK& A, std::uint64_t N, const EnumOptions& opts = {});

// (pi/24) * prod (p_i - 1)/2 over the base primes.
PiArea tg_area_lower(const QAlgK& A);

struct UpperWitness {
    QAlgQ algebra;
    PiArea area;
};

// The constructive witness: B ramified at the base primes, padded by the
// smallest non-split prime when the base has odd size.
UpperWitness tg_area_upper_witness(const QAlgK& A);

struct AreaBounds {
    PiArea lower;
    std::optional<UpperWitness> upper_witness;
    Rat c_ell; // = 1/24 over Q
};

AreaBounds area_bounds(const QAlgK& A);

// Smallest split prime p with (pi/24)(p-1)/2 > X; returns the class ramified
// at the two primes above p. Guarantees tg_area_lower > X.
CommClass large_area_class(const QuadField& K, double X);

} // namespace systole::geodesic

#endif

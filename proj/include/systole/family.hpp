#ifndef SYSTOLE_FAMILY_HPP
#define SYSTOLE_FAMILY_HPP

#include <tuple>

#include "systole/geodesic.hpp"

namespace systole::family {

using covolume::CommClass;
using geodesic::TgSpectrum;
using quadfield::QuadField;

// Which rational primes must split / stay inert in the searched fields
// Q(sqrt(-q)). Fields are restricted to prime discriminants: q prime,
// q = 3 mod 4 (the 2-part of a prescription refines this to a mod-8 class).
struct SplitPrescription {
    std::set<Int> split_primes;
    std::set<Int> inert_primes;
};

// The residue classes a mod C (C = 4 * product of prescribed primes) such
// that any prime q = a mod C realizes the prescription. Derived by inverting
// the Kronecker conditions prime by prime and combining with crt.
std::vector<arith::ResidueClass> residue_classes(const SplitPrescription& p);

// The `count` smallest admissible primes q > min_q, each re-verified by
// direct splitting tests (residue classes are an accelerator, not a proof).
// q = 3 is excluded so no field lands inside Q(sqrt(-3)).
std::vector<QuadField> find_fields(const SplitPrescription& p, std::uint64_t count,
                                   std::uint64_t min_q = 0);

struct FamilyReport {
    std::vector<CommClass> members; // ordered by |discriminant|
    std::uint64_t N = 0;
    TgSpectrum shared_spectrum;
    std::vector<ValidatedReal> volumes;
    std::vector<double> sys1_bounds;   // log(Vol)
    std::vector<double> linnik_ratios; // q_n / (n log 2n)
    Int split_prime;
    Int inert_ceiling;
    Int sufficient_inert_ceiling; // 2^10 * 3^2 * p_(N+1): ceilings above this need no spectrum verification
    bool volumes_monotone = true;
    std::vector<std::string> rejected; // members discarded with a diagnostic
};

// Prescribed-splitting family: fields where `split_prime` splits and all other
// primes below `inert_ceiling` are inert; algebras ramified at the pair
// above the split prime; exact spectrum equality verified to depth N.
// Throws VerificationFailed with the first differing area when the ceiling
// is too small for the requested depth.
FamilyReport build_family(std::uint64_t N, const Int& inert_ceiling, std::uint64_t count,
                          const Int& split_prime = Int(13), unsigned jobs = 1);

// (n, q_n, q_n / (n log 2n)) rows; the max ratio is the empirical constant.
std::vector<std::tuple<std::uint64_t, Int, double>> linnik_report(
    const std::vector<QuadField>& fields);

struct VolumeBoundReport {
    double c1_fit = 0.0;  // max Vol(M_n) / (n log 2n)^(3/2)
    bool all_within = true;
    bool zeta_bound_ok = true; // zeta_k(2) < 3 for every member
};

VolumeBoundReport volume_bound_report(const FamilyReport& report);

} // namespace systole::family

#endif

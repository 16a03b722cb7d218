#ifndef SYSTOLE_NUMERIC_HPP
#define SYSTOLE_NUMERIC_HPP

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "systole/errors.hpp"

namespace systole {

// Exact integers and rationals. All arithmetic that feeds exact invariants
// (areas, indices, residue classes) goes through these; doubles appear only
// inside ValidatedReal.
using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// "a" or "a/b", canonical lowest terms.
inline std::string rat_str(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rat parse_rat(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw UsageError("bad rational: " + s);
    r.canonicalize();
    return r;
}

inline bool fits_i64(const Int& z) {
    static_assert(sizeof(long) == 8, "64-bit long expected");
    return z.fits_slong_p();
}

inline std::int64_t to_i64(const Int& z) {
    if (!z.fits_slong_p()) throw ResourceError("integer exceeds 64-bit range: " + z.get_str());
    return static_cast<std::int64_t>(z.get_si());
}

// A double with a certified absolute error bound: the true value lies in
// [value - err, value + err]. Propagation is outward (never optimistic);
// every operation widens the bound by a few ulps for the rounding of the
// operation itself.
struct ValidatedReal {
    double value = 0.0;
    double err = 0.0;

    static constexpr double kUlps = 4.0;

    static ValidatedReal exact(double v) { return {v, 0.0}; }

    static ValidatedReal with_error(double v, double e) { return {v, std::abs(e)}; }

    double lower() const { return value - err; }
    double upper() const { return value + err; }

    ValidatedReal& widen_ulp() {
        err += kUlps * std::numeric_limits<double>::epsilon() * std::abs(value);
        return *this;
    }

    friend ValidatedReal operator+(const ValidatedReal& a, const ValidatedReal& b) {
        ValidatedReal r{a.value + b.value, a.err + b.err};
        return r.widen_ulp();
    }

    friend ValidatedReal operator-(const ValidatedReal& a, const ValidatedReal& b) {
        ValidatedReal r{a.value - b.value, a.err + b.err};
        return r.widen_ulp();
    }

    friend ValidatedReal operator*(const ValidatedReal& a, const ValidatedReal& b) {
        ValidatedReal r{a.value * b.value,
                        std::abs(a.value) * b.err + std::abs(b.value) * a.err + a.err * b.err};
        return r.widen_ulp();
    }

    // Division by a validated real bounded away from zero.
    friend ValidatedReal operator/(const ValidatedReal& a, const ValidatedReal& b) {
        double bl = std::abs(b.value) - b.err;
        if (bl <= 0.0) throw DomainError("validated division by interval containing zero");
        ValidatedReal r{a.value / b.value,
                        (a.err + std::abs(a.value / b.value) * b.err) / bl};
        return r.widen_ulp();
    }

    // Do the two certified intervals intersect?
    bool consistent_with(const ValidatedReal& o) const {
        return lower() <= o.upper() && o.lower() <= upper();
    }
};

} // namespace systole

#endif

#include "systole/covolume.hpp"

#include <cmath>
#include <numbers>

namespace systole::covolume {

using quatalg::ideal_norm;
using quatalg::IdealTag;

double PiArea::value() const { return coefficient.get_d() * std::numbers::pi; }

std::string PiArea::str() const { return rat_str(coefficient) + "*pi"; }

PiArea PiArea::parse(const std::string& text) {
    auto star = text.rfind("*pi");
    if (star == std::string::npos || star + 3 != text.size())
        throw UsageError("expected '<rational>*pi', got: " + text);
    return PiArea(parse_rat(text.substr(0, star)));
}

PiArea fuchsian_coarea_norm1(const QAlgQ& B) {
    if (!quatalg::is_admissible(B) || B.ram_inf)
        throw DomainError("coarea needs an admissible indefinite algebra");
    Rat c = make_rat(1, 3);
    for (const Int& p : B.ram_f) c *= Rat(p - 1);
    return PiArea(c);
}

PiArea fuchsian_coarea_maximal(const QAlgQ& B) {
    if (!quatalg::is_admissible(B) || B.ram_inf)
        throw DomainError("coarea needs an admissible indefinite algebra");
    if (B.ram_f.empty())
        throw EmptyRamification("maximal coarea formula is refused for the matrix algebra");
    Rat c = make_rat(1, 6);
    for (const Int& p : B.ram_f) c *= make_rat(Int(p - 1), 2);
    return PiArea(c);
}

namespace {

// |D|^(3/2) * zeta_k(2) / (4 pi^2), the empty-ramification (Bianchi) volume.
ValidatedVolume base_volume(const QuadField& K) {
    ValidatedReal z = quadfield::zeta_k2(K);
    double ad = std::abs(K.discriminant().get_d());
    double pow32 = ad * std::sqrt(ad);
    double denom = 4.0 * std::numbers::pi * std::numbers::pi;
    ValidatedReal scale = ValidatedReal::with_error(pow32 / denom, 4e-16 * pow32 / denom);
    return z * scale;
}

Int ram_norm_product(const QAlgK& A) {
    Int prod = 1;
    for (const auto& ideal : A.ram_f) prod *= ideal_norm(ideal, A.field) - 1;
    return prod;
}

} // namespace

ValidatedVolume kleinian_covol_norm1(const QAlgK& A) {
    if (!quatalg::is_admissible(A)) throw DomainError("covolume of inadmissible algebra");
    ValidatedReal v = base_volume(A.field);
    Int prod = ram_norm_product(A);
    double p = prod.get_d();
    return v * ValidatedReal::with_error(p, p * 4e-16);
}

ValidatedVolume kleinian_covol_maximal(const QAlgK& A) {
    if (!quatalg::is_admissible(A)) throw DomainError("covolume of inadmissible algebra");
    // Eq-form: norm1 value / (2^(|Ram_f|+1) * t(A))
    ValidatedReal v = kleinian_covol_norm1(A);
    Rat idx = generalized_index(A);
    double f = idx.get_d();
    return v / ValidatedReal::with_error(f, f * 4e-16);
}

Rat generalized_index(const QAlgK& A) {
    if (!quatalg::is_admissible(A)) throw DomainError("index of inadmissible algebra");
    Int pow2 = 1;
    pow2 <<= (A.ram_f.size() + 1);
    return Rat(pow2 * Int(quatalg::type_number_k(A)));
}

CommClass make_class(const QAlgK& algebra) {
    return CommClass{algebra.field, algebra, kleinian_covol_norm1(algebra)};
}

double sys1_upper(double vol) {
    if (!(vol > 1.0)) throw DomainError("sys1 bound log(vol) is vacuous for vol <= 1");
    return std::log(vol);
}

double genus_lower_from_sys1(double sys1, double eps, bool assume_systole_large) {
    if (!assume_systole_large)
        throw DomainError("bound requires acknowledging the large-systole hypothesis");
    if (!(sys1 > 0)) throw DomainError("sys1 must be positive");
    if (!(eps > 0.0 && eps < 0.5)) throw DomainError("eps must lie in (0, 1/2)");
    return std::exp((0.5 - eps) * sys1);
}

GenusRange genus_range_from_area(double area) {
    if (!(area > 0)) throw DomainError("area must be positive");
    // area/(4 pi) + 1 <= g <= area/(2 pi) + 1, g >= 2; snap near-integer
    // boundaries so exact multiples of pi are not lost to rounding.
    double lo = area / (4.0 * std::numbers::pi) + 1.0;
    double hi = area / (2.0 * std::numbers::pi) + 1.0;
    auto snap = [](double x) {
        double r = std::round(x);
        return std::abs(x - r) < 1e-9 * std::max(1.0, std::abs(x)) ? r : x;
    };
    GenusRange out;
    out.g_min = std::max<long>(2, static_cast<long>(std::ceil(snap(lo))));
    out.g_max = static_cast<long>(std::floor(snap(hi)));
    return out;
}

GenusRange genus_range_from_area(const PiArea& area) {
    // exact: coefficient/4 + 1 <= g <= coefficient/2 + 1
    Rat lo = area.coefficient / 4 + 1;
    Rat hi = area.coefficient / 2 + 1;
    Int gmin, gmax;
    mpz_cdiv_q(gmin.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
    mpz_fdiv_q(gmax.get_mpz_t(), hi.get_num().get_mpz_t(), hi.get_den().get_mpz_t());
    GenusRange out;
    out.g_min = std::max<long>(2, to_i64(gmin));
    out.g_max = to_i64(gmax);
    return out;
}

} // namespace systole::covolume

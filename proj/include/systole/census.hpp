#ifndef SYSTOLE_CENSUS_HPP
#define SYSTOLE_CENSUS_HPP

#include "systole/geodesic.hpp"

namespace systole::census {

using covolume::CommClass;
using covolume::PiArea;
using quadfield::QuadField;

struct CensusRow {
    double V = 0.0;
    std::uint64_t n_total = 0;
    std::uint64_t n_tg = 0;
    Rat x_coefficient; // the area threshold, as a multiple of pi
    Rat ratio;         // exact n_tg / n_total
};

// Every commensurability class over K with class volume < Vmax, sorted by
// volume. Complete: the volume is the Bianchi base times a product of
// (N(P) - 1) >= 1 factors, with only the at-most-two norm-2 ideals
// contributing factor 1, so the search space below any bound is finite.
std::vector<CommClass> enumerate_classes(const QuadField& K, double Vmax, unsigned jobs = 1);

// One row per grid volume: total class count, count of classes carrying a
// totally geodesic surface of area < x, and their exact ratio.
std::vector<CensusRow> ratio_table(const QuadField& K, const std::vector<double>& Vgrid,
                                   const PiArea& x, unsigned jobs = 1);

// Area threshold forced by a genus threshold: sysg(M) < g implies some
// surface of area < 4 pi (g - 1).
PiArea genus_threshold_translate(double x_genus);

} // namespace systole::census

#endif

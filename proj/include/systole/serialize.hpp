#ifndef SYSTOLE_SERIALIZE_HPP
#define SYSTOLE_SERIALIZE_HPP

#include <string>

#include <json.hpp>

#include "systole/census.hpp"
#include "systole/family.hpp"

namespace systole::serialize {

using nlohmann::json;

// "13+", "13-", "3i", "2r"
std::string ideal_str(const quatalg::PrimeIdeal& ideal, const quadfield::QuadField& field);

json ram_array(const quatalg::QAlgK& alg);

// {"class": {"D": -43, "ram": ["13+","13-"]}, "V": ..., "V_err": ..., "gen_index": "8"}
json covolume_report(const covolume::CommClass& cls);

// {"D": -43, "ram": [...], "spectrum": [{"area": "4*pi", "witnesses": ["Q{13,2}"]}, ...]}
json spectrum_report(const quatalg::QAlgK& alg, const geodesic::TgSpectrum& spec);

json tgs_report(const quatalg::QAlgK& alg);

json family_report(const family::FamilyReport& rep);

json census_rows(const std::vector<census::CensusRow>& rows);

// "V,n_total,n_tg,ratio" header plus one row per grid point; exact ratio strings.
std::string census_csv(const std::vector<census::CensusRow>& rows);

json large_class_report(const covolume::CommClass& cls, double X);

} // namespace systole::serialize

#endif

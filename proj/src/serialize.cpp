#include "systole/serialize.hpp"

#include <sstream>

namespace systole::serialize {

using quadfield::SplitType;

std::string ideal_str(const quatalg::PrimeIdeal& ideal, const quadfield::QuadField& field) {
    std::string s = ideal.p.get_str();
    switch (ideal.tag) {
        case quatalg::IdealTag::First: return s + "+";
        case quatalg::IdealTag::Second: return s + "-";
        case quatalg::IdealTag::Unique:
            return s + (quadfield::splitting_type(ideal.p, field) == SplitType::Ramified ? "r" : "i");
    }
    return s;
}

json ram_array(const quatalg::QAlgK& alg) {
    json arr = json::array();
    for (const auto& ideal : alg.ram_f) arr.push_back(ideal_str(ideal, alg.field));
    return arr;
}

json covolume_report(const covolume::CommClass& cls) {
    json j;
    j["class"]["D"] = static_cast<long>(to_i64(cls.field.discriminant()));
    j["class"]["ram"] = ram_array(cls.algebra);
    j["V"] = cls.volume.value;
    j["V_err"] = cls.volume.err;
    j["gen_index"] = rat_str(covolume::generalized_index(cls.algebra));
    return j;
}

json spectrum_report(const quatalg::QAlgK& alg, const geodesic::TgSpectrum& spec) {
    json j;
    j["D"] = static_cast<long>(to_i64(alg.field.discriminant()));
    j["ram"] = ram_array(alg);
    json entries = json::array();
    for (const auto& e : spec.entries) {
        json je;
        je["area"] = e.area.str();
        json ws = json::array();
        for (const auto& B : e.witnesses) ws.push_back(quatalg::to_string(B));
        je["witnesses"] = ws;
        entries.push_back(je);
    }
    j["spectrum"] = entries;
    j["requested_n"] = spec.requested_n;
    j["truncated"] = spec.truncated;
    return j;
}

json tgs_report(const quatalg::QAlgK& alg) {
    json j;
    j["D"] = static_cast<long>(to_i64(alg.field.discriminant()));
    j["ram"] = ram_array(alg);
    auto t = geodesic::has_tgs(alg);
    j["has_tgs"] = t.ok;
    if (t.ok) {
        json base = json::array();
        for (const Int& p : t.base_primes) base.push_back(p.get_str());
        j["base_primes"] = base;
        auto bounds = geodesic::area_bounds(alg);
        j["area_lower"] = bounds.lower.str();
        j["c_ell"] = rat_str(bounds.c_ell);
        if (bounds.upper_witness) {
            j["upper_witness"]["B"] = quatalg::to_string(bounds.upper_witness->algebra);
            j["upper_witness"]["area"] = bounds.upper_witness->area.str();
        }
    }
    return j;
}

json family_report(const family::FamilyReport& rep) {
    json j;
    j["N"] = rep.N;
    j["split_prime"] = rep.split_prime.get_str();
    j["inert_ceiling"] = rep.inert_ceiling.get_str();
    j["sufficient_inert_ceiling"] = rep.sufficient_inert_ceiling.get_str();
    json members = json::array();
    for (const auto& m : rep.members) members.push_back(covolume_report(m));
    j["members"] = members;
    json spec = json::array();
    for (const auto& e : rep.shared_spectrum.entries) {
        json je;
        je["area"] = e.area.str();
        json ws = json::array();
        for (const auto& B : e.witnesses) ws.push_back(quatalg::to_string(B));
        je["witnesses"] = ws;
        spec.push_back(je);
    }
    j["shared_spectrum"] = spec;
    j["sys1_bounds"] = rep.sys1_bounds;
    j["linnik_ratios"] = rep.linnik_ratios;
    j["volumes_monotone"] = rep.volumes_monotone;
    if (!rep.rejected.empty()) j["rejected"] = rep.rejected;
    auto vb = family::volume_bound_report(rep);
    j["c1_fit"] = vb.c1_fit;
    j["all_within"] = vb.all_within;
    j["zeta_bound_ok"] = vb.zeta_bound_ok;
    return j;
}

json census_rows(const std::vector<census::CensusRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        json j;
        j["V"] = r.V;
        j["n_total"] = r.n_total;
        j["n_tg"] = r.n_tg;
        j["x"] = rat_str(r.x_coefficient) + "*pi";
        j["ratio"] = rat_str(r.ratio);
        arr.push_back(j);
    }
    return arr;
}

std::string census_csv(const std::vector<census::CensusRow>& rows) {
    std::ostringstream out;
    out << "V,n_total,n_tg,ratio\n";
    for (const auto& r : rows)
        out << r.V << "," << r.n_total << "," << r.n_tg << "," << rat_str(r.ratio) << "\n";
    return out.str();
}

json large_class_report(const covolume::CommClass& cls, double X) {
    json j = covolume_report(cls);
    j["X"] = X;
    j["area_lower"] = geodesic::tg_area_lower(cls.algebra).str();
    return j;
}

} // namespace systole::serialize

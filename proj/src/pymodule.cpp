// Python bindings for the main operations. Exact quantities cross the
// boundary as strings (areas "a/b*pi", rationals "a/b", big integers
// decimal) so nothing is silently rounded.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "systole/cache.hpp"
#include "systole/serialize.hpp"

namespace py = pybind11;
using namespace systole;

namespace {

Int to_int(const py::object& v) { return Int(py::str(v).cast<std::string>()); }

quadfield::QuadField field_of(long d) {
    return quadfield::QuadField::from_d_or_discriminant(Int(d));
}

quatalg::QAlgK algebra_of(long d, const std::string& ram) {
    auto K = field_of(d);
    return quatalg::parse_qalg_k("K[" + K.discriminant().get_str() + "]{" + ram + "}");
}

py::dict validated(const ValidatedReal& v) {
    py::dict d;
    d["value"] = v.value;
    d["err"] = v.err;
    return d;
}

py::object json_to_py(const nlohmann::json& j) {
    namespace nl = nlohmann;
    switch (j.type()) {
        case nl::json::value_t::null: return py::none();
        case nl::json::value_t::boolean: return py::bool_(j.get<bool>());
        case nl::json::value_t::number_integer: return py::int_(j.get<long long>());
        case nl::json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
        case nl::json::value_t::number_float: return py::float_(j.get<double>());
        case nl::json::value_t::string: return py::str(j.get<std::string>());
        case nl::json::value_t::array: {
            py::list out;
            for (const auto& e : j) out.append(json_to_py(e));
            return out;
        }
        case nl::json::value_t::object: {
            py::dict out;
            for (auto it = j.begin(); it != j.end(); ++it)
                out[py::str(it.key())] = json_to_py(it.value());
            return out;
        }
        default: return py::none();
    }
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "arithmetic invariants of totally geodesic surfaces in arithmetic "
              "hyperbolic 3-manifolds";

    py::register_exception<UsageError>(m, "UsageError");
    py::register_exception<DomainError>(m, "DomainError");
    py::register_exception<ResourceError>(m, "ResourceError");

    // arith
    m.def("kronecker",
          [](const py::object& a, const py::object& n) {
              return arith::kronecker(to_int(a), to_int(n));
          },
          py::arg("a"), py::arg("n"));
    m.def("nth_prime", [](std::uint64_t n) { return arith::nth_prime(n); }, py::arg("n"));
    m.def("crt",
          [](const std::vector<std::pair<long, long>>& classes) {
              std::vector<arith::ResidueClass> rs;
              for (auto [r, q] : classes) rs.emplace_back(Int(r), Int(q));
              auto c = arith::crt(rs);
              return std::make_pair(c.residue.get_str(), c.modulus.get_str());
          },
          py::arg("classes"));
    m.def("factor", [](const py::object& n) {
        py::list out;
        for (const auto& [p, e] : arith::factor(to_int(n)))
            out.append(py::make_tuple(py::str(p.get_str()), e));
        return out;
    });

    // quadfield
    m.def("fundamental_discriminant",
          [](long d) { return static_cast<long>(to_i64(field_of(d).discriminant())); },
          py::arg("d"));
    m.def("splitting_type", [](long p, long d) {
        return std::string(quadfield::to_string(quadfield::splitting_type(Int(p), field_of(d))));
    });
    m.def("class_number", [](long d) { return quadfield::class_group(field_of(d)).h; });
    m.def("class_number_analytic",
          [](long d) { return quadfield::class_number_analytic(field_of(d)); });
    m.def("class_group_forms", [](long d) {
        py::list out;
        for (const auto& f : quadfield::class_group(field_of(d)).forms)
            out.append(py::make_tuple(f.a, f.b, f.c));
        return out;
    });
    m.def("l_value", [](long d) { return validated(quadfield::l_value(field_of(d))); });
    m.def("zeta_k2", [](long d) { return validated(quadfield::zeta_k2(field_of(d))); });

    // quatalg
    m.def("is_admissible_q", [](const std::string& b) {
        return quatalg::is_admissible(quatalg::parse_qalg_q(b));
    });
    m.def("is_admissible", [](long d, const std::string& ram) {
        return quatalg::is_admissible(algebra_of(d, ram));
    });
    m.def("type_number_k",
          [](long d, const std::string& ram) { return quatalg::type_number_k(algebra_of(d, ram)); });
    m.def("embeds_quadratic", [](long d, const std::string& ram, long x) {
        return quatalg::embeds_quadratic(algebra_of(d, ram), Int(x));
    });
    m.def("torsion_free_certificate", [](long d, const std::string& ram) {
        return quatalg::torsion_free_certificate(algebra_of(d, ram));
    });
    m.def("compatible", [](const std::string& b, long d, const std::string& ram) {
        return quatalg::compatible(quatalg::parse_qalg_q(b), algebra_of(d, ram));
    });

    // covolume
    m.def("fuchsian_coarea_norm1", [](const std::string& b) {
        return covolume::fuchsian_coarea_norm1(quatalg::parse_qalg_q(b)).str();
    });
    m.def("fuchsian_coarea_maximal", [](const std::string& b) {
        return covolume::fuchsian_coarea_maximal(quatalg::parse_qalg_q(b)).str();
    });
    m.def("kleinian_covol_norm1", [](long d, const std::string& ram) {
        return validated(covolume::kleinian_covol_norm1(algebra_of(d, ram)));
    });
    m.def("kleinian_covol_maximal", [](long d, const std::string& ram) {
        return validated(covolume::kleinian_covol_maximal(algebra_of(d, ram)));
    });
    m.def("generalized_index", [](long d, const std::string& ram) {
        return rat_str(covolume::generalized_index(algebra_of(d, ram)));
    });
    m.def("sys1_upper", &covolume::sys1_upper, py::arg("vol"));
    m.def("genus_lower_from_sys1", &covolume::genus_lower_from_sys1, py::arg("sys1"),
          py::arg("eps"), py::arg("assume_systole_large"));
    m.def("genus_range_from_area", [](double area) -> py::tuple {
        auto r = covolume::genus_range_from_area(area);
        if (r.empty()) return py::make_tuple();
        return py::make_tuple(r.g_min, r.g_max);
    });

    // geodesic
    m.def("has_tgs", [](long d, const std::string& ram) {
        auto t = geodesic::has_tgs(algebra_of(d, ram));
        py::list base;
        for (const Int& p : t.base_primes) base.append(py::str(p.get_str()));
        return py::make_tuple(t.ok, base);
    });
    m.def("tg_spectrum", [](long d, const std::string& ram, std::uint64_t N) {
        auto A = algebra_of(d, ram);
        return json_to_py(serialize::spectrum_report(A, geodesic::tg_spectrum(A, N)));
    });
    m.def("tg_area_lower",
          [](long d, const std::string& ram) { return geodesic::tg_area_lower(algebra_of(d, ram)).str(); });
    m.def("tg_area_upper_witness", [](long d, const std::string& ram) {
        auto w = geodesic::tg_area_upper_witness(algebra_of(d, ram));
        return py::make_tuple(quatalg::to_string(w.algebra), w.area.str());
    });
    m.def("large_area_class", [](long d, double X) {
        auto cls = geodesic::large_area_class(field_of(d), X);
        return json_to_py(serialize::large_class_report(cls, X));
    });

    // family
    m.def("find_fields", [](const std::vector<long>& split, const std::vector<long>& inert,
                            std::uint64_t count) {
        family::SplitPrescription p;
        for (long s : split) p.split_primes.insert(Int(s));
        for (long s : inert) p.inert_primes.insert(Int(s));
        py::list out;
        for (const auto& K : family::find_fields(p, count))
            out.append(static_cast<long>(to_i64(K.discriminant())));
        return out;
    });
    m.def("build_family", [](std::uint64_t N, long inert_ceiling, std::uint64_t count,
                             long split_prime) {
        return json_to_py(serialize::family_report(
            family::build_family(N, Int(inert_ceiling), count, Int(split_prime))));
    },
          py::arg("N"), py::arg("inert_ceiling"), py::arg("count"), py::arg("split_prime") = 13);

    // census
    m.def("enumerate_classes", [](long d, double Vmax) {
        py::list out;
        for (const auto& c : census::enumerate_classes(field_of(d), Vmax))
            out.append(json_to_py(serialize::covolume_report(c)));
        return out;
    });
    m.def("ratio_table", [](long d, const std::vector<double>& grid, const std::string& x) {
        auto rows = census::ratio_table(field_of(d), grid, covolume::PiArea::parse(x));
        return json_to_py(serialize::census_rows(rows));
    });
    m.def("genus_threshold_translate",
          [](double g) { return census::genus_threshold_translate(g).str(); });
}

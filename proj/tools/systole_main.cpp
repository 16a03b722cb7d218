// systole: arithmetic invariants of totally geodesic surfaces in arithmetic
// hyperbolic 3-manifolds. Subcommands: covolume, tgs, spectrum, family,
// census, large. Exit codes: 0 ok, 1 domain error, 2 usage error.

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "systole/cache.hpp"
#include "systole/serialize.hpp"

namespace {

using namespace systole;
using nlohmann::json;

struct GlobalOpts {
    std::string format = "json"; // json | csv | text
    unsigned jobs = 1;
    bool no_cache = false;
};

quadfield::QuadField field_from_flag(long d_flag) {
    return quadfield::QuadField::from_d_or_discriminant(Int(d_flag));
}

// --ram accepts the brace grammar entries without the K[D]{...} wrapper:
// "13+,13-", "2r", "3i", or bare primes ("13") meaning the whole fiber.
// Field validity is a domain question; only the ram text is usage syntax.
quatalg::QAlgK algebra_from_flags(long d_flag, const std::string& ram) {
    auto K = field_from_flag(d_flag);
    if (!K.imaginary()) throw DomainError("the field must be imaginary quadratic");
    std::string text = "K[" + K.discriminant().get_str() + "]{" + ram + "}";
    return quatalg::parse_qalg_k(text);
}

void emit(const json& j, const GlobalOpts& g, const std::string& text_rendering) {
    if (g.format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text_rendering;
}

std::string pi_area_text(const covolume::PiArea& a) {
    std::ostringstream os;
    os << a.str() << " (" << a.value() << ")";
    return os.str();
}

int run(int argc, char** argv) {
    CLI::App app{"arithmetic invariants of totally geodesic surfaces in "
                 "arithmetic hyperbolic 3-manifolds"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand
    GlobalOpts g;
    app.add_option("--format", g.format, "output format: json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--jobs", g.jobs, "worker threads for enumerations")->default_val(1);
    app.add_flag("--no-cache", g.no_cache, "disable the on-disk class-group/L-value cache");

    long field_d = 0;
    std::string ram;
    std::uint64_t N = 1;
    double X = 1.0;
    std::string x_area = "1/2*pi";
    std::string vmax_list;
    long inert_ceiling = 13;
    std::uint64_t count = 2;
    long split_prime = 13;
    bool maximal = false;
    bool cocompact_only = false;

    auto* covol = app.add_subcommand("covolume", "covolume and generalized index of a class");
    covol->add_option("--field", field_d, "field: squarefree d or fundamental discriminant D")
        ->required();
    covol->add_option("--ram", ram, "ramification entries, e.g. 13+,13- or 13 or 2r,3i");
    covol->add_flag("--maximal", maximal, "also report the minimal-covolume group's volume");

    const char* field_help = "field: squarefree d or fundamental discriminant D";
    const char* ram_help = "ramification entries, e.g. 13+,13- or 13 or 2r,3i";

    auto* tgs = app.add_subcommand("tgs", "totally-geodesic test and area bounds");
    tgs->add_option("--field", field_d, field_help)->required();
    tgs->add_option("--ram", ram, ram_help);

    auto* spectrum = app.add_subcommand("spectrum", "first N compatible-Fuchsian areas");
    spectrum->add_option("--field", field_d, field_help)->required();
    spectrum->add_option("--ram", ram, ram_help);
    spectrum->add_option("--N", N, "number of distinct areas")->required();
    spectrum->add_flag("--maximal", maximal, "use the maximal-group coarea normalization");
    spectrum->add_flag("--cocompact-only", cocompact_only, "drop the matrix-algebra witness");

    auto* family_cmd = app.add_subcommand("family", "incommensurable family with equal initial spectra");
    family_cmd->add_option("--N", N, "shared spectrum depth")->default_val(4);
    family_cmd->add_option("--inert-ceiling", inert_ceiling, "primes below this are forced inert")
        ->default_val(13);
    family_cmd->add_option("--count", count, "number of members")->default_val(2);
    family_cmd->add_option("--split-prime", split_prime, "override the split prime (default 13)")
        ->default_val(13);

    auto* census_cmd = app.add_subcommand("census", "commensurability-class counts by volume");
    census_cmd->add_option("--field", field_d, field_help)->required();
    census_cmd->add_option("--vmax", vmax_list, "comma-separated increasing volume grid")
        ->required();
    census_cmd->add_option("--x", x_area, "area threshold, e.g. 1/2*pi")->default_val("1/2*pi");

    auto* large = app.add_subcommand("large", "smallest class with area lower bound above X");
    large->add_option("--field", field_d, field_help)->required();
    large->add_option("--x", X, "the lower-bound target X")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (g.format == "csv" && !census_cmd->parsed())
        throw UsageError("--format csv is only available for the census subcommand");

    std::optional<cache::DiskCache> disk;
    if (!g.no_cache) {
        disk.emplace(cache::DiskCache::default_dir());
        cache::warm_quadfield_memo(*disk);
    }

    if (covol->parsed()) {
        auto A = algebra_from_flags(field_d, ram);
        auto cls = covolume::make_class(A);
        json j = serialize::covolume_report(cls);
        std::ostringstream text;
        text << "class " << quatalg::to_string(A) << "\n"
             << "V = " << cls.volume.value << " +- " << cls.volume.err << "\n"
             << "generalized index [Gamma_O : Gamma_O^1] = "
             << rat_str(covolume::generalized_index(A)) << "\n";
        if (maximal) {
            auto vm = covolume::kleinian_covol_maximal(A);
            j["V_maximal"] = vm.value;
            j["V_maximal_err"] = vm.err;
            text << "V_maximal = " << vm.value << " +- " << vm.err << "\n";
        }
        emit(j, g, text.str());
    } else if (tgs->parsed()) {
        auto A = algebra_from_flags(field_d, ram);
        json j = serialize::tgs_report(A);
        std::ostringstream text;
        auto t = geodesic::has_tgs(A);
        text << "has_tgs = " << (t.ok ? "true" : "false") << "\n";
        if (t.ok) {
            auto bounds = geodesic::area_bounds(A);
            text << "area lower bound " << pi_area_text(bounds.lower) << "\n";
            if (bounds.upper_witness)
                text << "upper witness " << quatalg::to_string(bounds.upper_witness->algebra)
                     << " with area " << pi_area_text(bounds.upper_witness->area) << "\n";
        }
        emit(j, g, text.str());
    } else if (spectrum->parsed()) {
        auto A = algebra_from_flags(field_d, ram);
        geodesic::EnumOptions opts;
        opts.kind = maximal ? geodesic::SpectrumKind::Maximal : geodesic::SpectrumKind::Norm1;
        opts.cocompact_only = cocompact_only;
        auto spec = geodesic::tg_spectrum(A, N, opts);
        json j = serialize::spectrum_report(A, spec);
        std::ostringstream text;
        for (const auto& e : spec.entries) {
            text << pi_area_text(e.area) << " :";
            for (const auto& B : e.witnesses) text << " " << quatalg::to_string(B);
            text << "\n";
        }
        emit(j, g, text.str());
    } else if (family_cmd->parsed()) {
        auto rep = family::build_family(N, Int(inert_ceiling), count, Int(split_prime), g.jobs);
        json j = serialize::family_report(rep);
        std::ostringstream text;
        for (std::size_t i = 0; i < rep.members.size(); ++i)
            text << "member " << i + 1 << ": D = " << rep.members[i].field.discriminant().get_str()
                 << ", V = " << rep.members[i].volume.value
                 << ", sys1 < " << rep.sys1_bounds[i] << "\n";
        text << "shared spectrum:";
        for (const auto& e : rep.shared_spectrum.entries) text << " " << e.area.str();
        text << "\n";
        emit(j, g, text.str());
    } else if (census_cmd->parsed()) {
        std::vector<double> grid;
        std::stringstream ss(vmax_list);
        std::string tok;
        while (std::getline(ss, tok, ',')) grid.push_back(std::stod(tok));
        auto x = covolume::PiArea::parse(x_area);
        auto rows = census::ratio_table(field_from_flag(field_d), grid, x, g.jobs);
        if (g.format == "csv") {
            std::cout << serialize::census_csv(rows);
        } else if (g.format == "json") {
            std::cout << serialize::census_rows(rows).dump(2) << "\n";
        } else {
            for (const auto& r : rows)
                std::cout << "V < " << r.V << ": " << r.n_tg << "/" << r.n_total
                          << " classes carry a surface of area < " << rat_str(r.x_coefficient)
                          << "*pi (ratio " << rat_str(r.ratio) << ")\n";
        }
    } else if (large->parsed()) {
        auto cls = geodesic::large_area_class(field_from_flag(field_d), X);
        json j = serialize::large_class_report(cls, X);
        std::ostringstream text;
        text << "class " << quatalg::to_string(cls.algebra) << " has area lower bound "
             << pi_area_text(geodesic::tg_area_lower(cls.algebra)) << " > " << X << "\n";
        emit(j, g, text.str());
    }

    if (disk) cache::persist_quadfield_memo(*disk);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const systole::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const systole::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

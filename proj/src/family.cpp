#include "systole/family.hpp"

#include <algorithm>
#include <cmath>

#include "systole/util.hpp"

namespace systole::family {

using arith::ResidueClass;
using quadfield::SplitType;
using quadfield::splitting_type;

namespace {

void validate(const SplitPrescription& p) {
    for (const Int& s : p.split_primes) {
        if (!arith::is_prime(s)) throw DomainError("prescribed non-prime " + s.get_str());
        if (p.inert_primes.count(s))
            throw InconsistentPrescription("prime " + s.get_str() + " prescribed both split and inert");
    }
    for (const Int& s : p.inert_primes)
        if (!arith::is_prime(s)) throw DomainError("prescribed non-prime " + s.get_str());
}

// Does the prime q (=> field Q(sqrt(-q))) realize the prescription?
bool realizes(std::uint64_t q, const SplitPrescription& p) {
    QuadField K = QuadField::from_squarefree(Int(-static_cast<long>(q)));
    for (const Int& s : p.split_primes)
        if (splitting_type(s, K) != SplitType::Split) return false;
    for (const Int& s : p.inert_primes)
        if (splitting_type(s, K) != SplitType::Inert) return false;
    return true;
}

} // namespace

std::vector<ResidueClass> residue_classes(const SplitPrescription& p) {
    validate(p);

    // per-prime admissible residue sets; start with the 2-part
    std::vector<std::vector<ResidueClass>> parts;
    bool two_split = p.split_primes.count(2) != 0;
    bool two_inert = p.inert_primes.count(2) != 0;
    if (two_split) {
        parts.push_back({ResidueClass(7, 8)}); // -q = 1 mod 8
    } else if (two_inert) {
        parts.push_back({ResidueClass(3, 8)}); // -q = 5 mod 8
    } else {
        parts.push_back({ResidueClass(3, 4)}); // prime discriminant: q = 3 mod 4
    }

    auto odd_part = [&](const Int& s, int want) {
        std::vector<ResidueClass> rs;
        std::int64_t sp = to_i64(s);
        for (std::int64_t r = 1; r < sp; ++r) {
            // q = r mod s  =>  chi_{-q}(s) = kronecker(-q mod s, s)
            std::int64_t mr = (sp - r) % sp;
            if (arith::kronecker(mr, sp) == want) rs.emplace_back(r, sp);
        }
        return rs;
    };
    for (const Int& s : p.split_primes)
        if (s != 2) parts.push_back(odd_part(s, +1));
    for (const Int& s : p.inert_primes)
        if (s != 2) parts.push_back(odd_part(s, -1));

    // cartesian product, combined by crt
    std::vector<ResidueClass> result;
    std::vector<std::size_t> idx(parts.size(), 0);
    while (true) {
        std::vector<ResidueClass> combo;
        combo.reserve(parts.size());
        for (std::size_t i = 0; i < parts.size(); ++i) combo.push_back(parts[i][idx[i]]);
        result.push_back(arith::crt(combo));
        std::size_t i = 0;
        for (; i < parts.size(); ++i) {
            if (++idx[i] < parts[i].size()) break;
            idx[i] = 0;
        }
        if (i == parts.size()) break;
    }
    std::sort(result.begin(), result.end(),
              [](const ResidueClass& a, const ResidueClass& b) { return a.residue < b.residue; });
    return result;
}

std::vector<QuadField> find_fields(const SplitPrescription& p, std::uint64_t count,
                                   std::uint64_t min_q) {
    validate(p);
    if (count == 0) throw DomainError("count must be positive");
    std::vector<QuadField> out;
    std::uint64_t q = std::max<std::uint64_t>(min_q, 2);
    while (out.size() < count) {
        q = arith::next_prime_above(q);
        if (q % 4 != 3) continue;
        if (q == 3) continue; // field would be Q(sqrt(-3))
        if (realizes(q, p)) out.push_back(QuadField::from_squarefree(Int(-static_cast<long>(q))));
    }
    return out;
}

FamilyReport build_family(std::uint64_t N, const Int& inert_ceiling, std::uint64_t count,
                          const Int& split_prime, unsigned jobs) {
    if (N == 0) throw DomainError("N must be positive");
    if (inert_ceiling < 3) throw DomainError("inert ceiling must be >= 3");
    if (count < 2) throw DomainError("a family needs at least two members");
    if (!arith::is_prime(split_prime)) throw DomainError("split prime must be prime");
    // The torsion certificate for a split-pair algebra depends only on the
    // split prime: both completions are Q_p, so it holds iff -1 and -3 are
    // squares there, i.e. p = 1 mod 12 (13 is the default). Otherwise every
    // candidate member would be rejected.
    if (split_prime > 3 && !(quatalg::is_square_in_qp(-1, split_prime) &&
                             quatalg::is_square_in_qp(-3, split_prime)))
        throw DomainError("split prime " + split_prime.get_str() +
                          " fails the torsion certificate for every member (needs p = 1 mod 12)");
    if (split_prime <= 3)
        throw DomainError("split prime must exceed 3");

    SplitPrescription pres;
    pres.split_primes.insert(split_prime);
    for (std::uint64_t p : arith::primes_below(static_cast<std::uint64_t>(inert_ceiling.get_ui())))
        if (Int(static_cast<unsigned long>(p)) != split_prime)
            pres.inert_primes.insert(Int(static_cast<unsigned long>(p)));

    FamilyReport report;
    report.N = N;
    report.split_prime = split_prime;
    report.inert_ceiling = inert_ceiling;
    report.sufficient_inert_ceiling = Int(1024 * 9) * Int(arith::nth_prime(N + 1));

    std::uint64_t from_q = 0;
    while (report.members.size() < count) {
        QuadField K = find_fields(pres, 1, from_q).at(0);
        Int q_found = -K.discriminant();
        from_q = q_found.get_ui();
        auto A = quatalg::split_pair_algebra(K, {split_prime});
        if (!quatalg::torsion_free_certificate(A)) {
            report.rejected.push_back("q=" + std::to_string(from_q) + ": torsion certificate failed");
            continue;
        }
        report.members.push_back(covolume::make_class(A));
    }

    // member verification is independent; spectra computed in parallel and
    // merged in member order
    std::vector<TgSpectrum> spectra(report.members.size());
    util::parallel_for(report.members.size(), jobs, [&](std::size_t i) {
        spectra[i] = geodesic::tg_spectrum(report.members[i].algebra, N);
    });

    // exact spectrum equality across members, witnesses included
    for (std::size_t m = 1; m < spectra.size(); ++m) {
        const auto& a = spectra[0].entries;
        const auto& b = spectra[m].entries;
        for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
            if (i >= a.size() || i >= b.size() || a[i].area != b[i].area ||
                a[i].witnesses != b[i].witnesses) {
                std::string area = i < a.size() ? a[i].area.str()
                                                : (i < b.size() ? b[i].area.str() : "?");
                throw VerificationFailed(
                    "spectra diverge at area " + area +
                        " (inert ceiling too small for this depth)",
                    area);
            }
        }
    }
    report.shared_spectrum = spectra.at(0);

    double prev = 0.0;
    for (std::size_t i = 0; i < report.members.size(); ++i) {
        const auto& m = report.members[i];
        report.volumes.push_back(m.volume);
        report.sys1_bounds.push_back(covolume::sys1_upper(m.volume.value));
        double qn = std::abs(m.field.discriminant().get_d());
        double n = static_cast<double>(i + 1);
        report.linnik_ratios.push_back(qn / (n * std::log(2.0 * n)));
        if (m.volume.value <= prev) report.volumes_monotone = false;
        prev = m.volume.value;
    }
    return report;
}

std::vector<std::tuple<std::uint64_t, Int, double>> linnik_report(
    const std::vector<QuadField>& fields) {
    std::vector<std::tuple<std::uint64_t, Int, double>> rows;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        Int q = -fields[i].discriminant();
        if (i > 0 && q <= -fields[i - 1].discriminant())
            throw DomainError("fields must be ordered by |discriminant|");
        double n = static_cast<double>(i + 1);
        rows.emplace_back(i + 1, q, q.get_d() / (n * std::log(2.0 * n)));
    }
    return rows;
}

VolumeBoundReport volume_bound_report(const FamilyReport& report) {
    if (report.members.empty()) throw DomainError("report has no members");
    VolumeBoundReport out;
    for (std::size_t i = 0; i < report.members.size(); ++i) {
        double n = static_cast<double>(i + 1);
        double scale = std::pow(n * std::log(2.0 * n), 1.5);
        out.c1_fit = std::max(out.c1_fit, report.members[i].volume.value / scale);
        ValidatedReal z = quadfield::zeta_k2(report.members[i].field);
        if (!(z.upper() < 3.0)) out.zeta_bound_ok = false;
    }
    for (std::size_t i = 0; i < report.members.size(); ++i) {
        double n = static_cast<double>(i + 1);
        double scale = std::pow(n * std::log(2.0 * n), 1.5);
        if (report.members[i].volume.value > out.c1_fit * scale * (1 + 1e-12))
            out.all_within = false;
    }
    return out;
}

} // namespace systole::family

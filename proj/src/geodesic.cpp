#include "systole/geodesic.hpp"

#include <algorithm>
#include <map>

namespace systole::geodesic {

using covolume::fuchsian_coarea_maximal;
using covolume::fuchsian_coarea_norm1;
using quadfield::SplitType;
using quadfield::splitting_type;
using quatalg::IdealTag;

TgsResult has_tgs(const QAlgK& A) {
    if (!quatalg::is_admissible(A)) throw DomainError("has_tgs needs an admissible algebra");
    auto base = quatalg::split_pair_base(A);
    if (!base) return {};
    return {true, std::move(*base)};
}

namespace {

struct Candidate {
    Int q;
    Rat factor; // (q-1) for the norm-1 spectrum, (q-1)/2 for the maximal one
};

Rat kind_factor(const Int& q, SpectrumKind kind) {
    return kind == SpectrumKind::Norm1 ? Rat(q - 1) : make_rat(Int(q - 1), 2);
}

PiArea area_of(const QAlgQ& B, SpectrumKind kind) {
    return kind == SpectrumKind::Norm1 ? fuchsian_coarea_norm1(B) : fuchsian_coarea_maximal(B);
}

} // namespace

std::vector<QAlgQ> enumerate_compatible(const QAlgK& A, const PiArea& max_area,
                                        const EnumOptions& opts) {
    TgsResult tgs = has_tgs(A);
    if (!tgs) throw DomainError("enumerate_compatible requires has_tgs");
    const std::size_t r = tgs.base_primes.size();
    const QuadField& K = A.field;

    // product budget for extension primes, in the chosen area normalization
    Rat base_prod = 1;
    for (const Int& p : tgs.base_primes) base_prod *= kind_factor(p, opts.kind);
    Rat lead = opts.kind == SpectrumKind::Norm1 ? make_rat(1, 3) : make_rat(1, 6);
    Rat budget = max_area.coefficient / lead / base_prod;

    bool has2 = splitting_type(2, K) != SplitType::Split;
    Rat f2 = kind_factor(2, opts.kind);
    Rat slack = (has2 && f2 < 1) ? Rat(2) : Rat(1); // q=2 may shrink the maximal product

    // odd extension candidates, ascending: inert or ramified in k
    Rat fmax = budget * slack;
    if (fmax >= 1) {
        // implied rational prime bound; guarded by the sieve ceiling
        Rat qmax = opts.kind == SpectrumKind::Norm1 ? Rat(fmax + 1) : Rat(fmax * 2 + 1);
        double qb = qmax.get_d();
        if (qb > static_cast<double>(arith::sieve_ceiling()))
            throw BoundTooLarge("compatible-algebra search needs primes beyond the sieve ceiling");
    }
    std::vector<Candidate> cands;
    if (fmax >= 1) {
        Int qmax_i = (opts.kind == SpectrumKind::Norm1 ? Int(fmax.get_num() / fmax.get_den() + 1)
                                                       : Int(2 * fmax.get_num() / fmax.get_den() + 1));
        for (std::uint64_t q : arith::primes_below(static_cast<std::uint64_t>(qmax_i.get_ui()) + 1)) {
            if (q == 2) continue;
            Int qi(static_cast<unsigned long>(q));
            if (std::find(tgs.base_primes.begin(), tgs.base_primes.end(), qi) !=
                tgs.base_primes.end())
                continue;
            if (splitting_type(qi, K) == SplitType::Split) continue;
            Rat f = kind_factor(qi, opts.kind);
            if (f > fmax) continue;
            cands.push_back({qi, f});
        }
    }

    std::vector<std::pair<Rat, QAlgQ>> found;
    std::vector<Int> chosen;

    auto emit_variants = [&](const Rat& prod) {
        for (int add2 = 0; add2 < (has2 ? 2 : 1); ++add2) {
            Rat total = add2 ? Rat(prod * f2) : prod;
            if (total > budget) continue;
            std::size_t n = r + chosen.size() + add2;
            if (n % 2 != 0) continue;
            if (opts.kind == SpectrumKind::Maximal && n == 0) continue;
            if (opts.cocompact_only && n == 0) continue;
            QAlgQ B;
            for (const Int& p : tgs.base_primes) B.ram_f.insert(p);
            for (const Int& q : chosen) B.ram_f.insert(q);
            if (add2) B.ram_f.insert(2);
            found.emplace_back(area_of(B, opts.kind).coefficient, std::move(B));
        }
    };

    // DFS over the odd candidates; factors are >= 1 and ascending, so the
    // running product is monotone and pruning is sound (up to the q = 2 slack).
    auto dfs = [&](auto&& self, std::size_t idx, const Rat& prod) -> void {
        emit_variants(prod);
        for (std::size_t i = idx; i < cands.size(); ++i) {
            Rat np = prod * cands[i].factor;
            if (np > budget * slack) break;
            chosen.push_back(cands[i].q);
            self(self, i + 1, np);
            chosen.pop_back();
        }
    };
    dfs(dfs, 0, Rat(1));

    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    std::vector<QAlgQ> out;
    out.reserve(found.size());
    for (auto& [c, B] : found) out.push_back(std::move(B));
    return out;
}

TgSpectrum tg_spectrum(const QAlgK& A, std::uint64_t N, const EnumOptions& opts) {
    if (N == 0) throw DomainError("spectrum depth N must be positive");
    TgsResult tgs = has_tgs(A);
    if (!tgs) throw DomainError("tg_spectrum requires has_tgs");

    Rat c0 = 1;
    for (const Int& p : tgs.base_primes) c0 *= kind_factor(p, opts.kind);
    Rat lead = opts.kind == SpectrumKind::Norm1 ? make_rat(1, 3) : make_rat(1, 6);

    TgSpectrum result;
    result.requested_n = N;
    Rat bound = c0 * lead * 64;
    while (true) {
        std::vector<QAlgQ> algs;
        try {
            algs = enumerate_compatible(A, PiArea(bound), opts);
        } catch (const BoundTooLarge&) {
            if (result.entries.empty()) throw; // nothing computable at any bound
            result.truncated = true;
            break;
        }
        std::map<Rat, std::vector<QAlgQ>> by_area;
        for (const QAlgQ& B : algs) by_area[area_of(B, opts.kind).coefficient].push_back(B);
        if (by_area.size() >= N) {
            result.entries.clear();
            std::uint64_t taken = 0;
            for (auto& [coeff, ws] : by_area) {
                if (taken == N) break;
                result.entries.push_back({PiArea(coeff), std::move(ws)});
                ++taken;
            }
            return result;
        }
        // keep what we have in case the next doubling overflows the ceiling
        result.entries.clear();
        for (auto& [coeff, ws] : by_area) result.entries.push_back({PiArea(coeff), std::move(ws)});
        bound *= 2;
    }
    return result;
}

PiArea tg_area_lower(const QAlgK& A) {
    TgsResult tgs = has_tgs(A);
    if (!tgs) throw DomainError("tg_area_lower requires has_tgs");
    Rat c = make_rat(1, 24);
    for (const Int& p : tgs.base_primes) c *= make_rat(Int(p - 1), 2);
    return PiArea(c);
}

UpperWitness tg_area_upper_witness(const QAlgK& A) {
    TgsResult tgs = has_tgs(A);
    if (!tgs) throw DomainError("tg_area_upper_witness requires has_tgs");
    QAlgQ B;
    for (const Int& p : tgs.base_primes) B.ram_f.insert(p);
    if (tgs.base_primes.size() % 2 == 1) {
        // pad with the smallest prime inert or ramified in k; one always
        // exists for imaginary quadratic k (direct search, no Chebotarev
        // constant needed)
        std::uint64_t q = 2;
        while (true) {
            Int qi(static_cast<unsigned long>(q));
            if (splitting_type(qi, A.field) != SplitType::Split && !B.ram_f.count(qi)) {
                B.ram_f.insert(qi);
                break;
            }
            q = arith::next_prime_above(q);
        }
    }
    return {B, fuchsian_coarea_norm1(B)};
}

AreaBounds area_bounds(const QAlgK& A) {
    return {tg_area_lower(A), tg_area_upper_witness(A), make_rat(1, 24)};
}

CommClass large_area_class(const QuadField& K, double X) {
    if (!K.imaginary()) throw DomainError("large_area_class needs an imaginary field");
    if (!(X > 0)) throw DomainError("X must be positive");
    std::uint64_t p = 2;
    while (true) {
        Int pi(static_cast<unsigned long>(p));
        if (splitting_type(pi, K) == SplitType::Split) {
            PiArea lower(make_rat(Int(pi - 1), 48));
            if (lower.value() > X) {
                auto A = quatalg::split_pair_algebra(K, {pi});
                return covolume::make_class(A);
            }
        }
        p = arith::next_prime_above(p);
    }
}

} // namespace systole::geodesic

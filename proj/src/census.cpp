#include "systole/census.hpp"

#include <algorithm>
#include <mutex>

#include "systole/util.hpp"

namespace systole::census {

using quadfield::SplitType;
using quadfield::splitting_type;
using quatalg::IdealTag;
using quatalg::PrimeIdeal;
using quatalg::QAlgK;

namespace {

struct CandidateIdeal {
    PrimeIdeal ideal;
    Int factor; // N(P) - 1
};

// Candidate prime ideals of K with factor <= budget, split into the
// norm-2 "free" ideals (factor 1) and the rest sorted by factor.
struct CandidateSet {
    std::vector<PrimeIdeal> free_ideals;
    std::vector<CandidateIdeal> heavy;
};

CandidateSet candidates(const QuadField& K, const Int& budget) {
    CandidateSet out;
    // implied rational prime bound: split/ramified p - 1 <= budget
    Int pmax = budget + 1;
    if (pmax > Int(static_cast<unsigned long>(arith::sieve_ceiling())))
        throw ResourceError("census enumeration needs primes beyond the sieve ceiling");
    for (std::uint64_t p : arith::primes_below(pmax.get_ui() + 1)) {
        Int pi(static_cast<unsigned long>(p));
        switch (splitting_type(pi, K)) {
            case SplitType::Split: {
                Int f = pi - 1;
                if (f > budget) break;
                if (f == 1) {
                    out.free_ideals.push_back({pi, IdealTag::First});
                    out.free_ideals.push_back({pi, IdealTag::Second});
                } else {
                    out.heavy.push_back({{pi, IdealTag::First}, f});
                    out.heavy.push_back({{pi, IdealTag::Second}, f});
                }
                break;
            }
            case SplitType::Ramified: {
                Int f = pi - 1;
                if (f > budget) break;
                if (f == 1)
                    out.free_ideals.push_back({pi, IdealTag::Unique});
                else
                    out.heavy.push_back({{pi, IdealTag::Unique}, f});
                break;
            }
            case SplitType::Inert: {
                Int f = pi * pi - 1;
                if (f <= budget) out.heavy.push_back({{pi, IdealTag::Unique}, f});
                break;
            }
        }
    }
    std::sort(out.heavy.begin(), out.heavy.end(), [](const CandidateIdeal& a, const CandidateIdeal& b) {
        if (a.factor != b.factor) return a.factor < b.factor;
        return a.ideal < b.ideal;
    });
    return out;
}

} // namespace

std::vector<CommClass> enumerate_classes(const QuadField& K, double Vmax, unsigned jobs) {
    if (!K.imaginary()) throw DomainError("census needs an imaginary quadratic field");
    ValidatedReal base = covolume::kleinian_covol_norm1(quatalg::make_kalg(K, {}));
    if (!(Vmax > base.value))
        throw DomainError("Vmax must exceed the base (empty-ramification) volume");

    // product budget, rounded outward so boundary classes are not missed
    double budget_d = Vmax / base.lower() * (1.0 + 1e-12);
    Int budget(budget_d); // truncation of a deliberate over-estimate
    CandidateSet cs = candidates(K, budget);

    // one task per top-level heavy index (plus one for the empty prefix);
    // partitions are independent and merge deterministically after sort
    std::size_t tasks = cs.heavy.size() + 1;
    std::vector<std::vector<std::pair<Int, QAlgK>>> results(tasks);

    auto emit_with_free = [&](const std::vector<PrimeIdeal>& chosen, const Int& prod,
                              std::vector<std::pair<Int, QAlgK>>& sink) {
        // free ideals do not change the volume; enumerate their subsets
        std::size_t nf = cs.free_ideals.size();
        for (std::size_t mask = 0; mask < (1u << nf); ++mask) {
            std::size_t sz = chosen.size() + static_cast<std::size_t>(__builtin_popcount(mask));
            if (sz % 2 != 0) continue;
            std::vector<PrimeIdeal> ram = chosen;
            for (std::size_t i = 0; i < nf; ++i)
                if (mask & (1u << i)) ram.push_back(cs.free_ideals[i]);
            sink.emplace_back(prod, quatalg::make_kalg(K, std::move(ram)));
        }
    };

    auto dfs = [&](auto&& self, std::size_t idx, std::vector<PrimeIdeal>& chosen, const Int& prod,
                   std::vector<std::pair<Int, QAlgK>>& sink) -> void {
        emit_with_free(chosen, prod, sink);
        for (std::size_t i = idx; i < cs.heavy.size(); ++i) {
            Int np = prod * cs.heavy[i].factor;
            if (np > budget) break;
            chosen.push_back(cs.heavy[i].ideal);
            self(self, i + 1, chosen, np, sink);
            chosen.pop_back();
        }
    };

    util::parallel_for(tasks, jobs, [&](std::size_t t) {
        std::vector<PrimeIdeal> chosen;
        if (t == 0) {
            // the empty heavy prefix alone (free-ideal subsets only)
            emit_with_free(chosen, 1, results[0]);
            return;
        }
        std::size_t i = t - 1;
        if (cs.heavy[i].factor > budget) return;
        chosen.push_back(cs.heavy[i].ideal);
        dfs(dfs, i + 1, chosen, cs.heavy[i].factor, results[t]);
    });

    std::vector<std::pair<Int, QAlgK>> all;
    for (auto& r : results)
        for (auto& e : r) all.push_back(std::move(e));

    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return quatalg::to_string(a.second) < quatalg::to_string(b.second);
    });

    std::vector<CommClass> out;
    out.reserve(all.size());
    for (auto& [prod, alg] : all) {
        CommClass c = covolume::make_class(alg);
        if (c.volume.value < Vmax) out.push_back(std::move(c));
    }
    return out;
}

std::vector<CensusRow> ratio_table(const QuadField& K, const std::vector<double>& Vgrid,
                                   const PiArea& x, unsigned jobs) {
    if (Vgrid.empty()) throw DomainError("empty volume grid");
    for (std::size_t i = 1; i < Vgrid.size(); ++i)
        if (!(Vgrid[i] > Vgrid[i - 1])) throw DomainError("volume grid must be increasing");

    auto classes = enumerate_classes(K, Vgrid.back(), jobs);

    // a class carries a surface of area < x iff its cheapest compatible
    // Fuchsian area (the constructive witness) is below x
    std::vector<char> tg(classes.size(), 0);
    util::parallel_for(classes.size(), jobs, [&](std::size_t i) {
        auto t = geodesic::has_tgs(classes[i].algebra);
        if (!t) return;
        tg[i] = geodesic::tg_area_upper_witness(classes[i].algebra).area < x ? 1 : 0;
    });

    std::vector<CensusRow> rows;
    for (double V : Vgrid) {
        CensusRow row;
        row.V = V;
        row.x_coefficient = x.coefficient;
        for (std::size_t i = 0; i < classes.size(); ++i) {
            if (!(classes[i].volume.value < V)) continue;
            ++row.n_total;
            if (tg[i]) ++row.n_tg;
        }
        if (row.n_total == 0) throw DomainError("grid point below the smallest class volume");
        row.ratio = make_rat(Int(row.n_tg), Int(row.n_total));
        rows.push_back(std::move(row));
    }
    return rows;
}

PiArea genus_threshold_translate(double x_genus) {
    if (!(x_genus >= 2.0)) throw DomainError("genus threshold must be >= 2");
    Rat g(x_genus); // exact dyadic value of the double
    return PiArea(Rat(4 * (g - 1)));
}

} // namespace systole::census

#include "spectra/sieve.hpp"

#include <algorithm>
#include <set>
#include <thread>

#include "spectra/error.hpp"
#include "spectra/intfactor.hpp"
#include "spectra/rog.hpp"

namespace spectra {

FpRatMap reduce_map(const RationalMap& f, std::uint64_t p) {
    if (!good_reduction(f, p)) {
        // name the obstruction: degree drop vs vanishing resultant
        FpPoly nr = FpPoly::reduce(f.num(), p);
        FpPoly dr = FpPoly::reduce(f.den(), p);
        if (nr.is_zero() || dr.is_zero() || std::max(nr.degree(), dr.degree()) < f.degree())
            throw invalid_input_error("bad reduction: degree drop mod " + std::to_string(p));
        throw invalid_input_error("bad reduction: resultant divisible by " + std::to_string(p));
    }
    FpRatMap out;
    out.p = p;
    out.deg = f.degree();
    out.num = FpPoly::reduce(f.num(), p);
    out.den = FpPoly::reduce(f.den(), p);
    auto reduce_vec = [p](const std::vector<mpz_class>& v) {
        std::vector<std::uint64_t> r(v.size());
        mpz_class pz(static_cast<unsigned long>(p));
        for (std::size_t i = 0; i < v.size(); ++i) {
            mpz_class m = v[i] % pz;
            if (m < 0) m += pz;
            r[i] = m.get_ui();
        }
        return r;
    };
    out.num_h = reduce_vec(f.num_homog());
    out.den_h = reduce_vec(f.den_homog());
    return out;
}

FpProjPoint apply_mod_p(const FpRatMap& fbar, const FpProjPoint& x, int k) {
    std::uint64_t p = fbar.p;
    if (x.infinite) {
        // f(inf) = (num_h[d] : den_h[d])
        std::uint64_t a = fbar.num_h.back(), b = fbar.den_h.back();
        if (b == 0) return FpProjPoint{true, {}};
        FpCtx F(p);
        FpProjPoint out;
        out.infinite = false;
        out.value = fpk_from_base(p, k, F.mul(a, F.inv(b)));
        return out;
    }
    FpkElem nv = fpk_eval(fbar.num, x.value);
    FpkElem dv = fpk_eval(fbar.den, x.value);
    if (dv.is_zero()) {
        if (nv.is_zero()) throw internal_error("reduced map degenerate at a point");
        return FpProjPoint{true, {}};
    }
    FpProjPoint out;
    out.infinite = false;
    out.value = fpk_mul(nv, fpk_inv(dv));
    return out;
}

std::pair<int, int> orbit_mod_p(const FpProjPoint& start, const FpRatMap& fbar, int k) {
    // Brent: find cycle length lam, then tail mu
    FpProjPoint tortoise = start;
    FpProjPoint hare = apply_mod_p(fbar, start, k);
    int power = 1, lam = 1;
    while (!(tortoise == hare)) {
        if (power == lam) {
            tortoise = hare;
            power *= 2;
            lam = 0;
        }
        hare = apply_mod_p(fbar, hare, k);
        ++lam;
    }
    // find the tail: advance one pointer lam steps, then walk together
    FpProjPoint a = start, b = start;
    for (int i = 0; i < lam; ++i) b = apply_mod_p(fbar, b, k);
    int mu = 0;
    while (!(a == b)) {
        a = apply_mod_p(fbar, a, k);
        b = apply_mod_p(fbar, b, k);
        ++mu;
    }
    return {mu, lam};
}

std::vector<CritReduction> critical_points_mod_p(const RationalMap& f, std::uint64_t p, int kmax) {
    if (!good_reduction(f, p)) throw invalid_input_error("bad reduction at " + std::to_string(p));
    auto classes = critical_classes(f);
    std::vector<CritReduction> out;
    mpz_class pz(static_cast<unsigned long>(p));
    for (int id = 0; id < static_cast<int>(classes.size()); ++id) {
        const CriticalClass& c = classes[static_cast<std::size_t>(id)];
        if (c.at_infinity) {
            out.push_back(CritReduction{FpProjPoint{true, {}}, 1, id});
            continue;
        }
        if (mpz_divisible_p(c.minpoly.lc().get_mpz_t(), pz.get_mpz_t())) {
            // a root of this class reduces to infinity mod p
            out.push_back(CritReduction{FpProjPoint{true, {}}, 1, id});
        }
        for (int k = 1; k <= kmax; ++k) {
            std::vector<FpkElem> roots;
            try {
                roots = roots_in_fpk(c.minpoly, p, k);
            } catch (const invalid_input_error&) {
                continue;  // leading coefficient vanished mod p; handled above
            }
            for (const auto& r : roots) {
                if (k > 1 && r.in_prime_field()) continue;  // already listed at k = 1
                bool dup = false;
                for (const auto& prev : out) {
                    if (prev.crit_id == id && !prev.point.infinite && prev.k == k && prev.point.value == r) dup = true;
                }
                if (!dup) out.push_back(CritReduction{FpProjPoint{false, r}, k, id});
            }
        }
    }
    return out;
}

namespace {

// exact forward orbit points of the periodic critical classes, reduced mod p.
// X is finite: union of orbits of critical points that are exactly periodic.
std::vector<FpProjPoint> reduce_exceptional_set(const RationalMap& f,
                                                const std::vector<CriticalOrbitReport>& orbits,
                                                const std::vector<CriticalClass>& classes,
                                                std::uint64_t p, int kmax) {
    std::vector<FpProjPoint> xv;
    FpRatMap fbar = reduce_map(f, p);
    for (const auto& rep : orbits) {
        if (rep.status != OrbitStatus::Periodic) continue;
        const CriticalClass& c = classes[static_cast<std::size_t>(rep.crit_id)];
        // reductions of the class representative(s), then push forward
        std::vector<FpProjPoint> starts;
        if (c.at_infinity) {
            starts.push_back(FpProjPoint{true, {}});
        } else {
            mpz_class pz(static_cast<unsigned long>(p));
            if (mpz_divisible_p(c.minpoly.lc().get_mpz_t(), pz.get_mpz_t()))
                starts.push_back(FpProjPoint{true, {}});
            for (int k = 1; k <= kmax; ++k) {
                try {
                    for (const auto& r : roots_in_fpk(c.minpoly, p, k)) {
                        if (k > 1 && r.in_prime_field()) continue;
                        starts.push_back(FpProjPoint{false, r});
                    }
                } catch (const invalid_input_error&) {
                }
            }
        }
        for (const auto& s : starts) {
            // the reduced orbit is finite; collect it completely
            int k = s.infinite ? 1 : s.value.k;
            FpProjPoint z = s;
            std::vector<FpProjPoint> seen;
            while (true) {
                bool dup = false;
                for (const auto& q : seen)
                    if (q == z) dup = true;
                if (dup) break;
                seen.push_back(z);
                z = apply_mod_p(fbar, z, k);
            }
            for (auto& q : seen) xv.push_back(q);
        }
    }
    return xv;
}

}  // namespace

SieveReport sieve(const RationalMap& f, std::uint64_t pmin, std::uint64_t pmax, int kmax, int jobs) {
    if (pmin > pmax) throw invalid_input_error("empty prime window");
    if (kmax < 1) throw invalid_input_error("kmax must be >= 1");
    auto classes = critical_classes(f);
    auto orbits = critical_orbits(f);
    std::vector<int> marked;
    for (const auto& rep : orbits)
        if (rep.status == OrbitStatus::Open) marked.push_back(rep.crit_id);
    if (marked.empty()) throw invalid_input_error("no non-preperiodic critical point");

    SieveReport report;
    report.pmin = pmin;
    report.pmax = pmax;
    report.kmax = kmax;
    report.marked_crit_ids = marked;

    std::vector<std::uint64_t> primes = primes_in_range(pmin, pmax);
    std::set<int> marked_set(marked.begin(), marked.end());

    auto scan_prime = [&](std::uint64_t p, std::vector<PrimeHit>* hits, std::map<int, int>* misses) {
        if (!good_reduction(f, p)) return;
        FpRatMap fbar = reduce_map(f, p);
        std::vector<FpProjPoint> xv = reduce_exceptional_set(f, orbits, classes, p, kmax);
        for (const auto& cr : critical_points_mod_p(f, p, kmax)) {
            if (marked_set.find(cr.crit_id) == marked_set.end()) continue;
            bool excluded = false;
            for (const auto& q : xv) {
                // compare across extension degrees only when both are in the
                // prime field or structurally equal
                if (q.infinite || cr.point.infinite) {
                    if (q.infinite && cr.point.infinite) excluded = true;
                } else if (q.value.k == cr.point.value.k && q == cr.point) {
                    excluded = true;
                } else if (q.value.in_prime_field() && cr.point.value.in_prime_field() &&
                           q.value.repr[0] == cr.point.value.repr[0]) {
                    excluded = true;
                }
            }
            if (excluded) continue;
            auto [tail, cycle] = orbit_mod_p(cr.point, fbar, cr.k);
            // finite-space bound on the orbit length
            double bound = std::pow(static_cast<double>(p), cr.k) + 1.0;
            if (static_cast<double>(tail) + static_cast<double>(cycle) > bound)
                throw internal_error("orbit longer than the residue space");
            if (tail == 0) {
                hits->push_back(PrimeHit{p, cr.crit_id, cr.k, 0, cycle});
            } else {
                ++(*misses)[cr.crit_id];
            }
        }
    };

    if (jobs <= 1 || primes.size() < 2) {
        for (std::uint64_t p : primes) scan_prime(p, &report.hits, &report.miss_counts);
    } else {
        int j = std::min<int>(jobs, static_cast<int>(primes.size()));
        std::vector<std::vector<PrimeHit>> hit_parts(static_cast<std::size_t>(j));
        std::vector<std::map<int, int>> miss_parts(static_cast<std::size_t>(j));
        std::vector<std::thread> threads;
        std::size_t chunk = (primes.size() + static_cast<std::size_t>(j) - 1) / static_cast<std::size_t>(j);
        for (int t = 0; t < j; ++t) {
            threads.emplace_back([&, t]() {
                std::size_t lo = static_cast<std::size_t>(t) * chunk;
                std::size_t hi = std::min(primes.size(), lo + chunk);
                for (std::size_t i = lo; i < hi; ++i)
                    scan_prime(primes[i], &hit_parts[static_cast<std::size_t>(t)], &miss_parts[static_cast<std::size_t>(t)]);
            });
        }
        for (auto& th : threads) th.join();
        for (int t = 0; t < j; ++t) {
            for (auto& h : hit_parts[static_cast<std::size_t>(t)]) report.hits.push_back(h);
            for (auto& [id, c] : miss_parts[static_cast<std::size_t>(t)]) report.miss_counts[id] += c;
        }
    }
    std::sort(report.hits.begin(), report.hits.end(), [](const PrimeHit& a, const PrimeHit& b) {
        if (a.p != b.p) return a.p < b.p;
        if (a.crit_id != b.crit_id) return a.crit_id < b.crit_id;
        return a.k < b.k;
    });
    return report;
}

AlgebraicClass attach_class(const RationalMap& f, const PrimeHit& hit, int period_budget) {
    if (hit.cycle_len > period_budget) throw budget_error("budget exceeded");
    mpz_class p(static_cast<unsigned long>(hit.p));
    // classes come sorted by (degree, coefficients); the first with positive
    // p-valuation is the canonical choice
    for (const auto& c : galois_classes(f, hit.cycle_len, /*exact_only=*/true)) {
        if (c.is_zero_class()) continue;
        ClassVector cv = norm_vector(c);
        if (cv.vector.phi(p) > 0) return c;
    }
    throw internal_error("Hensel cross-check failed");
}

}  // namespace spectra

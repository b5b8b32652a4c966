#include "spectra/pcf.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "spectra/error.hpp"
#include "spectra/intfactor.hpp"
#include "spectra/rog.hpp"

namespace spectra {

std::vector<CriticalClass> critical_classes(const RationalMap& f) {
    BinaryForm w = critical_form(f);
    std::vector<CriticalClass> out;
    IntPoly univ = w.univariate_part();
    if (univ.degree() >= 1) {
        Factorization fac = factor_over_Z(univ);
        for (const auto& [minpoly, mult] : fac.factors)
            out.push_back(CriticalClass{minpoly, mult, false});
    }
    if (w.inf_multiplicity() > 0) out.push_back(CriticalClass{IntPoly(), w.inf_multiplicity(), true});
    return out;
}

namespace {

// exact point of P^1(Q(sqrt(D))): z = x + y sqrt(D), or infinity.
// D = 0 encodes a rational point.
struct QuadPoint {
    bool infinite = false;
    mpq_class x, y;
    mpz_class D;

    bool operator==(const QuadPoint& o) const {
        return infinite == o.infinite && (infinite || (x == o.x && y == o.y && D == o.D));
    }
    bool operator<(const QuadPoint& o) const {
        if (infinite != o.infinite) return infinite < o.infinite;
        if (infinite) return false;
        if (x != o.x) return x < o.x;
        return y < o.y;
    }
    std::string to_string() const {
        if (infinite) return "inf";
        std::ostringstream os;
        os << x.get_str();
        if (y != 0) os << (y > 0 ? "+" : "") << y.get_str() << "*sqrt(" << D.get_str() << ")";
        return os.str();
    }
    int height_bits() const {
        if (infinite) return 1;
        auto bits = [](const mpq_class& q) {
            return std::max(mpz_sizeinbase(q.get_num().get_mpz_t(), 2),
                            mpz_sizeinbase(q.get_den().get_mpz_t(), 2));
        };
        return static_cast<int>(std::max(bits(x), bits(y)));
    }
};

struct QuadElem {
    mpq_class x, y;  // x + y sqrt(D)
};

QuadElem qe_mul(const QuadElem& a, const QuadElem& b, const mpz_class& D) {
    return {a.x * b.x + a.y * b.y * D, a.x * b.y + a.y * b.x};
}

QuadElem qe_add(const QuadElem& a, const QuadElem& b) { return {a.x + b.x, a.y + b.y}; }

bool qe_is_zero(const QuadElem& a) { return a.x == 0 && a.y == 0; }

QuadElem qe_div(const QuadElem& a, const QuadElem& b, const mpz_class& D) {
    // (a / b) = a * conj(b) / N(b); N(b) = x^2 - y^2 D, nonzero for b != 0
    // (D squarefree and not a square)
    mpq_class nb = b.x * b.x - b.y * b.y * D;
    if (nb == 0) throw internal_error("quadratic field division by zero norm");
    QuadElem prod = qe_mul(a, {b.x, -b.y}, D);
    return {prod.x / nb, prod.y / nb};
}

QuadElem qe_eval(const IntPoly& p, const QuadElem& z, const mpz_class& D) {
    QuadElem acc{mpq_class(0), mpq_class(0)};
    for (int i = p.degree(); i >= 0; --i) {
        acc = qe_mul(acc, z, D);
        acc.x += p.coeff(static_cast<std::size_t>(i));
    }
    return acc;
}

// f at a quadratic (or rational, D=0-with-y=0) point; rational coefficients
// keep the orbit inside Q(sqrt(D)).
QuadPoint apply_exact(const RationalMap& f, const QuadPoint& z) {
    if (z.infinite) {
        // f(inf) = (p_d : q_d) from the homogeneous pair
        std::vector<mpz_class> nh = f.num_homog(), dh = f.den_homog();
        const mpz_class& pd = nh.back();
        const mpz_class& qd = dh.back();
        if (qd == 0) return QuadPoint{true, 0, 0, z.D};
        QuadPoint out;
        out.infinite = false;
        out.x = mpq_class(pd, qd);
        out.x.canonicalize();
        out.y = 0;
        out.D = z.D;
        return out;
    }
    QuadElem num = qe_eval(f.num(), {z.x, z.y}, z.D);
    QuadElem den = qe_eval(f.den(), {z.x, z.y}, z.D);
    if (qe_is_zero(den)) return QuadPoint{true, 0, 0, z.D};
    QuadElem r = qe_div(num, den, z.D);
    QuadPoint out;
    out.infinite = false;
    out.x = r.x;
    out.y = r.y;
    out.D = z.D;
    out.x.canonicalize();
    out.y.canonicalize();
    return out;
}

// squarefree part of a nonzero integer: n = s^2 * D with D squarefree
mpz_class squarefree_part(const mpz_class& n) {
    mpz_class d = n < 0 ? mpz_class(-1) : mpz_class(1);
    for (const auto& [p, e] : factor_integer(n)) {
        if (e % 2 == 1) d *= p;
    }
    return d;
}

CriticalOrbitReport explore_orbit(const RationalMap& f, int crit_id, const QuadPoint& start,
                                  const PcfBudgets& budgets) {
    CriticalOrbitReport rep;
    rep.crit_id = crit_id;
    std::map<QuadPoint, int> seen;
    QuadPoint z = start;
    std::vector<QuadPoint> orbit;
    for (int step = 0; step <= budgets.step_budget; ++step) {
        auto it = seen.find(z);
        if (it != seen.end()) {
            rep.tail = it->second;
            rep.cycle_len = step - it->second;
            rep.status = rep.tail == 0 ? OrbitStatus::Periodic : OrbitStatus::Preperiodic;
            rep.steps_explored = step;
            return rep;
        }
        seen.emplace(z, step);
        orbit.push_back(z);
        rep.steps.push_back(z.to_string());
        rep.height_bits.push_back(z.height_bits());
        if (z.height_bits() > budgets.height_budget_bits) break;
        z = apply_exact(f, z);
    }
    rep.status = OrbitStatus::Open;
    rep.steps_explored = static_cast<int>(orbit.size());
    return rep;
}

}  // namespace

std::vector<CriticalOrbitReport> critical_orbits(const RationalMap& f, const PcfBudgets& budgets) {
    if (budgets.step_budget < 1 || budgets.height_budget_bits < 1)
        throw invalid_input_error("budgets must be positive");
    std::vector<CriticalOrbitReport> out;
    auto classes = critical_classes(f);
    for (int id = 0; id < static_cast<int>(classes.size()); ++id) {
        const CriticalClass& c = classes[static_cast<std::size_t>(id)];
        if (c.at_infinity) {
            out.push_back(explore_orbit(f, id, QuadPoint{true, 0, 0, 0}, budgets));
        } else if (c.minpoly.degree() == 1) {
            QuadPoint z;
            z.x = mpq_class(-c.minpoly.coeff(0), c.minpoly.coeff(1));
            z.x.canonicalize();
            z.D = 0;
            out.push_back(explore_orbit(f, id, z, budgets));
        } else if (c.minpoly.degree() == 2) {
            // a z^2 + b z + c0 = 0: z = (-b +- sqrt(b^2 - 4 a c0)) / (2a)
            const mpz_class& a = c.minpoly.coeff(2);
            const mpz_class& b = c.minpoly.coeff(1);
            const mpz_class& c0 = c.minpoly.coeff(0);
            mpz_class disc = b * b - 4 * a * c0;
            mpz_class D = squarefree_part(disc);
            mpz_class ssq = disc / D;
            mpz_class s;
            mpz_sqrt(s.get_mpz_t(), ssq.get_mpz_t());
            QuadPoint z;
            z.x = mpq_class(-b, 2 * a);
            z.x.canonicalize();
            z.y = mpq_class(s, 2 * a);
            z.y.canonicalize();
            z.D = D;
            // the Galois-conjugate orbit has the same status; explore one root
            out.push_back(explore_orbit(f, id, z, budgets));
        } else {
            CriticalOrbitReport rep;
            rep.crit_id = id;
            rep.status = OrbitStatus::UnsupportedExactness;
            out.push_back(rep);
        }
    }
    return out;
}

RankGrowth rank_growth(const RationalMap& f, int nmax) {
    if (nmax < 1) throw invalid_input_error("nmax must be >= 1");
    RankGrowth out;
    std::vector<RogVector> vectors;
    for (int n = 1; n <= nmax; ++n) {
        for (const auto& c : galois_classes(f, n, /*exact_only=*/true)) {
            if (c.is_zero_class()) continue;
            vectors.push_back(norm_vector(c).vector);
        }
        out.dims.push_back(rank(vectors));
    }
    return out;
}

ClassifyResult classify(const RationalMap& f, const PcfBudgets& budgets) {
    ClassifyResult res;
    res.orbits = critical_orbits(f, budgets);
    bool all_finite = true;
    bool any_open = false;
    for (const auto& rep : res.orbits) {
        if (rep.status == OrbitStatus::Periodic || rep.status == OrbitStatus::Preperiodic) continue;
        all_finite = false;
        if (rep.status == OrbitStatus::Open) any_open = true;
    }
    if (all_finite) {
        res.verdict = PcfVerdict::PCF;
        res.detail = "every critical orbit closed exactly";
        return res;
    }
    if (any_open) {
        // monotone height growth over >= 10 consecutive steps
        bool growth = false;
        for (const auto& rep : res.orbits) {
            if (rep.status != OrbitStatus::Open) continue;
            int run = 0;
            for (std::size_t i = 1; i < rep.height_bits.size(); ++i) {
                run = rep.height_bits[i] > rep.height_bits[i - 1] ? run + 1 : 0;
                if (run >= 10) growth = true;
            }
        }
        RankGrowth rg = rank_growth(f, budgets.rank_nmax);
        res.rank_dims = rg.dims;
        bool rank_increase = false;
        for (std::size_t i = 1; i < rg.dims.size(); ++i)
            if (rg.dims[i] > rg.dims[i - 1]) rank_increase = true;
        if (growth && rank_increase) {
            res.verdict = PcfVerdict::LikelyNonPCF;
            res.detail = "open critical orbit with monotone height growth and strict rank increase";
            return res;
        }
    }
    res.verdict = PcfVerdict::Unknown;
    res.detail = "budgets exhausted without a certificate or growth evidence";
    return res;
}

}  // namespace spectra

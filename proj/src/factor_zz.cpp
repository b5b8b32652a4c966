#include "spectra/factor_zz.hpp"

#include <algorithm>

#include "spectra/error.hpp"
#include "spectra/fp.hpp"

namespace spectra {

IntPoly Factorization::expand() const {
    IntPoly prod = IntPoly::constant(unit);
    for (const auto& [f, m] : factors)
        for (int i = 0; i < m; ++i) prod = prod * f;
    // content is integral for integer inputs by Gauss's lemma
    mpq_class c = content;
    if (c.get_den() != 1) throw internal_error("non-integral content in expand");
    return prod.mul_scalar(c.get_num());
}

namespace {

// coefficients reduced into [0, m)
IntPoly reduce_mod(const IntPoly& a, const mpz_class& m) {
    std::vector<mpz_class> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        mpz_class r = a.coeff(i) % m;
        if (r < 0) r += m;
        c[i] = r;
    }
    return IntPoly(std::move(c));
}

// symmetric representative in (-m/2, m/2]
IntPoly symmetric_mod(const IntPoly& a, const mpz_class& m) {
    mpz_class half = m / 2;
    std::vector<mpz_class> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        mpz_class r = a.coeff(i) % m;
        if (r < 0) r += m;
        if (r > half) r -= m;
        c[i] = r;
    }
    return IntPoly(std::move(c));
}

IntPoly mul_mod(const IntPoly& a, const IntPoly& b, const mpz_class& m) {
    return reduce_mod(a * b, m);
}

// division by a monic divisor, coefficients mod m
void divmod_monic_mod(const IntPoly& a, const IntPoly& b, const mpz_class& m, IntPoly* q, IntPoly* r) {
    std::vector<mpz_class> rem(a.coeffs());
    std::vector<mpz_class> quo;
    if (a.degree() >= b.degree()) quo.assign(static_cast<std::size_t>(a.degree() - b.degree()) + 1, mpz_class(0));
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
        mpz_class f = rem[static_cast<std::size_t>(k + b.degree())] % m;
        if (f < 0) f += m;
        quo[static_cast<std::size_t>(k)] = f;
        if (f == 0) continue;
        for (int i = 0; i <= b.degree(); ++i) {
            mpz_class& t = rem[static_cast<std::size_t>(k + i)];
            t = (t - f * b.coeff(static_cast<std::size_t>(i))) % m;
            if (t < 0) t += m;
        }
    }
    if (q) *q = IntPoly(std::move(quo));
    if (r) *r = reduce_mod(IntPoly(std::move(rem)), m);
}

IntPoly from_fp(const FpPoly& f) {
    std::vector<mpz_class> c(static_cast<std::size_t>(f.degree()) + 1);
    for (int i = 0; i <= f.degree(); ++i) c[static_cast<std::size_t>(i)] = mpz_class(static_cast<unsigned long>(f.coeff(static_cast<std::size_t>(i))));
    return IntPoly(std::move(c));
}

// extended Euclid over F_p: s*a + t*b = 1 for coprime a, b
void fp_bezout(const FpPoly& a, const FpPoly& b, FpPoly* s, FpPoly* t) {
    std::uint64_t p = a.p();
    FpPoly r0 = a, r1 = b;
    FpPoly s0 = FpPoly::constant(p, 1), s1 = FpPoly(p, {});
    FpPoly t0 = FpPoly(p, {}), t1 = FpPoly::constant(p, 1);
    while (!r1.is_zero()) {
        FpPoly q, r;
        FpPoly::divmod(r0, r1, &q, &r);
        r0 = r1;
        r1 = r;
        FpPoly s2 = s0 - q * s1;
        s0 = s1;
        s1 = s2;
        FpPoly t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    if (r0.degree() != 0) throw internal_error("hensel: factors not coprime mod p");
    FpCtx F(p);
    std::uint64_t inv = F.inv(r0.lc());
    *s = s0.scale(inv);
    *t = t0.scale(inv);
}

// One quadratic Hensel step (von zur Gathen-Gerhard alg. 15.10): lifts
// f = g*h (mod m), s*g + t*h = 1 (mod m), h monic, to the same relations
// mod m^2.
void hensel_step(const IntPoly& f, const mpz_class& m, IntPoly* g, IntPoly* h, IntPoly* s, IntPoly* t) {
    mpz_class m2 = m * m;
    IntPoly e = reduce_mod(f - (*g) * (*h), m2);
    IntPoly q, r;
    divmod_monic_mod((*s) * e, *h, m2, &q, &r);
    IntPoly gs = reduce_mod(*g + (*t) * e + q * (*g), m2);
    IntPoly hs = reduce_mod(*h + r, m2);
    IntPoly b = reduce_mod((*s) * gs + (*t) * hs - IntPoly::constant(1), m2);
    IntPoly c, d;
    divmod_monic_mod((*s) * b, hs, m2, &c, &d);
    IntPoly ss = reduce_mod(*s - d, m2);
    IntPoly ts = reduce_mod(*t - (*t) * b - c * gs, m2);
    *g = gs;
    *h = hs;
    *s = ss;
    *t = ts;
}

// Lift the modular factorization f = lc(f) * prod(monic factors) (mod p) to
// monic factors mod P >= target via a factor tree.
void lift_tree(const IntPoly& f, const std::vector<FpPoly>& factors, std::uint64_t p,
               const mpz_class& target, std::vector<IntPoly>* out) {
    if (factors.size() == 1) {
        // monicize f mod target
        mpz_class t = target;
        mpz_class lcinv;
        mpz_class lc = f.lc() % t;
        if (lc < 0) lc += t;
        if (mpz_invert(lcinv.get_mpz_t(), lc.get_mpz_t(), t.get_mpz_t()) == 0)
            throw internal_error("hensel: leading coefficient not invertible");
        IntPoly monic = reduce_mod(f.mul_scalar(lcinv), t);
        out->push_back(monic);
        return;
    }
    std::size_t half = factors.size() / 2;
    FpPoly gbar = FpPoly::constant(p, 1), hbar = FpPoly::constant(p, 1);
    for (std::size_t i = 0; i < half; ++i) gbar = gbar * factors[i];
    for (std::size_t i = half; i < factors.size(); ++i) hbar = hbar * factors[i];
    mpz_class lc = f.lc();
    FpPoly lcp = FpPoly::reduce(IntPoly::constant(lc), p);
    if (lcp.is_zero()) throw internal_error("hensel: p divides leading coefficient");
    FpPoly g0 = gbar.scale(lcp.coeff(0));
    FpPoly s0, t0;
    fp_bezout(g0, hbar, &s0, &t0);

    IntPoly g = from_fp(g0), h = from_fp(hbar), s = from_fp(s0), t = from_fp(t0);
    mpz_class m(static_cast<unsigned long>(p));
    while (m < target) {
        hensel_step(f, m, &g, &h, &s, &t);
        m = m * m;
    }
    std::vector<FpPoly> lf(factors.begin(), factors.begin() + static_cast<long>(half));
    std::vector<FpPoly> rf(factors.begin() + static_cast<long>(half), factors.end());
    lift_tree(reduce_mod(g, m), lf, p, target, out);
    lift_tree(reduce_mod(h, m), rf, p, target, out);
}

// Landau-Mignotte style bound: any factor of g (times lc) has coefficients
// bounded by sqrt(n+1) * 2^n * |g|_inf * |lc|.
mpz_class coefficient_bound(const IntPoly& g) {
    mpz_class inf(0);
    for (const auto& c : g.coeffs()) {
        mpz_class a = abs(c);
        if (a > inf) inf = a;
    }
    mpz_class sq;
    mpz_class npl(g.degree() + 1);
    mpz_sqrt(sq.get_mpz_t(), npl.get_mpz_t());
    sq += 1;
    mpz_class two_n;
    mpz_ui_pow_ui(two_n.get_mpz_t(), 2, static_cast<unsigned long>(g.degree()));
    return sq * two_n * inf * abs(g.lc());
}

// Factor a primitive squarefree polynomial with positive lc, degree >= 1.
std::vector<IntPoly> factor_squarefree_primitive(const IntPoly& g, const FactorBudget& budget) {
    std::vector<IntPoly> out;
    if (g.degree() == 1) {
        out.push_back(g);
        return out;
    }

    // pick a prime: odd, not dividing lc, squarefree reduction; among the
    // first viable candidates keep the one with fewest modular factors.
    std::uint64_t best_p = 0;
    std::vector<std::pair<FpPoly, int>> best_factors;
    mpz_class pz(2);
    int tried = 0;
    while (tried < 4) {
        mpz_nextprime(pz.get_mpz_t(), pz.get_mpz_t());
        std::uint64_t p = pz.get_ui();
        if (mpz_divisible_p(g.lc().get_mpz_t(), pz.get_mpz_t())) continue;
        FpPoly gp = FpPoly::reduce(g, p);
        if (gp.degree() != g.degree()) continue;
        if (FpPoly::gcd(gp, gp.derivative()).degree() != 0) continue;
        auto fac = factor_mod_p(g, p);
        ++tried;
        if (best_p == 0 || fac.size() < best_factors.size()) {
            best_p = p;
            best_factors = fac;
        }
        if (best_factors.size() == 1) break;
    }
    if (best_p == 0) throw internal_error("no usable prime for factorization");
    if (best_factors.size() == 1) {
        out.push_back(g);
        return out;
    }

    // Hensel lift to P >= 2*bound + 1
    mpz_class bound = coefficient_bound(g);
    mpz_class target = 2 * bound + 1;
    std::vector<FpPoly> modular;
    modular.reserve(best_factors.size());
    for (auto& [f, m] : best_factors) {
        if (m != 1) throw internal_error("squarefree reduction has repeated factor");
        modular.push_back(f);
    }
    // actual modulus reached by repeated squaring from p
    mpz_class P(static_cast<unsigned long>(best_p));
    while (P < target) P = P * P;
    std::vector<IntPoly> lifted;
    lift_tree(g, modular, best_p, P, &lifted);

    // subset recombination
    IntPoly rem = g;
    std::vector<IntPoly> pool = lifted;
    int s = 1;
    while (2 * s <= static_cast<int>(pool.size())) {
        if (s > budget.subset_cap) throw budget_error("budget exceeded");
        bool found = false;
        // enumerate subsets of size s in lexicographic index order
        std::vector<int> idx(static_cast<std::size_t>(s));
        for (int i = 0; i < s; ++i) idx[static_cast<std::size_t>(i)] = i;
        while (true) {
            IntPoly prod = IntPoly::constant(rem.lc());
            for (int i : idx) prod = mul_mod(prod, pool[static_cast<std::size_t>(i)], P);
            IntPoly cand = symmetric_mod(prod, P).primitive_part();
            IntPoly q;
            if (cand.degree() >= 1 && IntPoly::divide_exact(rem, cand, &q)) {
                out.push_back(cand);
                rem = q;
                std::vector<IntPoly> next_pool;
                for (int i = 0; i < static_cast<int>(pool.size()); ++i)
                    if (std::find(idx.begin(), idx.end(), i) == idx.end())
                        next_pool.push_back(pool[static_cast<std::size_t>(i)]);
                pool = std::move(next_pool);
                found = true;
                break;
            }
            // next subset
            int i = s - 1;
            while (i >= 0 && idx[static_cast<std::size_t>(i)] == static_cast<int>(pool.size()) - s + i) --i;
            if (i < 0) break;
            ++idx[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < s; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
        if (!found) ++s;
    }
    if (rem.degree() >= 1) out.push_back(rem.primitive_part());
    return out;
}

}  // namespace

Factorization factor_over_Z(const IntPoly& a, const FactorBudget& budget) {
    if (a.is_zero()) throw invalid_input_error("factor of zero polynomial");
    if (a.degree() > budget.max_degree) throw budget_error("budget exceeded");
    Factorization out;
    out.unit = a.lc() > 0 ? 1 : -1;
    auto sqf = squarefree_decomposition(a);
    out.content = mpq_class(abs(sqf.content));
    for (const auto& [part, mult] : sqf.parts) {
        for (const auto& irr : factor_squarefree_primitive(part, budget))
            out.factors.emplace_back(irr, mult);
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& x, const auto& y) {
        int c = IntPoly::compare(x.first, y.first);
        return c != 0 ? c < 0 : x.second < y.second;
    });
    // merge duplicates across squarefree parts (cannot happen for exact Yun,
    // but keeps the invariant under any decomposition)
    std::vector<std::pair<IntPoly, int>> merged;
    for (auto& fm : out.factors) {
        if (!merged.empty() && merged.back().first == fm.first)
            merged.back().second += fm.second;
        else
            merged.push_back(fm);
    }
    out.factors = std::move(merged);
    return out;
}

bool is_irreducible_over_Z(const IntPoly& a, const FactorBudget& budget) {
    if (a.is_zero() || a.degree() < 1) return false;
    Factorization f = factor_over_Z(a, budget);
    return f.factors.size() == 1 && f.factors[0].second == 1;
}

}  // namespace spectra

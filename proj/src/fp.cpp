#include "spectra/fp.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "spectra/error.hpp"

namespace spectra {

namespace {

// Counter-based stream for equal-degree splitting; fixed seed so
// factorizations are reproducible across runs and platforms.
struct SplitStream {
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
};

}  // namespace

FpCtx::FpCtx(std::uint64_t prime) : p(prime) {
    if (prime < 2 || prime >= (1ull << 62)) throw invalid_input_error("prime out of supported range");
}

std::uint64_t FpCtx::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::uint64_t FpCtx::inv(std::uint64_t a) const {
    if (a % p == 0) throw internal_error("inverse of zero in F_p");
    return pow(a % p, p - 2);
}

FpPoly::FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
    for (auto& v : c_) v %= p_;
    trim();
}

void FpPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly FpPoly::reduce(const IntPoly& a, std::uint64_t p) {
    std::vector<std::uint64_t> c(a.size());
    mpz_class pz(static_cast<unsigned long>(p));
    for (std::size_t i = 0; i < a.size(); ++i) {
        mpz_class r = a.coeff(i) % pz;
        if (r < 0) r += pz;
        c[i] = r.get_ui();
    }
    return FpPoly(p, std::move(c));
}

FpPoly FpPoly::constant(std::uint64_t p, std::uint64_t v) { return FpPoly(p, {v}); }

FpPoly FpPoly::x(std::uint64_t p) { return FpPoly(p, {0, 1}); }

FpPoly FpPoly::operator+(const FpPoly& o) const {
    FpCtx F(p_);
    std::vector<std::uint64_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add(coeff(i), o.coeff(i));
    return FpPoly(p_, std::move(r));
}

FpPoly FpPoly::operator-(const FpPoly& o) const {
    FpCtx F(p_);
    std::vector<std::uint64_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.sub(coeff(i), o.coeff(i));
    return FpPoly(p_, std::move(r));
}

FpPoly FpPoly::operator*(const FpPoly& o) const {
    if (is_zero() || o.is_zero()) return FpPoly(p_, {});
    FpCtx F(p_);
    std::vector<std::uint64_t> r(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(c_[i], o.c_[j]));
    }
    return FpPoly(p_, std::move(r));
}

FpPoly FpPoly::scale(std::uint64_t a) const {
    FpCtx F(p_);
    std::vector<std::uint64_t> r(c_);
    for (auto& v : r) v = F.mul(v, a % p_);
    return FpPoly(p_, std::move(r));
}

FpPoly FpPoly::monic() const {
    if (is_zero()) return *this;
    FpCtx F(p_);
    return scale(F.inv(lc()));
}

FpPoly FpPoly::derivative() const {
    if (c_.size() <= 1) return FpPoly(p_, {});
    FpCtx F(p_);
    std::vector<std::uint64_t> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = F.mul(c_[i], i % p_);
    return FpPoly(p_, std::move(r));
}

std::uint64_t FpPoly::eval(std::uint64_t x) const {
    FpCtx F(p_);
    std::uint64_t acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = F.add(F.mul(acc, x), *it);
    return acc;
}

void FpPoly::divmod(const FpPoly& a, const FpPoly& b, FpPoly* q, FpPoly* r) {
    if (b.is_zero()) throw internal_error("FpPoly division by zero");
    FpCtx F(a.p_ ? a.p_ : b.p_);
    std::vector<std::uint64_t> rem(a.c_);
    std::vector<std::uint64_t> quo;
    if (a.degree() >= b.degree()) quo.assign(static_cast<std::size_t>(a.degree() - b.degree()) + 1, 0);
    std::uint64_t binv = F.inv(b.lc());
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
        std::uint64_t f = F.mul(rem[static_cast<std::size_t>(k + b.degree())], binv);
        quo[static_cast<std::size_t>(k)] = f;
        if (!f) continue;
        for (int i = 0; i <= b.degree(); ++i)
            rem[static_cast<std::size_t>(k + i)] =
                F.sub(rem[static_cast<std::size_t>(k + i)], F.mul(f, b.c_[static_cast<std::size_t>(i)]));
    }
    if (q) *q = FpPoly(F.p, std::move(quo));
    if (r) *r = FpPoly(F.p, std::move(rem));
}

FpPoly FpPoly::gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        FpPoly r;
        divmod(a, b, nullptr, &r);
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

FpPoly FpPoly::mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m) {
    FpPoly r;
    divmod(a * b, m, nullptr, &r);
    return r;
}

FpPoly FpPoly::powmod(const FpPoly& base, const mpz_class& e, const FpPoly& m) {
    FpPoly r = FpPoly::constant(m.p(), 1);
    FpPoly b;
    divmod(base, m, nullptr, &b);
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        k >>= 1;
    }
    return r;
}

int FpPoly::compare(const FpPoly& a, const FpPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i] ? -1 : 1;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// factorization over F_p

namespace {

// p-th root of a polynomial whose derivative vanishes (all exponents
// divisible by p): sum a_i x^(i/p) with a_i -> a_i^(p^(k-1))... over F_p the
// coefficients are fixed by Frobenius, so it is just exponent division.
FpPoly pth_root(const FpPoly& f) {
    std::uint64_t p = f.p();
    std::vector<std::uint64_t> r(static_cast<std::size_t>(f.degree() / static_cast<int>(p)) + 1, 0);
    for (int i = 0; i <= f.degree(); i += static_cast<int>(p))
        r[static_cast<std::size_t>(i / static_cast<int>(p))] = f.coeff(static_cast<std::size_t>(i));
    return FpPoly(p, std::move(r));
}

void squarefree_fp(const FpPoly& f, int outer_mult, std::vector<std::pair<FpPoly, int>>* out) {
    std::uint64_t p = f.p();
    if (f.degree() <= 0) return;
    FpPoly d = f.derivative();
    if (d.is_zero()) {
        squarefree_fp(pth_root(f), outer_mult * static_cast<int>(p), out);
        return;
    }
    FpPoly g = FpPoly::gcd(f, d);
    FpPoly w;
    FpPoly::divmod(f, g, &w, nullptr);
    int i = 1;
    while (w.degree() > 0) {
        FpPoly y = FpPoly::gcd(w, g);
        FpPoly fac;
        FpPoly::divmod(w, y, &fac, nullptr);
        if (fac.degree() > 0) out->emplace_back(fac.monic(), i * outer_mult);
        FpPoly g2;
        FpPoly::divmod(g, y, &g2, nullptr);
        g = g2;
        w = y;
        ++i;
    }
    if (g.degree() > 0) squarefree_fp(pth_root(g), outer_mult * static_cast<int>(p), out);
}

// Cantor-Zassenhaus equal-degree split of a squarefree product of
// irreducibles all of degree d.
void equal_degree_split(const FpPoly& f, int d, SplitStream* rng, std::vector<FpPoly>* out) {
    std::uint64_t p = f.p();
    if (f.degree() == d) {
        out->push_back(f.monic());
        return;
    }
    FpCtx F(p);
    FpPoly splitter;
    while (true) {
        // deterministic pseudo-random polynomial of degree < deg f
        std::vector<std::uint64_t> rc(static_cast<std::size_t>(f.degree()));
        for (auto& v : rc) v = rng->below(p);
        FpPoly r(p, std::move(rc));
        if (r.degree() < 1 && p > 2) continue;
        FpPoly g = FpPoly::gcd(f, r);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            splitter = g;
            break;
        }
        if (p == 2) {
            // trace map: r + r^2 + r^4 + ... over F_{2^d}
            FpPoly t = r, acc = r;
            for (int i = 1; i < d; ++i) {
                t = FpPoly::mulmod(t, t, f);
                acc = acc + t;
            }
            g = FpPoly::gcd(f, acc);
        } else {
            mpz_class e;
            mpz_class q(static_cast<unsigned long>(p));
            mpz_pow_ui(e.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(d));
            e = (e - 1) / 2;
            FpPoly h = FpPoly::powmod(r, e, f);
            g = FpPoly::gcd(f, h - FpPoly::constant(p, 1));
        }
        if (g.degree() > 0 && g.degree() < f.degree()) {
            splitter = g;
            break;
        }
    }
    FpPoly cof;
    FpPoly::divmod(f, splitter, &cof, nullptr);
    equal_degree_split(splitter, d, rng, out);
    equal_degree_split(cof, d, rng, out);
}

// distinct-degree then equal-degree factorization of a monic squarefree f.
std::vector<FpPoly> factor_squarefree_fp(const FpPoly& f0) {
    std::vector<FpPoly> out;
    FpPoly f = f0.monic();
    std::uint64_t p = f.p();
    SplitStream rng;
    FpPoly xq = FpPoly::x(p);  // x^(p^d) mod f, updated per d
    int d = 0;
    while (f.degree() > 0) {
        ++d;
        if (f.degree() < 2 * d) {
            out.push_back(f.monic());
            break;
        }
        xq = FpPoly::powmod(xq, mpz_class(static_cast<unsigned long>(p)), f);
        FpPoly g = FpPoly::gcd(f, xq - FpPoly::x(p));
        if (g.degree() > 0) {
            equal_degree_split(g, d, &rng, &out);
            FpPoly f2;
            FpPoly::divmod(f, g, &f2, nullptr);
            f = f2;
            FpPoly xr;
            FpPoly::divmod(xq, f, nullptr, &xr);
            xq = xr;
        }
    }
    return out;
}

}  // namespace

std::vector<std::pair<FpPoly, int>> factor_mod_p(const IntPoly& a, std::uint64_t p) {
    if (a.is_zero()) throw invalid_input_error("factor_mod_p of zero");
    FpCtx F(p);
    mpz_class pz(static_cast<unsigned long>(p));
    if (mpz_divisible_p(a.lc().get_mpz_t(), pz.get_mpz_t()))
        throw invalid_input_error("bad leading reduction");
    FpPoly f = FpPoly::reduce(a, p);
    std::vector<std::pair<FpPoly, int>> out;
    if (f.degree() <= 0) return out;

    std::vector<std::pair<FpPoly, int>> sqf;
    squarefree_fp(f.monic(), 1, &sqf);
    for (const auto& [part, mult] : sqf) {
        for (const auto& irr : factor_squarefree_fp(part)) out.emplace_back(irr, mult);
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        int c = FpPoly::compare(x.first, y.first);
        return c != 0 ? c < 0 : x.second < y.second;
    });
    // merge equal factors
    std::vector<std::pair<FpPoly, int>> merged;
    for (auto& fm : out) {
        if (!merged.empty() && merged.back().first == fm.first)
            merged.back().second += fm.second;
        else
            merged.push_back(fm);
    }
    return merged;
}

// ---------------------------------------------------------------------------
// F_{p^k}

namespace {

bool is_irreducible(const FpPoly& f) {
    // f monic of degree k: irreducible iff x^(p^k) = x mod f and
    // gcd(x^(p^(k/q)) - x, f) = 1 for prime divisors q of k.
    int k = f.degree();
    std::uint64_t p = f.p();
    mpz_class pz(static_cast<unsigned long>(p));
    FpPoly x = FpPoly::x(p);
    FpPoly xp = x;
    std::vector<FpPoly> powers(static_cast<std::size_t>(k) + 1);  // x^(p^i) mod f
    powers[0] = x;
    for (int i = 1; i <= k; ++i) {
        xp = FpPoly::powmod(xp, pz, f);
        powers[static_cast<std::size_t>(i)] = xp;
    }
    if (!(powers[static_cast<std::size_t>(k)] == x)) {
        FpPoly r;
        FpPoly::divmod(x, f, nullptr, &r);
        if (!(powers[static_cast<std::size_t>(k)] == r)) return false;
    }
    for (int q = 2; q <= k; ++q) {
        if (k % q != 0) continue;
        bool prime = true;
        for (int t = 2; t * t <= q; ++t)
            if (q % t == 0) prime = false;
        if (!prime) continue;
        FpPoly g = FpPoly::gcd(f, powers[static_cast<std::size_t>(k / q)] - x);
        if (g.degree() != 0) return false;
    }
    return true;
}

std::mutex g_modulus_mutex;
std::map<std::pair<std::uint64_t, int>, FpPoly> g_modulus_cache;

}  // namespace

FpPoly fpk_modulus(std::uint64_t p, int k) {
    if (k < 1) throw invalid_input_error("extension degree must be >= 1");
    {
        std::lock_guard<std::mutex> lock(g_modulus_mutex);
        auto it = g_modulus_cache.find({p, k});
        if (it != g_modulus_cache.end()) return it->second;
    }
    FpPoly result;
    if (k == 1) {
        result = FpPoly::x(p);
    } else {
        // enumerate monic degree-k polynomials by ascending constant-first
        // coefficient tuple (c_0, c_1, ..., c_{k-1})
        std::vector<std::uint64_t> c(static_cast<std::size_t>(k) + 1, 0);
        c[static_cast<std::size_t>(k)] = 1;
        bool found = false;
        while (!found) {
            FpPoly cand(p, std::vector<std::uint64_t>(c));
            if (is_irreducible(cand)) {
                result = cand;
                found = true;
                break;
            }
            // increment the tuple with c_{k-1} fastest, so candidates come up
            // in ascending (c_0, c_1, ...) lexicographic order
            int pos = k - 1;
            while (pos >= 0) {
                std::size_t idx = static_cast<std::size_t>(pos);
                if (++c[idx] < p) break;
                c[idx] = 0;
                --pos;
            }
            if (pos < 0) throw internal_error("no irreducible of requested degree");
        }
    }
    std::lock_guard<std::mutex> lock(g_modulus_mutex);
    g_modulus_cache.emplace(std::make_pair(p, k), result);
    return result;
}

bool FpkElem::is_zero() const {
    for (auto v : repr)
        if (v) return false;
    return true;
}

bool FpkElem::in_prime_field() const {
    for (std::size_t i = 1; i < repr.size(); ++i)
        if (repr[i]) return false;
    return true;
}

std::string FpkElem::to_string() const {
    std::ostringstream os;
    if (k == 1) {
        os << (repr.empty() ? 0 : repr[0]);
        return os.str();
    }
    os << "[";
    for (int i = 0; i < k; ++i) {
        if (i) os << ",";
        os << (static_cast<std::size_t>(i) < repr.size() ? repr[static_cast<std::size_t>(i)] : 0);
    }
    os << "]";
    return os.str();
}

FpkElem fpk_from_base(std::uint64_t p, int k, std::uint64_t v) {
    FpkElem e;
    e.p = p;
    e.k = k;
    e.repr.assign(static_cast<std::size_t>(k), 0);
    e.repr[0] = v % p;
    return e;
}

namespace {

FpPoly to_poly(const FpkElem& a) { return FpPoly(a.p, std::vector<std::uint64_t>(a.repr)); }

FpkElem from_poly(std::uint64_t p, int k, const FpPoly& q) {
    FpkElem e;
    e.p = p;
    e.k = k;
    e.repr.assign(static_cast<std::size_t>(k), 0);
    for (int i = 0; i <= q.degree() && i < k; ++i) e.repr[static_cast<std::size_t>(i)] = q.coeff(static_cast<std::size_t>(i));
    return e;
}

void check_same_field(const FpkElem& a, const FpkElem& b) {
    if (a.p != b.p || a.k != b.k) throw internal_error("mixed finite fields");
}

}  // namespace

FpkElem fpk_add(const FpkElem& a, const FpkElem& b) {
    check_same_field(a, b);
    return from_poly(a.p, a.k, to_poly(a) + to_poly(b));
}

FpkElem fpk_sub(const FpkElem& a, const FpkElem& b) {
    check_same_field(a, b);
    return from_poly(a.p, a.k, to_poly(a) - to_poly(b));
}

FpkElem fpk_mul(const FpkElem& a, const FpkElem& b) {
    check_same_field(a, b);
    if (a.k == 1) {
        FpCtx F(a.p);
        FpkElem e = a;
        e.repr[0] = F.mul(a.repr.empty() ? 0 : a.repr[0], b.repr.empty() ? 0 : b.repr[0]);
        return e;
    }
    FpPoly m = fpk_modulus(a.p, a.k);
    return from_poly(a.p, a.k, FpPoly::mulmod(to_poly(a), to_poly(b), m));
}

FpkElem fpk_inv(const FpkElem& a) {
    if (a.is_zero()) throw internal_error("inverse of zero in F_{p^k}");
    if (a.k == 1) {
        FpCtx F(a.p);
        FpkElem e = a;
        e.repr[0] = F.inv(a.repr[0]);
        return e;
    }
    // a^(p^k - 2)
    mpz_class q;
    mpz_class pz(static_cast<unsigned long>(a.p));
    mpz_pow_ui(q.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(a.k));
    q -= 2;
    FpPoly m = fpk_modulus(a.p, a.k);
    FpPoly r = FpPoly::powmod(to_poly(a), q, m);
    return from_poly(a.p, a.k, r);
}

FpkElem fpk_eval(const IntPoly& poly, const FpkElem& x) {
    return fpk_eval(FpPoly::reduce(poly, x.p), x);
}

FpkElem fpk_eval(const FpPoly& poly, const FpkElem& x) {
    FpkElem acc = fpk_from_base(x.p, x.k, 0);
    for (int i = poly.degree(); i >= 0; --i) {
        acc = fpk_mul(acc, x);
        FpkElem c = fpk_from_base(x.p, x.k, poly.coeff(static_cast<std::size_t>(i)));
        acc = fpk_add(acc, c);
    }
    return acc;
}

std::vector<FpkElem> roots_in_fpk(const IntPoly& a, std::uint64_t p, int k) {
    // factor mod p; factors of degree j | k contribute j roots in F_{p^k}.
    auto factors = factor_mod_p(a, p);
    std::vector<FpkElem> roots;
    for (const auto& [fac, mult] : factors) {
        int j = fac.degree();
        if (j < 1 || k % j != 0) continue;
        if (j == 1) {
            FpCtx F(p);
            FpkElem e = fpk_from_base(p, k, F.sub(0, fac.coeff(0)));  // -c0, fac monic
            for (int m = 0; m < mult; ++m) roots.push_back(e);
            continue;
        }
        // j > 1: fac splits completely over F_{p^k}; extract its roots with
        // a deterministic CZ-style split of fac viewed in F_{p^k}[y].
        std::vector<FpkElem> fac_roots;
        // represent polynomials over F_{p^k} as vector<FpkElem>
        using ExtPoly = std::vector<FpkElem>;
        auto ext_trim = [](ExtPoly& f) {
            while (!f.empty() && f.back().is_zero()) f.pop_back();
        };
        auto ext_divmod = [&](const ExtPoly& A, const ExtPoly& B, ExtPoly* Q, ExtPoly* R) {
            ExtPoly rem = A, quo;
            if (static_cast<int>(A.size()) >= static_cast<int>(B.size()))
                quo.assign(A.size() - B.size() + 1, fpk_from_base(p, k, 0));
            FpkElem binv = fpk_inv(B.back());
            for (int t = static_cast<int>(A.size()) - static_cast<int>(B.size()); t >= 0; --t) {
                FpkElem f = fpk_mul(rem[static_cast<std::size_t>(t) + B.size() - 1], binv);
                quo[static_cast<std::size_t>(t)] = f;
                if (f.is_zero()) continue;
                for (std::size_t i = 0; i < B.size(); ++i)
                    rem[static_cast<std::size_t>(t) + i] = fpk_sub(rem[static_cast<std::size_t>(t) + i], fpk_mul(f, B[i]));
            }
            ext_trim(rem);
            if (Q) *Q = quo;
            if (R) *R = rem;
        };
        auto ext_gcd = [&](ExtPoly A, ExtPoly B) {
            ext_trim(A);
            ext_trim(B);
            while (!B.empty()) {
                ExtPoly R;
                ext_divmod(A, B, nullptr, &R);
                A = std::move(B);
                B = std::move(R);
            }
            if (!A.empty()) {
                FpkElem inv = fpk_inv(A.back());
                for (auto& v : A) v = fpk_mul(v, inv);
            }
            return A;
        };
        auto ext_mulmod = [&](const ExtPoly& A, const ExtPoly& B, const ExtPoly& M) {
            ExtPoly prod(A.size() + B.size() - 1, fpk_from_base(p, k, 0));
            for (std::size_t i = 0; i < A.size(); ++i)
                for (std::size_t j2 = 0; j2 < B.size(); ++j2)
                    prod[i + j2] = fpk_add(prod[i + j2], fpk_mul(A[i], B[j2]));
            ext_trim(prod);
            ExtPoly R;
            ext_divmod(prod, M, nullptr, &R);
            return R;
        };
        auto ext_powmod = [&](ExtPoly base, mpz_class e, const ExtPoly& M) {
            ExtPoly r{fpk_from_base(p, k, 1)};
            ExtPoly R0;
            ext_divmod(base, M, nullptr, &R0);
            base = R0;
            while (e > 0) {
                if (mpz_odd_p(e.get_mpz_t())) r = ext_mulmod(r, base, M);
                base = ext_mulmod(base, base, M);
                e >>= 1;
            }
            return r;
        };

        // fac lifted to F_{p^k}[y]
        ExtPoly F0;
        for (int i = 0; i <= fac.degree(); ++i)
            F0.push_back(fpk_from_base(p, k, fac.coeff(static_cast<std::size_t>(i))));

        mpz_class q;
        mpz_class pz(static_cast<unsigned long>(p));
        mpz_pow_ui(q.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(k));

        SplitStream rng;
        std::vector<ExtPoly> stack{F0};
        while (!stack.empty()) {
            ExtPoly cur = stack.back();
            stack.pop_back();
            ext_trim(cur);
            if (static_cast<int>(cur.size()) <= 1) continue;
            if (cur.size() == 2) {
                // linear: root = -c0 / c1
                FpkElem root = fpk_mul(fpk_sub(fpk_from_base(p, k, 0), cur[0]), fpk_inv(cur[1]));
                fac_roots.push_back(root);
                continue;
            }
            // split
            ExtPoly splitter;
            bool split_found = false;
            while (!split_found) {
                // random linear shift y + c
                std::vector<std::uint64_t> cc(static_cast<std::size_t>(k));
                for (auto& v : cc) v = rng.below(p);
                FpkElem shift;
                shift.p = p;
                shift.k = k;
                shift.repr = cc;
                ExtPoly lin{shift, fpk_from_base(p, k, 1)};
                ExtPoly g;
                if (p == 2) {
                    // trace over F_2: sum lin^(2^i), i < k * deg... use k*j bits
                    ExtPoly acc = lin, t = lin;
                    long bits = static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 2)) - 1;
                    for (long i2 = 1; i2 < bits; ++i2) {
                        t = ext_mulmod(t, t, cur);
                        // acc += t
                        if (acc.size() < t.size()) acc.resize(t.size(), fpk_from_base(p, k, 0));
                        for (std::size_t i3 = 0; i3 < t.size(); ++i3) acc[i3] = fpk_add(acc[i3], t[i3]);
                        ext_trim(acc);
                    }
                    g = ext_gcd(cur, acc);
                } else {
                    ExtPoly h = ext_powmod(lin, (q - 1) / 2, cur);
                    if (h.empty()) h.push_back(fpk_from_base(p, k, 0));
                    h[0] = fpk_sub(h[0], fpk_from_base(p, k, 1));
                    g = ext_gcd(cur, h);
                }
                if (!g.empty() && static_cast<int>(g.size()) - 1 > 0 &&
                    g.size() < cur.size()) {
                    splitter = g;
                    split_found = true;
                }
            }
            ExtPoly cof;
            ext_divmod(cur, splitter, &cof, nullptr);
            stack.push_back(splitter);
            stack.push_back(cof);
        }
        std::sort(fac_roots.begin(), fac_roots.end(), [](const FpkElem& a2, const FpkElem& b2) {
            return a2.repr < b2.repr;
        });
        for (const auto& r : fac_roots)
            for (int m = 0; m < mult; ++m) roots.push_back(r);
    }
    std::sort(roots.begin(), roots.end(), [](const FpkElem& a2, const FpkElem& b2) { return a2.repr < b2.repr; });
    return roots;
}

}  // namespace spectra

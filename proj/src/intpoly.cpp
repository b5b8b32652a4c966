#include "spectra/intpoly.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "spectra/error.hpp"

namespace spectra {

std::size_t coefficient_budget_bytes() {
    static const std::size_t budget = [] {
        if (const char* env = std::getenv("SPECLAB_BUDGET_MB")) {
            long mb = std::strtol(env, nullptr, 10);
            if (mb > 0) return static_cast<std::size_t>(mb) << 20;
        }
        return std::size_t{1} << 20;
    }();
    return budget;
}

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
    c_.reserve(coeffs.size());
    for (long v : coeffs) c_.emplace_back(v);
    trim();
}

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::constant(const mpz_class& a) {
    IntPoly p;
    if (a != 0) p.c_.push_back(a);
    return p;
}

IntPoly IntPoly::monomial(const mpz_class& a, std::size_t k) {
    IntPoly p;
    if (a != 0) {
        p.c_.assign(k + 1, mpz_class(0));
        p.c_[k] = a;
    }
    return p;
}

const mpz_class& IntPoly::coeff(std::size_t i) const {
    static const mpz_class kZero(0);
    return i < c_.size() ? c_[i] : kZero;
}

const mpz_class& IntPoly::lc() const { return c_.back(); }

IntPoly IntPoly::operator-() const {
    IntPoly r(*this);
    for (auto& v : r.c_) v = -v;
    return r;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    IntPoly r;
    r.c_.resize(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = coeff(i) + o.coeff(i);
    r.trim();
    return r;
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
    IntPoly r;
    r.c_.resize(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = coeff(i) - o.coeff(i);
    r.trim();
    return r;
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return IntPoly();
    IntPoly r;
    r.c_.assign(c_.size() + o.c_.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            r.c_[i + j] += c_[i] * o.c_[j];
        }
    }
    r.trim();
    return r;
}

IntPoly IntPoly::mul_scalar(const mpz_class& a) const {
    if (a == 0) return IntPoly();
    IntPoly r(*this);
    for (auto& v : r.c_) v *= a;
    return r;
}

IntPoly IntPoly::shift(std::size_t k) const {
    if (is_zero() || k == 0) return *this;
    IntPoly r;
    r.c_.assign(k, mpz_class(0));
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
}

IntPoly IntPoly::derivative() const {
    IntPoly r;
    if (c_.size() <= 1) return r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * static_cast<long>(i);
    r.trim();
    return r;
}

IntPoly IntPoly::reverse() const {
    IntPoly r(*this);
    std::reverse(r.c_.begin(), r.c_.end());
    r.trim();
    return r;
}

mpz_class IntPoly::content() const {
    mpz_class g(0);
    for (const auto& v : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPoly IntPoly::primitive_part() const {
    if (is_zero()) return IntPoly();
    mpz_class g = content();
    if (lc() < 0) g = -g;
    IntPoly r(*this);
    for (auto& v : r.c_) v /= g;
    return r;
}

bool IntPoly::is_primitive() const {
    return !is_zero() && content() == 1 && lc() > 0;
}

mpz_class IntPoly::eval(const mpz_class& x) const {
    mpz_class acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

mpq_class IntPoly::eval(const mpq_class& x) const {
    mpq_class acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

mpz_class IntPoly::eval_homog(const mpz_class& x, const mpz_class& y, int d) const {
    // sum c_i x^i y^(d-i); coefficients above the degree are zero.
    mpz_class acc(0), xp(1);
    std::vector<mpz_class> ypow(static_cast<std::size_t>(d) + 1);
    ypow[0] = 1;
    for (int i = 1; i <= d; ++i) ypow[static_cast<std::size_t>(i)] = ypow[static_cast<std::size_t>(i - 1)] * y;
    for (int i = 0; i <= d; ++i) {
        if (i < static_cast<int>(c_.size())) acc += c_[static_cast<std::size_t>(i)] * xp * ypow[static_cast<std::size_t>(d - i)];
        xp *= x;
    }
    return acc;
}

bool IntPoly::divide_exact(const IntPoly& a, const IntPoly& b, IntPoly* q) {
    if (b.is_zero()) throw internal_error("division by zero polynomial");
    if (a.is_zero()) {
        *q = IntPoly();
        return true;
    }
    if (a.degree() < b.degree()) return false;
    std::vector<mpz_class> rem = a.c_;
    std::vector<mpz_class> quo(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
    const mpz_class& blc = b.lc();
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
        mpz_class& top = rem[static_cast<std::size_t>(k + b.degree())];
        if (top == 0) {
            quo[static_cast<std::size_t>(k)] = 0;
            continue;
        }
        if (!mpz_divisible_p(top.get_mpz_t(), blc.get_mpz_t())) return false;
        mpz_class f = top / blc;
        quo[static_cast<std::size_t>(k)] = f;
        for (int i = 0; i <= b.degree(); ++i)
            rem[static_cast<std::size_t>(k + i)] -= f * b.c_[static_cast<std::size_t>(i)];
    }
    for (const auto& v : rem)
        if (v != 0) return false;
    *q = IntPoly(std::move(quo));
    return true;
}

IntPoly IntPoly::pseudo_rem(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw internal_error("pseudo_rem by zero");
    IntPoly r = a;
    int e = a.degree() - b.degree() + 1;
    if (e <= 0) e = 1;
    const mpz_class& d = b.lc();
    int steps = 0;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        IntPoly t = IntPoly::monomial(r.lc(), static_cast<std::size_t>(r.degree() - b.degree()));
        r = r.mul_scalar(d) - b * t;
        ++steps;
    }
    // normalize to lc(b)^e * a mod b so subresultant bookkeeping stays exact
    for (; steps < e; ++steps) r = r.mul_scalar(d);
    return r;
}

std::size_t IntPoly::byte_size() const {
    std::size_t total = 0;
    for (const auto& v : c_) total += (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8 + 1;
    return total;
}

int IntPoly::compare(const IntPoly& a, const IntPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        int c = cmp(a.c_[i], b.c_[i]);
        if (c != 0) return c;
    }
    return 0;
}

std::string IntPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const mpz_class& v = c_[static_cast<std::size_t>(i)];
        if (v == 0) continue;
        if (!first) os << (v > 0 ? " + " : " - ");
        else if (v < 0) os << "-";
        first = false;
        mpz_class av = abs(v);
        if (av != 1 || i == 0) os << av.get_str();
        if (i > 0) {
            if (av != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// subresultant PRS

namespace {

// Standard resultant Res_std(a, b) = lc(a)^deg(b) prod b(alpha) over roots of a,
// by the subresultant PRS (Cohen, Algorithm 3.3.7).
mpz_class resultant_std(IntPoly a, IntPoly b) {
    if (a.is_zero() || b.is_zero()) throw invalid_input_error("resultant of zero polynomial");
    mpz_class s(1);
    if (a.degree() < b.degree()) {
        if ((a.degree() & 1) && (b.degree() & 1)) s = -1;
        std::swap(a, b);
    }
    if (b.degree() == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), b.lc().get_mpz_t(), static_cast<unsigned long>(a.degree()));
        return s * r;
    }
    mpz_class g(1), h(1), t(1);
    // track content so the PRS runs on primitive-ish parts
    while (true) {
        int da = a.degree(), db = b.degree();
        int delta = da - db;
        if ((da & 1) && (db & 1)) s = -s;
        IntPoly r = IntPoly::pseudo_rem(a, b);
        if (r.is_zero()) return mpz_class(0);
        a = b;
        mpz_class gh = g;
        for (int i = 0; i < delta; ++i) gh *= h;
        b = IntPoly();
        {
            std::vector<mpz_class> rc = r.coeffs();
            for (auto& v : rc) {
                if (!mpz_divisible_p(v.get_mpz_t(), gh.get_mpz_t()))
                    throw internal_error("subresultant PRS: inexact reduction");
                v /= gh;
            }
            b = IntPoly(std::move(rc));
        }
        g = a.lc();
        if (delta >= 1) {
            // h = g^delta / h^(delta-1)
            mpz_class gn;
            mpz_pow_ui(gn.get_mpz_t(), g.get_mpz_t(), static_cast<unsigned long>(delta));
            mpz_class hd(1);
            mpz_pow_ui(hd.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta - 1));
            h = gn / hd;
        }
        if (b.degree() == 0) {
            // resultant = h^(1-da') * lc(b)^da' adjusted; final formula:
            int da2 = a.degree();
            mpz_class num;
            mpz_pow_ui(num.get_mpz_t(), b.lc().get_mpz_t(), static_cast<unsigned long>(da2));
            mpz_class hd(1);
            if (da2 >= 1) mpz_pow_ui(hd.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(da2 - 1));
            return s * num / hd;
        }
    }
}

}  // namespace

IntPoly subresultant_gcd(const IntPoly& a0, const IntPoly& b0) {
    if (a0.is_zero() && b0.is_zero()) throw invalid_input_error("gcd(0, 0) undefined");
    if (a0.is_zero()) return b0.primitive_part();
    if (b0.is_zero()) return a0.primitive_part();
    IntPoly a = a0.primitive_part(), b = b0.primitive_part();
    if (a.degree() < b.degree()) std::swap(a, b);
    mpz_class g(1), h(1);
    while (true) {
        if (b.is_zero()) return a.primitive_part();
        if (b.degree() == 0) return IntPoly::constant(1);
        int delta = a.degree() - b.degree();
        IntPoly r = IntPoly::pseudo_rem(a, b);
        if (r.is_zero()) return b.primitive_part();
        mpz_class gh = g;
        for (int i = 0; i < delta; ++i) gh *= h;
        {
            std::vector<mpz_class> rc = r.coeffs();
            for (auto& v : rc) {
                if (!mpz_divisible_p(v.get_mpz_t(), gh.get_mpz_t()))
                    throw internal_error("subresultant PRS: inexact reduction");
                v /= gh;
            }
            r = IntPoly(std::move(rc));
        }
        a = b;
        b = r;
        g = a.lc();
        if (delta >= 1) {
            mpz_class gn;
            mpz_pow_ui(gn.get_mpz_t(), g.get_mpz_t(), static_cast<unsigned long>(delta));
            mpz_class hd(1);
            mpz_pow_ui(hd.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta - 1));
            h = gn / hd;
        }
    }
}

mpz_class resultant(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) throw invalid_input_error("resultant of zero polynomial");
    // Res(a, b) = lc(b)^deg(a) prod a(beta) over roots of b = Res_std(b, a).
    return resultant_std(b, a);
}

SquarefreeDecomposition squarefree_decomposition(const IntPoly& a) {
    if (a.is_zero()) throw invalid_input_error("squarefree decomposition of zero");
    SquarefreeDecomposition out;
    IntPoly p = a.primitive_part();
    out.content = a.lc() > 0 ? a.content() : -a.content();
    if (p.degree() == 0) return out;

    IntPoly dp = p.derivative();
    IntPoly g = subresultant_gcd(p, dp);
    IntPoly w, y;
    if (!IntPoly::divide_exact(p, g, &w)) throw internal_error("yun: gcd does not divide");
    if (!IntPoly::divide_exact(dp, g, &y)) throw internal_error("yun: gcd does not divide derivative");
    int k = 1;
    while (w.degree() > 0) {
        IntPoly z = y - w.derivative();
        if (z.is_zero()) {
            if (w.degree() > 0) out.parts.emplace_back(w.primitive_part(), k);
            break;
        }
        IntPoly f = subresultant_gcd(w, z);
        if (f.degree() > 0) out.parts.emplace_back(f.primitive_part(), k);
        IntPoly wn, yn;
        if (!IntPoly::divide_exact(w, f, &wn)) throw internal_error("yun: inexact step");
        if (!IntPoly::divide_exact(z, f, &yn)) throw internal_error("yun: inexact step");
        w = wn;
        y = yn;
        ++k;
    }
    // account for sign/scale absorbed by the primitive parts
    IntPoly prod = IntPoly::constant(1);
    for (const auto& [part, e] : out.parts)
        for (int i = 0; i < e; ++i) prod = prod * part;
    // a = content * prod must hold exactly; adjust content by the ratio of lcs
    mpz_class num = a.lc(), den = prod.lc();
    out.content = num / den;
    return out;
}

// ---------------------------------------------------------------------------
// RatPoly

void RatPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
    for (auto& v : c_) v.canonicalize();
}

RatPoly RatPoly::from_int(const IntPoly& p) {
    std::vector<mpq_class> c;
    c.reserve(p.size());
    for (const auto& v : p.coeffs()) c.emplace_back(v);
    return RatPoly(std::move(c));
}

const mpq_class& RatPoly::coeff(std::size_t i) const {
    static const mpq_class kZero(0);
    return i < c_.size() ? c_[i] : kZero;
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
    std::vector<mpq_class> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
    return RatPoly(std::move(r));
}

RatPoly RatPoly::operator-(const RatPoly& o) const {
    std::vector<mpq_class> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) - o.coeff(i);
    return RatPoly(std::move(r));
}

RatPoly RatPoly::operator*(const RatPoly& o) const {
    if (is_zero() || o.is_zero()) return RatPoly();
    std::vector<mpq_class> r(c_.size() + o.c_.size() - 1, mpq_class(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return RatPoly(std::move(r));
}

mpq_class RatPoly::eval(const mpq_class& x) const {
    mpq_class acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

void RatPoly::divmod(const RatPoly& a, const RatPoly& b, RatPoly* q, RatPoly* r) {
    if (b.is_zero()) throw internal_error("RatPoly division by zero");
    std::vector<mpq_class> rem = a.c_;
    std::vector<mpq_class> quo;
    if (a.degree() >= b.degree()) quo.assign(static_cast<std::size_t>(a.degree() - b.degree()) + 1, mpq_class(0));
    const mpq_class& blc = b.c_.back();
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
        mpq_class f = rem[static_cast<std::size_t>(k + b.degree())] / blc;
        quo[static_cast<std::size_t>(k)] = f;
        if (f == 0) continue;
        for (int i = 0; i <= b.degree(); ++i)
            rem[static_cast<std::size_t>(k + i)] -= f * b.c_[static_cast<std::size_t>(i)];
    }
    *q = RatPoly(std::move(quo));
    *r = RatPoly(std::move(rem));
}

std::pair<IntPoly, mpq_class> RatPoly::to_primitive() const {
    if (is_zero()) return {IntPoly(), mpq_class(0)};
    mpz_class den(1);
    for (const auto& v : c_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den().get_mpz_t());
    std::vector<mpz_class> ic(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        mpq_class scaled = c_[i] * den;
        ic[i] = scaled.get_num();
    }
    IntPoly p(std::move(ic));
    mpz_class cont = p.content();
    if (p.lc() < 0) cont = -cont;
    IntPoly prim = p.primitive_part();
    mpq_class scale(cont, den);
    scale.canonicalize();
    return {prim, scale};
}

}  // namespace spectra

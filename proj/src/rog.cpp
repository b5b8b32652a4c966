#include "spectra/rog.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "spectra/error.hpp"
#include "spectra/intfactor.hpp"
#include "spectra/pcf.hpp"
#include "spectra/sieve.hpp"

namespace spectra {

RogVector::RogVector(std::map<mpz_class, mpq_class> entries) : e_(std::move(entries)) {
    for (auto it = e_.begin(); it != e_.end();) {
        if (it->second == 0)
            it = e_.erase(it);
        else
            ++it;
    }
}

mpq_class RogVector::phi(const mpz_class& p) const {
    auto it = e_.find(p);
    return it == e_.end() ? mpq_class(0) : it->second;
}

RogVector RogVector::operator+(const RogVector& o) const {
    std::map<mpz_class, mpq_class> r = e_;
    for (const auto& [p, v] : o.e_) r[p] += v;
    return RogVector(std::move(r));
}

RogVector RogVector::scale(const mpq_class& a) const {
    std::map<mpz_class, mpq_class> r = e_;
    for (auto& [p, v] : r) v *= a;
    return RogVector(std::move(r));
}

std::string RogVector::to_string() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [p, v] : e_) {
        if (!first) os << ", ";
        first = false;
        os << p.get_str() << ": " << v.get_str();
    }
    os << "}";
    return os.str();
}

RogVector rog_of_rational(const mpq_class& q) {
    if (q == 0) throw invalid_input_error("rog 0 = infinity");
    std::map<mpz_class, mpq_class> e;
    for (const auto& [p, k] : factor_integer(q.get_num())) e[p] += k;
    for (const auto& [p, k] : factor_integer(q.get_den())) e[p] -= k;
    return RogVector(std::move(e));
}

ClassVector norm_vector(const AlgebraicClass& c) {
    if (c.is_zero_class() || c.minpoly.coeff(0) == 0)
        throw invalid_input_error("zero multiplier excluded from Per*");
    mpq_class n = c.norm();
    ClassVector out;
    out.cls = c;
    out.norm = n;
    mpq_class absn = n < 0 ? mpq_class(-n) : n;
    out.vector = rog_of_rational(absn).scale(mpq_class(1, c.minpoly.degree()));
    return out;
}

int rank(const std::vector<RogVector>& vs) {
    // collect primes, build a dense rational matrix, eliminate exactly
    std::set<mpz_class> primes;
    for (const auto& v : vs)
        for (const auto& [p, e] : v.entries()) primes.insert(p);
    if (primes.empty()) return 0;
    std::vector<mpz_class> plist(primes.begin(), primes.end());
    std::vector<std::vector<mpq_class>> m;
    for (const auto& v : vs) {
        std::vector<mpq_class> row(plist.size(), mpq_class(0));
        for (std::size_t j = 0; j < plist.size(); ++j) row[j] = v.phi(plist[j]);
        m.push_back(std::move(row));
    }
    int rank_count = 0;
    std::size_t col = 0;
    for (std::size_t row = 0; row < m.size() && col < plist.size(); ++col) {
        std::size_t piv = row;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[row], m[piv]);
        for (std::size_t i = row + 1; i < m.size(); ++i) {
            if (m[i][col] == 0) continue;
            mpq_class factor = m[i][col] / m[row][col];
            for (std::size_t j = col; j < plist.size(); ++j) m[i][j] -= factor * m[row][j];
        }
        ++rank_count;
        ++row;
    }
    return rank_count;
}

RogVector fold_involution(const RogVector& v, const RogVector& w) {
    return (v + w).scale(mpq_class(1, 2));
}

std::optional<TriangleViolation> verify_upper_triangle(TriangleCertificate* cert) {
    int k = static_cast<int>(cert->rows.size());
    cert->phi_matrix.assign(static_cast<std::size_t>(k), std::vector<mpq_class>(static_cast<std::size_t>(k), mpq_class(0)));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            cert->phi_matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                cert->rows[static_cast<std::size_t>(i)].cv.vector.phi(cert->rows[static_cast<std::size_t>(j)].prime);
    cert->verified = false;
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            const mpq_class& v = cert->phi_matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (v < 0) return TriangleViolation{i, j, "negative entry (O-membership fails)"};
            if (j > i && v != 0) return TriangleViolation{i, j, "nonzero entry below the triangle"};
            if (j == i && v <= 0) return TriangleViolation{i, j, "diagonal not positive"};
        }
    }
    cert->verified = true;
    cert->achieved_dim = k;
    return std::nullopt;
}

namespace {

void try_add_row(TriangleCertificate* cert, const ClassVector& cv, const mpz_class& p) {
    // the new prime must not touch previously selected classes, and the new
    // class must be nonnegative at previously selected primes
    for (const auto& row : cert->rows) {
        if (row.cv.vector.phi(p) != 0) return;
        if (cv.vector.phi(row.prime) < 0) return;
    }
    if (cv.vector.phi(p) <= 0) return;
    cert->rows.push_back(TriangleRow{cv, p});
}

}  // namespace

TriangleCertificate independence_certificate(const RationalMap& f, int target_dim,
                                             std::uint64_t prime_max, int period_max) {
    if (target_dim < 1 || period_max < 1 || prime_max < 2)
        throw invalid_input_error("budgets must be positive");
    TriangleCertificate cert;

    bool has_marked = false;
    for (const auto& rep : critical_orbits(f)) {
        if (rep.status == OrbitStatus::Open) has_marked = true;
    }

    if (has_marked) {
        // the greedy recursion on sieve hits, ascending prime order
        SieveReport rep = sieve(f, 2, prime_max, /*kmax=*/2);
        for (const auto& hit : rep.hits) {
            if (static_cast<int>(cert.rows.size()) >= target_dim) break;
            if (hit.cycle_len > period_max) continue;
            mpz_class p(static_cast<unsigned long>(hit.p));
            bool used = false;
            for (const auto& row : cert.rows)
                if (row.prime == p) used = true;
            if (used) continue;
            AlgebraicClass c = attach_class(f, hit, period_max);
            try_add_row(&cert, norm_vector(c), p);
        }
    } else {
        // no usable sieve: enumerate classes by ascending period and walk
        // candidate primes in ascending order
        struct Candidate {
            mpz_class p;
            int period;
            ClassVector cv;
        };
        std::vector<Candidate> cands;
        for (int n = 1; n <= period_max; ++n) {
            for (const auto& c : galois_classes(f, n, /*exact_only=*/true)) {
                if (c.is_zero_class()) continue;
                ClassVector cv = norm_vector(c);
                for (const auto& [p, e] : cv.vector.entries()) {
                    if (e > 0 && p <= static_cast<unsigned long>(prime_max))
                        cands.push_back(Candidate{p, n, cv});
                }
            }
        }
        std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
            if (a.p != b.p) return a.p < b.p;
            if (a.period != b.period) return a.period < b.period;
            return IntPoly::compare(a.cv.cls.minpoly, b.cv.cls.minpoly) < 0;
        });
        for (const auto& cand : cands) {
            if (static_cast<int>(cert.rows.size()) >= target_dim) break;
            bool used = false;
            for (const auto& row : cert.rows)
                if (row.prime == cand.p) used = true;
            if (used) continue;
            try_add_row(&cert, cand.cv, cand.p);
        }
    }

    cert.budget_exhausted = static_cast<int>(cert.rows.size()) < target_dim;
    auto violation = verify_upper_triangle(&cert);
    if (violation) throw internal_error("constructed certificate failed verification at (" +
                                        std::to_string(violation->i) + "," + std::to_string(violation->j) + ")");
    // a verified triangle system has independent rows; cross-check the rank
    std::vector<RogVector> vs;
    for (const auto& row : cert.rows) vs.push_back(row.cv.vector);
    if (rank(vs) != static_cast<int>(cert.rows.size()))
        throw internal_error("certificate rows are not independent");
    return cert;
}

}  // namespace spectra

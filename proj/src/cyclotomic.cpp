#include "shape/cyclotomic.hpp"

#include "shape/errors.hpp"
#include "shape/numtheory.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

namespace shape {

CycElem::CycElem(std::int64_t m) : m_(m), c_(static_cast<std::size_t>(m), Rat(0)) {
    if (m < 1) throw ShapeError(Errc::ModulusMismatch, "modulus must be positive");
}

CycElem CycElem::constant(std::int64_t m, const Rat &c) {
    CycElem x(m);
    x.c_[0] = c;
    return x;
}

CycElem CycElem::zeta_power(std::int64_t m, std::int64_t e) {
    CycElem x(m);
    x.c_[nt::mod(e, m)] = 1;
    return x;
}

namespace {

void require_same_modulus(const CycElem &a, const CycElem &b) {
    if (a.modulus() != b.modulus())
        throw ShapeError(Errc::ModulusMismatch, std::to_string(a.modulus()) + " vs " +
                                                    std::to_string(b.modulus()));
}

} // namespace

CycElem &CycElem::operator+=(const CycElem &o) {
    require_same_modulus(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

CycElem &CycElem::operator-=(const CycElem &o) {
    require_same_modulus(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

CycElem &CycElem::operator*=(const Rat &s) {
    for (auto &v : c_) v *= s;
    return *this;
}

CycElem operator*(const CycElem &a, const CycElem &b) { return cyc_mul(a, b); }

CycElem cyc_mul(const CycElem &x, const CycElem &y) {
    require_same_modulus(x, y);
    const std::int64_t m = x.modulus();
    std::vector<std::int64_t> nx, ny;
    for (std::int64_t i = 0; i < m; ++i) {
        if (x.coeff(i) != 0) nx.push_back(i);
        if (y.coeff(i) != 0) ny.push_back(i);
    }
    CycElem z(m);
    for (auto i : nx)
        for (auto j : ny) {
            std::int64_t k = i + j;
            if (k >= m) k -= m;
            z.coeff(k) += x.coeff(i) * y.coeff(j);
        }
    return z;
}

CycElem power(const CycElem &x, unsigned e) {
    CycElem r = CycElem::one(x.modulus());
    CycElem b = x;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

CycElem galois_apply(std::int64_t a, const CycElem &x) {
    const std::int64_t m = x.modulus();
    if (std::gcd(nt::mod(a, m), m) != 1)
        throw ShapeError(Errc::NotCoprime, std::to_string(a) + " is not a unit mod " + std::to_string(m));
    CycElem y(m);
    for (std::int64_t e = 0; e < m; ++e)
        if (x.coeff(e) != 0) y.coeff(nt::mulmod(nt::mod(a, m), e, m)) += x.coeff(e);
    return y;
}

CycElem conjugate(const CycElem &x) { return galois_apply(-1, x); }

// ---------------------------------------------------------------------------
// cyclotomic polynomials and canonical forms

namespace {

using Poly = std::vector<Int>; // constant term first

Poly poly_mul(const Poly &a, const Poly &b) {
    Poly c(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

// Exact quotient of a by the monic polynomial b.
Poly poly_divexact(Poly a, const Poly &b) {
    const std::size_t db = b.size() - 1;
    Poly q(a.size() - db, Int(0));
    for (std::size_t k = a.size(); k-- > db;) {
        Int c = a[k];
        q[k - db] = c;
        if (c == 0) continue;
        for (std::size_t i = 0; i <= db; ++i) a[k - db + i] -= c * b[i];
    }
    return q;
}

std::mutex phi_mutex;
std::map<std::int64_t, Poly> phi_memo;

const Poly &cyclotomic_locked(std::int64_t m) {
    auto it = phi_memo.find(m);
    if (it != phi_memo.end()) return it->second;
    // Φ_m = (x^m - 1) / Π_{d | m, d < m} Φ_d
    Poly num(static_cast<std::size_t>(m) + 1, Int(0));
    num[0] = -1;
    num[m] = 1;
    Poly den{Int(1)};
    for (std::int64_t d = 1; d < m; ++d)
        if (m % d == 0) den = poly_mul(den, cyclotomic_locked(d));
    return phi_memo.emplace(m, poly_divexact(std::move(num), den)).first->second;
}

} // namespace

const std::vector<Int> &cyclotomic_polynomial(std::int64_t m) {
    std::lock_guard<std::mutex> lock(phi_mutex);
    // std::map nodes are stable, so the reference outlives the lock
    return cyclotomic_locked(m);
}

std::vector<Rat> CycElem::canonical() const {
    const Poly &phi = cyclotomic_polynomial(m_);
    const std::size_t deg = phi.size() - 1;
    std::vector<Rat> r = c_;
    for (std::size_t k = r.size(); k-- > deg;) {
        if (r[k] == 0) continue;
        Rat c = r[k];
        for (std::size_t i = 0; i <= deg; ++i) r[k - deg + i] -= c * phi[i];
    }
    r.resize(deg);
    return r;
}

bool CycElem::is_zero() const {
    auto c = canonical();
    return std::all_of(c.begin(), c.end(), [](const Rat &v) { return v == 0; });
}

bool CycElem::is_integral() const {
    auto c = canonical();
    return std::all_of(c.begin(), c.end(), [](const Rat &v) { return v.get_den() == 1; });
}

bool operator==(const CycElem &a, const CycElem &b) {
    if (a.modulus() != b.modulus()) return false;
    if (a.same_representation(b)) return true;
    return a.canonical() == b.canonical();
}

// ---------------------------------------------------------------------------
// traces, norms

Int trace_zeta_power(std::int64_t m, std::int64_t c) {
    const std::int64_t g = std::gcd(nt::mod(c, m), m);
    const std::int64_t t = m / (g == 0 ? m : g);
    return Int(nt::moebius(t)) * Int(nt::euler_phi(m) / nt::euler_phi(t));
}

Rat trace_Q(const CycElem &x) {
    const std::int64_t m = x.modulus();
    Rat s = 0;
    for (std::int64_t e = 0; e < m; ++e)
        if (x.coeff(e) != 0) s += x.coeff(e) * trace_zeta_power(m, e);
    return s;
}

bool fixed_by(const CycElem &x, const std::vector<std::int64_t> &residues) {
    const std::int64_t m = x.modulus();
    bool raw = true;
    for (auto h : residues) {
        for (std::int64_t e = 0; e < m && raw; ++e)
            if (x.coeff(nt::mulmod(h, e, m)) != x.coeff(e)) raw = false;
        if (!raw) break;
    }
    if (raw) return true;
    // the redundant representation need not be invariant even if x is
    for (auto h : residues)
        if (!(galois_apply(h, x) == x)) return false;
    return true;
}

Rat subfield_trace(const CycElem &x, const FieldSpec &spec) {
    if (x.modulus() != spec.conductor)
        throw ShapeError(Errc::ModulusMismatch, "element modulus differs from the conductor");
    if (!fixed_by(x, spec.subgroup))
        throw ShapeError(Errc::NotInSubfield, "element is not fixed by the subgroup");
    Rat scale(spec.ell, nt::euler_phi(spec.conductor));
    scale.canonicalize();
    return scale * trace_Q(x);
}

namespace {

// Π_{a ∈ (ℤ/m)*, a ≠ 1} σ_a(y)
CycElem other_conjugates(const CycElem &y) {
    CycElem p = CycElem::one(y.modulus());
    for (auto a : nt::units(y.modulus()))
        if (a != 1 % y.modulus()) p = p * galois_apply(a, y);
    return p;
}

Rat rational_value(const CycElem &x) {
    auto c = x.canonical();
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i] != 0) throw ShapeError(Errc::CertificationFailed, "norm is not rational");
    return c.empty() ? Rat(0) : c[0];
}

} // namespace

Rat norm(const CycElem &x) { return rational_value(x * other_conjugates(x)); }

NormInfo norm_and_unit(const CycElem &x) {
    if (!x.is_integral()) throw ShapeError(Errc::NotIntegral, "element is not in ℤ[ζ_m]");
    NormInfo info;
    info.norm = norm(x);
    info.is_unit = abs(info.norm) == 1;
    return info;
}

CycElem exact_divide(const CycElem &x, const CycElem &y) {
    require_same_modulus(x, y);
    CycElem rest = other_conjugates(y);
    Rat n = rational_value(y * rest);
    if (n == 0) throw ShapeError(Errc::NotIntegral, "division by zero in Q(zeta)");
    return (x * rest) / n;
}

bool in_inverse_different(const CycElem &x) {
    const std::int64_t m = x.modulus();
    const std::int64_t deg = nt::euler_phi(m);
    for (std::int64_t i = 0; i < deg; ++i) {
        Rat t = trace_Q(x * CycElem::zeta_power(m, i));
        if (t.get_den() != 1) return false;
    }
    return true;
}

CycElem gaussian_period(std::int64_t f, const std::vector<std::int64_t> &subgroup,
                        std::int64_t coset_rep) {
    if (f < 1) throw ShapeError(Errc::BadSubgroup, "conductor must be positive");
    std::set<std::int64_t> h;
    for (auto a : subgroup) {
        std::int64_t r = nt::mod(a, f);
        if (std::gcd(r, f) != 1 && f > 1)
            throw ShapeError(Errc::BadSubgroup, std::to_string(a) + " is not a unit");
        h.insert(r);
    }
    if (h.empty() || !h.count(1 % f)) throw ShapeError(Errc::BadSubgroup, "subgroup must contain 1");
    for (auto a : h)
        for (auto b : h)
            if (!h.count(nt::mulmod(a, b, f)))
                throw ShapeError(Errc::BadSubgroup, "residues are not closed under multiplication");
    const std::int64_t phi = nt::euler_phi(f);
    if (phi % static_cast<std::int64_t>(h.size()) != 0 ||
        !nt::is_prime(phi / static_cast<std::int64_t>(h.size())))
        throw ShapeError(Errc::BadSubgroup, "subgroup index is not prime");
    if (std::gcd(nt::mod(coset_rep, f), f) != 1)
        throw ShapeError(Errc::NotCoprime, "coset representative is not a unit");
    CycElem eta(f);
    for (auto a : h) eta.coeff(nt::mulmod(a, nt::mod(coset_rep, f), f)) += 1;
    return eta;
}

std::string rat_to_string(const Rat &r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

} // namespace shape

#include "g2glue/poly.hpp"

#include <algorithm>

namespace g2glue {

namespace {

// True when the string can sit inside a polynomial term without parentheses.
// Plain fractions like 3/2 are fine; sums, products and powers are not.
bool plain_atom(const std::string& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '+' || c == '*' || c == '^') return false;
        if (c == '-' && i > 0) return false;
    }
    return true;
}

}  // namespace

Poly::Poly(RingPtr ring, std::vector<Elem> coeffs)
    : ring_(std::move(ring)), c_(std::move(coeffs)) {
    for (const auto& c : c_) {
        if (!c.valid() || !c.ring()->same(*ring_))
            throw PreconditionError("polynomial coefficient over a foreign ring");
    }
    normalize();
}

void Poly::normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::constant(const Elem& c) {
    return Poly(c.ring(), std::vector<Elem>{c});
}

Poly Poly::x(const RingPtr& ring) {
    return Poly(ring, {ring->zero(), ring->one()});
}

Poly Poly::from_ints(const RingPtr& ring, const std::vector<long long>& coeffs) {
    std::vector<Elem> c;
    c.reserve(coeffs.size());
    for (long long v : coeffs) c.push_back(ring->from_int(v));
    return Poly(ring, std::move(c));
}

Elem Poly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return ring_->zero();
    return c_[i];
}

Elem Poly::lc() const { return c_.empty() ? ring_->zero() : c_.back(); }

bool Poly::is_monic() const { return !c_.empty() && c_.back().is_one(); }

Elem Poly::eval(const Elem& x) const {
    Elem acc = ring_->zero();
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

Poly Poly::derivative() const {
    std::vector<Elem> d;
    for (std::size_t i = 1; i < c_.size(); ++i)
        d.push_back(ring_->from_int(static_cast<long long>(i)) * c_[i]);
    return Poly(ring_, std::move(d));
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(lc().inv());
}

Poly Poly::scaled(const Elem& s) const {
    std::vector<Elem> c;
    c.reserve(c_.size());
    for (const auto& x : c_) c.push_back(x * s);
    return Poly(ring_, std::move(c));
}

Poly Poly::reversed(int n) const {
    if (n < degree()) throw PreconditionError("reversed(): n below the degree");
    std::vector<Elem> c(n + 1, ring_->zero());
    for (int i = 0; i <= degree(); ++i) c[n - i] = c_[i];
    return Poly(ring_, std::move(c));
}

Poly operator+(const Poly& a, const Poly& b) {
    std::size_t n = std::max(a.c_.size(), b.c_.size());
    std::vector<Elem> c;
    c.reserve(n);
    for (std::size_t i = 0; i < n; ++i) c.push_back(a.coeff(static_cast<int>(i)) +
                                                    b.coeff(static_cast<int>(i)));
    return Poly(a.ring_ ? a.ring_ : b.ring_, std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
    std::size_t n = std::max(a.c_.size(), b.c_.size());
    std::vector<Elem> c;
    c.reserve(n);
    for (std::size_t i = 0; i < n; ++i) c.push_back(a.coeff(static_cast<int>(i)) -
                                                    b.coeff(static_cast<int>(i)));
    return Poly(a.ring_ ? a.ring_ : b.ring_, std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.ring_ ? a.ring_ : b.ring_);
    std::vector<Elem> c(a.c_.size() + b.c_.size() - 1, a.ring_->zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(a.ring_, std::move(c));
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        if (!(a.c_[i] == b.c_[i])) return false;
    return true;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw PreconditionError("polynomial division by zero");
    if (!b.ring_->is_field())
        throw PreconditionError("polynomial division needs field coefficients");
    Poly r = a;
    std::vector<Elem> q(std::max(0, a.degree() - b.degree() + 1),
                        a.ring_->zero());
    Elem lc_inv = b.lc().inv();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int shift = r.degree() - b.degree();
        Elem c = r.lc() * lc_inv;
        q[shift] = c;
        std::vector<Elem> sub(r.c_.begin(), r.c_.end());
        for (int i = 0; i <= b.degree(); ++i)
            sub[shift + i] = sub[shift + i] - c * b.c_[i];
        r = Poly(a.ring_, std::move(sub));
    }
    return {Poly(a.ring_, std::move(q)), r};
}

Poly Poly::gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

bool Poly::divides(const Poly& other) const {
    if (is_zero()) return other.is_zero();
    return divmod(other, *this).second.is_zero();
}

bool Poly::is_squarefree() const {
    if (is_zero()) throw PreconditionError("squarefreeness of the zero polynomial");
    return gcd(*this, derivative()).degree() == 0;
}

int Poly::cmp(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (int i = a.degree(); i >= 0; --i) {
        int c = Elem::cmp(a.c_[i], b.c_[i]);
        if (c) return c;
    }
    return 0;
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        const Elem c = coeff(i);
        if (c.is_zero()) continue;
        std::string cs = c.str();
        bool pl = plain_atom(cs);
        std::string xpart =
            i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
        std::string term;
        if (i == 0)
            term = pl ? cs : "(" + cs + ")";
        else if (c.is_one())
            term = xpart;
        else if ((-c).is_one() && pl)
            term = "-" + xpart;
        else
            term = (pl ? cs : "(" + cs + ")") + "*" + xpart;
        if (s.empty())
            s = term;
        else if (term[0] == '-')
            s += term;
        else
            s += "+" + term;
    }
    return s;
}

// ---------------------------------------------------------------------------

Elem make_ratfn_elem(const RingPtr& ring, Poly num, Poly den) {
    if (!ring || ring->kind() != RingKind::RationalFunctionField)
        throw PreconditionError("make_ratfn_elem: not a function field");
    if (den.is_zero()) throw PreconditionError("division by zero polynomial");
    if (!num.ring()->same(*ring->base()))
        throw PreconditionError("make_ratfn_elem: numerator over a foreign base");
    if (num.is_zero()) {
        num = Poly(ring->base());
        den = Poly::constant(ring->base()->one());
    } else {
        Poly g = Poly::gcd(num, den);
        if (g.degree() > 0) {
            num = Poly::divmod(num, g).first;
            den = Poly::divmod(den, g).first;
        }
        Elem s = den.lc().inv();
        num = num.scaled(s);
        den = den.scaled(s);
    }
    auto payload = std::make_shared<const RatFn>(RatFn{std::move(num), std::move(den)});
    Elem e;
    e.ring_ = ring;
    e.v_ = std::move(payload);
    return e;
}

// ---------------------------------------------------------------------------
// Root finding.

namespace {

// Multiplicity of a known root r, removing the corresponding linear factors.
int strip_root(Poly& f, const Elem& r) {
    Poly lin(f.ring(), {-r, f.ring()->one()});
    int m = 0;
    for (;;) {
        auto [q, rem] = Poly::divmod(f, lin);
        if (!rem.is_zero()) break;
        f = q;
        ++m;
    }
    return m;
}

std::vector<BigInt> divisors_of(BigInt v) {
    if (v < 0) v = -v;
    if (v > BigInt("1000000000000"))
        throw PreconditionError("rational root search: coefficients too large");
    std::vector<BigInt> ds;
    for (BigInt d = 1; d * d <= v; ++d) {
        if (v % d == 0) {
            ds.push_back(d);
            ds.push_back(v / d);
        }
    }
    return ds;
}

std::vector<RootMult> rational_roots(Poly f) {
    const RingPtr ring = f.ring();
    std::vector<RootMult> out;
    // x^v factor first.
    int v = 0;
    while (!f.is_zero() && f.coeff(0).is_zero()) {
        f = Poly::divmod(f, Poly::x(ring)).first;
        ++v;
    }
    if (v > 0) out.push_back({ring->zero(), v});
    if (f.degree() < 1) return out;
    // Clear denominators to an integer polynomial.
    BigInt scale = 1;
    for (const auto& c : f.coeffs()) scale = boost::multiprecision::lcm(scale, c.rat().den);
    std::vector<BigInt> ic;
    for (const auto& c : f.coeffs()) ic.push_back(c.rat().num * (scale / c.rat().den));
    // Candidates num/den with num | ic[0], den | lc.
    auto nums = divisors_of(ic.front());
    auto dens = divisors_of(ic.back());
    for (const auto& n : nums) {
        for (const auto& d : dens) {
            for (int sign = 0; sign < 2; ++sign) {
                BigInt nn = sign ? -n : n;
                if (boost::multiprecision::gcd(n, d) != 1) continue;
                Elem cand = ring->from_bigint(nn) / ring->from_bigint(d);
                if (f.eval(cand).is_zero()) {
                    int m = strip_root(f, cand);
                    if (m > 0) out.push_back({cand, m});
                }
            }
        }
    }
    return out;
}

std::vector<RootMult> finite_field_roots(Poly f) {
    const RingPtr ring = f.ring();
    BigInt q = ring->order();
    if (q > 4'000'000)
        throw PreconditionError("finite-field root scan: field too large (" +
                                q.str() + " elements)");
    std::vector<RootMult> out;
    std::uint64_t n = q.convert_to<std::uint64_t>();
    for (std::uint64_t i = 0; i < n && f.degree() > 0; ++i) {
        Elem x = ring->element_at(i);
        if (f.eval(x).is_zero()) out.push_back({x, strip_root(f, x)});
    }
    return out;
}

}  // namespace

std::vector<RootMult> poly_roots(const Poly& f) {
    if (f.is_zero()) throw PreconditionError("poly_roots of the zero polynomial");
    std::vector<RootMult> out;
    switch (f.ring()->kind()) {
        case RingKind::Rationals:
            out = rational_roots(f);
            break;
        case RingKind::PrimeField:
        case RingKind::ExtensionField:
            out = finite_field_roots(f);
            break;
        default:
            throw PreconditionError(
                "poly_roots supports finite fields and the rationals only");
    }
    std::sort(out.begin(), out.end(), [](const RootMult& a, const RootMult& b) {
        return Elem::cmp(a.root, b.root) < 0;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Square roots.

namespace {

// Tonelli-Shanks over any finite field of odd order q.
std::optional<Elem> finite_field_sqrt(const Elem& a) {
    const RingPtr ring = a.ring();
    if (a.is_zero()) return ring->zero();
    BigInt q = ring->order();
    BigInt half = (q - 1) / 2;
    Elem ls = a.pow_big(half);
    if (!ls.is_one()) return std::nullopt;  // Euler criterion
    // q - 1 = 2^s * m, m odd.
    BigInt m = q - 1;
    int s = 0;
    while ((m & 1) == 0) {
        m >>= 1;
        ++s;
    }
    if (s == 1) return a.pow_big((q + 1) / 4);
    // Any non-residue will do; scan deterministically.
    Elem z;
    for (std::uint64_t i = 2;; ++i) {
        z = ring->element_at(i);
        if (!z.is_zero() && !z.pow_big(half).is_one()) break;
    }
    Elem c = z.pow_big(m);
    Elem t = a.pow_big(m);
    Elem r = a.pow_big((m + 1) / 2);
    int big_m = s;
    while (!t.is_one()) {
        Elem tt = t;
        int i = 0;
        while (!tt.is_one()) {
            tt = tt * tt;
            ++i;
        }
        Elem b = c;
        for (int j = 0; j < big_m - i - 1; ++j) b = b * b;
        big_m = i;
        c = b * b;
        t = t * c;
        r = r * b;
    }
    return r;
}

std::optional<Elem> ratfn_sqrt(const Elem& a) {
    const RingPtr ring = a.ring();
    if (a.is_zero()) return ring->zero();
    const RatFn& f = a.ratfn();
    Elem lead = f.num.lc();
    auto w0 = square_root(lead);
    if (!w0) return std::nullopt;
    auto gn = poly_square_root(f.num.monic());
    if (!gn) return std::nullopt;
    auto gd = poly_square_root(f.den);  // canonical denominator is monic
    if (!gd) return std::nullopt;
    return make_ratfn_elem(ring, gn->scaled(*w0), *gd);
}

}  // namespace

std::optional<Elem> square_root(const Elem& a) {
    switch (a.ring()->kind()) {
        case RingKind::Rationals: {
            const Rat& r = a.rat();
            if (r.num < 0) return std::nullopt;
            BigInt sn = boost::multiprecision::sqrt(r.num);
            BigInt sd = boost::multiprecision::sqrt(r.den);
            if (sn * sn != r.num || sd * sd != r.den) return std::nullopt;
            return a.ring()->from_bigint(sn) / a.ring()->from_bigint(sd);
        }
        case RingKind::PrimeField:
        case RingKind::ExtensionField:
            return finite_field_sqrt(a);
        case RingKind::RationalFunctionField:
            return ratfn_sqrt(a);
        case RingKind::ResidueRing:
            throw PreconditionError("square roots over Z/n are unsupported");
    }
    throw InternalError("square_root: bad kind");
}

std::optional<Poly> poly_square_root(const Poly& f) {
    if (f.is_zero()) return f;
    if (!f.is_monic())
        throw PreconditionError("poly_square_root expects a monic polynomial");
    if (f.degree() % 2 != 0) return std::nullopt;
    int m = f.degree() / 2;
    const RingPtr ring = f.ring();
    std::vector<Elem> g(m + 1, ring->zero());
    g[m] = ring->one();
    Elem two_inv = ring->from_int(2).inv();
    for (int j = m - 1; j >= 0; --j) {
        // Coefficient of x^{m+j} in g^2 is 2 g_j + sum_{i=j+1}^{m-1} g_i g_{m+j-i}.
        Elem acc = f.coeff(m + j);
        for (int i = j + 1; i <= m - 1; ++i) acc = acc - g[i] * g[m + j - i];
        g[j] = acc * two_inv;
    }
    Poly cand(ring, std::move(g));
    if (cand * cand == f) return cand;
    return std::nullopt;
}

}  // namespace g2glue

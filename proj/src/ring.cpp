#include "g2glue/ring.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <map>
#include <sstream>

#include "g2glue/poly.hpp"

namespace g2glue {

// ---------------------------------------------------------------------------
// Modular helpers (moduli < 2^31, so int64 products never overflow).

std::int64_t mod_norm(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t m) {
    return (a * b) % m;
}

std::int64_t mod_pow(std::int64_t a, std::uint64_t e, std::int64_t m) {
    std::int64_t r = 1 % m;
    a = mod_norm(a, m);
    while (e) {
        if (e & 1) r = mod_mul(r, a, m);
        a = mod_mul(a, a, m);
        e >>= 1;
    }
    return r;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t mod_inv(std::int64_t a, std::int64_t m) {
    a = mod_norm(a, m);
    std::int64_t old_r = a, r = m;
    std::int64_t old_s = 1, s = 0;
    while (r) {
        std::int64_t q = old_r / r;
        std::int64_t t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1)
        throw PreconditionError("element " + std::to_string(a) +
                                " is not invertible modulo " + std::to_string(m));
    return mod_norm(old_s, m);
}

bool is_prime64(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::vector<std::string> split_top(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char ch : s) {
        if (ch == '(' || ch == '[') ++depth;
        if (ch == ')' || ch == ']') --depth;
        if (ch == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

// ---------------------------------------------------------------------------
// Dense polynomials over F_p on raw int64 vectors (ascending, trimmed).
// Used for extension-field residues, modulus search and irreducibility.

namespace fpx {

using V = std::vector<std::int64_t>;

void trim(V& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

V add(const V& a, const V& b, std::int64_t p) {
    V r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::int64_t s = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
        r[i] = s % p;
    }
    trim(r);
    return r;
}

V sub(const V& a, const V& b, std::int64_t p) {
    V r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::int64_t s = (i < a.size() ? a[i] : 0) - (i < b.size() ? b[i] : 0);
        r[i] = mod_norm(s, p);
    }
    trim(r);
    return r;
}

V mul(const V& a, const V& b, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    V r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    trim(r);
    return r;
}

// b nonzero.
std::pair<V, V> divmod(V a, const V& b, std::int64_t p) {
    V q;
    std::int64_t lc_inv = mod_inv(b.back(), p);
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, 0);
    while (a.size() >= b.size() && !a.empty()) {
        std::int64_t c = mod_mul(a.back(), lc_inv, p);
        std::size_t shift = a.size() - b.size();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = mod_norm(a[shift + i] - c * b[i] % p, p);
        trim(a);
    }
    trim(q);
    return {q, a};
}

V rem(const V& a, const V& b, std::int64_t p) { return divmod(a, b, p).second; }

V gcd(V a, V b, std::int64_t p) {
    while (!b.empty()) {
        V r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        std::int64_t s = mod_inv(a.back(), p);
        for (auto& c : a) c = mod_mul(c, s, p);
    }
    return a;
}

V mulmod(const V& a, const V& b, const V& m, std::int64_t p) {
    return rem(mul(a, b, p), m, p);
}

V powmod(V base, BigInt e, const V& m, std::int64_t p) {
    V r{1};
    base = rem(base, m, p);
    while (e > 0) {
        if ((e & 1) != 0) r = mulmod(r, base, m, p);
        base = mulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

// Inverse of a modulo m (both over F_p), gcd(a, m) = 1.
V invmod(const V& a, const V& m, std::int64_t p) {
    V old_r = rem(a, m, p), r = m;
    V old_s{1}, s{};
    while (!r.empty()) {
        auto [q, rr] = divmod(old_r, r, p);
        old_r = std::move(r);
        r = std::move(rr);
        V ss = sub(old_s, mul(q, s, p), p);
        old_s = std::move(s);
        s = std::move(ss);
    }
    if (old_r.size() != 1)
        throw PreconditionError("non-invertible extension-field element");
    std::int64_t c = mod_inv(old_r[0], p);
    for (auto& x : old_s) x = mod_mul(x, c, p);
    trim(old_s);
    return old_s;
}

// Monic f of degree k >= 1 over F_p.  Distinct-degree sieve: f is irreducible
// iff gcd(x^{p^i} - x, f) = 1 for all i <= k/2.
bool irreducible(const V& f, std::int64_t p) {
    int k = static_cast<int>(f.size()) - 1;
    if (k < 1) return false;
    V t{0, 1};  // x
    for (int i = 1; 2 * i <= k; ++i) {
        t = powmod(t, BigInt(p), f, p);  // x^{p^i} mod f
        V diff = sub(t, V{0, 1}, p);
        if (gcd(diff, f, p).size() != 1) return false;
    }
    return true;
}

}  // namespace fpx

namespace {

constexpr std::int64_t kMaxModulus = (std::int64_t{1} << 31) - 1;

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    std::vector<std::pair<std::int64_t, int>> fs;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            fs.emplace_back(d, e);
        }
    }
    if (n > 1) fs.emplace_back(n, 1);
    return fs;
}

// Least monic irreducible of degree k over F_p, non-leading coefficients
// ordered by the value c_0 + c_1 p + ... + c_{k-1} p^{k-1}.
std::vector<std::int64_t> find_modulus(std::int64_t p, int k) {
    if (k == 1) return {0, 1};  // x
    BigInt count = 1;
    for (int i = 0; i < k; ++i) count *= p;
    for (BigInt m = 0; m < count; ++m) {
        std::vector<std::int64_t> f(k + 1, 0);
        BigInt t = m;
        for (int i = 0; i < k; ++i) {
            f[i] = (t % p).convert_to<std::int64_t>();
            t /= p;
        }
        f[k] = 1;
        if (fpx::irreducible(f, p)) return f;
    }
    throw InternalError("no irreducible modulus found");  // unreachable
}

const std::vector<std::int64_t>& cached_modulus(std::int64_t p, int k) {
    static std::mutex mu;
    static std::map<std::pair<std::int64_t, int>, std::vector<std::int64_t>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, k);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, find_modulus(p, k)).first;
    return it->second;
}

Rat make_rat(BigInt num, BigInt den) {
    if (den == 0) throw PreconditionError("division by zero");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    BigInt g = boost::multiprecision::gcd(num < 0 ? BigInt(-num) : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rat{std::move(num), std::move(den)};
}

}  // namespace

// ---------------------------------------------------------------------------
// Ring factories and descriptor parsing.

RingPtr Ring::rationals() {
    static RingPtr q = [] {
        auto r = std::shared_ptr<Ring>(new Ring());
        r->kind_ = RingKind::Rationals;
        return RingPtr(r);
    }();
    return q;
}

RingPtr Ring::prime_field(std::int64_t p) {
    if (p < 3 || p % 2 == 0 || !is_prime64(p) || p > kMaxModulus)
        throw ParseError("prime field characteristic must be an odd prime: " +
                         std::to_string(p));
    auto r = std::shared_ptr<Ring>(new Ring());
    r->kind_ = RingKind::PrimeField;
    r->p_ = p;
    return r;
}

RingPtr Ring::extension_field(std::int64_t p, int k) {
    return extension_field(p, k, cached_modulus(p, k));
}

RingPtr Ring::extension_field(std::int64_t p, int k,
                              std::vector<std::int64_t> modulus) {
    if (p < 3 || p % 2 == 0 || !is_prime64(p) || p > kMaxModulus)
        throw ParseError("extension field characteristic must be an odd prime");
    if (k < 1) throw ParseError("extension degree must be >= 1");
    for (auto& c : modulus) c = mod_norm(c, p);
    fpx::trim(modulus);
    if (static_cast<int>(modulus.size()) != k + 1 || modulus.back() != 1)
        throw ParseError("extension modulus must be monic of degree k");
    if (!fpx::irreducible(modulus, p))
        throw ParseError("extension modulus is reducible over F_p");
    auto r = std::shared_ptr<Ring>(new Ring());
    r->kind_ = RingKind::ExtensionField;
    r->p_ = p;
    r->k_ = k;
    r->modulus_ = std::move(modulus);
    return r;
}

RingPtr Ring::rational_function_field(RingPtr base, std::string var) {
    if (!base || !base->is_field())
        throw ParseError("rational function field base must be a field");
    if (var.empty() || !std::isalpha(static_cast<unsigned char>(var[0])))
        throw ParseError("function field variable must be an identifier");
    auto r = std::shared_ptr<Ring>(new Ring());
    r->kind_ = RingKind::RationalFunctionField;
    r->base_ = std::move(base);
    r->var_ = std::move(var);
    return r;
}

RingPtr Ring::residue_ring(std::int64_t n) {
    if (n < 3 || n % 2 == 0 || n > kMaxModulus)
        throw ParseError("residue ring modulus must be odd and >= 3");
    auto r = std::shared_ptr<Ring>(new Ring());
    r->kind_ = RingKind::ResidueRing;
    r->n_ = n;
    r->factors_ = factorize(n);
    return r;
}

RingPtr Ring::parse(const std::string& desc) {
    auto parts = split_top(desc, ':');
    const std::string& head = parts[0];
    auto to_i64 = [&](const std::string& s) -> std::int64_t {
        try {
            std::size_t pos = 0;
            std::int64_t v = std::stoll(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw ParseError("bad integer in ring descriptor: '" + s + "'");
        }
    };
    if (head == "q") {
        if (parts.size() != 1) throw ParseError("bad descriptor: " + desc);
        return rationals();
    }
    if (head == "fp") {
        if (parts.size() != 2) throw ParseError("bad descriptor: " + desc);
        return prime_field(to_i64(parts[1]));
    }
    if (head == "fpk") {
        if (parts.size() != 3 && parts.size() != 4)
            throw ParseError("bad descriptor: " + desc);
        std::int64_t p = to_i64(parts[1]);
        int k = static_cast<int>(to_i64(parts[2]));
        if (parts.size() == 3) return extension_field(p, k);
        std::vector<std::int64_t> mod;
        for (const auto& c : split_top(parts[3], ',')) mod.push_back(to_i64(c));
        return extension_field(p, k, std::move(mod));
    }
    if (head == "ratfunc") {
        if (parts.size() < 3) throw ParseError("bad descriptor: " + desc);
        std::string base;
        for (std::size_t i = 1; i + 1 < parts.size(); ++i) {
            if (i > 1) base += ':';
            base += parts[i];
        }
        return rational_function_field(parse(base), parts.back());
    }
    if (head == "z") {
        if (parts.size() != 2) throw ParseError("bad descriptor: " + desc);
        return residue_ring(to_i64(parts[1]));
    }
    throw ParseError("unknown ring descriptor: " + desc);
}

std::string Ring::to_string() const {
    switch (kind_) {
        case RingKind::Rationals:
            return "q";
        case RingKind::PrimeField:
            return "fp:" + std::to_string(p_);
        case RingKind::ExtensionField: {
            std::string s = "fpk:" + std::to_string(p_) + ":" + std::to_string(k_) + ":";
            for (std::size_t i = 0; i < modulus_.size(); ++i) {
                if (i) s += ',';
                s += std::to_string(modulus_[i]);
            }
            return s;
        }
        case RingKind::RationalFunctionField:
            return "ratfunc:" + base_->to_string() + ":" + var_;
        case RingKind::ResidueRing:
            return "z:" + std::to_string(n_);
    }
    return "?";
}

bool Ring::is_field() const { return kind_ != RingKind::ResidueRing; }

bool Ring::is_finite_field() const {
    return kind_ == RingKind::PrimeField || kind_ == RingKind::ExtensionField;
}

bool Ring::same(const Ring& o) const {
    if (this == &o) return true;
    if (kind_ != o.kind_) return false;
    switch (kind_) {
        case RingKind::Rationals:
            return true;
        case RingKind::PrimeField:
            return p_ == o.p_;
        case RingKind::ExtensionField:
            return p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_;
        case RingKind::RationalFunctionField:
            return var_ == o.var_ && base_->same(*o.base_);
        case RingKind::ResidueRing:
            return n_ == o.n_;
    }
    return false;
}

BigInt Ring::order() const {
    switch (kind_) {
        case RingKind::PrimeField:
            return BigInt(p_);
        case RingKind::ExtensionField: {
            BigInt q = 1;
            for (int i = 0; i < k_; ++i) q *= p_;
            return q;
        }
        case RingKind::ResidueRing:
            return BigInt(n_);
        default:
            throw PreconditionError("order() of an infinite ring");
    }
}

Elem Ring::element_at(std::uint64_t index) const {
    Elem e;
    e.ring_ = shared_from_this();
    switch (kind_) {
        case RingKind::PrimeField:
        case RingKind::ResidueRing:
            e.v_ = static_cast<std::int64_t>(index);
            return e;
        case RingKind::ExtensionField: {
            ExtElem x;
            x.c.assign(k_, 0);
            for (int i = 0; i < k_; ++i) {
                x.c[i] = static_cast<std::int64_t>(index % p_);
                index /= p_;
            }
            e.v_ = std::move(x);
            return e;
        }
        default:
            throw PreconditionError("element_at() of an infinite ring");
    }
}

Elem Ring::zero() const { return from_int(0); }
Elem Ring::one() const { return from_int(1); }

Elem Ring::from_int(long long v) const { return from_bigint(BigInt(v)); }

Elem Ring::from_bigint(const BigInt& v) const {
    Elem e;
    e.ring_ = shared_from_this();
    switch (kind_) {
        case RingKind::Rationals:
            e.v_ = Rat{v, 1};
            return e;
        case RingKind::PrimeField:
        case RingKind::ResidueRing: {
            std::int64_t m = kind_ == RingKind::PrimeField ? p_ : n_;
            BigInt r = v % m;
            if (r < 0) r += m;
            e.v_ = r.convert_to<std::int64_t>();
            return e;
        }
        case RingKind::ExtensionField: {
            ExtElem x;
            x.c.assign(k_, 0);
            BigInt r = v % p_;
            if (r < 0) r += p_;
            x.c[0] = r.convert_to<std::int64_t>();
            e.v_ = std::move(x);
            return e;
        }
        case RingKind::RationalFunctionField: {
            Poly num = Poly::constant(base_->from_bigint(v));
            Poly den = Poly::constant(base_->one());
            return make_ratfn_elem(shared_from_this(), std::move(num),
                                   std::move(den));
        }
    }
    throw InternalError("from_bigint: bad kind");
}

// ---------------------------------------------------------------------------
// Elem payload accessors.

std::int64_t Elem::residue() const { return std::get<std::int64_t>(v_); }
const Rat& Elem::rat() const { return std::get<Rat>(v_); }
const ExtElem& Elem::ext() const { return std::get<ExtElem>(v_); }
const RatFn& Elem::ratfn() const {
    return *std::get<std::shared_ptr<const RatFn>>(v_);
}

namespace {

void check_same_ring(const Elem& a, const Elem& b) {
    if (!a.valid() || !b.valid())
        throw PreconditionError("operation on an uninitialized element");
    if (!a.ring()->same(*b.ring()))
        throw PreconditionError("descriptor mismatch: " + a.ring()->to_string() +
                                " vs " + b.ring()->to_string());
}

}  // namespace

// ---------------------------------------------------------------------------
// Elem arithmetic.

bool Elem::is_zero() const {
    switch (ring_->kind()) {
        case RingKind::Rationals:
            return rat().num == 0;
        case RingKind::PrimeField:
        case RingKind::ResidueRing:
            return residue() == 0;
        case RingKind::ExtensionField: {
            for (auto c : ext().c)
                if (c) return false;
            return true;
        }
        case RingKind::RationalFunctionField:
            return ratfn().num.is_zero();
    }
    return false;
}

bool Elem::is_one() const { return *this == ring_->one(); }

bool Elem::is_unit() const {
    if (ring_->kind() == RingKind::ResidueRing)
        return gcd64(residue(), ring_->modulus_n()) == 1;
    return !is_zero();
}

Elem Elem::operator-() const {
    Elem r;
    r.ring_ = ring_;
    switch (ring_->kind()) {
        case RingKind::Rationals: {
            const Rat& a = rat();
            r.v_ = Rat{-a.num, a.den};
            return r;
        }
        case RingKind::PrimeField:
        case RingKind::ResidueRing: {
            std::int64_t m = ring_->kind() == RingKind::PrimeField
                                 ? ring_->characteristic_p()
                                 : ring_->modulus_n();
            r.v_ = mod_norm(-residue(), m);
            return r;
        }
        case RingKind::ExtensionField: {
            ExtElem x = ext();
            for (auto& c : x.c) c = mod_norm(-c, ring_->characteristic_p());
            r.v_ = std::move(x);
            return r;
        }
        case RingKind::RationalFunctionField: {
            const RatFn& f = ratfn();
            return make_ratfn_elem(ring_, f.num.scaled(-ring_->base()->one()),
                                   f.den);
        }
    }
    throw InternalError("neg: bad kind");
}

Elem operator+(const Elem& a, const Elem& b) {
    check_same_ring(a, b);
    Elem r;
    r.ring_ = a.ring_;
    switch (a.ring_->kind()) {
        case RingKind::Rationals: {
            const Rat &x = a.rat(), &y = b.rat();
            r.v_ = make_rat(x.num * y.den + y.num * x.den, x.den * y.den);
            return r;
        }
        case RingKind::PrimeField:
        case RingKind::ResidueRing: {
            std::int64_t m = a.ring_->kind() == RingKind::PrimeField
                                 ? a.ring_->characteristic_p()
                                 : a.ring_->modulus_n();
            r.v_ = mod_norm(a.residue() + b.residue(), m);
            return r;
        }
        case RingKind::ExtensionField: {
            ExtElem x = a.ext();
            const ExtElem& y = b.ext();
            std::int64_t p = a.ring_->characteristic_p();
            for (std::size_t i = 0; i < x.c.size(); ++i)
                x.c[i] = mod_norm(x.c[i] + y.c[i], p);
            r.v_ = std::move(x);
            return r;
        }
        case RingKind::RationalFunctionField: {
            const RatFn &x = a.ratfn(), &y = b.ratfn();
            Poly num = x.num * y.den + y.num * x.den;
            Poly den = x.den * y.den;
            return make_ratfn_elem(a.ring_, std::move(num), std::move(den));
        }
    }
    throw InternalError("add: bad kind");
}

Elem operator-(const Elem& a, const Elem& b) { return a + (-b); }

Elem operator*(const Elem& a, const Elem& b) {
    check_same_ring(a, b);
    Elem r;
    r.ring_ = a.ring_;
    switch (a.ring_->kind()) {
        case RingKind::Rationals: {
            const Rat &x = a.rat(), &y = b.rat();
            r.v_ = make_rat(x.num * y.num, x.den * y.den);
            return r;
        }
        case RingKind::PrimeField:
        case RingKind::ResidueRing: {
            std::int64_t m = a.ring_->kind() == RingKind::PrimeField
                                 ? a.ring_->characteristic_p()
                                 : a.ring_->modulus_n();
            r.v_ = mod_mul(a.residue(), b.residue(), m);
            return r;
        }
        case RingKind::ExtensionField: {
            std::int64_t p = a.ring_->characteristic_p();
            fpx::V x(a.ext().c), y(b.ext().c);
            fpx::trim(x);
            fpx::trim(y);
            fpx::V z = fpx::mulmod(x, y, a.ring_->ext_modulus(), p);
            ExtElem out;
            out.c.assign(a.ring_->ext_degree(), 0);
            for (std::size_t i = 0; i < z.size(); ++i) out.c[i] = z[i];
            r.v_ = std::move(out);
            return r;
        }
        case RingKind::RationalFunctionField: {
            const RatFn &x = a.ratfn(), &y = b.ratfn();
            return make_ratfn_elem(a.ring_, x.num * y.num, x.den * y.den);
        }
    }
    throw InternalError("mul: bad kind");
}

Elem Elem::inv() const {
    if (!is_unit())
        throw PreconditionError("division by a non-unit: " + str() + " in " +
                                ring_->to_string());
    Elem r;
    r.ring_ = ring_;
    switch (ring_->kind()) {
        case RingKind::Rationals: {
            const Rat& a = rat();
            r.v_ = make_rat(a.den, a.num);
            return r;
        }
        case RingKind::PrimeField:
        case RingKind::ResidueRing: {
            std::int64_t m = ring_->kind() == RingKind::PrimeField
                                 ? ring_->characteristic_p()
                                 : ring_->modulus_n();
            r.v_ = mod_inv(residue(), m);
            return r;
        }
        case RingKind::ExtensionField: {
            std::int64_t p = ring_->characteristic_p();
            fpx::V x(ext().c);
            fpx::trim(x);
            fpx::V z = fpx::invmod(x, ring_->ext_modulus(), p);
            ExtElem out;
            out.c.assign(ring_->ext_degree(), 0);
            for (std::size_t i = 0; i < z.size(); ++i) out.c[i] = z[i];
            r.v_ = std::move(out);
            return r;
        }
        case RingKind::RationalFunctionField: {
            const RatFn& f = ratfn();
            return make_ratfn_elem(ring_, f.den, f.num);
        }
    }
    throw InternalError("inv: bad kind");
}

Elem operator/(const Elem& a, const Elem& b) { return a * b.inv(); }

Elem Elem::pow(long long n) const {
    if (n < 0) return inv().pow(-n);
    return pow_big(BigInt(n));
}

Elem Elem::pow_big(const BigInt& n) const {
    if (n < 0) throw PreconditionError("pow_big: negative exponent");
    Elem r = ring_->one();
    Elem base = *this;
    BigInt e = n;
    while (e > 0) {
        if ((e & 1) != 0) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

bool operator==(const Elem& a, const Elem& b) {
    if (!a.valid() || !b.valid()) return a.valid() == b.valid();
    if (!a.ring_->same(*b.ring_)) return false;
    switch (a.ring_->kind()) {
        case RingKind::Rationals:
            return a.rat().num == b.rat().num && a.rat().den == b.rat().den;
        case RingKind::PrimeField:
        case RingKind::ResidueRing:
            return a.residue() == b.residue();
        case RingKind::ExtensionField:
            return a.ext().c == b.ext().c;
        case RingKind::RationalFunctionField:
            return a.ratfn().num == b.ratfn().num && a.ratfn().den == b.ratfn().den;
    }
    return false;
}

int Elem::cmp(const Elem& a, const Elem& b) {
    check_same_ring(a, b);
    switch (a.ring_->kind()) {
        case RingKind::Rationals: {
            BigInt l = a.rat().num * b.rat().den;
            BigInt r = b.rat().num * a.rat().den;
            return l < r ? -1 : (l > r ? 1 : 0);
        }
        case RingKind::PrimeField:
        case RingKind::ResidueRing: {
            std::int64_t x = a.residue(), y = b.residue();
            return x < y ? -1 : (x > y ? 1 : 0);
        }
        case RingKind::ExtensionField: {
            // Highest coefficient first, so constants sort below non-constants.
            const auto &x = a.ext().c, &y = b.ext().c;
            for (std::size_t i = x.size(); i-- > 0;) {
                if (x[i] != y[i]) return x[i] < y[i] ? -1 : 1;
            }
            return 0;
        }
        case RingKind::RationalFunctionField: {
            int c = Poly::cmp(a.ratfn().den, b.ratfn().den);
            if (c) return c;
            return Poly::cmp(a.ratfn().num, b.ratfn().num);
        }
    }
    return 0;
}

std::string Elem::str() const {
    if (!valid()) return "<invalid>";
    switch (ring_->kind()) {
        case RingKind::Rationals: {
            const Rat& a = rat();
            std::string s = a.num.str();
            if (a.den != 1) s += "/" + a.den.str();
            return s;
        }
        case RingKind::PrimeField:
        case RingKind::ResidueRing:
            return std::to_string(residue());
        case RingKind::ExtensionField: {
            std::string s = "[";
            const auto& c = ext().c;
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (i) s += ',';
                s += std::to_string(c[i]);
            }
            return s + "]";
        }
        case RingKind::RationalFunctionField: {
            const RatFn& f = ratfn();
            const std::string& v = ring_->var();
            if (f.den.degree() == 0 && f.den.lc().is_one()) return f.num.str(v);
            return "(" + f.num.str(v) + ")/(" + f.den.str(v) + ")";
        }
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Element expression parser: integers, fractions, the function-field
// variable(s), extension literals [c0,c1,...], + - * / ^ and parentheses.

namespace {

struct ExprParser {
    const Ring& ring;
    const std::string& s;
    std::size_t i = 0;

    explicit ExprParser(const Ring& r, const std::string& text)
        : ring(r), s(text) {}

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }

    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) {
        throw ParseError("cannot parse element '" + s + "': " + what);
    }

    Elem run() {
        Elem e = expr();
        skip();
        if (i != s.size()) fail("trailing input at position " + std::to_string(i));
        return e;
    }

    Elem expr() {
        Elem e = term();
        for (;;) {
            if (eat('+'))
                e = e + term();
            else if (eat('-'))
                e = e - term();
            else
                return e;
        }
    }

    Elem term() {
        Elem e = unary();
        for (;;) {
            if (eat('*'))
                e = e * unary();
            else if (eat('/'))
                e = e / unary();
            else
                return e;
        }
    }

    Elem unary() {
        if (eat('-')) return -unary();
        Elem e = atom();
        if (eat('^')) {
            skip();
            std::size_t start = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
                ++i;
            if (start == i) fail("exponent expected after '^'");
            long long exp = 0;
            try {
                exp = std::stoll(s.substr(start, i - start));
            } catch (const std::exception&) {
                fail("exponent out of range");
            }
            if (exp > 4096) fail("exponent too large");
            e = e.pow(exp);
        }
        return e;
    }

    Elem atom() {
        skip();
        if (i >= s.size()) fail("unexpected end of input");
        char c = s[i];
        if (c == '(') {
            ++i;
            Elem e = expr();
            if (!eat(')')) fail("missing ')'");
            return e;
        }
        if (c == '[') return bracket_literal();
        if (std::isdigit(static_cast<unsigned char>(c))) return integer();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return identifier();
        fail(std::string("unexpected character '") + c + "'");
    }

    Elem integer() {
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        return ring.from_bigint(BigInt(s.substr(start, i - start)));
    }

    Elem bracket_literal() {
        std::size_t close = s.find(']', i);
        if (close == std::string::npos) fail("missing ']'");
        std::string body = s.substr(i + 1, close - i - 1);
        i = close + 1;
        if (ring.kind() != RingKind::ExtensionField)
            fail("coefficient-list literals only exist over extension fields");
        ExtElem x;
        x.c.assign(ring.ext_degree(), 0);
        auto parts = split_top(body, ',');
        if (static_cast<int>(parts.size()) > ring.ext_degree())
            fail("too many coefficients for degree " +
                 std::to_string(ring.ext_degree()));
        for (std::size_t j = 0; j < parts.size(); ++j) {
            try {
                x.c[j] = mod_norm(std::stoll(parts[j]), ring.characteristic_p());
            } catch (const std::exception&) {
                fail("bad coefficient '" + parts[j] + "'");
            }
        }
        std::uint64_t index = 0;
        for (std::size_t j = x.c.size(); j-- > 0;)
            index = index * ring.characteristic_p() + x.c[j];
        return ring.element_at(index);
    }

    Elem identifier() {
        std::size_t start = i;
        while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) ||
                                s[i] == '_'))
            ++i;
        std::string name = s.substr(start, i - start);
        Elem e = resolve(ring, name);
        if (!e.valid()) fail("unknown identifier '" + name + "'");
        return e;
    }

    // Walks the function-field tower looking for a variable called `name`.
    static Elem resolve(const Ring& r, const std::string& name) {
        if (r.kind() != RingKind::RationalFunctionField) return Elem();
        RingPtr self = r.shared_from_this();
        if (r.var() == name) {
            Poly num = Poly::x(r.base());
            Poly den = Poly::constant(r.base()->one());
            return make_ratfn_elem(self, std::move(num), std::move(den));
        }
        Elem inner = resolve(*r.base(), name);
        if (!inner.valid()) return Elem();
        Poly num = Poly::constant(inner);
        Poly den = Poly::constant(r.base()->one());
        return make_ratfn_elem(self, std::move(num), std::move(den));
    }
};

}  // namespace

Elem Ring::parse_elem(const std::string& text) const {
    ExprParser p(*this, text);
    return p.run();
}

}  // namespace g2glue

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "g2glue/error.hpp"

namespace g2glue {

using BigInt = boost::multiprecision::cpp_int;

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

class Poly;
struct RatFn;  // reduced numerator/denominator pair, defined in poly.hpp

enum class RingKind {
    Rationals,              // q
    PrimeField,             // fp:p
    ExtensionField,         // fpk:p:k[:modulus]
    RationalFunctionField,  // ratfunc:<base>:<var>
    ResidueRing,            // z:n, n odd
};

// Canonical reduced fraction, den > 0, gcd(|num|, den) = 1.
struct Rat {
    BigInt num{0};
    BigInt den{1};
};

// Element of F_{p^k}: coefficients of the residue polynomial, ascending,
// always of length k (zero-padded).
struct ExtElem {
    std::vector<std::int64_t> c;
};

// An exact element of one of the supported coefficient rings.  The payload is
// always kept in canonical form, so operator== is semantic equality.
class Elem {
public:
    Elem() = default;

    bool valid() const { return ring_ != nullptr; }
    const RingPtr& ring() const { return ring_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_unit() const;

    Elem operator-() const;
    Elem inv() const;
    Elem pow(long long n) const;        // negative n requires a unit
    Elem pow_big(const BigInt& n) const;  // n >= 0

    friend Elem operator+(const Elem& a, const Elem& b);
    friend Elem operator-(const Elem& a, const Elem& b);
    friend Elem operator*(const Elem& a, const Elem& b);
    friend Elem operator/(const Elem& a, const Elem& b);
    friend bool operator==(const Elem& a, const Elem& b);
    friend bool operator!=(const Elem& a, const Elem& b) { return !(a == b); }

    // Deterministic total order (used for sorting roots, tie-breaks, dedup).
    static int cmp(const Elem& a, const Elem& b);

    std::string str() const;

    // Payload accessors for the few places that need them.
    std::int64_t residue() const;         // PrimeField / ResidueRing
    const Rat& rat() const;               // Rationals
    const ExtElem& ext() const;           // ExtensionField
    const RatFn& ratfn() const;           // RationalFunctionField

    friend class Ring;
    friend Elem make_ratfn_elem(const RingPtr& ring, Poly num, Poly den);

private:
    RingPtr ring_;
    std::variant<std::monostate, std::int64_t, Rat, ExtElem,
                 std::shared_ptr<const RatFn>>
        v_;
};

// Immutable descriptor of a coefficient ring.  Construct through the static
// factories; they validate the admissibility conditions (odd characteristic,
// irreducible modulus, field base for function fields).
class Ring : public std::enable_shared_from_this<Ring> {
public:
    static RingPtr rationals();
    static RingPtr prime_field(std::int64_t p);
    // Auto-selects the least monic irreducible modulus of degree k (ordered by
    // the value sum(c_i p^i) of its non-leading coefficients).
    static RingPtr extension_field(std::int64_t p, int k);
    static RingPtr extension_field(std::int64_t p, int k,
                                   std::vector<std::int64_t> modulus);
    static RingPtr rational_function_field(RingPtr base, std::string var);
    static RingPtr residue_ring(std::int64_t n);

    // Compact descriptor strings: q | fp:5 | fpk:5:2[:2,0,1] | ratfunc:fp:7:s | z:15
    static RingPtr parse(const std::string& desc);
    std::string to_string() const;

    RingKind kind() const { return kind_; }
    bool is_field() const;
    bool is_finite_field() const;
    bool same(const Ring& other) const;

    std::int64_t characteristic_p() const { return p_; }  // 0 for Rationals
    std::int64_t modulus_n() const { return n_; }
    int ext_degree() const { return k_; }
    const std::vector<std::int64_t>& ext_modulus() const { return modulus_; }
    const RingPtr& base() const { return base_; }
    const std::string& var() const { return var_; }
    // Prime factorization of n for ResidueRing: (prime, exponent) pairs.
    const std::vector<std::pair<std::int64_t, int>>& factors() const {
        return factors_;
    }

    // Number of elements of a finite ring (p^k, or n).
    BigInt order() const;
    // Enumeration of a finite ring; index < order().
    Elem element_at(std::uint64_t index) const;

    Elem zero() const;
    Elem one() const;
    Elem from_int(long long v) const;
    Elem from_bigint(const BigInt& v) const;

    // Parses "-3", "3/2", "[c0,c1,...]" (extension coefficients) or an
    // arithmetic expression in the function-field variable ("s^2+1").
    Elem parse_elem(const std::string& text) const;

private:
    Ring() = default;

    RingKind kind_ = RingKind::Rationals;
    std::int64_t p_ = 0;                   // characteristic (PrimeField/Ext)
    std::int64_t n_ = 0;                   // ResidueRing modulus
    int k_ = 1;                            // extension degree
    std::vector<std::int64_t> modulus_;    // monic, ascending, length k+1
    RingPtr base_;                         // function-field base
    std::string var_;                      // function-field variable
    std::vector<std::pair<std::int64_t, int>> factors_;  // of n

    friend class Elem;
};

// Modular helpers shared across the library (m < 2^31 so products fit int64).
std::int64_t mod_norm(std::int64_t a, std::int64_t m);
std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t m);
std::int64_t mod_pow(std::int64_t a, std::uint64_t e, std::int64_t m);
std::int64_t mod_inv(std::int64_t a, std::int64_t m);  // gcd(a,m)=1
std::int64_t gcd64(std::int64_t a, std::int64_t b);
bool is_prime64(std::int64_t p);

// Splits on `sep` at bracket/paren depth 0; trims nothing.
std::vector<std::string> split_top(const std::string& s, char sep);

}  // namespace g2glue

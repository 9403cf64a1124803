#ifndef SKEWFIELD_FIELD_HPP
#define SKEWFIELD_FIELD_HPP

// Exact ground-field arithmetic: the rationals (GMP) and finite fields F_{p^k}
// represented as F_p[a]/(modulus).

#include <skewfield/errors.hpp>

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace skewfield {

using Rng = std::mt19937_64;

/// Uniform integer in [0, n) by rejection; identical across standard libraries.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
    if (n == 0) {
        return 0;
    }
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t r = rng();
    while (r >= limit) {
        r = rng();
    }
    return r % n;
}

/// splitmix64 finalizer, used to derive independent seeds.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2) + b * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    const std::uint64_t s = a + b;
    return (s >= p || s < a) ? s - p : s;
}

inline std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + (p - b);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e != 0) {
        if (e & 1U) {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1U;
    }
    return r;
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
    if (a % p == 0) {
        throw DivisionByZero();
    }
    return powmod(a, p - 2, p);
}

/// Deterministic Miller-Rabin for 64-bit integers.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) {
        return false;
    }
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) {
            return n == q;
        }
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) {
            continue;
        }
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) {
            return false;
        }
    }
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) {
                n /= q;
            }
        }
    }
    if (n > 1) {
        out.push_back(n);
    }
    return out;
}

// Dense univariate polynomials over F_p, little-endian coefficients.
namespace gfpoly {

using Poly = std::vector<std::uint64_t>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) {
        a.pop_back();
    }
}

inline Poly sub(Poly a, const Poly& b, std::uint64_t p) {
    if (a.size() < b.size()) {
        a.resize(b.size(), 0);
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        a[i] = submod(a[i], b[i], p);
    }
    trim(a);
    return a;
}

inline Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) {
        return {};
    }
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = addmod(r[i + j], mulmod(a[i], b[j], p), p);
        }
    }
    trim(r);
    return r;
}

/// Remainder of a modulo a nonzero b.
inline Poly rem(Poly a, const Poly& b, std::uint64_t p) {
    trim(a);
    const std::size_t db = b.size() - 1;
    const std::uint64_t lead_inv = invmod(b.back(), p);
    while (!a.empty() && a.size() - 1 >= db) {
        const std::uint64_t c = mulmod(a.back(), lead_inv, p);
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) {
            a[shift + i] = submod(a[shift + i], mulmod(c, b[i], p), p);
        }
        trim(a);
    }
    return a;
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
    return rem(mul(a, b, p), f, p);
}

inline Poly powmod(Poly base, std::uint64_t e, const Poly& f, std::uint64_t p) {
    Poly r{1};
    base = rem(std::move(base), f, p);
    while (e != 0) {
        if (e & 1U) {
            r = mulmod(r, base, f, p);
        }
        base = mulmod(base, base, f, p);
        e >>= 1U;
    }
    return r;
}

inline Poly gcd(Poly a, Poly b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// Rabin's irreducibility test for a monic f of degree k >= 1.
inline bool is_irreducible(const Poly& f, std::uint64_t p) {
    const std::size_t k = f.size() - 1;
    if (k == 1) {
        return true;
    }
    // frob[i] = x^{p^i} mod f
    std::vector<Poly> frob(k + 1);
    frob[0] = rem(Poly{0, 1}, f, p);
    for (std::size_t i = 1; i <= k; ++i) {
        frob[i] = powmod(frob[i - 1], p, f, p);
    }
    if (frob[k] != frob[0]) {
        return false;
    }
    for (std::uint64_t q : prime_factors(k)) {
        Poly g = gcd(f, sub(frob[k / q], Poly{0, 1}, p), p);
        if (g.size() != 1) {
            return false;
        }
    }
    return true;
}

} // namespace gfpoly
} // namespace detail

class FieldSpec;
using FieldPtr = std::shared_ptr<const FieldSpec>;

/// The ground field: the rationals or F_{p^k} = F_p[a]/(modulus).
class FieldSpec {
public:
    enum class Kind { rationals, finite };

    static FieldPtr rationals() {
        static const FieldPtr q = std::shared_ptr<const FieldSpec>(new FieldSpec());
        return q;
    }

    /// F_{p^k}; an empty modulus selects the built-in default.
    static FieldPtr finite(std::uint64_t p, unsigned k = 1, std::vector<std::uint64_t> modulus = {}) {
        if (!detail::is_prime(p)) {
            throw FieldSpecError(std::to_string(p) + " is not prime");
        }
        if (k < 1 || k > 24) {
            throw FieldSpecError("extension degree must lie in 1..24");
        }
        if (modulus.empty()) {
            modulus = default_modulus(p, k);
        }
        for (auto& c : modulus) {
            c %= p;
        }
        detail::gfpoly::trim(modulus);
        if (modulus.size() != k + 1 || modulus.back() != 1) {
            throw FieldSpecError("modulus must be monic of degree " + std::to_string(k));
        }
        if (!detail::gfpoly::is_irreducible(modulus, p)) {
            throw FieldSpecError("modulus is reducible over F_" + std::to_string(p));
        }
        auto f = std::shared_ptr<FieldSpec>(new FieldSpec());
        f->kind_ = Kind::finite;
        f->p_ = p;
        f->k_ = k;
        f->modulus_ = std::move(modulus);
        return f;
    }

    /// Textual forms: "Q", "F(7)", "F(2,3)", "F(2,3;m=x^3+x+1)", "F(2,3;m=1,1,0,1)".
    static FieldPtr parse(std::string_view text);

    /// Built-in modulus: a fixed table for p = 2, otherwise the first irreducible in
    /// little-endian lexicographic order.
    static std::vector<std::uint64_t> default_modulus(std::uint64_t p, unsigned k) {
        if (k == 1) {
            return {0, 1};
        }
        if (p == 2 && k <= 8) {
            static const std::vector<std::vector<std::uint64_t>> table = {
                {},
                {},
                {1, 1, 1},
                {1, 1, 0, 1},
                {1, 1, 0, 0, 1},
                {1, 0, 1, 0, 0, 1},
                {1, 1, 0, 0, 0, 0, 1},
                {1, 1, 0, 0, 0, 0, 0, 1},
                {1, 1, 0, 1, 1, 0, 0, 0, 1},
            };
            return table[k];
        }
        detail::gfpoly::Poly f(k + 1, 0);
        f[k] = 1;
        f[0] = 1;
        for (;;) {
            if (detail::gfpoly::is_irreducible(f, p)) {
                return f;
            }
            std::size_t i = 0;
            while (i < k) {
                if (++f[i] < p) {
                    break;
                }
                f[i] = (i == 0) ? 1 : 0;
                ++i;
            }
            if (i == k) {
                throw FieldSpecError("no irreducible polynomial found");
            }
        }
    }

    Kind kind() const { return kind_; }
    bool is_rational() const { return kind_ == Kind::rationals; }
    std::uint64_t p() const { return p_; }
    unsigned k() const { return k_; }
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }
    std::uint64_t characteristic() const { return kind_ == Kind::rationals ? 0 : p_; }

    /// Number of elements, when finite and below 2^64.
    std::optional<std::uint64_t> order() const {
        if (kind_ == Kind::rationals) {
            return std::nullopt;
        }
        std::uint64_t q = 1;
        for (unsigned i = 0; i < k_; ++i) {
            if (q > std::numeric_limits<std::uint64_t>::max() / p_) {
                return std::nullopt;
            }
            q *= p_;
        }
        return q;
    }

    std::string to_string() const {
        if (kind_ == Kind::rationals) {
            return "Q";
        }
        if (k_ == 1) {
            return "F(" + std::to_string(p_) + ")";
        }
        std::string m;
        for (std::size_t i = modulus_.size(); i-- > 0;) {
            const std::uint64_t c = modulus_[i];
            if (c == 0) {
                continue;
            }
            if (!m.empty()) {
                m += "+";
            }
            if (i == 0 || c != 1) {
                m += std::to_string(c);
            }
            if (i >= 1) {
                m += (i == 0 || c != 1) ? "*x" : "x";
                if (i > 1) {
                    m += "^" + std::to_string(i);
                }
            }
        }
        return "F(" + std::to_string(p_) + "," + std::to_string(k_) + ";m=" + m + ")";
    }

    bool operator==(const FieldSpec& o) const {
        return kind_ == o.kind_ && p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_;
    }

private:
    FieldSpec() = default;

    Kind kind_ = Kind::rationals;
    std::uint64_t p_ = 0;
    unsigned k_ = 1;
    std::vector<std::uint64_t> modulus_;
};

inline bool same_field(const FieldPtr& a, const FieldPtr& b) {
    return a == b || (a && b && *a == *b);
}

namespace detail {

inline std::string trim_copy(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        --e;
    }
    return std::string(s.substr(b, e - b));
}

inline std::uint64_t parse_u64(std::string_view s, const char* what) {
    std::string t = trim_copy(s);
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        throw FieldSpecError(std::string("expected an integer for ") + what + ", got '" + t + "'");
    }
    try {
        return std::stoull(t);
    } catch (const std::exception&) {
        throw FieldSpecError(std::string("integer out of range for ") + what);
    }
}

/// Parses a univariate polynomial in x with integer coefficients, e.g. "x^3+x+1" or "x^3-x".
/// Returns little-endian coefficients as big integers.
inline std::vector<mpz_class> parse_int_poly(std::string_view text, char var = 'x') {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            s += c;
        }
    }
    if (s.empty()) {
        throw FieldSpecError("empty polynomial");
    }
    std::vector<mpz_class> out;
    std::size_t i = 0;
    bool first = true;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = (s[i] == '-') ? -1 : 1;
            ++i;
        } else if (!first) {
            throw FieldSpecError("expected '+' or '-' in polynomial '" + s + "'");
        }
        first = false;
        mpz_class coef = 1;
        bool has_coef = false;
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
            ++j;
        }
        if (j > i) {
            coef = mpz_class(s.substr(i, j - i));
            has_coef = true;
            i = j;
            if (i < s.size() && s[i] == '*') {
                ++i;
            }
        }
        std::size_t exp = 0;
        if (i < s.size() && s[i] == var) {
            ++i;
            exp = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::size_t k = i;
                while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
                    ++k;
                }
                if (k == i) {
                    throw FieldSpecError("missing exponent in polynomial '" + s + "'");
                }
                exp = std::stoul(s.substr(i, k - i));
                i = k;
            }
        } else if (!has_coef) {
            throw FieldSpecError("malformed term in polynomial '" + s + "'");
        }
        if (out.size() <= exp) {
            out.resize(exp + 1, 0);
        }
        out[exp] += sign * coef;
    }
    return out;
}

} // namespace detail

inline FieldPtr FieldSpec::parse(std::string_view text) {
    const std::string t = detail::trim_copy(text);
    if (t == "Q" || t == "QQ") {
        return rationals();
    }
    if (t.size() < 4 || t[0] != 'F' || t[1] != '(' || t.back() != ')') {
        throw FieldSpecError("unrecognised field '" + t + "' (expected Q, F(p), F(p,k) or F(p,k;m=...))");
    }
    const std::string body = t.substr(2, t.size() - 3);
    const std::size_t semi = body.find(';');
    const std::string head = body.substr(0, semi);
    const std::size_t comma = head.find(',');
    const std::uint64_t p = detail::parse_u64(head.substr(0, comma), "p");
    const unsigned k = comma == std::string::npos
                           ? 1U
                           : static_cast<unsigned>(detail::parse_u64(head.substr(comma + 1), "k"));
    std::vector<std::uint64_t> modulus;
    if (semi != std::string::npos) {
        std::string m = detail::trim_copy(body.substr(semi + 1));
        if (m.rfind("m=", 0) != 0) {
            throw FieldSpecError("expected 'm=' after ';' in '" + t + "'");
        }
        m = m.substr(2);
        if (m.find('x') != std::string::npos) {
            for (const mpz_class& c : detail::parse_int_poly(m)) {
                mpz_class r = c % mpz_class(std::to_string(p));
                if (r < 0) {
                    r += mpz_class(std::to_string(p));
                }
                modulus.push_back(std::stoull(r.get_str()));
            }
        } else {
            std::stringstream ss(m);
            std::string item;
            while (std::getline(ss, item, ',')) {
                modulus.push_back(detail::parse_u64(item, "modulus coefficient"));
            }
        }
    }
    return finite(p, k, std::move(modulus));
}

/// Immutable field element with a canonical representation: a reduced fraction over Q, or a
/// coefficient vector of length k with entries in [0, p) over F_{p^k}.
class Scalar {
public:
    Scalar() = default;

    Scalar(FieldPtr f, long long v) : field_(std::move(f)) {
        if (field_->is_rational()) {
            q_ = static_cast<long>(v);
        } else {
            coeffs_.assign(field_->k(), 0);
            coeffs_[0] = reduce_signed(v, field_->p());
        }
    }

    static Scalar zero(FieldPtr f) { return Scalar(std::move(f), 0); }
    static Scalar one(FieldPtr f) { return Scalar(std::move(f), 1); }

    static Scalar from_rational(FieldPtr f, const mpq_class& q) {
        Scalar s;
        s.field_ = std::move(f);
        if (s.field_->is_rational()) {
            s.q_ = q;
            s.q_.canonicalize();
            return s;
        }
        const std::uint64_t p = s.field_->p();
        const std::uint64_t num = reduce_mpz(q.get_num(), p);
        const std::uint64_t den = reduce_mpz(q.get_den(), p);
        if (den == 0) {
            throw DivisionByZero("denominator vanishes in " + s.field_->to_string());
        }
        s.coeffs_.assign(s.field_->k(), 0);
        s.coeffs_[0] = detail::mulmod(num, detail::invmod(den, p), p);
        return s;
    }

    static Scalar from_coeffs(FieldPtr f, std::vector<std::uint64_t> c) {
        if (f->is_rational()) {
            throw FieldMismatch("coefficient vectors need a finite field");
        }
        c.resize(f->k(), 0);
        for (auto& x : c) {
            x %= f->p();
        }
        Scalar s;
        s.field_ = std::move(f);
        s.coeffs_ = std::move(c);
        return s;
    }

    /// Parses "p/q", "-3", or "(c0,c1,...)" (little-endian coefficients over an extension).
    static Scalar parse(FieldPtr f, std::string_view text) {
        const std::string t = detail::trim_copy(text);
        if (!t.empty() && t.front() == '(') {
            if (t.back() != ')') {
                throw FormatError("malformed scalar '" + t + "'");
            }
            std::vector<std::uint64_t> c;
            std::stringstream ss(t.substr(1, t.size() - 2));
            std::string item;
            while (std::getline(ss, item, ',')) {
                c.push_back(detail::parse_u64(item, "coefficient"));
            }
            return from_coeffs(std::move(f), std::move(c));
        }
        mpq_class q;
        try {
            std::string body = t;
            bool neg = false;
            if (!body.empty() && body[0] == '-') {
                neg = true;
                body = body.substr(1);
            }
            if (body.empty() || !std::all_of(body.begin(), body.end(), [](char c) {
                    return std::isdigit(static_cast<unsigned char>(c)) || c == '/';
                })) {
                throw FormatError("malformed scalar '" + t + "'");
            }
            const auto slash = body.find('/');
            if (slash == std::string::npos) {
                q = mpz_class(body);
            } else {
                mpz_class den(body.substr(slash + 1));
                if (den == 0) {
                    throw DivisionByZero("zero denominator in '" + t + "'");
                }
                q = mpq_class(mpz_class(body.substr(0, slash)), den);
            }
            if (neg) {
                q = -q;
            }
        } catch (const std::invalid_argument&) {
            throw FormatError("malformed scalar '" + t + "'");
        }
        q.canonicalize();
        return from_rational(std::move(f), q);
    }

    const FieldPtr& field() const { return field_; }
    bool valid() const { return field_ != nullptr; }

    const mpq_class& rational() const { return q_; }
    const std::vector<std::uint64_t>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        if (field_->is_rational()) {
            return q_ == 0;
        }
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::uint64_t c) { return c == 0; });
    }

    bool is_one() const {
        if (field_->is_rational()) {
            return q_ == 1;
        }
        return coeffs_[0] == 1 &&
               std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](std::uint64_t c) { return c == 0; });
    }

    /// Value in the prime subfield, if this element lies there.
    std::optional<std::uint64_t> prime_subfield_value() const {
        if (field_->is_rational()) {
            return std::nullopt;
        }
        if (!std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](std::uint64_t c) { return c == 0; })) {
            return std::nullopt;
        }
        return coeffs_[0];
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        Scalar r = a.like();
        a.check(b);
        if (a.field_->is_rational()) {
            r.q_ = a.q_ + b.q_;
        } else {
            const std::uint64_t p = a.field_->p();
            for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
                r.coeffs_[i] = detail::addmod(a.coeffs_[i], b.coeffs_[i], p);
            }
        }
        return r;
    }

    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        Scalar r = a.like();
        a.check(b);
        if (a.field_->is_rational()) {
            r.q_ = a.q_ - b.q_;
        } else {
            const std::uint64_t p = a.field_->p();
            for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
                r.coeffs_[i] = detail::submod(a.coeffs_[i], b.coeffs_[i], p);
            }
        }
        return r;
    }

    Scalar operator-() const {
        Scalar r = like();
        if (field_->is_rational()) {
            r.q_ = -q_;
        } else {
            for (std::size_t i = 0; i < coeffs_.size(); ++i) {
                r.coeffs_[i] = detail::submod(0, coeffs_[i], field_->p());
            }
        }
        return r;
    }

    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        a.check(b);
        Scalar r = a.like();
        if (a.field_->is_rational()) {
            r.q_ = a.q_ * b.q_;
        } else {
            const std::uint64_t p = a.field_->p();
            auto prod = detail::gfpoly::mulmod(a.coeffs_, b.coeffs_, a.field_->modulus(), p);
            prod.resize(a.field_->k(), 0);
            r.coeffs_ = std::move(prod);
        }
        return r;
    }

    Scalar inv() const {
        if (is_zero()) {
            throw DivisionByZero();
        }
        Scalar r = like();
        if (field_->is_rational()) {
            r.q_ = 1 / q_;
            return r;
        }
        const std::uint64_t p = field_->p();
        if (field_->k() == 1) {
            r.coeffs_[0] = detail::invmod(coeffs_[0], p);
            return r;
        }
        // Extended Euclid over F_p[a].
        using detail::gfpoly::Poly;
        Poly r0 = field_->modulus();
        Poly r1 = coeffs_;
        detail::gfpoly::trim(r1);
        Poly s0{};
        Poly s1{1};
        while (!r1.empty() && r1.size() > 1) {
            // quotient of r0 by r1
            Poly q;
            Poly rem = r0;
            const std::uint64_t lead_inv = detail::invmod(r1.back(), p);
            if (rem.size() >= r1.size()) {
                q.assign(rem.size() - r1.size() + 1, 0);
            }
            while (!rem.empty() && rem.size() >= r1.size()) {
                const std::uint64_t c = detail::mulmod(rem.back(), lead_inv, p);
                const std::size_t shift = rem.size() - r1.size();
                q[shift] = c;
                for (std::size_t i = 0; i < r1.size(); ++i) {
                    rem[shift + i] = detail::submod(rem[shift + i], detail::mulmod(c, r1[i], p), p);
                }
                detail::gfpoly::trim(rem);
            }
            Poly s2 = detail::gfpoly::sub(s0, detail::gfpoly::mul(q, s1, p), p);
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        // r1 is a nonzero constant c with s1 * a = c (mod modulus).
        const std::uint64_t cinv = detail::invmod(r1[0], p);
        Poly out(field_->k(), 0);
        for (std::size_t i = 0; i < s1.size() && i < out.size(); ++i) {
            out[i] = detail::mulmod(s1[i], cinv, p);
        }
        r.coeffs_ = std::move(out);
        return r;
    }

    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        a.check(b);
        if (a.field_->is_rational()) {
            return a.q_ == b.q_;
        }
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    std::string to_string() const {
        if (!field_) {
            return "<null>";
        }
        if (field_->is_rational()) {
            return q_.get_str();
        }
        if (auto v = prime_subfield_value()) {
            return std::to_string(*v);
        }
        std::string s = "(";
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (i) {
                s += ",";
            }
            s += std::to_string(coeffs_[i]);
        }
        return s + ")";
    }

    std::size_t hash() const {
        if (field_->is_rational()) {
            return std::hash<std::string>{}(q_.get_str());
        }
        std::size_t h = 0x51ed27;
        for (std::uint64_t c : coeffs_) {
            h = static_cast<std::size_t>(mix_seed(h, c));
        }
        return h;
    }

private:
    static std::uint64_t reduce_signed(long long v, std::uint64_t p) {
        if (v >= 0) {
            return static_cast<std::uint64_t>(v) % p;
        }
        const std::uint64_t m = static_cast<std::uint64_t>(-(v + 1)) + 1;
        return detail::submod(0, m % p, p);
    }

    static std::uint64_t reduce_mpz(const mpz_class& z, std::uint64_t p) {
        mpz_class pm;
        mpz_set_ui(pm.get_mpz_t(), 0);
        mpz_import(pm.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
        mpz_class r = z % pm;
        if (r < 0) {
            r += pm;
        }
        std::uint64_t out = 0;
        mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, r.get_mpz_t());
        return out;
    }

    Scalar like() const {
        Scalar r;
        r.field_ = field_;
        if (!field_->is_rational()) {
            r.coeffs_.assign(field_->k(), 0);
        }
        return r;
    }

    void check(const Scalar& o) const {
        if (!same_field(field_, o.field_)) {
            throw FieldMismatch();
        }
    }

    FieldPtr field_;
    mpq_class q_;
    std::vector<std::uint64_t> coeffs_;
};

/// Over Q an integer uniform in [0, bound); over F_{p^k} uniform over all elements.
inline Scalar sample_scalar(const FieldPtr& field, Rng& rng, std::uint64_t bound = 1ULL << 16) {
    if (field->is_rational()) {
        if (bound < 2) {
            throw Error("sampling bound over Q must be at least 2");
        }
        return Scalar(field, static_cast<long long>(uniform_below(rng, bound)));
    }
    std::vector<std::uint64_t> c(field->k());
    for (auto& x : c) {
        x = uniform_below(rng, field->p());
    }
    return Scalar::from_coeffs(field, std::move(c));
}

} // namespace skewfield

#endif

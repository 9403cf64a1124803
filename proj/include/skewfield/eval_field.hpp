#ifndef SKEWFIELD_EVAL_FIELD_HPP
#define SKEWFIELD_EVAL_FIELD_HPP

// Fields in which random matrix evaluations are carried out. Each policy exposes
// value_type, zero, one, add, sub, mul, neg, inv, is_zero, sample, from_base,
// to_base and to_string; dense.hpp and the evaluators are templated on it.

#include <skewfield/errors.hpp>
#include <skewfield/field.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <variant>
#include <vector>

namespace skewfield {

namespace detail {

/// Inverse modulo an odd p by the extended Euclidean algorithm.
inline std::uint64_t inv_euclid(std::uint64_t a, std::uint64_t p) {
    __int128 t = 0;
    __int128 nt = 1;
    __int128 r = p;
    __int128 nr = a % p;
    if (nr == 0) {
        throw DivisionByZero();
    }
    while (nr != 0) {
        const __int128 q = r / nr;
        std::tie(t, nt) = std::make_tuple(nt, t - q * nt);
        std::tie(r, nr) = std::make_tuple(nr, r - q * nr);
    }
    if (t < 0) {
        t += p;
    }
    return static_cast<std::uint64_t>(t);
}

/// Rational reconstruction of a mod p with |num|, den below sqrt(p/2).
inline std::optional<mpq_class> rational_reconstruct(std::uint64_t a, std::uint64_t p) {
    if (a == 0) {
        return mpq_class(0);
    }
    const auto bound = static_cast<__int128>(std::sqrt(static_cast<long double>(p) / 2.0L));
    __int128 r0 = p;
    __int128 r1 = a;
    __int128 t0 = 0;
    __int128 t1 = 1;
    while (r1 > bound) {
        const __int128 q = r0 / r1;
        std::tie(r0, r1) = std::make_tuple(r1, r0 - q * r1);
        std::tie(t0, t1) = std::make_tuple(t1, t0 - q * t1);
    }
    if (t1 == 0 || t1 > bound || -t1 > bound) {
        return std::nullopt;
    }
    long num = static_cast<long>(r1);
    long den = static_cast<long>(t1);
    if (den < 0) {
        num = -num;
        den = -den;
    }
    mpq_class q(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    q.canonicalize();
    return q;
}

inline std::uint64_t random_prime(std::uint64_t seed) {
    Rng rng(mix_seed(seed, 0x70726d));
    for (;;) {
        std::uint64_t c = (1ULL << 61) + uniform_below(rng, 1ULL << 61);
        c |= 1U;
        if (is_prime(c)) {
            return c;
        }
    }
}

} // namespace detail

/// Z/p in Montgomery form, p odd and below 2^62. Serves Q (a random large prime,
/// reduction of rationals) and large prime base fields.
class PrimeField {
public:
    using value_type = std::uint64_t;

    PrimeField(FieldPtr base, std::uint64_t p, std::uint64_t bound = 1ULL << 16)
        : base_(std::move(base)), p_(p), bound_(bound) {
        if (p_ % 2 == 0 || p_ >= (1ULL << 62)) {
            throw FieldSpecError("Montgomery arithmetic needs an odd modulus below 2^62");
        }
        std::uint64_t inv = 1;
        for (int i = 0; i < 6; ++i) {
            inv *= 2 - p_ * inv;
        }
        pneg_inv_ = ~inv + 1;
        one_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << 64) % p_);
        r2_ = detail::mulmod(one_, one_, p_);
    }

    std::uint64_t modulus() const { return p_; }
    const FieldPtr& base() const { return base_; }

    value_type zero() const { return 0; }
    value_type one() const { return one_; }
    value_type add(value_type a, value_type b) const {
        const std::uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
    value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
    value_type mul(value_type a, value_type b) const { return redc(static_cast<unsigned __int128>(a) * b); }
    value_type inv(value_type a) const { return to_mont(detail::inv_euclid(redc(a), p_)); }
    bool is_zero(value_type a) const { return a == 0; }

    value_type from_u64(std::uint64_t v) const { return to_mont(v % p_); }
    value_type from_int(long long v) const {
        return v >= 0 ? from_u64(static_cast<std::uint64_t>(v)) : neg(from_u64(static_cast<std::uint64_t>(-(v + 1)) + 1));
    }

    value_type sample(Rng& rng) const {
        if (base_->is_rational()) {
            return from_u64(uniform_below(rng, bound_));
        }
        return from_u64(uniform_below(rng, p_));
    }

    value_type from_base(const Scalar& s) const {
        if (base_->is_rational()) {
            const auto num = reduce(s.rational().get_num());
            const auto den = reduce(s.rational().get_den());
            if (den == 0) {
                throw DivisionByZero("denominator vanishes modulo the evaluation prime");
            }
            return mul(to_mont(num), to_mont(detail::inv_euclid(den, p_)));
        }
        return from_u64(s.coeffs()[0]);
    }

    std::optional<Scalar> to_base(value_type a) const {
        const std::uint64_t v = redc(a);
        if (base_->is_rational()) {
            auto q = detail::rational_reconstruct(v, p_);
            if (!q) {
                return std::nullopt;
            }
            return Scalar::from_rational(base_, *q);
        }
        return Scalar::from_coeffs(base_, {v});
    }

    /// Over Q the witness field is Q itself: sampled entries are small integers.
    std::string to_string(value_type a) const {
        const std::uint64_t v = redc(a);
        if (base_->is_rational()) {
            if (v > p_ / 2) {
                return "-" + std::to_string(p_ - v);
            }
        }
        return std::to_string(v);
    }

    FieldPtr witness_field() const { return base_; }

private:
    std::uint64_t redc(unsigned __int128 t) const {
        const std::uint64_t m = static_cast<std::uint64_t>(t) * pneg_inv_;
        const unsigned __int128 s = t + static_cast<unsigned __int128>(m) * p_;
        const std::uint64_t r = static_cast<std::uint64_t>(s >> 64);
        return r >= p_ ? r - p_ : r;
    }
    std::uint64_t to_mont(std::uint64_t v) const { return redc(static_cast<unsigned __int128>(v) * r2_); }

    std::uint64_t reduce(const mpz_class& z) const {
        mpz_class r;
        mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p_);
        return r.get_ui();
    }

    FieldPtr base_;
    std::uint64_t p_;
    std::uint64_t bound_;
    std::uint64_t pneg_inv_ = 0;
    std::uint64_t one_ = 0;
    std::uint64_t r2_ = 0;
};

namespace detail {

/// Log/antilog/Zech tables of F_q, q = p^k <= 2^21.
struct ZechTables {
    std::uint64_t p = 0;
    unsigned k = 0;
    std::uint32_t q = 0;
    std::vector<std::uint64_t> modulus;
    std::vector<std::uint32_t> exp_code; // g^n as a base-p digit code
    std::vector<std::uint32_t> log_of;   // inverse; log_of[0] = q - 1
    std::vector<std::uint32_t> zech;     // log(1 + g^n)

    std::vector<std::uint64_t> digits(std::uint32_t code) const {
        std::vector<std::uint64_t> d(k, 0);
        for (unsigned i = 0; i < k; ++i) {
            d[i] = code % p;
            code = static_cast<std::uint32_t>(code / p);
        }
        return d;
    }

    std::uint32_t encode(const std::vector<std::uint64_t>& d) const {
        std::uint64_t code = 0;
        for (std::size_t i = d.size(); i-- > 0;) {
            code = code * p + d[i] % p;
        }
        return static_cast<std::uint32_t>(code);
    }
};

inline std::shared_ptr<const ZechTables> build_zech(std::uint64_t p, unsigned k, const std::vector<std::uint64_t>& modulus) {
    auto t = std::make_shared<ZechTables>();
    t->p = p;
    t->k = k;
    t->modulus = modulus;
    std::uint64_t q = 1;
    for (unsigned i = 0; i < k; ++i) {
        q *= p;
    }
    t->q = static_cast<std::uint32_t>(q);
    const std::uint64_t order = q - 1;
    const auto factors = prime_factors(order);

    // Primitive element: first code (starting from the monomial a) of full order.
    std::vector<std::uint64_t> g;
    for (std::uint64_t code = (k == 1 ? 2 : p); code < q; ++code) {
        auto cand = t->digits(static_cast<std::uint32_t>(code));
        gfpoly::Poly c = cand;
        gfpoly::trim(c);
        bool primitive = true;
        for (std::uint64_t r : factors) {
            auto e = gfpoly::powmod(c, order / r, modulus, p);
            if (e.size() == 1 && e[0] == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            g = cand;
            break;
        }
    }
    if (k == 1 && q == 2) {
        g = {1};
    }

    t->exp_code.assign(order, 0);
    t->log_of.assign(q, static_cast<std::uint32_t>(order));
    std::vector<std::uint64_t> cur(k, 0);
    cur[0] = 1;
    std::vector<std::uint64_t> next(2 * k, 0);
    const bool monomial = (k > 1 && t->encode(g) == p);
    for (std::uint64_t n = 0; n < order; ++n) {
        const std::uint32_t code = t->encode(cur);
        t->exp_code[n] = code;
        t->log_of[code] = static_cast<std::uint32_t>(n);
        if (monomial) {
            const std::uint64_t top = cur[k - 1];
            for (unsigned i = k - 1; i > 0; --i) {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if (top != 0) {
                for (unsigned i = 0; i < k; ++i) {
                    cur[i] = submod(cur[i], mulmod(top, modulus[i], p), p);
                }
            }
        } else {
            gfpoly::Poly a = cur;
            gfpoly::trim(a);
            auto prod = gfpoly::mulmod(a, g, modulus, p);
            prod.resize(k, 0);
            cur = prod;
        }
    }
    t->zech.assign(order, static_cast<std::uint32_t>(order));
    for (std::uint64_t n = 0; n < order; ++n) {
        std::uint32_t code = t->exp_code[n];
        const std::uint32_t c0 = code % p;
        code = code - c0 + static_cast<std::uint32_t>((c0 + 1) % p);
        t->zech[n] = t->log_of[code];
    }
    return t;
}

inline std::shared_ptr<const ZechTables> zech_tables(std::uint64_t p, unsigned k, const std::vector<std::uint64_t>& modulus) {
    static std::mutex mu;
    static std::map<std::tuple<std::uint64_t, unsigned, std::vector<std::uint64_t>>, std::shared_ptr<const ZechTables>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(p, k, modulus);
    auto it = cache.find(key);
    if (it != cache.end()) {
        return it->second;
    }
    auto t = build_zech(p, k, modulus);
    cache.emplace(key, t);
    return t;
}

} // namespace detail

/// F_q for q <= 2^21 by Zech logarithms, holding an embedded copy of a (smaller or equal) base field.
class TableField {
public:
    using value_type = std::uint32_t;

    TableField(FieldPtr base, unsigned ext_degree) : base_(std::move(base)) {
        if (base_->is_rational() || ext_degree % base_->k() != 0) {
            throw FieldSpecError("table field must extend the base field");
        }
        ext_ = (ext_degree == base_->k()) ? base_ : FieldSpec::finite(base_->p(), ext_degree);
        t_ = detail::zech_tables(ext_->p(), ext_->k(), ext_->modulus());
        z_ = t_->q - 1;
        if (base_->k() > 1 && ext_ != base_) {
            beta_ = find_root(base_->modulus());
        }
    }

    const FieldPtr& base() const { return base_; }
    FieldPtr witness_field() const { return ext_; }
    /// Image of the base field's generator, as coefficients over the extension.
    std::optional<std::vector<std::uint64_t>> generator_image() const {
        if (!beta_) {
            return std::nullopt;
        }
        return t_->digits(t_->exp_code[*beta_]);
    }

    value_type zero() const { return z_; }
    value_type one() const { return 0; }
    bool is_zero(value_type a) const { return a == z_; }

    value_type mul(value_type a, value_type b) const {
        if (a == z_ || b == z_) {
            return z_;
        }
        const std::uint32_t s = a + b;
        return s >= z_ ? s - z_ : s;
    }
    value_type inv(value_type a) const {
        if (a == z_) {
            throw DivisionByZero();
        }
        return a == 0 ? 0 : z_ - a;
    }
    value_type add(value_type a, value_type b) const {
        if (a == z_) {
            return b;
        }
        if (b == z_) {
            return a;
        }
        const std::uint32_t n = b >= a ? b - a : b + z_ - a;
        const std::uint32_t zz = t_->zech[n];
        if (zz == z_) {
            return z_;
        }
        const std::uint32_t s = a + zz;
        return s >= z_ ? s - z_ : s;
    }
    value_type neg(value_type a) const {
        if (a == z_ || t_->p == 2) {
            return a;
        }
        const std::uint32_t s = a + z_ / 2;
        return s >= z_ ? s - z_ : s;
    }
    value_type sub(value_type a, value_type b) const { return add(a, neg(b)); }

    value_type sample(Rng& rng) const { return t_->log_of[uniform_below(rng, t_->q)]; }

    value_type from_int(long long v) const {
        const auto p = static_cast<long long>(t_->p);
        const long long r = ((v % p) + p) % p;
        return t_->log_of[static_cast<std::uint32_t>(r)];
    }

    value_type from_base(const Scalar& s) const {
        const auto& c = s.coeffs();
        if (!beta_) {
            return t_->log_of[t_->encode(c)];
        }
        value_type acc = zero();
        value_type pw = one();
        for (std::size_t i = 0; i < c.size(); ++i) {
            acc = add(acc, mul(t_->log_of[static_cast<std::uint32_t>(c[i])], pw));
            pw = mul(pw, *beta_);
        }
        return acc;
    }

    std::optional<Scalar> to_base(value_type a) const {
        const std::uint32_t code = a == z_ ? 0 : t_->exp_code[a];
        if (!beta_) {
            if (ext_ == base_) {
                return Scalar::from_coeffs(base_, t_->digits(code));
            }
            if (code < t_->p) {
                return Scalar::from_coeffs(base_, {code});
            }
            return std::nullopt;
        }
        std::call_once(*back_once_, [this] { build_back_map(); });
        auto it = back_->find(a);
        if (it == back_->end()) {
            return std::nullopt;
        }
        return Scalar::from_coeffs(base_, it->second);
    }

    std::string to_string(value_type a) const {
        const std::uint32_t code = a == z_ ? 0 : t_->exp_code[a];
        if (code < t_->p) {
            return std::to_string(code);
        }
        const auto d = t_->digits(code);
        std::string s = "(";
        for (std::size_t i = 0; i < d.size(); ++i) {
            s += (i ? "," : "") + std::to_string(d[i]);
        }
        return s + ")";
    }

private:
    std::uint32_t find_root(const std::vector<std::uint64_t>& f) const {
        for (std::uint32_t n = 0; n < z_; ++n) {
            value_type acc = zero();
            value_type pw = one();
            for (std::size_t i = 0; i < f.size(); ++i) {
                acc = add(acc, mul(t_->log_of[static_cast<std::uint32_t>(f[i])], pw));
                pw = mul(pw, n);
            }
            if (acc == z_) {
                return n;
            }
        }
        throw FieldSpecError("base modulus has no root in the sampling extension");
    }

    void build_back_map() const {
        const std::uint64_t p = base_->p();
        const unsigned k = base_->k();
        std::uint64_t count = 1;
        for (unsigned i = 0; i < k; ++i) {
            count *= p;
        }
        for (std::uint64_t code = 0; code < count; ++code) {
            std::vector<std::uint64_t> d(k);
            std::uint64_t c = code;
            for (unsigned i = 0; i < k; ++i) {
                d[i] = c % p;
                c /= p;
            }
            (*back_)[from_base(Scalar::from_coeffs(base_, d))] = d;
        }
    }

    FieldPtr base_;
    FieldPtr ext_;
    std::shared_ptr<const detail::ZechTables> t_;
    std::uint32_t z_ = 0;
    std::optional<std::uint32_t> beta_;
    std::shared_ptr<std::once_flag> back_once_ = std::make_shared<std::once_flag>();
    std::shared_ptr<std::unordered_map<std::uint32_t, std::vector<std::uint64_t>>> back_ =
        std::make_shared<std::unordered_map<std::uint32_t, std::vector<std::uint64_t>>>();
};

/// Exact arithmetic through Scalar, optionally over an extension carrying an image of the base generator.
class ExactField {
public:
    using value_type = Scalar;

    explicit ExactField(FieldPtr base, std::uint64_t bound = 1ULL << 16)
        : base_(base), ext_(std::move(base)), bound_(bound) {}

    ExactField(FieldPtr base, FieldPtr ext, std::optional<Scalar> beta)
        : base_(std::move(base)), ext_(std::move(ext)), beta_(std::move(beta)) {}

    const FieldPtr& base() const { return base_; }
    FieldPtr witness_field() const { return ext_; }

    value_type zero() const { return Scalar::zero(ext_); }
    value_type one() const { return Scalar::one(ext_); }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type inv(const value_type& a) const { return a.inv(); }
    bool is_zero(const value_type& a) const { return a.is_zero(); }

    value_type sample(Rng& rng) const { return sample_scalar(ext_, rng, bound_); }
    value_type from_int(long long v) const { return Scalar(ext_, v); }

    value_type from_base(const Scalar& s) const {
        if (same_field(s.field(), ext_)) {
            return s;
        }
        if (!same_field(s.field(), base_)) {
            throw FieldMismatch();
        }
        const auto& c = s.coeffs();
        if (!beta_) {
            return Scalar(ext_, static_cast<long long>(c[0]));
        }
        Scalar acc = zero();
        Scalar pw = one();
        for (std::uint64_t ci : c) {
            acc += Scalar(ext_, static_cast<long long>(ci)) * pw;
            pw *= *beta_;
        }
        return acc;
    }

    std::optional<Scalar> to_base(const value_type& a) const {
        if (same_field(ext_, base_)) {
            return a;
        }
        if (!beta_) {
            if (auto v = a.prime_subfield_value()) {
                return Scalar(base_, static_cast<long long>(*v));
            }
        }
        return std::nullopt;
    }

    std::string to_string(const value_type& a) const { return a.to_string(); }

private:
    FieldPtr base_;
    FieldPtr ext_;
    std::optional<Scalar> beta_;
    std::uint64_t bound_ = 1ULL << 16;
};

using SamplingField = std::variant<PrimeField, TableField, ExactField>;

inline constexpr std::uint64_t kSamplingFloor = 1ULL << 16;
inline constexpr std::uint64_t kTableCeiling = 1ULL << 21;

/// The field random tuples are drawn from for a given base field. Over Q this is Z/p for a
/// 62-bit prime derived from the seed; small finite fields are enlarged to at least 2^16 elements.
inline SamplingField make_sampling_field(const FieldPtr& base, std::uint64_t seed, std::uint64_t bound = kSamplingFloor) {
    if (base->is_rational()) {
        return PrimeField(base, detail::random_prime(seed), bound);
    }
    const std::uint64_t p = base->p();
    const auto q = base->order();
    if (q && *q >= kSamplingFloor) {
        if (base->k() == 1 && p % 2 == 1 && p < (1ULL << 62)) {
            return PrimeField(base, p);
        }
        if (*q <= kTableCeiling) {
            return TableField(base, base->k());
        }
        return ExactField(base);
    }
    unsigned k = base->k();
    std::uint64_t order = *q;
    while (order < kSamplingFloor) {
        for (unsigned i = 0; i < base->k(); ++i) {
            order *= p;
        }
        k += base->k();
    }
    if (order <= kTableCeiling) {
        return TableField(base, k);
    }
    if (base->k() == 1) {
        return ExactField(base, FieldSpec::finite(p, k), std::nullopt);
    }
    throw FieldSpecError("no sampling extension available for " + base->to_string());
}

/// Field of the witness strings produced by a sampling field.
inline FieldPtr witness_field(const SamplingField& f) {
    return std::visit([](const auto& x) { return x.witness_field(); }, f);
}

} // namespace skewfield

#endif

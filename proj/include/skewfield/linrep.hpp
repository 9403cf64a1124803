#ifndef SKEWFIELD_LINREP_HPP
#define SKEWFIELD_LINREP_HPP

// Linear representations r = u A^{-1} v and randomized rational identity testing.

#include <skewfield/dense.hpp>
#include <skewfield/errors.hpp>
#include <skewfield/eval_field.hpp>
#include <skewfield/expr.hpp>

#include <atomic>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace skewfield {

struct PencilEntry {
    std::size_t row;
    std::size_t col;
    int var; // -1 for the constant part A0
    Scalar coeff;
};

/// (u, A0 + sum x_i A_i, v) with A stored as a sparse list of entries.
struct LinRep {
    FieldPtr field;
    std::size_t dim = 0;
    std::vector<Scalar> u;
    std::vector<Scalar> v;
    std::vector<PencilEntry> entries;

    /// Dense coefficient matrix of variable `var` (-1 for A0).
    Mat<Scalar> coefficient(int var) const {
        Mat<Scalar> a(dim, dim, Scalar::zero(field));
        for (const auto& e : entries) {
            if (e.var == var) {
                a(e.row, e.col) += e.coeff;
            }
        }
        return a;
    }
};

namespace detail {

inline LinRep linrep_rec(Expr r, const FieldPtr& f, std::size_t limit) {
    if (r.dimension() > limit) {
        throw Error("linear representation of dimension " + std::to_string(r.dimension()) + " exceeds the limit " +
                    std::to_string(limit));
    }
    LinRep L;
    L.field = f;
    const Scalar one = Scalar::one(f);
    switch (r.op()) {
    case Op::constant:
        L.dim = 1;
        L.u = {one};
        L.v = {r.value()};
        L.entries.push_back({0, 0, -1, one});
        return L;
    case Op::variable:
        L.dim = 2;
        L.u = {one, Scalar::zero(f)};
        L.v = {Scalar::zero(f), one};
        L.entries.push_back({0, 0, -1, one});
        L.entries.push_back({0, 1, static_cast<int>(r.var_index()), -one});
        L.entries.push_back({1, 1, -1, one});
        return L;
    case Op::negate:
        L = linrep_rec(r.kid(0), f, limit);
        for (auto& x : L.v) {
            x = -x;
        }
        return L;
    case Op::inverse: {
        LinRep a = linrep_rec(r.kid(0), f, limit);
        L.dim = a.dim + 1;
        L.u.assign(L.dim, Scalar::zero(f));
        L.v.assign(L.dim, Scalar::zero(f));
        L.u[0] = one;
        L.v[0] = one;
        for (std::size_t j = 0; j < a.dim; ++j) {
            if (!a.u[j].is_zero()) {
                L.entries.push_back({0, j + 1, -1, -a.u[j]});
            }
            if (!a.v[j].is_zero()) {
                L.entries.push_back({j + 1, 0, -1, a.v[j]});
            }
        }
        for (const auto& e : a.entries) {
            L.entries.push_back({e.row + 1, e.col + 1, e.var, e.coeff});
        }
        return L;
    }
    case Op::sum: {
        L.dim = 0;
        for (std::size_t k = 0; k < r.num_kids(); ++k) {
            LinRep a = linrep_rec(r.kid(k), f, limit);
            const std::size_t off = L.dim;
            for (const auto& e : a.entries) {
                L.entries.push_back({e.row + off, e.col + off, e.var, e.coeff});
            }
            L.u.insert(L.u.end(), a.u.begin(), a.u.end());
            L.v.insert(L.v.end(), a.v.begin(), a.v.end());
            L.dim += a.dim;
        }
        return L;
    }
    case Op::product: {
        L = linrep_rec(r.kid(0), f, limit);
        for (std::size_t k = 1; k < r.num_kids(); ++k) {
            LinRep b = linrep_rec(r.kid(k), f, limit);
            const std::size_t off = L.dim;
            // [[A1, -v1 u2], [0, A2]]
            for (std::size_t i = 0; i < L.dim; ++i) {
                if (L.v[i].is_zero()) {
                    continue;
                }
                for (std::size_t j = 0; j < b.dim; ++j) {
                    if (!b.u[j].is_zero()) {
                        L.entries.push_back({i, off + j, -1, -(L.v[i] * b.u[j])});
                    }
                }
            }
            for (const auto& e : b.entries) {
                L.entries.push_back({e.row + off, e.col + off, e.var, e.coeff});
            }
            L.u.resize(off + b.dim, Scalar::zero(f));
            std::vector<Scalar> v(off, Scalar::zero(f));
            v.insert(v.end(), b.v.begin(), b.v.end());
            L.v = std::move(v);
            L.dim = off + b.dim;
        }
        return L;
    }
    }
    throw Error("corrupt expression node");
}

} // namespace detail

/// Linear representation of r; dimension follows the recursive size rule (tree-wise on DAGs).
inline LinRep to_linrep(Expr r, const FieldPtr& field, std::size_t limit = 4096) {
    return detail::linrep_rec(r, field, limit);
}

/// A(X) = A0 (x) I + sum A_i (x) X_i as a dense (dim n) x (dim n) matrix.
template <class F>
Mat<typename F::value_type> pencil_matrix(const F& f, const LinRep& L, const std::vector<Mat<typename F::value_type>>& X,
                                          std::size_t n) {
    Mat<typename F::value_type> A(L.dim * n, L.dim * n, f.zero());
    for (const auto& e : L.entries) {
        const auto c = f.from_base(e.coeff);
        if (e.var < 0) {
            for (std::size_t d = 0; d < n; ++d) {
                A(e.row * n + d, e.col * n + d) = f.add(A(e.row * n + d, e.col * n + d), c);
            }
        } else {
            const auto& Xi = X.at(static_cast<std::size_t>(e.var));
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = 0; b < n; ++b) {
                    A(e.row * n + a, e.col * n + b) = f.add(A(e.row * n + a, e.col * n + b), f.mul(c, Xi(a, b)));
                }
            }
        }
    }
    return A;
}

/// (u (x) I) A(X)^{-1} (v (x) I), or nullopt when A(X) is singular.
template <class F>
std::optional<Mat<typename F::value_type>> evaluate_linrep(const F& f, const LinRep& L,
                                                           const std::vector<Mat<typename F::value_type>>& X,
                                                           std::size_t n) {
    using M = Mat<typename F::value_type>;
    const M A = pencil_matrix(f, L, X, n);
    M V(L.dim * n, n, f.zero());
    for (std::size_t i = 0; i < L.dim; ++i) {
        const auto c = f.from_base(L.v[i]);
        for (std::size_t d = 0; d < n; ++d) {
            V(i * n + d, d) = c;
        }
    }
    auto Y = dense::solve(f, A, V);
    if (!Y || dense::rank(f, A) < A.rows()) {
        return std::nullopt;
    }
    M out(n, n, f.zero());
    for (std::size_t j = 0; j < L.dim; ++j) {
        const auto c = f.from_base(L.u[j]);
        if (f.is_zero(c)) {
            continue;
        }
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                out(a, b) = f.add(out(a, b), f.mul(c, (*Y)(j * n + a, b)));
            }
        }
    }
    return out;
}

/// Whether the bordered pencil [[0, u],[v, A]] evaluated at X is invertible.
template <class F>
bool bordered_invertible(const F& f, const LinRep& L, const std::vector<Mat<typename F::value_type>>& X, std::size_t n) {
    using M = Mat<typename F::value_type>;
    const M A = pencil_matrix(f, L, X, n);
    const std::size_t N = (L.dim + 1) * n;
    M B(N, N, f.zero());
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) {
            B(n + i, n + j) = A(i, j);
        }
    }
    for (std::size_t j = 0; j < L.dim; ++j) {
        const auto cu = f.from_base(L.u[j]);
        const auto cv = f.from_base(L.v[j]);
        for (std::size_t d = 0; d < n; ++d) {
            B(d, n + j * n + d) = cu;
            B(n + j * n + d, d) = cv;
        }
    }
    return dense::rank(f, B) == N;
}

// ---------------------------------------------------------------------------
// Randomized identity testing

struct RitConfig {
    std::uint64_t seed = 0;
    std::size_t trials = 8;
    std::size_t size_cap = 64;
    std::uint64_t bound = 1ULL << 16;
    std::size_t threads = 1;
    /// Largest (dim + 1) * n for which the bordered-pencil route is attempted.
    std::size_t pencil_limit = 600;
};

struct ZeroVerdict {
    enum class Kind { nonzero, probably_zero };
    Kind kind = Kind::probably_zero;
    std::optional<MatrixTuple> witness;
    std::string route;        // "expression" or "pencil" for a witness
    std::size_t trials = 0;   // trials run at the main size
    std::size_t size = 0;     // main sampling size
    std::size_t skipped = 0;  // samples outside the domain

    bool nonzero() const { return kind == Kind::nonzero; }
    bool probably_zero() const { return kind == Kind::probably_zero; }
};

namespace detail {

template <class F>
Mat<typename F::value_type> sample_matrix(const F& f, Rng& rng, std::size_t n) {
    Mat<typename F::value_type> a(n, n, f.zero());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = f.sample(rng);
        }
    }
    return a;
}

template <class F>
MatrixTuple to_tuple(const F& f, const std::vector<Mat<typename F::value_type>>& X, std::size_t n) {
    MatrixTuple t;
    t.field = f.witness_field();
    t.n = n;
    for (const auto& M : X) {
        Mat<Scalar> s(n, n, Scalar::zero(t.field));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                s(i, j) = Scalar::parse(t.field, f.to_string(M(i, j)));
            }
        }
        t.mats.push_back(std::move(s));
    }
    if constexpr (std::is_same_v<F, TableField>) {
        if (auto g = f.generator_image()) {
            t.generator_image = Scalar::from_coeffs(t.field, *g);
        }
    }
    return t;
}

template <class F>
std::vector<Mat<typename F::value_type>> from_tuple(const F& f, const MatrixTuple& X) {
    std::vector<Mat<typename F::value_type>> out;
    for (const auto& M : X.mats) {
        Mat<typename F::value_type> a(X.n, X.n, f.zero());
        for (std::size_t i = 0; i < X.n; ++i) {
            for (std::size_t j = 0; j < X.n; ++j) {
                a(i, j) = f.from_base(M(i, j));
            }
        }
        out.push_back(std::move(a));
    }
    return out;
}

struct TrialOutcome {
    bool nonzero = false;
    bool skipped = false;
    std::optional<MatrixTuple> witness;
};

template <class F>
TrialOutcome run_trial(const F& f, Expr r, std::size_t m, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Mat<typename F::value_type>> X;
    for (std::size_t i = 0; i < m; ++i) {
        X.push_back(sample_matrix(f, rng, n));
    }
    TrialOutcome out;
    try {
        Evaluator<F> ev(f, X, n);
        const auto& val = ev.eval(r);
        if (!dense::is_zero(f, val)) {
            out.nonzero = true;
            out.witness = to_tuple(f, X, n);
        }
    } catch (const DomainError&) {
        out.skipped = true;
    } catch (const DivisionByZero&) {
        out.skipped = true;
    }
    return out;
}

/// Runs trials [0, count) and returns the outcome of the lowest-indexed nonzero trial.
template <class F>
std::pair<std::optional<MatrixTuple>, std::size_t> run_trials(const F& f, Expr r, std::size_t m, std::size_t n,
                                                              std::uint64_t seed, std::size_t count, std::size_t threads) {
    std::size_t skipped = 0;
    if (threads <= 1 || count <= 1) {
        for (std::size_t t = 0; t < count; ++t) {
            auto o = run_trial(f, r, m, n, mix_seed(seed, t));
            if (o.nonzero) {
                return {std::move(o.witness), skipped};
            }
            skipped += o.skipped;
        }
        return {std::nullopt, skipped};
    }
    std::vector<TrialOutcome> outs(count);
    for (std::size_t base = 0; base < count; base += threads) {
        const std::size_t hi = std::min(count, base + threads);
        std::vector<std::thread> pool;
        for (std::size_t t = base; t < hi; ++t) {
            pool.emplace_back([&, t] { outs[t] = run_trial(f, r, m, n, mix_seed(seed, t)); });
        }
        for (auto& th : pool) {
            th.join();
        }
        for (std::size_t t = base; t < hi; ++t) {
            if (outs[t].nonzero) {
                return {std::move(outs[t].witness), skipped};
            }
            skipped += outs[t].skipped;
        }
    }
    return {std::nullopt, skipped};
}

template <class F>
ZeroVerdict is_zero_in(const F& f, Expr r, std::size_t m, const RitConfig& cfg, std::uint64_t seed) {
    ZeroVerdict out;
    const std::size_t n = static_cast<std::size_t>(std::clamp<std::uint64_t>(r.dimension(), 1, cfg.size_cap));
    out.size = n;
    std::uint64_t stage = 0;
    // Cheap small-size trials first: most nonzero elements show up there.
    for (std::size_t small : {std::size_t{1}, std::size_t{2}, std::size_t{3}}) {
        if (small >= n) {
            break;
        }
        auto [w, sk] = run_trials(f, r, m, small, mix_seed(seed, ++stage), small == 1 ? 1 : 2, cfg.threads);
        out.skipped += sk;
        if (w) {
            out.kind = ZeroVerdict::Kind::nonzero;
            out.witness = std::move(w);
            out.route = "expression";
            return out;
        }
    }
    auto [w, sk] = run_trials(f, r, m, n, mix_seed(seed, 100), cfg.trials, cfg.threads);
    out.trials = cfg.trials;
    out.skipped += sk;
    std::size_t main_size = n;
    if (!w && sk == cfg.trials) {
        main_size = 2 * n;
        auto [w2, sk2] = run_trials(f, r, m, main_size, mix_seed(seed, 200), cfg.trials, cfg.threads);
        w = std::move(w2);
        out.skipped += sk2;
        out.size = main_size;
        if (!w && sk2 == cfg.trials && (r.dimension() + 1) * n <= cfg.pencil_limit) {
            // Outside the expression's domain everywhere: evaluate the pencil instead.
            const LinRep L = to_linrep(r, f.base());
            for (std::size_t t = 0; t < cfg.trials; ++t) {
                Rng rng(mix_seed(mix_seed(seed, 300), t));
                std::vector<Mat<typename F::value_type>> X;
                for (std::size_t i = 0; i < m; ++i) {
                    X.push_back(sample_matrix(f, rng, n));
                }
                auto val = evaluate_linrep(f, L, X, n);
                if (val && !dense::is_zero(f, *val)) {
                    out.kind = ZeroVerdict::Kind::nonzero;
                    out.witness = to_tuple(f, X, n);
                    out.route = "pencil";
                    out.size = n;
                    return out;
                }
            }
        }
    }
    if (w) {
        out.kind = ZeroVerdict::Kind::nonzero;
        out.witness = std::move(w);
        out.route = "expression";
    }
    return out;
}

class VerdictCache {
public:
    static VerdictCache& instance() {
        static VerdictCache c;
        return c;
    }
    using Key = std::tuple<const Node*, std::string, std::uint64_t, std::size_t, std::size_t, std::uint64_t, std::size_t>;

    std::optional<ZeroVerdict> find(const Key& k) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = map_.find(k);
        if (it == map_.end()) {
            return std::nullopt;
        }
        return it->second;
    }
    void put(const Key& k, const ZeroVerdict& v) {
        std::lock_guard<std::mutex> lock(mu_);
        map_.emplace(k, v);
    }

private:
    std::mutex mu_;
    std::map<Key, ZeroVerdict> map_;
};

} // namespace detail

/// Randomized test of r = 0 in the free skew field over `field` with m variables.
/// A nonzero verdict carries a witness tuple and is certain; a zero verdict is probabilistic.
inline ZeroVerdict is_zero(Expr r, const FieldPtr& field, const RitConfig& cfg = {}, std::size_t m = 0) {
    m = std::max<std::size_t>(m, r.arity());
    if (r.is_const()) {
        ZeroVerdict v;
        v.size = 1;
        if (!r.value().is_zero()) {
            v.kind = ZeroVerdict::Kind::nonzero;
            v.route = "expression";
            MatrixTuple X;
            X.field = field;
            X.n = 1;
            for (std::size_t i = 0; i < m; ++i) {
                X.mats.emplace_back(1, 1, Scalar::zero(field));
            }
            v.witness = X;
        }
        return v;
    }
    const detail::VerdictCache::Key key{r.node(), field->to_string(), cfg.seed, cfg.trials, cfg.size_cap, cfg.bound, m};
    if (auto hit = detail::VerdictCache::instance().find(key)) {
        return *hit;
    }
    const std::uint64_t seed = mix_seed(cfg.seed, r.hash());
    const SamplingField sf = make_sampling_field(field, seed, cfg.bound);
    ZeroVerdict v = std::visit([&](const auto& f) { return detail::is_zero_in(f, r, m, cfg, seed); }, sf);
    detail::VerdictCache::instance().put(key, v);
    return v;
}

inline ZeroVerdict eq_m(Expr r, Expr s, const FieldPtr& field, const RitConfig& cfg = {}, std::size_t m = 0) {
    return is_zero(r - s, field, cfg, m);
}

/// Re-checks a nonzero witness by independent re-evaluation.
inline bool verify_witness(Expr r, const FieldPtr& field, const ZeroVerdict& v) {
    if (!v.nonzero() || !v.witness) {
        return false;
    }
    const MatrixTuple& X = *v.witness;
    auto check = [&](const auto& f) -> bool {
        const auto mats = detail::from_tuple(f, X);
        if (v.route == "pencil") {
            auto val = evaluate_linrep(f, to_linrep(r, field), mats, X.n);
            return val && !dense::is_zero(f, *val);
        }
        try {
            Evaluator<std::decay_t<decltype(f)>> ev(f, mats, X.n);
            return !dense::is_zero(f, ev.eval(r));
        } catch (const DomainError&) {
            return false;
        }
    };
    if (field->is_rational()) {
        for (std::uint64_t s = 1; s <= 3; ++s) {
            if (check(PrimeField(field, detail::random_prime(mix_seed(0xbeef, s))))) {
                return true;
            }
        }
        if (X.n <= 4) {
            return check(ExactField(field));
        }
        return false;
    }
    return check(exact_field_for(field, X));
}

// ---------------------------------------------------------------------------
// Rank of matrices over the free skew field

struct RankVerdict {
    bool full = false;
    std::optional<MatrixTuple> witness;
    std::size_t max_size = 0;
    std::size_t skipped = 0;
};

/// Full column rank of a rows x cols matrix of expressions, by evaluation at random tuples of
/// increasing size. A matrix with more columns than rows is never of full column rank.
inline RankVerdict full_rank_over_M(const Mat<Expr>& A, const FieldPtr& field, const RitConfig& cfg = {}, std::size_t m = 0) {
    RankVerdict out;
    const std::size_t R = A.rows();
    const std::size_t C = A.cols();
    if (C > R || C == 0) {
        return out;
    }
    for (const Expr& e : A.data()) {
        m = std::max<std::size_t>(m, e.arity());
    }
    std::uint64_t hseed = cfg.seed;
    for (const Expr& e : A.data()) {
        hseed = mix_seed(hseed, e.hash());
    }
    const SamplingField sf = make_sampling_field(field, hseed, cfg.bound);
    std::vector<std::size_t> sizes;
    for (std::size_t n : {1, 2, 3, 4}) {
        if (n <= cfg.size_cap) {
            sizes.push_back(n);
        }
    }
    for (std::size_t n = 8; n <= cfg.size_cap; n *= 2) {
        sizes.push_back(n);
    }
    std::size_t samples = 0;
    std::visit(
        [&](const auto& f) {
            using F = std::decay_t<decltype(f)>;
            for (std::size_t si = 0; si < sizes.size(); ++si) {
                const std::size_t n = sizes[si];
                const std::size_t tries = (si + 1 == sizes.size()) ? cfg.trials : 1;
                for (std::size_t t = 0; t < tries; ++t) {
                    ++samples;
                    Rng rng(mix_seed(hseed, n * 1000 + t));
                    std::vector<Mat<typename F::value_type>> X;
                    for (std::size_t i = 0; i < m; ++i) {
                        X.push_back(detail::sample_matrix(f, rng, n));
                    }
                    out.max_size = n;
                    try {
                        Evaluator<F> ev(f, X, n);
                        Mat<typename F::value_type> big(R * n, C * n, f.zero());
                        for (std::size_t i = 0; i < R; ++i) {
                            for (std::size_t j = 0; j < C; ++j) {
                                const auto& v = ev.eval(A(i, j));
                                for (std::size_t a = 0; a < n; ++a) {
                                    for (std::size_t b = 0; b < n; ++b) {
                                        big(i * n + a, j * n + b) = v(a, b);
                                    }
                                }
                            }
                        }
                        if (dense::rank(f, big) == C * n) {
                            out.full = true;
                            out.witness = detail::to_tuple(f, X, n);
                            return;
                        }
                    } catch (const DomainError&) {
                        ++out.skipped;
                    } catch (const DivisionByZero&) {
                        ++out.skipped;
                    }
                }
            }
        },
        sf);
    if (!out.full && out.skipped == samples) {
        throw Inconclusive("every sample fell outside the domain of some entry");
    }
    return out;
}

} // namespace skewfield

#endif

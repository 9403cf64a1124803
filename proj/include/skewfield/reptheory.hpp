#ifndef SKEWFIELD_REPTHEORY_HPP
#define SKEWFIELD_REPTHEORY_HPP

// Representations of finite groups on homogeneous pieces of the free algebra.

#include <skewfield/group.hpp>

#include <map>
#include <string>
#include <vector>

namespace skewfield {

/// A word x_{w0} x_{w1} ... in 0-based variable indices; the empty word is 1.
using Word = std::vector<std::uint32_t>;
/// Noncommutative polynomial as word -> coefficient, zero coefficients omitted.
using NCPoly = std::map<Word, Scalar>;

inline std::string word_string(const Word& w, char letter = 'x') {
    if (w.empty()) {
        return "1";
    }
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) {
            s += "*";
        }
        s += letter + std::to_string(w[i] + 1);
    }
    return s;
}

inline Expr word_expr(const Word& w, const FieldPtr& f) {
    if (w.empty()) {
        return Expr::one(f);
    }
    std::vector<Expr> xs;
    for (auto i : w) {
        xs.push_back(Expr::var(i));
    }
    return Expr::product(xs);
}

inline Expr poly_expr(const NCPoly& p, const FieldPtr& f) {
    std::vector<Expr> terms;
    for (const auto& [w, c] : p) {
        terms.push_back(Expr::constant(c) * word_expr(w, f));
    }
    return terms.empty() ? Expr::zero(f) : Expr::sum(terms);
}

inline void poly_add(NCPoly& p, const Word& w, const Scalar& c) {
    if (c.is_zero()) {
        return;
    }
    auto [it, fresh] = p.emplace(w, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) {
            p.erase(it);
        }
    }
}

/// Image of p under the linear substitution x_i -> sum_j M(j, i) x_j.
inline NCPoly apply_linear(const Mat<Scalar>& M, const NCPoly& p) {
    NCPoly out;
    for (const auto& [w, c] : p) {
        NCPoly acc{{Word{}, c}};
        for (auto i : w) {
            NCPoly next;
            for (const auto& [u, a] : acc) {
                for (std::size_t j = 0; j < M.rows(); ++j) {
                    if (M(j, i).is_zero()) {
                        continue;
                    }
                    Word v = u;
                    v.push_back(static_cast<std::uint32_t>(j));
                    poly_add(next, v, a * M(j, i));
                }
            }
            acc = std::move(next);
        }
        for (const auto& [u, a] : acc) {
            poly_add(out, u, a);
        }
    }
    return out;
}

/// x_i * p.
inline NCPoly left_multiply(std::uint32_t i, const NCPoly& p) {
    NCPoly out;
    for (const auto& [w, c] : p) {
        Word v{i};
        v.insert(v.end(), w.begin(), w.end());
        out.emplace(std::move(v), c);
    }
    return out;
}

struct GModule {
    FieldPtr field;
    std::size_t dim = 0;
    std::vector<Mat<Scalar>> action; // action[g] acts on coordinate columns
    std::vector<NCPoly> basis;       // optional polynomial realization
};

namespace detail {

/// Coordinates (as columns) of the polynomials `ps` in the independent family `basis`.
inline std::optional<Mat<Scalar>> poly_coordinates(const FieldPtr& f, const std::vector<NCPoly>& basis,
                                                   const std::vector<NCPoly>& ps) {
    std::map<Word, std::size_t> index;
    for (const auto* fam : {&basis, &ps}) {
        for (const auto& p : *fam) {
            for (const auto& kv : p) {
                index.emplace(kv.first, 0);
            }
        }
    }
    std::size_t k = 0;
    for (auto& kv : index) {
        kv.second = k++;
    }
    ExactField F(f);
    Mat<Scalar> A(index.size(), basis.size(), Scalar::zero(f));
    Mat<Scalar> B(index.size(), ps.size(), Scalar::zero(f));
    for (std::size_t j = 0; j < basis.size(); ++j) {
        for (const auto& [w, c] : basis[j]) {
            A(index[w], j) = c;
        }
    }
    for (std::size_t j = 0; j < ps.size(); ++j) {
        for (const auto& [w, c] : ps[j]) {
            B(index[w], j) = c;
        }
    }
    if (index.empty()) {
        return Mat<Scalar>(basis.size(), ps.size(), Scalar::zero(f));
    }
    return dense::solve(F, A, B);
}

} // namespace detail

/// The module spanned by linearly independent polynomials, which must span a G-stable space.
inline GModule module_from_polys(const FieldPtr& f, const std::vector<Mat<Scalar>>& linear_part,
                                 std::vector<NCPoly> basis) {
    GModule M;
    M.field = f;
    M.dim = basis.size();
    for (const auto& L : linear_part) {
        std::vector<NCPoly> images;
        for (const auto& p : basis) {
            images.push_back(apply_linear(L, p));
        }
        auto coords = detail::poly_coordinates(f, basis, images);
        if (!coords) {
            throw Error("span is not stable under the group");
        }
        M.action.push_back(std::move(*coords));
    }
    M.basis = std::move(basis);
    return M;
}

/// Tensor-power action on span(words); the words must span a stable subspace.
inline GModule degree_action(const ActionSpec& a, const std::vector<Word>& words) {
    if (!a.linear_part) {
        throw NonlinearAction("the action is not linear in the variables");
    }
    std::vector<NCPoly> basis;
    for (const auto& w : words) {
        if (!words.empty() && w.size() != words[0].size()) {
            throw Error("words of different degrees");
        }
        basis.push_back(NCPoly{{w, Scalar::one(a.field)}});
    }
    return module_from_polys(a.field, *a.linear_part, std::move(basis));
}

/// All words of degree d in m variables, in lexicographic order.
inline std::vector<Word> words_of_degree(std::size_t m, std::size_t d) {
    std::vector<Word> out{Word{}};
    for (std::size_t k = 0; k < d; ++k) {
        std::vector<Word> next;
        for (const auto& w : out) {
            for (std::uint32_t i = 0; i < m; ++i) {
                Word v = w;
                v.push_back(i);
                next.push_back(std::move(v));
            }
        }
        out = std::move(next);
    }
    return out;
}

/// A G-stable summand: `embedding` holds its basis as columns in the parent's coordinates.
struct Block {
    Mat<Scalar> embedding;
    GModule module;
};

namespace detail {

class Decomposer {
public:
    Decomposer(const FieldPtr& f, const std::vector<Mat<Scalar>>& action, std::uint64_t seed)
        : f_(f), F_(f), action_(action), rng_(seed) {}

    std::vector<Mat<Scalar>> run(std::size_t dim) {
        std::vector<Mat<Scalar>> out;
        split(dense::identity(F_, dim), out);
        return out;
    }

private:
    // Action restricted to the stable subspace with basis columns S.
    std::vector<Mat<Scalar>> restrict(const Mat<Scalar>& S) {
        std::vector<Mat<Scalar>> res;
        for (const auto& A : action_) {
            auto c = dense::solve(F_, S, dense::mul(F_, A, S));
            if (!c) {
                throw Error("internal: subspace is not stable");
            }
            res.push_back(std::move(*c));
        }
        return res;
    }

    Mat<Scalar> commutant(const std::vector<Mat<Scalar>>& A, std::size_t r) {
        // Unknown T (r x r) as a vector of length r^2, row-major; equations A T - T A = 0.
        Mat<Scalar> eq(A.size() * r * r, r * r, Scalar::zero(f_));
        std::size_t row = 0;
        for (const auto& a : A) {
            for (std::size_t i = 0; i < r; ++i) {
                for (std::size_t j = 0; j < r; ++j, ++row) {
                    for (std::size_t k = 0; k < r; ++k) {
                        eq(row, k * r + j) += a(i, k);
                        eq(row, i * r + k) -= a(k, j);
                    }
                }
            }
        }
        return dense::nullspace(F_, eq);
    }

    Mat<Scalar> unvec(const Mat<Scalar>& C, std::size_t col, std::size_t r) {
        Mat<Scalar> T(r, r, Scalar::zero(f_));
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < r; ++j) {
                T(i, j) = C(i * r + j, col);
            }
        }
        return T;
    }

    // Equivariant projector onto the stable subspace U (columns, local coordinates); returns its kernel.
    Mat<Scalar> stable_complement(const std::vector<Mat<Scalar>>& A, const Mat<Scalar>& U, std::size_t r) {
        Mat<Scalar> ext(r, U.cols() + r, Scalar::zero(f_));
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < U.cols(); ++j) {
                ext(i, j) = U(i, j);
            }
            ext(i, U.cols() + i) = Scalar::one(f_);
        }
        Mat<Scalar> basis = dense::column_basis(F_, ext);
        auto binv = dense::inverse(F_, basis);
        Mat<Scalar> D(r, r, Scalar::zero(f_));
        for (std::size_t i = 0; i < U.cols(); ++i) {
            D(i, i) = Scalar::one(f_);
        }
        const Mat<Scalar> P0 = dense::mul(F_, dense::mul(F_, basis, D), *binv);
        Mat<Scalar> P(r, r, Scalar::zero(f_));
        for (const auto& a : A) {
            auto ainv = dense::inverse(F_, a);
            P = dense::add(F_, P, dense::mul(F_, dense::mul(F_, a, P0), *ainv));
        }
        return dense::nullspace(F_, P);
    }

    Mat<Scalar> lift(const Mat<Scalar>& S, const Mat<Scalar>& local) { return dense::mul(F_, S, local); }

    void split(const Mat<Scalar>& S, std::vector<Mat<Scalar>>& out) {
        const std::size_t r = S.cols();
        if (r <= 1) {
            out.push_back(S);
            return;
        }
        const auto A = restrict(S);
        if (auto U = find_stable(A, r)) {
            const Mat<Scalar> W = stable_complement(A, *U, r);
            split(lift(S, *U), out);
            split(lift(S, W), out);
            return;
        }
        out.push_back(S);
    }

    // A proper nonzero stable subspace, or nullopt when the restricted module is irreducible.
    std::optional<Mat<Scalar>> find_stable(const std::vector<Mat<Scalar>>& A, std::size_t r) {
        // Spin each coordinate vector.
        for (std::size_t j = 0; j < r; ++j) {
            Mat<Scalar> orbit(r, A.size(), Scalar::zero(f_));
            for (std::size_t g = 0; g < A.size(); ++g) {
                for (std::size_t i = 0; i < r; ++i) {
                    orbit(i, g) = A[g](i, j);
                }
            }
            Mat<Scalar> span = dense::column_basis(F_, orbit);
            if (span.cols() < r) {
                return span;
            }
        }
        const Mat<Scalar> C = commutant(A, r);
        if (C.cols() <= 1) {
            return std::nullopt;
        }
        std::vector<Mat<Scalar>> candidates;
        for (std::size_t c = 0; c < C.cols(); ++c) {
            candidates.push_back(unvec(C, c, r));
        }
        for (int t = 0; t < 6; ++t) {
            Mat<Scalar> T(r, r, Scalar::zero(f_));
            for (std::size_t c = 0; c < C.cols(); ++c) {
                const long long k = static_cast<long long>(uniform_below(rng_, 7)) - 3;
                T = dense::add(F_, T, dense::scale(F_, Scalar(f_, k), unvec(C, c, r)));
            }
            candidates.push_back(std::move(T));
        }
        std::size_t best_degree = 0;
        std::vector<Scalar> best_poly;
        for (const auto& T : candidates) {
            if (dense::is_scalar_matrix(F_, T)) {
                continue;
            }
            const std::vector<Scalar> mp = minimal_polynomial(T, r);
            for (const Scalar& lam : roots(mp)) {
                Mat<Scalar> shifted = dense::sub(F_, T, dense::scalar_matrix(F_, r, lam));
                Mat<Scalar> K = dense::nullspace(F_, shifted);
                if (K.cols() > 0 && K.cols() < r) {
                    return K;
                }
            }
            if (mp.size() - 1 > best_degree) {
                best_degree = mp.size() - 1;
                best_poly = mp;
            }
        }
        // No eigenvalue in k: irreducible when the commutant is a field of degree at most 3.
        if (best_degree == C.cols() && best_degree <= 3) {
            return std::nullopt;
        }
        std::string factor;
        for (std::size_t i = best_poly.size(); i-- > 0;) {
            factor += (factor.empty() ? "" : " + ") + ("(" + best_poly[i].to_string() + ")t^" + std::to_string(i));
        }
        throw SplittingFieldNeeded("minimal polynomial " + factor + " of a module endomorphism does not split over " +
                                   f_->to_string());
    }

    // Monic minimal polynomial, coefficients from degree 0 upwards.
    std::vector<Scalar> minimal_polynomial(const Mat<Scalar>& T, std::size_t r) {
        std::vector<Mat<Scalar>> powers{dense::identity(F_, r)};
        for (std::size_t k = 1; k <= r; ++k) {
            powers.push_back(dense::mul(F_, powers.back(), T));
            Mat<Scalar> basis(r * r, k, Scalar::zero(f_));
            Mat<Scalar> rhs(r * r, 1, Scalar::zero(f_));
            for (std::size_t p = 0; p < k; ++p) {
                for (std::size_t i = 0; i < r * r; ++i) {
                    basis(i, p) = powers[p](i / r, i % r);
                }
            }
            for (std::size_t i = 0; i < r * r; ++i) {
                rhs(i, 0) = powers[k](i / r, i % r);
            }
            if (auto c = dense::solve(F_, basis, rhs)) {
                std::vector<Scalar> mp;
                for (std::size_t p = 0; p < k; ++p) {
                    mp.push_back(-(*c)(p, 0));
                }
                mp.push_back(Scalar::one(f_));
                return mp;
            }
        }
        throw Error("internal: minimal polynomial not found");
    }

    Scalar eval_poly(const std::vector<Scalar>& p, const Scalar& x) {
        Scalar acc = Scalar::zero(f_);
        for (std::size_t i = p.size(); i-- > 0;) {
            acc = acc * x + p[i];
        }
        return acc;
    }

    std::vector<Scalar> roots(const std::vector<Scalar>& p) {
        std::vector<Scalar> out;
        if (f_->is_rational()) {
            // Rational root theorem on the integer multiple of p.
            mpz_class l = 1;
            for (const auto& c : p) {
                mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.rational().get_den().get_mpz_t());
            }
            std::vector<mpz_class> a;
            for (const auto& c : p) {
                a.push_back(mpz_class(c.rational() * l));
            }
            std::size_t low = 0;
            while (low < a.size() && a[low] == 0) {
                ++low;
            }
            if (low > 0) {
                out.push_back(Scalar::zero(f_));
            }
            if (low + 1 >= a.size()) {
                return out;
            }
            auto divisors = [](mpz_class n) -> std::optional<std::vector<mpz_class>> {
                n = abs(n);
                if (n > mpz_class(1000000000)) {
                    return std::nullopt;
                }
                std::vector<mpz_class> d;
                const long v = n.get_si();
                for (long i = 1; i * i <= v; ++i) {
                    if (v % i == 0) {
                        d.emplace_back(i);
                        if (i * i != v) {
                            d.emplace_back(v / i);
                        }
                    }
                }
                return d;
            };
            auto num = divisors(a[low]);
            auto den = divisors(a.back());
            if (!num || !den) {
                return out;
            }
            for (const auto& u : *num) {
                for (const auto& v : *den) {
                    for (int sgn : {1, -1}) {
                        mpq_class cand(mpz_class(u * sgn), v);
                        cand.canonicalize();
                        const Scalar x = Scalar::from_rational(f_, cand);
                        if (eval_poly(p, x).is_zero() && std::find(out.begin(), out.end(), x) == out.end()) {
                            out.push_back(x);
                        }
                    }
                }
            }
            return out;
        }
        const auto q = f_->order();
        if (!q || *q > (1ULL << 16)) {
            return out;
        }
        for (std::uint64_t code = 0; code < *q; ++code) {
            std::vector<std::uint64_t> digits;
            std::uint64_t c = code;
            for (unsigned i = 0; i < f_->k(); ++i) {
                digits.push_back(c % f_->p());
                c /= f_->p();
            }
            const Scalar x = Scalar::from_coeffs(f_, digits);
            if (eval_poly(p, x).is_zero()) {
                out.push_back(x);
            }
        }
        return out;
    }

    FieldPtr f_;
    ExactField F_;
    const std::vector<Mat<Scalar>>& action_;
    Rng rng_;
};

} // namespace detail

/// Splits M into irreducible G-stable summands (over the base field). Requires char k not dividing |G|.
inline std::vector<Block> decompose_irreducible(const GModule& M, std::uint64_t seed = 0) {
    const std::uint64_t ch = M.field->characteristic();
    if (ch != 0 && M.action.size() % ch == 0) {
        throw CharDivides(ch, M.action.size());
    }
    ExactField F(M.field);
    detail::Decomposer dec(M.field, M.action, seed);
    std::vector<Block> out;
    for (Mat<Scalar> S : dec.run(M.dim)) {
        // Canonical basis of the block: reduced echelon form of its rows.
        Mat<Scalar> t = S.transpose();
        dense::rref(F, t);
        S = t.transpose();
        Block b;
        b.embedding = S;
        b.module.field = M.field;
        b.module.dim = S.cols();
        for (const auto& A : M.action) {
            b.module.action.push_back(*dense::solve(F, S, dense::mul(F, A, S)));
        }
        for (std::size_t j = 0; j < S.cols() && !M.basis.empty(); ++j) {
            NCPoly p;
            for (std::size_t i = 0; i < S.rows(); ++i) {
                for (const auto& [w, c] : M.basis[i]) {
                    poly_add(p, w, c * S(i, j));
                }
            }
            b.module.basis.push_back(std::move(p));
        }
        out.push_back(std::move(b));
    }
    return out;
}

} // namespace skewfield

#endif

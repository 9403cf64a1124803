#ifndef SKEWFIELD_MATM_HPP
#define SKEWFIELD_MATM_HPP

// Matrices over the free skew field.

#include <skewfield/linrep.hpp>

#include <string>
#include <vector>

namespace skewfield {

using MatM = Mat<Expr>;

inline MatM mat_zero(std::size_t rows, std::size_t cols, const FieldPtr& f) { return MatM(rows, cols, Expr::zero(f)); }

inline MatM mat_identity(std::size_t n, const FieldPtr& f) {
    MatM a = mat_zero(n, n, f);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = Expr::one(f);
    }
    return a;
}

inline MatM mat_add(const MatM& a, const MatM& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeMismatch("cannot add " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " and " +
                            std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    MatM c = a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            c(i, j) = a(i, j) + b(i, j);
        }
    }
    return c;
}

inline MatM mat_neg(const MatM& a) {
    MatM c = a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            c(i, j) = -a(i, j);
        }
    }
    return c;
}

inline MatM mat_sub(const MatM& a, const MatM& b) { return mat_add(a, mat_neg(b)); }

inline MatM mat_mul(const MatM& a, const MatM& b) {
    if (a.cols() != b.rows()) {
        throw ShapeMismatch("cannot multiply " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " by " +
                            std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    MatM c(a.rows(), b.cols(), Expr());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            std::vector<Expr> terms;
            for (std::size_t k = 0; k < a.cols(); ++k) {
                terms.push_back(a(i, k) * b(k, j));
            }
            c(i, j) = terms.empty() ? Expr() : Expr::sum(terms);
        }
    }
    return c;
}

/// s * A, multiplying every entry on the left.
inline MatM mat_scale(Expr s, const MatM& a) {
    MatM c = a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            c(i, j) = s * a(i, j);
        }
    }
    return c;
}

/// Entrywise substitution x_i -> images[i].
inline MatM substitute(const MatM& a, const std::vector<Expr>& images) {
    MatM c = a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            c(i, j) = substitute(a(i, j), images);
        }
    }
    return c;
}

inline std::vector<std::vector<std::string>> to_strings(const MatM& a, char letter = 'x') {
    std::vector<std::vector<std::string>> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out[i].push_back(to_string(a(i, j), letter));
        }
    }
    return out;
}

inline MatM parse_matrix(const std::vector<std::vector<std::string>>& rows, std::size_t nvars, const FieldPtr& f,
                         char letter = 'x') {
    if (rows.empty()) {
        return MatM();
    }
    MatM a = mat_zero(rows.size(), rows[0].size(), f);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != a.cols()) {
            throw ShapeMismatch("ragged matrix");
        }
        for (std::size_t j = 0; j < a.cols(); ++j) {
            a(i, j) = parse_expr(rows[i][j], nvars, f, letter);
        }
    }
    return a;
}

namespace detail {

inline bool certainly_nonzero(Expr e, const FieldPtr& f, const RitConfig& cfg, std::size_t m) {
    if (e.is_const()) {
        return !e.value().is_zero();
    }
    return is_zero(e, f, cfg, m).nonzero();
}

inline std::size_t max_arity(const MatM& a) {
    std::size_t m = 0;
    for (const Expr& e : a.data()) {
        m = std::max<std::size_t>(m, e.arity());
    }
    return m;
}

/// Left Gauss-Jordan elimination on `a` restricted to columns [0, ncols). Returns the pivot
/// row of each pivot column; non-pivot rows are left with certified-zero-by-test entries there.
inline std::vector<std::pair<std::size_t, std::size_t>> eliminate(MatM& a, std::size_t ncols, const FieldPtr& f,
                                                                  const RitConfig& cfg, std::size_t m,
                                                                  std::vector<std::size_t>* row_origin = nullptr) {
    std::vector<std::pair<std::size_t, std::size_t>> pivots;
    std::size_t next = 0;
    for (std::size_t col = 0; col < ncols && next < a.rows(); ++col) {
        std::size_t piv = a.rows();
        for (std::size_t i = next; i < a.rows(); ++i) {
            if (certainly_nonzero(a(i, col), f, cfg, m)) {
                piv = i;
                break;
            }
        }
        if (piv == a.rows()) {
            for (std::size_t i = next; i < a.rows(); ++i) {
                a(i, col) = Expr::zero(f);
            }
            continue;
        }
        a.swap_rows(piv, next);
        if (row_origin) {
            std::swap((*row_origin)[piv], (*row_origin)[next]);
        }
        const Expr pinv = Expr::inv(a(next, col));
        for (std::size_t j = 0; j < a.cols(); ++j) {
            a(next, j) = (j == col) ? Expr::one(f) : simplify(pinv * a(next, j), f);
        }
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == next || a(i, col).is_zero_const()) {
                continue;
            }
            const Expr factor = a(i, col);
            for (std::size_t j = 0; j < a.cols(); ++j) {
                a(i, j) = (j == col) ? Expr::zero(f) : simplify(a(i, j) - factor * a(next, j), f);
            }
        }
        pivots.emplace_back(col, next);
        ++next;
    }
    return pivots;
}

} // namespace detail

/// Inverse over the free skew field by Gauss-Jordan elimination with left row operations.
/// Throws SingularOverM when a column has no certified-nonzero pivot.
inline MatM mat_inverse(const MatM& a, const FieldPtr& f, const RitConfig& cfg = {}) {
    const std::size_t n = a.rows();
    if (a.cols() != n) {
        throw ShapeMismatch("inverse of a non-square matrix");
    }
    const std::size_t m = detail::max_arity(a);
    MatM aug = mat_zero(n, 2 * n, f);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            aug(i, j) = a(i, j);
        }
        aug(i, n + i) = Expr::one(f);
    }
    auto pivots = detail::eliminate(aug, n, f, cfg, m);
    if (pivots.size() < n) {
        throw SingularOverM("no pivot certified nonzero in column " + std::to_string(pivots.size() + 1));
    }
    MatM inv = aug.columns(n, n);

    // Spot check A * inv against I on the diagonal and two further entries.
    std::vector<std::pair<std::size_t, std::size_t>> spots;
    for (std::size_t i = 0; i < n; ++i) {
        spots.emplace_back(i, i);
    }
    if (n > 1) {
        Rng rng(mix_seed(cfg.seed, 0x1517));
        for (int k = 0; k < 2; ++k) {
            const std::size_t i = uniform_below(rng, n);
            const std::size_t j = (i + 1 + uniform_below(rng, n - 1)) % n;
            spots.emplace_back(i, j);
        }
    }
    for (auto [i, j] : spots) {
        std::vector<Expr> terms;
        for (std::size_t k = 0; k < n; ++k) {
            terms.push_back(a(i, k) * inv(k, j));
        }
        if (i == j) {
            terms.push_back(-Expr::one(f));
        }
        if (is_zero(Expr::sum(terms), f, cfg, m).nonzero()) {
            throw SeedRetry("inverse failed its spot check at entry (" + std::to_string(i + 1) + "," +
                            std::to_string(j + 1) + ")");
        }
    }
    return inv;
}

struct SolveOptions {
    bool verify = true;
};

/// Solves A c = b for a column c over the free skew field (A is n x l, b is n x 1).
/// Free coefficients are set to 0. Throws NoSolution when a residual row is certified nonzero.
inline MatM solve_right_linear(const MatM& a, const MatM& b, const FieldPtr& f, const RitConfig& cfg = {},
                               SolveOptions opt = {}) {
    const std::size_t n = a.rows();
    const std::size_t l = a.cols();
    if (b.rows() != n || b.cols() != 1) {
        throw ShapeMismatch("right-hand side must be " + std::to_string(n) + "x1");
    }
    const std::size_t m = std::max(detail::max_arity(a), detail::max_arity(b));
    MatM aug = mat_zero(n, l + 1, f);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < l; ++j) {
            aug(i, j) = a(i, j);
        }
        aug(i, l) = b(i, 0);
    }
    std::vector<std::size_t> origin(n);
    for (std::size_t i = 0; i < n; ++i) {
        origin[i] = i;
    }
    auto pivots = detail::eliminate(aug, l, f, cfg, m, &origin);
    for (std::size_t i = pivots.size(); i < n; ++i) {
        ZeroVerdict v = is_zero(aug(i, l), f, cfg, m);
        if (v.nonzero()) {
            throw NoSolution(origin[i] + 1, "residual " + to_string(aug(i, l), 'x', 80));
        }
    }
    MatM c = mat_zero(l, 1, f);
    for (auto [col, row] : pivots) {
        c(col, 0) = aug(row, l);
    }
    if (opt.verify) {
        const MatM ac = mat_mul(a, c);
        for (std::size_t i = 0; i < n; ++i) {
            if (is_zero(ac(i, 0) - b(i, 0), f, cfg, m).nonzero()) {
                throw SeedRetry("solution fails row " + std::to_string(i + 1) + " of the system");
            }
        }
    }
    return c;
}

} // namespace skewfield

#endif

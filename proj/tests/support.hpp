#ifndef SKEWFIELD_TESTS_SUPPORT_HPP
#define SKEWFIELD_TESTS_SUPPORT_HPP

#include <skewfield/expr.hpp>

#include <vector>

namespace testsupport {

using namespace skewfield;

inline Mat<Scalar> int_matrix(const FieldPtr& f, std::vector<std::vector<long long>> rows) {
    Mat<Scalar> m(rows.size(), rows[0].size(), Scalar::zero(f));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            m(i, j) = Scalar(f, rows[i][j]);
        }
    }
    return m;
}

inline MatrixTuple random_tuple(const FieldPtr& f, std::size_t m, std::size_t n, Rng& rng, std::uint64_t bound = 20) {
    MatrixTuple X;
    X.field = f;
    X.n = n;
    for (std::size_t k = 0; k < m; ++k) {
        Mat<Scalar> a(n, n, Scalar::zero(f));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) = Scalar(f, static_cast<long long>(uniform_below(rng, bound)) - static_cast<long long>(bound / 2));
            }
        }
        X.mats.push_back(a);
    }
    return X;
}

/// Random expression with about `ops` operations over x1..xm.
inline Expr random_expr(const FieldPtr& f, std::size_t m, std::size_t ops, Rng& rng) {
    if (ops == 0) {
        if (uniform_below(rng, 5) == 0) {
            return Expr::integer(f, static_cast<long long>(uniform_below(rng, 7)) - 3);
        }
        return Expr::var(static_cast<std::uint32_t>(uniform_below(rng, m)));
    }
    const auto kind = uniform_below(rng, 5);
    if (kind == 3) {
        return Expr::neg(random_expr(f, m, ops - 1, rng));
    }
    if (kind == 4) {
        return Expr::inv(random_expr(f, m, ops - 1, rng));
    }
    const std::size_t left = uniform_below(rng, ops);
    Expr a = random_expr(f, m, left, rng);
    Expr b = random_expr(f, m, ops - 1 - left, rng);
    return kind == 0 ? a - b : (kind == 1 ? a + b : a * b);
}

} // namespace testsupport

#endif

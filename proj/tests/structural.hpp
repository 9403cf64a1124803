#ifndef SKEWFIELD_TESTS_STRUCTURAL_HPP
#define SKEWFIELD_TESTS_STRUCTURAL_HPP

// Randomized structural checks shared by the unit suite and the acceptance runner.

#include "support.hpp"

#include <skewfield/invariants.hpp>

#include <string>
#include <vector>

namespace testsupport {

struct PropertyTally {
    std::string name;
    std::size_t cases = 0;
    std::size_t skipped = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty() && cases > skipped; }
};

namespace structural {

inline Expr X(std::size_t i) { return Expr::var(static_cast<std::uint32_t>(i)); }

/// A random action of a small group, drawn from a few families.
inline ActionSpec random_action(Rng& rng) {
    const FieldPtr Q = FieldSpec::rationals();
    switch (uniform_below(rng, 4)) {
    case 0: {
        // P = S D S^-1 with D = diag(+-1, +-1), not both +1.
        const long long d0 = uniform_below(rng, 2) ? 1 : -1;
        const long long d1 = d0 == 1 ? -1 : (uniform_below(rng, 2) ? 1 : -1);
        const long long b = static_cast<long long>(uniform_below(rng, 5)) - 2;
        const long long c = static_cast<long long>(uniform_below(rng, 5)) - 2;
        // S = [[1, b], [c, 1 + bc]] has determinant 1.
        Mat<Scalar> S = int_matrix(Q, {{1, b}, {c, 1 + b * c}});
        Mat<Scalar> Si = int_matrix(Q, {{1 + b * c, -b}, {-c, 1}});
        Mat<Scalar> D = int_matrix(Q, {{d0, 0}, {0, d1}});
        ExactField ef(Q);
        Mat<Scalar> P = dense::mul(ef, dense::mul(ef, S, D), Si);
        std::vector<Expr> img;
        for (std::size_t i = 0; i < 2; ++i) {
            std::vector<Expr> terms;
            for (std::size_t j = 0; j < 2; ++j) {
                if (!P(j, i).is_zero()) {
                    terms.push_back(Expr::constant(P(j, i)) * X(j));
                }
            }
            img.push_back(Expr::sum(terms));
        }
        return make_action(FiniteGroup::cyclic(2), 2, Q, {{}, img});
    }
    case 1: {
        const FieldPtr F7 = FieldSpec::finite(7);
        const long long e = uniform_below(rng, 2) ? 2 : 4;
        const bool both = uniform_below(rng, 2);
        auto scaled = [&](long long c, std::size_t i) { return Expr::integer(F7, c) * X(i); };
        return make_action(FiniteGroup::cyclic(3), 2, F7,
                           {{},
                            {scaled(e, 0), both ? scaled(e, 1) : X(1)},
                            {scaled(e * e % 7, 0), both ? scaled(e * e % 7, 1) : X(1)}});
    }
    case 2:
        return make_action(FiniteGroup::cyclic(2), 2, Q, {{}, {X(1), X(0)}});
    default:
        // Inversion of one variable.
        return make_action(FiniteGroup::cyclic(2), 2, Q, {{}, {Expr::inv(X(0)), X(1)}});
    }
}

inline std::string describe(const ActionSpec& a) {
    std::string s = "|G|=" + std::to_string(a.group.order()) + " over " + a.field->to_string() + ":";
    for (Expr e : a.images[1]) {
        s += " " + to_string(e);
    }
    return s;
}

} // namespace structural

inline PropertyTally pencil_agreement(std::uint64_t seed, std::size_t cases) {
    PropertyTally t;
    t.name = "pencil and expression evaluation agree";
    const FieldPtr Q = FieldSpec::rationals();
    Rng rng(seed);
    ExactField ef(Q);
    for (std::size_t k = 0; k < cases; ++k) {
        ++t.cases;
        const std::size_t m = 1 + uniform_below(rng, 3);
        Expr r = random_expr(Q, m, 1 + uniform_below(rng, 6), rng);
        MatrixTuple X = random_tuple(Q, m, 1 + uniform_below(rng, 3), rng);
        std::optional<Mat<Scalar>> direct;
        try {
            direct = evaluate(r, X);
        } catch (const DomainError&) {
        } catch (const DivisionByZero&) {
        }
        auto pencil = evaluate_linrep(ef, to_linrep(r, Q), X.mats, X.n);
        if (!direct) {
            ++t.skipped;
            continue;
        }
        if (!pencil) {
            t.failures.push_back(to_string(r) + ": pencil singular where the expression is defined");
        } else if (!(*pencil == *direct)) {
            t.failures.push_back(to_string(r) + ": values differ at size " + std::to_string(X.n));
        }
    }
    return t;
}

inline PropertyTally presentations(std::uint64_t seed, std::size_t cases) {
    PropertyTally t;
    t.name = "presentations: full G-matrix, invariant X, x_l b_j = sum b_i (X_l)_ij";
    Rng rng(seed);
    for (std::size_t k = 0; k < cases; ++k) {
        ++t.cases;
        ActionSpec a = structural::random_action(rng);
        InvariantsConfig cfg;
        cfg.rit.seed = seed + k;
        const std::uint64_t p = a.field->characteristic();
        const bool linear = a.linear_part && (p == 0 || a.group.order() % p != 0) && uniform_below(rng, 2);
        try {
            Presentation pr = linear ? algorithm_linear(a, cfg) : algorithm_general(a, cfg);
            PresentationCheck c = check_presentation(pr, a, cfg.rit);
            if (!c.ok()) {
                t.failures.push_back(structural::describe(a) + " (" + pr.algorithm + "): structure " +
                                     std::to_string(c.structure_failures) + ", invariance " +
                                     std::to_string(c.invariance_failures) + ", affine " +
                                     std::to_string(c.affine_failures) + (c.full_rank ? "" : ", G-matrix deficient"));
            }
        } catch (const Error& e) {
            t.failures.push_back(structural::describe(a) + ": " + e.what());
        }
    }
    return t;
}

inline PropertyTally reynolds_idempotent(std::uint64_t seed, std::size_t cases) {
    PropertyTally t;
    t.name = "Reynolds operator is idempotent with invariant image";
    Rng rng(seed);
    for (std::size_t k = 0; k < cases; ++k) {
        ++t.cases;
        ActionSpec a = structural::random_action(rng);
        Expr r = random_expr(a.field, a.m, 1 + uniform_below(rng, 4), rng);
        Expr once = reynolds(a, r);
        Expr twice = reynolds(a, once);
        RitConfig cfg;
        cfg.seed = seed + k;
        if (eq_m(once, twice, a.field, cfg, a.m).nonzero()) {
            t.failures.push_back(to_string(r) + " under " + structural::describe(a));
            continue;
        }
        for (std::size_t g = 1; g < a.group.order(); ++g) {
            if (eq_m(a.apply(g, once), once, a.field, cfg, a.m).nonzero()) {
                t.failures.push_back(to_string(r) + ": Reynolds image moved by g" + std::to_string(g));
            }
        }
    }
    return t;
}

inline PropertyTally reduction_stability(std::uint64_t seed, std::size_t cases) {
    PropertyTally t;
    t.name = "reduce_generators keeps the same count across two seeds";
    const FieldPtr Q = FieldSpec::rationals();
    Rng rng(seed);
    for (std::size_t k = 0; k < cases; ++k) {
        ++t.cases;
        std::vector<Expr> gens;
        const std::size_t base = 2 + uniform_below(rng, 3);
        while (gens.size() < base) {
            // Only elements defined at 2x2 tuples.
            Expr e = random_expr(Q, 2, 1 + uniform_below(rng, 4), rng);
            try {
                evaluate(e, random_tuple(Q, 2, 2, rng));
                gens.push_back(e);
            } catch (const DomainError&) {
            } catch (const DivisionByZero&) {
            }
        }
        // Dependent extras: a + c b + e.
        for (std::size_t i = 0; i < 2; ++i) {
            Expr a = gens[uniform_below(rng, base)];
            Expr b = gens[uniform_below(rng, base)];
            gens.push_back(a + Expr::integer(Q, static_cast<long long>(uniform_below(rng, 5)) - 2) * b +
                           Expr::integer(Q, static_cast<long long>(uniform_below(rng, 3))));
        }
        InvariantsConfig c1, c2;
        c1.rit.seed = seed + k;
        c2.rit.seed = seed + k + 7919;
        try {
            const std::size_t n1 = reduce_generators(gens, Q, 2, c1).kept.size();
            const std::size_t n2 = reduce_generators(gens, Q, 2, c2).kept.size();
            if (n1 != n2) {
                t.failures.push_back("counts " + std::to_string(n1) + " and " + std::to_string(n2) + " for " +
                                     to_string(gens[0]) + ", ...");
            }
        } catch (const SeedRetry&) {
            ++t.skipped;
        }
    }
    return t;
}

/// 300 cases in all.
inline std::vector<PropertyTally> structural_suite(std::uint64_t seed = 0) {
    return {pencil_agreement(seed + 1, 120), presentations(seed + 2, 60), reynolds_idempotent(seed + 3, 60),
            reduction_stability(seed + 4, 60)};
}

} // namespace testsupport

#endif

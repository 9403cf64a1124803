#ifndef SKEWFIELD_GROUP_HPP
#define SKEWFIELD_GROUP_HPP

// Finite groups given by tables and their actions on the free skew field.

#include <skewfield/matm.hpp>

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace skewfield {

/// Elements are 0..order-1 with 0 the identity; table[g][h] = gh.
class FiniteGroup {
public:
    FiniteGroup() = default;

    static FiniteGroup from_table(std::vector<std::vector<std::size_t>> table) {
        FiniteGroup G;
        G.table_ = std::move(table);
        G.validate();
        return G;
    }

    static FiniteGroup cyclic(std::size_t n) {
        std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                t[a][b] = (a + b) % n;
            }
        }
        return from_table(std::move(t));
    }

    /// Pairs (g, h) are numbered g * |H| + h.
    static FiniteGroup direct_product(const FiniteGroup& G, const FiniteGroup& H) {
        const std::size_t n = G.order() * H.order();
        std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                t[a][b] = G.mul(a / H.order(), b / H.order()) * H.order() + H.mul(a % H.order(), b % H.order());
            }
        }
        return from_table(std::move(t));
    }

    /// S_3 with 0 = e, 1 = (123), 2 = (132), 3 = (12), 4 = (13), 5 = (23); gh applies g first.
    static FiniteGroup symmetric3() {
        const std::vector<std::vector<int>> perms = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}};
        std::vector<std::vector<std::size_t>> t(6, std::vector<std::size_t>(6));
        for (std::size_t a = 0; a < 6; ++a) {
            for (std::size_t b = 0; b < 6; ++b) {
                std::vector<int> c(3);
                for (int i = 0; i < 3; ++i) {
                    c[i] = perms[b][perms[a][i]];
                }
                t[a][b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
            }
        }
        return from_table(std::move(t));
    }

    std::size_t order() const { return table_.size(); }
    std::size_t mul(std::size_t g, std::size_t h) const { return table_[g][h]; }
    std::size_t inverse(std::size_t g) const { return inverse_[g]; }
    const std::vector<std::vector<std::size_t>>& table() const { return table_; }

    std::size_t element_order(std::size_t g) const {
        std::size_t k = 1;
        for (std::size_t x = g; x != 0; x = mul(x, g)) {
            ++k;
        }
        return k;
    }

private:
    void validate() {
        const std::size_t n = table_.size();
        if (n == 0) {
            throw GroupInvalid("empty group");
        }
        for (std::size_t a = 0; a < n; ++a) {
            if (table_[a].size() != n) {
                throw GroupInvalid("table row " + std::to_string(a) + " has the wrong length");
            }
            std::vector<bool> row(n), col(n);
            for (std::size_t b = 0; b < n; ++b) {
                if (table_[a][b] >= n || table_[b].size() != n || table_[b][a] >= n) {
                    throw GroupInvalid("table entry out of range");
                }
                row[table_[a][b]] = true;
                col[table_[b][a]] = true;
            }
            if (std::find(row.begin(), row.end(), false) != row.end() ||
                std::find(col.begin(), col.end(), false) != col.end()) {
                throw GroupInvalid("row or column " + std::to_string(a) + " is not a permutation");
            }
            if (table_[0][a] != a || table_[a][0] != a) {
                throw GroupInvalid("element 0 is not the identity");
            }
        }
        auto assoc = [&](std::size_t a, std::size_t b, std::size_t c) {
            if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) {
                throw GroupInvalid("not associative at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                   std::to_string(c) + ")");
            }
        };
        if (n <= 64) {
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = 0; b < n; ++b) {
                    for (std::size_t c = 0; c < n; ++c) {
                        assoc(a, b, c);
                    }
                }
            }
        } else {
            Rng rng(n);
            for (int t = 0; t < 20000; ++t) {
                assoc(uniform_below(rng, n), uniform_below(rng, n), uniform_below(rng, n));
            }
        }
        inverse_.assign(n, 0);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                if (table_[a][b] == 0) {
                    inverse_[a] = b;
                }
            }
        }
    }

    std::vector<std::vector<std::size_t>> table_;
    std::vector<std::size_t> inverse_;
};

namespace detail {

/// Coefficients c with e = sum c_j x_j, if e is structurally a linear form.
inline std::optional<std::vector<Scalar>> linear_coeffs(Expr e, std::size_t m, const FieldPtr& f) {
    std::vector<Scalar> c(m, Scalar::zero(f));
    switch (e.op()) {
    case Op::constant:
        if (e.value().is_zero()) {
            return c;
        }
        return std::nullopt;
    case Op::variable:
        if (e.var_index() >= m) {
            return std::nullopt;
        }
        c[e.var_index()] = Scalar::one(f);
        return c;
    case Op::negate: {
        auto k = linear_coeffs(e.kid(0), m, f);
        if (k) {
            for (auto& s : *k) {
                s = -s;
            }
        }
        return k;
    }
    case Op::sum:
        for (std::size_t i = 0; i < e.num_kids(); ++i) {
            auto k = linear_coeffs(e.kid(i), m, f);
            if (!k) {
                return std::nullopt;
            }
            for (std::size_t j = 0; j < m; ++j) {
                c[j] += (*k)[j];
            }
        }
        return c;
    case Op::product: {
        Scalar scale = Scalar::one(f);
        std::optional<std::vector<Scalar>> lin;
        for (std::size_t i = 0; i < e.num_kids(); ++i) {
            if (e.kid(i).is_const()) {
                scale = scale * e.kid(i).value();
            } else if (lin) {
                return std::nullopt;
            } else {
                lin = linear_coeffs(e.kid(i), m, f);
                if (!lin) {
                    return std::nullopt;
                }
            }
        }
        if (!lin) {
            return std::nullopt;
        }
        for (auto& s : *lin) {
            s = scale * s;
        }
        return lin;
    }
    case Op::inverse:
        return std::nullopt;
    }
    return std::nullopt;
}

} // namespace detail

/// A group acting on the free skew field in m variables: images[g][i] = x_i^g.
struct ActionSpec {
    FiniteGroup group;
    std::size_t m = 0;
    FieldPtr field;
    std::vector<std::vector<Expr>> images;
    /// linear_part[g](j, i) = coefficient of x_j in x_i^g, when every image is linear.
    std::optional<std::vector<Mat<Scalar>>> linear_part;

    Expr apply(std::size_t g, Expr r) const { return substitute(r, images[g]); }
};

/// Builds an action; a missing image list (empty vector) for the identity means x_i -> x_i.
inline ActionSpec make_action(FiniteGroup G, std::size_t m, FieldPtr field, std::vector<std::vector<Expr>> images) {
    ActionSpec a;
    a.group = std::move(G);
    a.m = m;
    a.field = std::move(field);
    if (images.size() != a.group.order()) {
        throw ActionInvalid("expected images for " + std::to_string(a.group.order()) + " elements, got " +
                            std::to_string(images.size()));
    }
    for (std::size_t g = 0; g < images.size(); ++g) {
        if (images[g].empty() && g == 0) {
            images[g] = identity_images(m);
        }
        if (images[g].size() != m) {
            throw ActionInvalid("element " + std::to_string(g) + " has " + std::to_string(images[g].size()) +
                                " images, expected " + std::to_string(m));
        }
        for (const Expr& e : images[g]) {
            if (e.arity() > m) {
                throw ActionInvalid("image of element " + std::to_string(g) + " uses a variable beyond x" +
                                    std::to_string(m));
            }
        }
    }
    a.images = std::move(images);
    std::vector<Mat<Scalar>> lin;
    for (std::size_t g = 0; g < a.group.order(); ++g) {
        Mat<Scalar> M(m, m, Scalar::zero(a.field));
        for (std::size_t i = 0; i < m; ++i) {
            auto c = detail::linear_coeffs(a.images[g][i], m, a.field);
            if (!c) {
                return a;
            }
            for (std::size_t j = 0; j < m; ++j) {
                M(j, i) = (*c)[j];
            }
        }
        lin.push_back(std::move(M));
    }
    a.linear_part = std::move(lin);
    return a;
}

struct ActionReport {
    bool faithful = true;
    std::size_t effective_order = 0;
    std::vector<std::size_t> kernel; // elements acting trivially, identity included
    std::size_t pairs_checked = 0;
};

/// Checks the action axioms by randomized identity testing; throws ActionInvalid on failure.
inline ActionReport verify_action(const ActionSpec& a, const RitConfig& cfg = {}) {
    const std::size_t n = a.group.order();
    ActionReport rep;
    auto equal = [&](Expr lhs, Expr rhs, const std::string& what) {
        ZeroVerdict v = eq_m(lhs, rhs, a.field, cfg, a.m);
        if (v.nonzero()) {
            throw ActionInvalid(what + ": " + to_string(lhs, 'x', 60) + " differs from " + to_string(rhs, 'x', 60) +
                                " at a random " + std::to_string(v.witness->n) + "x" + std::to_string(v.witness->n) +
                                " tuple");
        }
    };
    const auto id = identity_images(a.m);
    for (std::size_t i = 0; i < a.m; ++i) {
        equal(a.images[0][i], id[i], "identity acts nontrivially on x" + std::to_string(i + 1));
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (n <= 12) {
        for (std::size_t g = 0; g < n; ++g) {
            for (std::size_t h = 0; h < n; ++h) {
                pairs.emplace_back(g, h);
            }
        }
    } else {
        Rng rng(mix_seed(cfg.seed, n));
        for (int t = 0; t < 144; ++t) {
            pairs.emplace_back(uniform_below(rng, n), uniform_below(rng, n));
        }
    }
    for (auto [g, h] : pairs) {
        const std::size_t gh = a.group.mul(g, h);
        for (std::size_t i = 0; i < a.m; ++i) {
            equal(substitute(a.images[g][i], a.images[h]), a.images[gh][i],
                  "composition fails for (" + std::to_string(g) + "," + std::to_string(h) + ") on x" +
                      std::to_string(i + 1));
        }
        ++rep.pairs_checked;
    }
    for (std::size_t g = 0; g < n; ++g) {
        const std::size_t gi = a.group.inverse(g);
        for (std::size_t i = 0; i < a.m; ++i) {
            equal(substitute(a.images[g][i], a.images[gi]), id[i],
                  "element " + std::to_string(g) + " is not inverted by " + std::to_string(gi));
        }
    }
    rep.kernel.push_back(0);
    for (std::size_t g = 1; g < n; ++g) {
        bool trivial = true;
        for (std::size_t i = 0; i < a.m && trivial; ++i) {
            trivial = eq_m(a.images[g][i], id[i], a.field, cfg, a.m).probably_zero();
        }
        if (trivial) {
            rep.kernel.push_back(g);
        }
    }
    rep.faithful = rep.kernel.size() == 1;
    rep.effective_order = n / rep.kernel.size();
    return rep;
}

/// Entry (g, j) is b_j^g.
inline MatM g_matrix(const ActionSpec& a, const std::vector<Expr>& b) {
    MatM W = mat_zero(a.group.order(), b.size(), a.field);
    for (std::size_t g = 0; g < a.group.order(); ++g) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            W(g, j) = a.apply(g, b[j]);
        }
    }
    return W;
}

/// (1/|G|) sum_g r^g.
inline Expr reynolds(const ActionSpec& a, Expr r) {
    const std::size_t n = a.group.order();
    const std::uint64_t ch = a.field->characteristic();
    if (ch != 0 && n % ch == 0) {
        throw CharDivides(ch, n);
    }
    std::vector<Expr> terms;
    for (std::size_t g = 0; g < n; ++g) {
        terms.push_back(a.apply(g, r));
    }
    const Scalar inv_n = Scalar(a.field, static_cast<long long>(n)).inv();
    return Expr::constant(inv_n) * Expr::sum(terms);
}

} // namespace skewfield

#endif

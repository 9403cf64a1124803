#ifndef SKEWFIELD_INVARIANTS_HPP
#define SKEWFIELD_INVARIANTS_HPP

// Generators of the invariant skew subfield: right-module bases, structure matrices X_i,
// generator reduction and the affine form X_i = A_i0 + sum z_j A_ij.

#include <skewfield/reptheory.hpp>

#include <deque>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace skewfield {

enum class EntryTag { zero, one, coefficient };

inline const char* tag_name(EntryTag t) {
    switch (t) {
    case EntryTag::zero:
        return "zero";
    case EntryTag::one:
        return "one";
    case EntryTag::coefficient:
        return "coefficient";
    }
    return "?";
}

struct Presentation {
    FieldPtr field;
    std::size_t m = 0;
    std::string algorithm; // "general" or "linear"
    std::size_t group_order = 0;
    std::size_t effective_order = 0;

    std::vector<Expr> basis; // b_1 = 1
    std::vector<std::string> basis_labels;
    std::vector<MatM> X;
    std::vector<Mat<EntryTag>> tags;
    std::vector<Expr> gens; // the raw generating set
    std::vector<Expr> z;    // reduced generators
    /// affine[i][j] = A_ij for j = 0..t.
    std::vector<std::vector<Mat<Scalar>>> affine;
    /// Sampling size at which the generator evaluations stabilized.
    std::size_t reduction_size = 0;
    std::vector<std::string> notes;

    std::size_t d() const { return basis.size(); }
    std::size_t t() const { return z.size(); }
};

struct InvariantsConfig {
    RitConfig rit;
    std::size_t max_degree = 0; // 0 selects |G| + 2
    std::size_t samples = 2;    // tuples per size in generator reduction
};

// ---------------------------------------------------------------------------
// Linear algebra over k on evaluation vectors

namespace detail {

/// Evaluations of a list of expressions at N common random tuples of size n, vectorized.
template <class F>
class EvalBatch {
public:
    EvalBatch(const F& f, std::size_t m, std::size_t n, std::size_t N, std::uint64_t seed, const std::vector<Expr>& probe)
        : f_(f), n_(n) {
        for (std::size_t s = 0; s < N; ++s) {
            for (std::uint64_t attempt = 0;; ++attempt) {
                if (attempt == 16) {
                    throw Inconclusive("no sample tuple of size " + std::to_string(n) + " lies in the domain of every generator");
                }
                Rng rng(mix_seed(mix_seed(seed, n * 131 + s), attempt));
                std::vector<Mat<typename F::value_type>> X;
                for (std::size_t i = 0; i < m; ++i) {
                    X.push_back(sample_matrix(f, rng, n));
                }
                auto ev = std::make_unique<Evaluator<F>>(f, X, n);
                try {
                    for (Expr e : probe) {
                        ev->eval(e);
                    }
                } catch (const DomainError&) {
                    continue;
                } catch (const DivisionByZero&) {
                    continue;
                }
                evals_.push_back(std::move(ev));
                break;
            }
        }
    }

    std::size_t length() const { return evals_.size() * n_ * n_; }

    /// Columns are the vectorized evaluations of `es`.
    Mat<typename F::value_type> columns(const std::vector<Expr>& es) {
        Mat<typename F::value_type> out(length(), es.size(), f_.zero());
        for (std::size_t j = 0; j < es.size(); ++j) {
            std::size_t row = 0;
            for (auto& ev : evals_) {
                const auto& v = ev->eval(es[j]);
                for (std::size_t a = 0; a < n_; ++a) {
                    for (std::size_t b = 0; b < n_; ++b) {
                        out(row++, j) = v(a, b);
                    }
                }
            }
        }
        return out;
    }

private:
    const F& f_;
    std::size_t n_;
    std::vector<std::unique_ptr<Evaluator<F>>> evals_;
};

template <class F>
std::size_t column_rank(const F& f, Mat<typename F::value_type> a) {
    return dense::rank(f, std::move(a));
}

} // namespace detail

struct Reduction {
    std::vector<std::size_t> kept;  // indices into the input list
    Mat<Scalar> combos;             // row i: gens[i] = c_0 + sum_j c_j z_j
    std::size_t size = 0;
};

namespace detail {

template <class F>
Mat<Scalar> express_in(const F& f, EvalBatch<F>& batch, const std::vector<Expr>& basis, const std::vector<Expr>& targets,
                       const FieldPtr& base) {
    const auto A = batch.columns(basis);
    const auto B = batch.columns(targets);
    Mat<Scalar> out(targets.size(), basis.size(), Scalar::zero(base));
    for (std::size_t t = 0; t < targets.size(); ++t) {
        Mat<typename F::value_type> rhs(B.rows(), 1, f.zero());
        for (std::size_t i = 0; i < B.rows(); ++i) {
            rhs(i, 0) = B(i, t);
        }
        auto c = dense::solve(f, A, rhs);
        if (!c) {
            throw CoverageGap("entry " + to_string(targets[t], 'x', 60) + " is not in the k-span of 1 and the generators");
        }
        for (std::size_t j = 0; j < basis.size(); ++j) {
            auto s = f.to_base((*c)(j, 0));
            if (!s) {
                throw Inconclusive("coefficient of " + to_string(targets[t], 'x', 60) +
                                   " could not be mapped back to the base field");
            }
            out(t, j) = *s;
        }
    }
    return out;
}

inline void check_combos(const std::vector<Expr>& basis, const std::vector<Expr>& targets, const Mat<Scalar>& c,
                         const FieldPtr& field, const RitConfig& cfg, std::size_t m) {
    for (std::size_t t = 0; t < targets.size(); ++t) {
        std::vector<Expr> terms{-targets[t]};
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (!c(t, j).is_zero()) {
                terms.push_back(Expr::constant(c(t, j)) * basis[j]);
            }
        }
        if (is_zero(Expr::sum(terms), field, cfg, m).nonzero()) {
            throw SeedRetry("linear combination for " + to_string(targets[t], 'x', 60) + " failed verification");
        }
    }
}

} // namespace detail

/// Maximal k-linearly independent sublist (greedy, input order) of gens together with 1, by
/// evaluation at tuples of increasing size until the rank is stable across two sizes.
inline Reduction reduce_generators(const std::vector<Expr>& gens, const FieldPtr& field, std::size_t m,
                                   const InvariantsConfig& cfg = {}) {
    Reduction out;
    std::vector<Expr> cols{Expr::one(field)};
    cols.insert(cols.end(), gens.begin(), gens.end());
    for (Expr g : gens) {
        m = std::max<std::size_t>(m, g.arity());
    }
    std::uint64_t seed = cfg.rit.seed;
    for (Expr g : gens) {
        seed = mix_seed(seed, g.hash());
    }
    const SamplingField sf = make_sampling_field(field, seed, cfg.rit.bound);
    std::visit(
        [&](const auto& f) {
            using F = std::decay_t<decltype(f)>;
            std::size_t prev = 0;
            std::size_t prev_cap = 0;
            for (std::size_t n = 2;; ++n) {
                if (n > std::max<std::size_t>(cfg.rit.size_cap, 3)) {
                    throw Inconclusive("rank of generator evaluations did not stabilize up to size " +
                                       std::to_string(cfg.rit.size_cap));
                }
                detail::EvalBatch<F> batch(f, m, n, cfg.samples, seed, cols);
                auto A = batch.columns(cols);
                const std::size_t r = detail::column_rank(f, A);
                if (n > 2 && r == prev && prev < prev_cap) {
                    // Greedy independent subset in input order.
                    std::vector<std::size_t> keep{0};
                    Mat<typename F::value_type> cur(A.rows(), 0, f.zero());
                    std::size_t rank = 1;
                    for (std::size_t j = 1; j < cols.size(); ++j) {
                        std::vector<std::size_t> trial = keep;
                        trial.push_back(j);
                        Mat<typename F::value_type> sub(A.rows(), trial.size(), f.zero());
                        for (std::size_t c = 0; c < trial.size(); ++c) {
                            for (std::size_t i = 0; i < A.rows(); ++i) {
                                sub(i, c) = A(i, trial[c]);
                            }
                        }
                        if (detail::column_rank(f, sub) > rank) {
                            keep = trial;
                            ++rank;
                        }
                    }
                    std::vector<Expr> basis;
                    for (std::size_t k : keep) {
                        basis.push_back(cols[k]);
                        if (k > 0) {
                            out.kept.push_back(k - 1);
                        }
                    }
                    out.combos = detail::express_in(f, batch, basis, gens, field);
                    out.size = n;
                    return;
                }
                prev = r;
                prev_cap = batch.length();
            }
        },
        sf);
    std::vector<Expr> basis{Expr::one(field)};
    for (std::size_t k : out.kept) {
        basis.push_back(gens[k]);
    }
    detail::check_combos(basis, gens, out.combos, field, cfg.rit, m);
    return out;
}

/// A_ij with X_i = A_i0 + sum_j z_j A_ij, from the tagged X matrices.
inline std::vector<std::vector<Mat<Scalar>>> affine_decomposition(const std::vector<MatM>& X,
                                                                  const std::vector<Mat<EntryTag>>& tags,
                                                                  const std::vector<Expr>& z, const FieldPtr& field,
                                                                  std::size_t m, const InvariantsConfig& cfg = {},
                                                                  std::size_t size = 3) {
    std::vector<Expr> basis{Expr::one(field)};
    basis.insert(basis.end(), z.begin(), z.end());
    std::vector<Expr> targets;
    std::unordered_map<const Node*, std::size_t> where;
    for (std::size_t i = 0; i < X.size(); ++i) {
        for (std::size_t r = 0; r < X[i].rows(); ++r) {
            for (std::size_t c = 0; c < X[i].cols(); ++c) {
                if (tags[i](r, c) == EntryTag::coefficient && !where.count(X[i](r, c).node())) {
                    where.emplace(X[i](r, c).node(), targets.size());
                    targets.push_back(X[i](r, c));
                }
            }
        }
    }
    Mat<Scalar> coeffs(targets.size(), basis.size(), Scalar::zero(field));
    if (!targets.empty()) {
        std::uint64_t seed = mix_seed(cfg.rit.seed, 0xaff1e);
        for (Expr e : targets) {
            seed = mix_seed(seed, e.hash());
        }
        std::vector<Expr> probe = basis;
        probe.insert(probe.end(), targets.begin(), targets.end());
        const SamplingField sf = make_sampling_field(field, seed, cfg.rit.bound);
        coeffs = std::visit(
            [&](const auto& f) {
                using F = std::decay_t<decltype(f)>;
                detail::EvalBatch<F> batch(f, m, size, cfg.samples + 1, seed, probe);
                return detail::express_in(f, batch, basis, targets, field);
            },
            sf);
        detail::check_combos(basis, targets, coeffs, field, cfg.rit, m);
    }
    std::vector<std::vector<Mat<Scalar>>> out;
    for (std::size_t i = 0; i < X.size(); ++i) {
        const std::size_t d = X[i].rows();
        std::vector<Mat<Scalar>> Ai(basis.size(), Mat<Scalar>(d, X[i].cols(), Scalar::zero(field)));
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < X[i].cols(); ++c) {
                switch (tags[i](r, c)) {
                case EntryTag::zero:
                    break;
                case EntryTag::one:
                    Ai[0](r, c) = Scalar::one(field);
                    break;
                case EntryTag::coefficient: {
                    const std::size_t k = where.at(X[i](r, c).node());
                    for (std::size_t j = 0; j < basis.size(); ++j) {
                        Ai[j](r, c) = coeffs(k, j);
                    }
                    break;
                }
                }
            }
        }
        out.push_back(std::move(Ai));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Algorithm shared pieces

namespace detail {

struct Tagged {
    Expr value;
    EntryTag tag;
};

inline Tagged classify(Expr c, const FieldPtr& f, const RitConfig& cfg, std::size_t m) {
    c = simplify(c, f);
    if (c.is_const()) {
        if (c.value().is_zero()) {
            return {Expr::zero(f), EntryTag::zero};
        }
        if (c.value().is_one()) {
            return {Expr::one(f), EntryTag::one};
        }
        return {c, EntryTag::coefficient};
    }
    if (is_zero(c, f, cfg, m).probably_zero()) {
        return {Expr::zero(f), EntryTag::zero};
    }
    if (eq_m(c, Expr::one(f), f, cfg, m).probably_zero()) {
        return {Expr::one(f), EntryTag::one};
    }
    return {c, EntryTag::coefficient};
}

/// Coefficients c with w = sum_b b c_b for b in B, or nullopt when w is not in B L.
inline std::optional<MatM> membership(const ActionSpec& a, const std::vector<Expr>& B, Expr w, const RitConfig& cfg) {
    MatM W = g_matrix(a, B);
    MatM rhs = g_matrix(a, {w});
    try {
        return solve_right_linear(W, rhs, a.field, cfg);
    } catch (const NoSolution&) {
        return std::nullopt;
    }
}

inline void finish(Presentation& p, const ActionSpec& a, const InvariantsConfig& cfg) {
    Reduction red = reduce_generators(p.gens, a.field, a.m, cfg);
    for (std::size_t k : red.kept) {
        p.z.push_back(p.gens[k]);
    }
    p.reduction_size = red.size;
    p.affine = affine_decomposition(p.X, p.tags, p.z, a.field, a.m, cfg, std::max<std::size_t>(red.size, 2));
    const std::size_t d = p.d();
    if (p.z.size() > d * d * (a.m - (a.m > 0 ? 1 : 0)) + d) {
        p.notes.push_back("generator count exceeds d^2(m-1)+d");
    }
}

} // namespace detail

/// Breadth-first search over words in shortlex order, with membership tested by
/// solving the G-matrix system over the free skew field.
inline Presentation algorithm_general(const ActionSpec& a, const InvariantsConfig& cfg = {}) {
    const std::size_t max_degree = cfg.max_degree ? cfg.max_degree : a.group.order() + 2;
    ActionReport rep = verify_action(a, cfg.rit);
    Presentation p;
    p.field = a.field;
    p.m = a.m;
    p.algorithm = "general";
    p.group_order = a.group.order();
    p.effective_order = rep.effective_order;
    if (!rep.faithful) {
        p.notes.push_back("action is not faithful; kernel of order " + std::to_string(rep.kernel.size()));
    }

    struct Pending {
        Word w;
        std::size_t var;    // w = x_var * B[parent]
        std::size_t parent; // meaningless for the empty word
    };
    std::vector<Word> words;
    std::vector<Expr> B;
    // columns[l][j]: column j of X_l as tagged entries indexed by basis position.
    std::vector<std::vector<std::vector<detail::Tagged>>> columns(a.m);
    std::deque<Pending> T{{Word{}, 0, 0}};
    std::unordered_map<const Node*, bool> seen_gen;
    while (!T.empty()) {
        Pending cur = T.front();
        T.pop_front();
        const Expr w = word_expr(cur.w, a.field);
        std::optional<MatM> c;
        if (!B.empty()) {
            c = detail::membership(a, B, w, cfg.rit);
        }
        if (!cur.w.empty() && columns[cur.var].size() <= cur.parent) {
            columns[cur.var].resize(cur.parent + 1);
        }
        if (c) {
            auto& col = columns[cur.var][cur.parent];
            for (std::size_t i = 0; i < B.size(); ++i) {
                detail::Tagged t = detail::classify((*c)(i, 0), a.field, cfg.rit, a.m);
                if (t.tag == EntryTag::coefficient && !seen_gen.count(t.value.node())) {
                    seen_gen.emplace(t.value.node(), true);
                    p.gens.push_back(t.value);
                }
                col.push_back(t);
            }
            continue;
        }
        if (cur.w.size() > max_degree) {
            throw DegreeCapExceeded(cur.w.size(), B.size());
        }
        if (B.size() >= a.group.order()) {
            throw SeedRetry("basis grew beyond the group order");
        }
        if (!cur.w.empty()) {
            auto& col = columns[cur.var][cur.parent];
            for (std::size_t i = 0; i < B.size(); ++i) {
                col.push_back({Expr::zero(a.field), EntryTag::zero});
            }
            col.push_back({Expr::one(a.field), EntryTag::one});
        }
        const std::size_t idx = B.size();
        B.push_back(w);
        words.push_back(cur.w);
        for (std::uint32_t i = 0; i < a.m; ++i) {
            Word v{i};
            v.insert(v.end(), cur.w.begin(), cur.w.end());
            T.push_back({std::move(v), i, idx});
        }
    }
    const std::size_t d = B.size();
    p.basis = B;
    for (const auto& w : words) {
        p.basis_labels.push_back(word_string(w));
    }
    for (std::size_t l = 0; l < a.m; ++l) {
        MatM X = mat_zero(d, d, a.field);
        Mat<EntryTag> tags(d, d, EntryTag::zero);
        for (std::size_t j = 0; j < d; ++j) {
            const auto& col = columns[l].at(j);
            for (std::size_t i = 0; i < col.size(); ++i) {
                X(i, j) = col[i].value;
                tags(i, j) = col[i].tag;
            }
        }
        p.X.push_back(std::move(X));
        p.tags.push_back(std::move(tags));
    }
    detail::finish(p, a, cfg);
    return p;
}

/// Linear actions: layers span{x_i w} are decomposed into irreducible G-spaces
/// and whole blocks enter the basis.
inline Presentation algorithm_linear(const ActionSpec& a, const InvariantsConfig& cfg = {}) {
    if (!a.linear_part) {
        throw NonlinearAction("algorithm_linear needs an action that is linear in the variables");
    }
    const std::uint64_t ch = a.field->characteristic();
    if (ch != 0 && a.group.order() % ch == 0) {
        throw CharDivides(ch, a.group.order());
    }
    const std::size_t max_degree = cfg.max_degree ? cfg.max_degree : a.group.order() + 2;
    ActionReport rep = verify_action(a, cfg.rit);
    Presentation p;
    p.field = a.field;
    p.m = a.m;
    p.algorithm = "linear";
    p.group_order = a.group.order();
    p.effective_order = rep.effective_order;
    if (!rep.faithful) {
        p.notes.push_back("action is not faithful; kernel of order " + std::to_string(rep.kernel.size()));
    }
    const FieldPtr& f = a.field;

    std::vector<NCPoly> Bpolys{NCPoly{{Word{}, Scalar::one(f)}}};
    std::vector<Expr> B{Expr::one(f)};
    std::vector<NCPoly> T = Bpolys;

    // Coefficients over B (as tagged entries) of every polynomial met in a layer, keyed by
    // the layer element; basis elements map to unit columns.
    struct Known {
        NCPoly poly;
        std::optional<std::size_t> basis_index;
        std::vector<Expr> coeffs; // when not a basis element, padded later
    };
    std::vector<Known> known;
    known.push_back({Bpolys[0], 0, {}});

    std::unordered_map<const Node*, bool> seen_gen;
    std::size_t degree = 0;
    while (!T.empty()) {
        ++degree;
        std::vector<NCPoly> layer;
        for (std::uint32_t i = 0; i < a.m; ++i) {
            for (const auto& w : T) {
                layer.push_back(left_multiply(i, w));
            }
        }
        // Independent spanning subset of the layer.
        std::vector<NCPoly> indep;
        for (const auto& q : layer) {
            if (!detail::poly_coordinates(f, indep, {q})) {
                indep.push_back(q);
            }
        }
        GModule mod = module_from_polys(f, *a.linear_part, indep);
        std::vector<Block> blocks = decompose_irreducible(mod, mix_seed(cfg.rit.seed, degree));
        T.clear();
        for (const Block& blk : blocks) {
            const Expr rep_expr = poly_expr(blk.module.basis[0], f);
            auto c = detail::membership(a, B, rep_expr, cfg.rit);
            if (c) {
                for (std::size_t i = 0; i < B.size(); ++i) {
                    detail::Tagged t = detail::classify((*c)(i, 0), f, cfg.rit, a.m);
                    if (t.tag == EntryTag::coefficient && !seen_gen.count(t.value.node())) {
                        seen_gen.emplace(t.value.node(), true);
                        p.gens.push_back(t.value);
                    }
                }
                for (const auto& poly : blk.module.basis) {
                    auto cc = detail::membership(a, B, poly_expr(poly, f), cfg.rit);
                    if (!cc) {
                        throw SeedRetry("block element outside B L although its representative is inside");
                    }
                    Known k{poly, std::nullopt, {}};
                    for (std::size_t i = 0; i < B.size(); ++i) {
                        k.coeffs.push_back((*cc)(i, 0));
                    }
                    known.push_back(std::move(k));
                }
                continue;
            }
            if (degree > max_degree) {
                throw DegreeCapExceeded(degree, B.size());
            }
            if (B.size() + blk.module.dim > a.group.order()) {
                throw SeedRetry("basis grew beyond the group order");
            }
            for (const auto& poly : blk.module.basis) {
                known.push_back({poly, B.size(), {}});
                Bpolys.push_back(poly);
                B.push_back(poly_expr(poly, f));
                T.push_back(poly);
            }
        }
    }
    const std::size_t d = B.size();
    p.basis = B;
    for (const auto& b : Bpolys) {
        p.basis_labels.push_back(to_string(poly_expr(b, f)));
    }
    // x_l b_j as a k-combination of known layer elements, then as coefficients over B.
    std::vector<NCPoly> known_polys;
    for (const auto& k : known) {
        known_polys.push_back(k.poly);
    }
    for (std::uint32_t l = 0; l < a.m; ++l) {
        MatM X = mat_zero(d, d, f);
        Mat<EntryTag> tags(d, d, EntryTag::zero);
        for (std::size_t j = 0; j < d; ++j) {
            const NCPoly target = left_multiply(l, Bpolys[j]);
            // Restrict to known elements of the same degree to keep the system small.
            std::vector<std::size_t> idx;
            std::vector<NCPoly> fam;
            const std::size_t deg = target.begin()->first.size();
            for (std::size_t k = 0; k < known.size(); ++k) {
                if (!known[k].poly.empty() && known[k].poly.begin()->first.size() == deg) {
                    idx.push_back(k);
                    fam.push_back(known[k].poly);
                }
            }
            auto coords = detail::poly_coordinates(f, fam, {target});
            if (!coords) {
                throw Error("internal: x_l b_j is not covered by the computed layers");
            }
            std::vector<std::vector<Expr>> terms(d);
            for (std::size_t t = 0; t < idx.size(); ++t) {
                const Scalar& alpha = (*coords)(t, 0);
                if (alpha.is_zero()) {
                    continue;
                }
                const Known& k = known[idx[t]];
                if (k.basis_index) {
                    terms[*k.basis_index].push_back(Expr::constant(alpha));
                } else {
                    for (std::size_t i = 0; i < k.coeffs.size(); ++i) {
                        terms[i].push_back(Expr::constant(alpha) * k.coeffs[i]);
                    }
                }
            }
            for (std::size_t i = 0; i < d; ++i) {
                if (terms[i].empty()) {
                    continue;
                }
                detail::Tagged t = detail::classify(Expr::sum(terms[i]), f, cfg.rit, a.m);
                X(i, j) = t.value;
                tags(i, j) = t.tag;
            }
        }
        p.X.push_back(std::move(X));
        p.tags.push_back(std::move(tags));
    }
    detail::finish(p, a, cfg);
    if (rep.faithful && p.z.size() != a.group.order() * (a.m - 1) + 1) {
        p.notes.push_back("generator count " + std::to_string(p.z.size()) + " differs from |G|(m-1)+1 = " +
                          std::to_string(a.group.order() * (a.m - 1) + 1) + "; this is a bug");
    }
    return p;
}

// ---------------------------------------------------------------------------
// Checks on a finished presentation

struct PresentationCheck {
    std::size_t structure_failures = 0;  // x_l b_j != sum_i b_i (X_l)_ij
    std::size_t invariance_failures = 0; // an X entry moved by some g
    std::size_t affine_failures = 0;     // A_i0 + sum z_j A_ij != X_i
    bool full_rank = false;              // G-matrix of the basis
    bool ok() const { return structure_failures == 0 && invariance_failures == 0 && affine_failures == 0 && full_rank; }
};

inline MatM affine_value(const std::vector<Mat<Scalar>>& A, const std::vector<Expr>& z, const FieldPtr& f) {
    MatM out = mat_zero(A[0].rows(), A[0].cols(), f);
    for (std::size_t r = 0; r < out.rows(); ++r) {
        for (std::size_t c = 0; c < out.cols(); ++c) {
            std::vector<Expr> terms;
            if (!A[0](r, c).is_zero()) {
                terms.push_back(Expr::constant(A[0](r, c)));
            }
            for (std::size_t j = 1; j < A.size(); ++j) {
                if (!A[j](r, c).is_zero()) {
                    terms.push_back(Expr::constant(A[j](r, c)) * z[j - 1]);
                }
            }
            if (!terms.empty()) {
                out(r, c) = Expr::sum(terms);
            }
        }
    }
    return out;
}

inline PresentationCheck check_presentation(const Presentation& p, const ActionSpec& a, const RitConfig& cfg = {}) {
    PresentationCheck out;
    const std::size_t d = p.d();
    for (std::size_t l = 0; l < p.m; ++l) {
        const MatM Xa = affine_value(p.affine[l], p.z, p.field);
        for (std::size_t j = 0; j < d; ++j) {
            std::vector<Expr> terms{-(Expr::var(static_cast<std::uint32_t>(l)) * p.basis[j])};
            for (std::size_t i = 0; i < d; ++i) {
                terms.push_back(p.basis[i] * p.X[l](i, j));
            }
            if (is_zero(Expr::sum(terms), p.field, cfg, p.m).nonzero()) {
                ++out.structure_failures;
            }
            for (std::size_t i = 0; i < d; ++i) {
                const Expr e = p.X[l](i, j);
                if (p.tags[l](i, j) == EntryTag::coefficient) {
                    for (std::size_t g = 1; g < a.group.order(); ++g) {
                        if (eq_m(a.apply(g, e), e, p.field, cfg, p.m).nonzero()) {
                            ++out.invariance_failures;
                            break;
                        }
                    }
                }
                if (eq_m(Xa(i, j), e, p.field, cfg, p.m).nonzero()) {
                    ++out.affine_failures;
                }
            }
        }
    }
    out.full_rank = full_rank_over_M(g_matrix(a, p.basis), p.field, cfg, p.m).full;
    return out;
}

} // namespace skewfield

#endif

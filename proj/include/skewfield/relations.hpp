#ifndef SKEWFIELD_RELATIONS_HPP
#define SKEWFIELD_RELATIONS_HPP

// Relations among generators of an invariant skew subfield, over fresh variables z_1..z_t.

#include <skewfield/invariants.hpp>

#include <string>
#include <unordered_map>
#include <vector>

namespace skewfield {

enum class RelationSource { corner, block };

inline const char* source_name(RelationSource s) { return s == RelationSource::corner ? "corner-form" : "block-form"; }

struct RelationSet {
    FieldPtr field;
    std::size_t t = 0;
    std::vector<Expr> relations; // over the variables z_1..z_t
    std::vector<std::string> labels;
    std::vector<MatM> frakX;
    RelationSource source = RelationSource::corner;
};

/// Matrices A_i0 + z_1 A_i1 + ... + z_t A_it over fresh variables.
inline std::vector<MatM> build_frak_X(const std::vector<std::vector<Mat<Scalar>>>& affine, const FieldPtr& f) {
    std::vector<MatM> out;
    for (const auto& A : affine) {
        MatM X = mat_zero(A[0].rows(), A[0].cols(), f);
        for (std::size_t r = 0; r < X.rows(); ++r) {
            for (std::size_t c = 0; c < X.cols(); ++c) {
                std::vector<Expr> terms;
                if (!A[0](r, c).is_zero()) {
                    terms.push_back(Expr::constant(A[0](r, c)));
                }
                for (std::size_t j = 1; j < A.size(); ++j) {
                    if (!A[j](r, c).is_zero()) {
                        terms.push_back(Expr::constant(A[j](r, c)) * Expr::var(static_cast<std::uint32_t>(j - 1)));
                    }
                }
                if (!terms.empty()) {
                    X(r, c) = Expr::sum(terms);
                }
            }
        }
        out.push_back(std::move(X));
    }
    return out;
}

namespace detail {

inline MatM simplify_entries(MatM a, const FieldPtr& f) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            a(i, j) = simplify(a(i, j), f);
        }
    }
    return a;
}

/// r(X_1, ..., X_m) for square matrices X_i over the free skew field.
class MatrixSubstituter {
public:
    MatrixSubstituter(const std::vector<MatM>& mats, const FieldPtr& f, const RitConfig& cfg)
        : mats_(mats), f_(f), cfg_(cfg), n_(mats.empty() ? 1 : mats[0].rows()) {}

    const MatM& run(Expr e) {
        auto it = memo_.find(e.node());
        if (it != memo_.end()) {
            return it->second;
        }
        MatM out = compute(e);
        return memo_.emplace(e.node(), std::move(out)).first->second;
    }

private:
    MatM compute(Expr e) {
        switch (e.op()) {
        case Op::constant: {
            MatM a = mat_zero(n_, n_, f_);
            for (std::size_t i = 0; i < n_; ++i) {
                a(i, i) = e;
            }
            return a;
        }
        case Op::variable:
            if (e.var_index() >= mats_.size()) {
                throw ArityMismatch("variable x" + std::to_string(e.var_index() + 1) + " has no matrix to substitute");
            }
            return mats_[e.var_index()];
        case Op::negate:
            return mat_neg(run(e.kid(0)));
        case Op::sum: {
            MatM acc = run(e.kid(0));
            for (std::size_t i = 1; i < e.num_kids(); ++i) {
                acc = mat_add(acc, run(e.kid(i)));
            }
            return simplify_entries(std::move(acc), f_);
        }
        case Op::product: {
            MatM acc = run(e.kid(0));
            for (std::size_t i = 1; i < e.num_kids(); ++i) {
                acc = simplify_entries(mat_mul(acc, run(e.kid(i))), f_);
            }
            return acc;
        }
        case Op::inverse:
            try {
                return mat_inverse(run(e.kid(0)), f_, cfg_);
            } catch (const SingularOverM&) {
                throw SingularOverM("matrix value of " + to_string(e.kid(0), 'x', 80) + " is not invertible");
            }
        }
        throw Error("unknown node");
    }

    const std::vector<MatM>& mats_;
    FieldPtr f_;
    RitConfig cfg_;
    std::size_t n_;
    std::unordered_map<const Node*, MatM> memo_;
};

} // namespace detail

inline MatM substitute_matrix(Expr r, const std::vector<MatM>& mats, const FieldPtr& f, const RitConfig& cfg = {}) {
    return detail::MatrixSubstituter(mats, f, cfg).run(r);
}

/// For each z_j: the first column of z_j(frakX) minus z_j e_1, entry by entry.
inline RelationSet fundamental_relations(const std::vector<Expr>& z, const std::vector<MatM>& frakX, const FieldPtr& f,
                                         const RitConfig& cfg = {}) {
    RelationSet R;
    R.field = f;
    R.t = z.size();
    R.frakX = frakX;
    R.source = RelationSource::corner;
    detail::MatrixSubstituter sub(R.frakX, f, cfg);
    for (std::size_t j = 0; j < z.size(); ++j) {
        const MatM& v = sub.run(z[j]);
        for (std::size_t l = 0; l < v.rows(); ++l) {
            Expr rel = l == 0 ? v(0, 0) - Expr::var(static_cast<std::uint32_t>(j)) : v(l, 0);
            R.relations.push_back(simplify(rel, f));
            R.labels.push_back("z" + std::to_string(j + 1) + " row " + std::to_string(l + 1));
        }
    }
    return R;
}

inline RelationSet fundamental_relations(const Presentation& p, const RitConfig& cfg = {}) {
    return fundamental_relations(p.z, build_frak_X(p.affine, p.field), p.field, cfg);
}

/// D_i(frakX) W(frakX)(I (x) e_1) - W(frakX)(frakX_i (x) e_1), flattened.
inline RelationSet fundamental_relations_block(const std::vector<Expr>& basis, const ActionSpec& a,
                                               const std::vector<MatM>& frakX, std::size_t t,
                                               const RitConfig& cfg = {}) {
    const FieldPtr& f = a.field;
    RelationSet R;
    R.field = f;
    R.t = t;
    R.frakX = frakX;
    R.source = RelationSource::block;
    const std::size_t d = basis.size();
    detail::MatrixSubstituter sub(R.frakX, f, cfg);
    for (std::size_t g = 0; g < a.group.order(); ++g) {
        // First columns of w_k^g(frakX).
        std::vector<MatM> wcol;
        for (std::size_t k = 0; k < d; ++k) {
            wcol.push_back(sub.run(a.apply(g, basis[k])).columns(0, 1));
        }
        for (std::size_t i = 0; i < a.m; ++i) {
            const MatM& Dg = sub.run(a.images[g][i]);
            for (std::size_t j = 0; j < d; ++j) {
                MatM lhs = mat_mul(Dg, wcol[j]);
                for (std::size_t r = 0; r < lhs.rows(); ++r) {
                    std::vector<Expr> terms{lhs(r, 0)};
                    for (std::size_t k = 0; k < d; ++k) {
                        terms.push_back(-(wcol[k](r, 0) * frakX[i](k, j)));
                    }
                    R.relations.push_back(simplify(Expr::sum(terms), f));
                    R.labels.push_back("x" + std::to_string(i + 1) + " g" + std::to_string(g) + " block " +
                                       std::to_string(j + 1) + " row " + std::to_string(r + 1));
                }
            }
        }
    }
    return R;
}

inline RelationSet fundamental_relations_block(const Presentation& p, const ActionSpec& a, const RitConfig& cfg = {}) {
    return fundamental_relations_block(p.basis, a, build_frak_X(p.affine, p.field), p.t(), cfg);
}

struct FreenessVerdict {
    bool all_vanish = true;
    std::vector<std::size_t> indices;
    std::vector<MatrixTuple> witnesses;
};

inline FreenessVerdict freeness_check(const RelationSet& R, const RitConfig& cfg = {}) {
    FreenessVerdict out;
    for (std::size_t i = 0; i < R.relations.size(); ++i) {
        ZeroVerdict v = is_zero(R.relations[i], R.field, cfg, R.t);
        if (v.nonzero()) {
            out.all_vanish = false;
            out.indices.push_back(i);
            out.witnesses.push_back(*v.witness);
        }
    }
    return out;
}

/// Number of relations that fail to vanish after z_j -> z[j] in the original variables.
inline std::size_t sanity_failures(const RelationSet& R, const std::vector<Expr>& z, std::size_t m,
                                   const RitConfig& cfg = {}) {
    std::size_t bad = 0;
    for (Expr r : R.relations) {
        if (is_zero(substitute(r, z), R.field, cfg, m).nonzero()) {
            ++bad;
        }
    }
    return bad;
}

} // namespace skewfield

#endif

#ifndef SKEWFIELD_SCENARIOS_HPP
#define SKEWFIELD_SCENARIOS_HPP

// Worked examples: involutions of k(<x,y>), a Z3 scaling action and the de Jonquieres involution.

#include <skewfield/relations.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace skewfield {

struct ScenarioCheck {
    std::string description;
    std::string expected;
    std::string verdict;
    bool pass = false;
    std::optional<MatrixTuple> witness;
};

struct ScenarioReport {
    std::string name;
    FieldPtr field;
    std::vector<ScenarioCheck> checks;
    std::optional<Presentation> presentation;
    std::vector<Expr> generators; // the generating set the freeness verdict refers to
    std::optional<RelationSet> relations;
    std::optional<FreenessVerdict> freeness;

    bool passed() const {
        for (const auto& c : checks) {
            if (!c.pass) {
                return false;
            }
        }
        return !checks.empty();
    }
    const ScenarioCheck* find(const std::string& description) const {
        for (const auto& c : checks) {
            if (c.description == description) {
                return &c;
            }
        }
        return nullptr;
    }
};

struct ScenarioConfig {
    InvariantsConfig inv;
    std::string f = "x^3-x";
    FieldPtr field; // null selects the scenario default
};

inline const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = {"z2_sign", "z2_double_sign", "z2_char2_swap", "z3_scaling_f7",
                                                   "jonquieres"};
    return names;
}

// ---------------------------------------------------------------------------
// Univariate polynomials over the base field

namespace detail {

using UPoly = std::vector<Scalar>; // little-endian

inline void trim(UPoly& p) {
    while (!p.empty() && p.back().is_zero()) {
        p.pop_back();
    }
}

inline UPoly poly_mod(UPoly a, const UPoly& b) {
    trim(a);
    const Scalar lead_inv = b.back().inv();
    while (a.size() >= b.size()) {
        const Scalar q = a.back() * lead_inv;
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            a[shift + i] -= q * b[i];
        }
        trim(a);
    }
    return a;
}

inline UPoly poly_gcd(UPoly a, UPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        UPoly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline UPoly derivative(const UPoly& p) {
    UPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) {
        d.push_back(Scalar(p[i].field(), static_cast<long long>(i)) * p[i]);
    }
    trim(d);
    return d;
}

} // namespace detail

/// Monic cubic with simple roots, over a field of characteristic other than 2.
inline std::vector<Scalar> parse_cubic(const std::string& text, const FieldPtr& field) {
    if (field->characteristic() == 2) {
        throw ParamError("the de Jonquieres involution needs characteristic other than 2");
    }
    std::vector<mpz_class> c;
    try {
        c = detail::parse_int_poly(text);
    } catch (const FieldSpecError& e) {
        throw ParamError(e.what());
    }
    detail::UPoly p;
    for (const mpz_class& v : c) {
        p.push_back(Scalar::from_rational(field, mpq_class(v)));
    }
    detail::trim(p);
    if (p.size() != 4 || !p[3].is_one()) {
        throw ParamError("f must be a monic cubic, got '" + text + "'");
    }
    if (detail::poly_gcd(p, detail::derivative(p)).size() != 1) {
        throw ParamError("f = " + text + " has a repeated root");
    }
    return p;
}

/// sum c_k a^k for an element a of the free skew field.
inline Expr poly_at(const std::vector<Scalar>& c, Expr a) {
    std::vector<Expr> terms;
    Expr pw = Expr::one(c[0].field());
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (!c[k].is_zero()) {
            terms.push_back(Expr::constant(c[k]) * pw);
        }
        pw = pw * a;
    }
    return Expr::sum(terms);
}

/// sum c_k A^k for a square matrix over the free skew field.
inline MatM poly_at(const std::vector<Scalar>& c, const MatM& A, const FieldPtr& f) {
    MatM out = mat_zero(A.rows(), A.cols(), f);
    MatM pw = mat_identity(A.rows(), f);
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (!c[k].is_zero()) {
            out = mat_add(out, mat_scale(Expr::constant(c[k]), pw));
        }
        pw = mat_mul(pw, A);
    }
    return out;
}

// ---------------------------------------------------------------------------
// de Jonquieres data

struct JonquieresData {
    FieldPtr field;
    std::vector<Scalar> f; // coefficients of the cubic
    ActionSpec action;
    Expr fx;               // f(x)
    std::vector<Expr> z;   // z_1..z_6
    Expr b1, b2, r, s;
    MatM X, Y, C;
};

inline JonquieresData jonquieres_data(const std::string& f_text, const FieldPtr& field) {
    JonquieresData J;
    J.field = field;
    J.f = parse_cubic(f_text, field);
    const Expr x = Expr::var(0), y = Expr::var(1);
    J.fx = poly_at(J.f, x);
    const Expr xp = Expr::inv(y) * x * y;
    const Expr yp = Expr::inv(y) * J.fx;
    J.action = make_action(FiniteGroup::cyclic(2), 2, field, {{}, {xp, yp}});
    const Expr di = Expr::inv(xp - x);
    J.z = {
        xp * di * x * x - x * di * xp * xp,
        di * (xp * xp - x * x),
        xp * di * y - x * di * yp,
        di * (yp - y),
        xp * di * y * x - x * di * yp * xp,
        di * (yp * xp - y * x),
    };
    const Expr alpha = Expr::constant(J.f[2]);
    const Expr ci = Expr::inv(x * y - y * x);
    J.b1 = ci * (J.fx - y * y);
    J.b2 = ci * (x * x * y - y * x * x);
    J.r = J.b1 * J.b1 - J.b2 - alpha;
    J.s = y - x * J.b1 + J.b1 * J.r;
    J.X = mat_zero(2, 2, field);
    J.X(0, 1) = J.z[0];
    J.X(1, 0) = Expr::one(field);
    J.X(1, 1) = J.z[1];
    J.Y = mat_zero(2, 2, field);
    J.Y(0, 0) = J.z[2];
    J.Y(1, 0) = J.z[3];
    J.Y(0, 1) = J.z[4];
    J.Y(1, 1) = J.z[5];
    J.C = mat_zero(2, 2, field);
    J.C(0, 0) = J.z[2];
    J.C(0, 1) = J.z[0] * J.z[3];
    J.C(1, 0) = J.z[3];
    J.C(1, 1) = J.z[2] + J.z[1] * J.z[3];
    return J;
}

// ---------------------------------------------------------------------------
// Running scenarios

namespace detail {

class ReportBuilder {
public:
    ReportBuilder(ScenarioReport& rep, const RitConfig& cfg, std::size_t m) : rep_(rep), cfg_(cfg), m_(m) {}

    void expect(const std::string& description, const std::string& expected, bool pass, const std::string& got) {
        rep_.checks.push_back({description, expected, got, pass, std::nullopt});
    }

    void count(const std::string& description, std::size_t want, std::size_t got) {
        expect(description, std::to_string(want), want == got, std::to_string(got));
    }

    void at_most(const std::string& description, std::size_t bound, std::size_t got) {
        expect(description, "<= " + std::to_string(bound), got <= bound, std::to_string(got));
    }

    void vanishes(const std::string& description, Expr e) {
        ZeroVerdict v = is_zero(e, rep_.field, cfg_, m_);
        rep_.checks.push_back({description, "ProbablyZero", v.probably_zero() ? "ProbablyZero" : "NonzeroWitness",
                               v.probably_zero(), v.witness});
    }

    void nonzero(const std::string& description, Expr e) {
        ZeroVerdict v = is_zero(e, rep_.field, cfg_, m_);
        const bool ok = v.nonzero() && verify_witness(e, rep_.field, v);
        rep_.checks.push_back({description, "NonzeroWitness", v.nonzero() ? "NonzeroWitness" : "ProbablyZero", ok,
                               v.witness});
    }

    void equal(const std::string& description, Expr a, Expr b) { vanishes(description, a - b); }

    void matrix_vanishes(const std::string& description, const MatM& A) {
        std::size_t bad = 0;
        std::optional<MatrixTuple> w;
        for (const Expr& e : A.data()) {
            ZeroVerdict v = is_zero(e, rep_.field, cfg_, m_);
            if (v.nonzero()) {
                ++bad;
                if (!w) {
                    w = v.witness;
                }
            }
        }
        rep_.checks.push_back({description, "ProbablyZero entrywise",
                               bad ? std::to_string(bad) + " nonzero entries" : "ProbablyZero entrywise", bad == 0, w});
    }

private:
    ScenarioReport& rep_;
    RitConfig cfg_;
    std::size_t m_;
};

/// Same k-span modulo constants, by rank of the union.
inline bool same_span(const std::vector<Expr>& a, const std::vector<Expr>& b, const FieldPtr& f, std::size_t m,
                      const InvariantsConfig& cfg) {
    std::vector<Expr> all = a;
    all.insert(all.end(), b.begin(), b.end());
    const std::size_t ra = reduce_generators(a, f, m, cfg).kept.size();
    const std::size_t rb = reduce_generators(b, f, m, cfg).kept.size();
    const std::size_t ru = reduce_generators(all, f, m, cfg).kept.size();
    return ra == rb && rb == ru;
}

inline std::string join_exprs(const std::vector<Expr>& es) {
    std::string s = "{";
    for (std::size_t i = 0; i < es.size(); ++i) {
        s += (i ? ", " : "") + to_string(es[i]);
    }
    return s + "}";
}

inline void bound_checks(ReportBuilder& b, const Presentation& p, const ActionSpec& a, bool linear_nonmodular) {
    b.at_most("d <= |G|", a.group.order(), p.d());
    if (p.effective_order == a.group.order()) {
        b.count("d = |G| for a faithful action", a.group.order(), p.d());
    }
    b.at_most("|z| <= d^2(m-1)+d", p.d() * p.d() * (a.m - 1) + p.d(), p.t());
    if (linear_nonmodular && p.effective_order == a.group.order()) {
        b.count("|z| = |G|(m-1)+1", a.group.order() * (a.m - 1) + 1, p.t());
    }
}

inline void presentation_checks(ReportBuilder& b, const Presentation& p, const ActionSpec& a, const RitConfig& cfg,
                                const std::string& tag) {
    PresentationCheck pc = check_presentation(p, a, cfg);
    b.count(tag + ": x_l b_j = sum_i b_i (X_l)_ij", 0, pc.structure_failures);
    b.count(tag + ": X entries are invariant", 0, pc.invariance_failures);
    b.count(tag + ": X_i = A_i0 + sum_j z_j A_ij", 0, pc.affine_failures);
    b.expect(tag + ": G-matrix of the basis is full", "FullRank", pc.full_rank, pc.full_rank ? "FullRank" : "Deficient");
}

/// Both relation forms, their sanity substitution and the freeness verdict (block form).
inline void freeness_checks(ReportBuilder& b, ScenarioReport& rep, const std::vector<Expr>& z,
                            const std::vector<MatM>& frakX, const std::vector<Expr>& basis, const ActionSpec& a,
                            const RitConfig& cfg, bool expect_free) {
    RelationSet corner = fundamental_relations(z, frakX, a.field, cfg);
    RelationSet block = fundamental_relations_block(basis, a, frakX, z.size(), cfg);
    b.count("corner relations vanish at the generators", 0, sanity_failures(corner, z, a.m, cfg));
    b.count("block relations vanish at the generators", 0, sanity_failures(block, z, a.m, cfg));
    FreenessVerdict fc = freeness_check(corner, cfg);
    FreenessVerdict fb = freeness_check(block, cfg);
    b.expect("corner and block forms agree", fc.all_vanish ? "AllVanish" : "RelationsPresent",
             fc.all_vanish == fb.all_vanish, fb.all_vanish ? "AllVanish" : "RelationsPresent");
    const std::string want = expect_free ? "AllVanish" : "RelationsPresent";
    const std::string got = fb.all_vanish ? "AllVanish" : "RelationsPresent";
    rep.checks.push_back({"freeness check", want, got, fb.all_vanish == expect_free,
                          fb.witnesses.empty() ? std::nullopt : std::optional<MatrixTuple>(fb.witnesses[0])});
    if (!fb.all_vanish) {
        ZeroVerdict v;
        v.kind = ZeroVerdict::Kind::nonzero;
        v.witness = fb.witnesses[0];
        v.route = "expression";
        const bool ok = verify_witness(block.relations[fb.indices[0]], a.field, v);
        b.expect("first relation witness re-verifies", "true", ok, ok ? "true" : "false");
    }
    rep.relations = std::move(block);
    rep.freeness = fb;
}

inline FieldPtr pick_field(const ScenarioConfig& cfg, const FieldPtr& fallback) { return cfg.field ? cfg.field : fallback; }

inline ScenarioReport run_z2_linear(const std::string& name, const ScenarioConfig& cfg, bool double_sign) {
    ScenarioReport rep;
    rep.name = name;
    rep.field = pick_field(cfg, FieldSpec::rationals());
    if (rep.field->characteristic() == 2) {
        throw ParamError(name + " needs characteristic other than 2");
    }
    const FieldPtr& f = rep.field;
    const Expr x = Expr::var(0), y = Expr::var(1);
    ActionSpec a = make_action(FiniteGroup::cyclic(2), 2, f, {{}, {-x, double_sign ? -y : y}});
    const RitConfig& rc = cfg.inv.rit;
    ReportBuilder b(rep, rc, 2);
    ActionReport ar = verify_action(a, rc);
    b.expect("action is faithful", "true", ar.faithful, ar.faithful ? "true" : "false");
    const std::vector<Expr> want = double_sign ? std::vector<Expr>{x * x, y * x, Expr::inv(x) * y}
                                               : std::vector<Expr>{x * x, y, Expr::inv(x) * y * x};
    Presentation g = algorithm_general(a, cfg.inv);
    Presentation l = algorithm_linear(a, cfg.inv);
    for (const Presentation* p : {&g, &l}) {
        const std::string tag = p->algorithm;
        b.count(tag + ": d", 2, p->d());
        b.count(tag + ": |z|", 3, p->t());
        b.expect(tag + ": z spans " + join_exprs(want), "equal span", same_span(p->z, want, f, 2, cfg.inv),
                 join_exprs(p->z));
        presentation_checks(b, *p, a, rc, tag);
    }
    bound_checks(b, l, a, true);
    freeness_checks(b, rep, l.z, build_frak_X(l.affine, f), l.basis, a, rc, true);
    rep.generators = l.z;
    rep.presentation = std::move(l);
    return rep;
}

inline ScenarioReport run_z3_scaling(const ScenarioConfig& cfg) {
    ScenarioReport rep;
    rep.name = "z3_scaling_f7";
    rep.field = FieldSpec::finite(7);
    if (cfg.field && cfg.field->to_string() != rep.field->to_string()) {
        throw ParamError("z3_scaling_f7 is defined over F7 only");
    }
    const FieldPtr& f = rep.field;
    const Expr x = Expr::var(0), y = Expr::var(1);
    ActionSpec a = make_action(FiniteGroup::cyclic(3), 2, f,
                               {{}, {Expr::integer(f, 2) * x, y}, {Expr::integer(f, 4) * x, y}});
    const RitConfig& rc = cfg.inv.rit;
    ReportBuilder b(rep, rc, 2);
    ActionReport ar = verify_action(a, rc);
    b.expect("action is faithful", "true", ar.faithful, ar.faithful ? "true" : "false");
    Presentation l = algorithm_linear(a, cfg.inv);
    b.count("d", 3, l.d());
    b.count("|z|", 4, l.t());
    presentation_checks(b, l, a, rc, "linear");
    Presentation g = algorithm_general(a, cfg.inv);
    b.count("general: d", 3, g.d());
    presentation_checks(b, g, a, rc, "general");
    bound_checks(b, l, a, true);
    freeness_checks(b, rep, l.z, build_frak_X(l.affine, f), l.basis, a, rc, true);
    rep.generators = l.z;
    rep.presentation = std::move(l);
    return rep;
}

inline ScenarioReport run_char2_swap(const ScenarioConfig& cfg) {
    ScenarioReport rep;
    rep.name = "z2_char2_swap";
    rep.field = pick_field(cfg, FieldSpec::finite(2));
    if (rep.field->characteristic() != 2) {
        throw ParamError("z2_char2_swap needs characteristic 2");
    }
    const FieldPtr& f = rep.field;
    const Expr x = Expr::var(0), y = Expr::var(1);
    ActionSpec a = make_action(FiniteGroup::cyclic(2), 2, f, {{}, {y, x}});
    const RitConfig& rc = cfg.inv.rit;
    ReportBuilder b(rep, rc, 2);
    ActionReport ar = verify_action(a, rc);
    b.expect("action is faithful", "true", ar.faithful, ar.faithful ? "true" : "false");
    bool rejected = false;
    try {
        algorithm_linear(a, cfg.inv);
    } catch (const CharDivides&) {
        rejected = true;
    }
    b.expect("linear algorithm refuses char | |G|", "CharDivides", rejected, rejected ? "CharDivides" : "accepted");

    Presentation p = algorithm_general(a, cfg.inv);
    b.count("d", 2, p.d());
    presentation_checks(b, p, a, rc, "general");
    bound_checks(b, p, a, false);

    // Closed forms of X and Y, and the three generators they reduce to.
    const Expr s = x + y, si = Expr::inv(x + y);
    b.equal("X_12 = x(x+y)^-1 y(x+y)", p.X[0](0, 1), x * si * y * s);
    b.equal("X_22 = (x+y)^-1(x^2+y^2)", p.X[0](1, 1), si * (x * x + y * y));
    b.equal("Y_11 = x+y", p.X[1](0, 0), s);
    b.equal("Y_12 = xy+yx+x(x+y)^-1 y(x+y)", p.X[1](0, 1), x * y + y * x + x * si * y * s);
    b.equal("Y_21 = 1", p.X[1](1, 0), Expr::one(f));
    b.equal("Y_22 = (x+y)^-1(xy+yx)", p.X[1](1, 1), si * (x * y + y * x));
    const std::vector<Expr> z = {x + y, x * y + y * x, Expr::inv(x) + Expr::inv(y)};
    b.count("|z|", 3, z.size());
    for (std::size_t j = 0; j < z.size(); ++j) {
        b.expect("z" + std::to_string(j + 1) + " is invariant", "ProbablyZero",
                 eq_m(a.apply(1, z[j]), z[j], f, rc, 2).probably_zero(), to_string(z[j]));
    }
    b.equal("z3 = (x(x+y)^-1 y)^-1", z[2], Expr::inv(x * si * y));

    // Matrices over fresh variables, rational in them.
    const Expr z1 = Expr::var(0), z2 = Expr::var(1), z3 = Expr::var(2);
    MatM FX = mat_zero(2, 2, f), FY = mat_zero(2, 2, f);
    FX(0, 1) = Expr::inv(z3) * z1;
    FX(1, 0) = Expr::one(f);
    FX(1, 1) = z1 + Expr::inv(z1) * z2;
    FY(0, 0) = z1;
    FY(0, 1) = z2 + Expr::inv(z3) * z1;
    FY(1, 0) = Expr::one(f);
    FY(1, 1) = Expr::inv(z1) * z2;
    for (std::size_t i = 0; i < 2; ++i) {
        const MatM& F = i == 0 ? FX : FY;
        for (std::size_t r = 0; r < 2; ++r) {
            for (std::size_t c = 0; c < 2; ++c) {
                b.equal(std::string(i == 0 ? "X" : "Y") + "_" + std::to_string(r + 1) + std::to_string(c + 1) +
                            " as a rational function of z",
                        substitute(F(r, c), z), p.X[i](r, c));
            }
        }
    }
    // The three displayed identities are the corner relations for z.
    const std::vector<MatM> frakX = {FX, FY};
    RelationSet corner = fundamental_relations(z, frakX, f, rc);
    const std::vector<std::string> ids = {"(X+Y)e1 = z1 e1", "(XY+YX)e1 = z2 e1", "(X^-1+Y^-1)e1 = z3 e1"};
    for (std::size_t j = 0; j < 3; ++j) {
        b.vanishes(ids[j] + " (row 1)", corner.relations[2 * j]);
        b.vanishes(ids[j] + " (row 2)", corner.relations[2 * j + 1]);
    }
    freeness_checks(b, rep, z, frakX, p.basis, a, rc, true);
    rep.generators = z;
    rep.presentation = std::move(p);
    return rep;
}

inline ScenarioReport run_jonquieres(const ScenarioConfig& cfg) {
    ScenarioReport rep;
    rep.name = "jonquieres";
    rep.field = pick_field(cfg, FieldSpec::rationals());
    const FieldPtr& f = rep.field;
    JonquieresData J = jonquieres_data(cfg.f, f);
    const ActionSpec& a = J.action;
    const RitConfig& rc = cfg.inv.rit;
    ReportBuilder b(rep, rc, 2);
    const Expr x = Expr::var(0), y = Expr::var(1);

    ActionReport ar = verify_action(a, rc);
    b.expect("action is an involution", "faithful of order 2", ar.faithful && ar.effective_order == 2,
             ar.faithful ? "faithful" : "not faithful");
    Presentation p = algorithm_general(a, cfg.inv);
    b.count("d", 2, p.d());
    b.at_most("|z|", 6, p.t());
    b.expect("basis", "{1, x1}", p.basis_labels == std::vector<std::string>{"1", "x1"},
             "{" + (p.basis_labels.empty() ? std::string() : p.basis_labels[0]) +
                 (p.basis_labels.size() > 1 ? ", " + p.basis_labels[1] : std::string()) + "}");
    presentation_checks(b, p, a, rc, "general");
    bound_checks(b, p, a, false);
    if (p.d() == 2) {
        b.equal("X_11 = 0", p.X[0](0, 0), Expr::zero(f));
        b.equal("X_21 = 1", p.X[0](1, 0), Expr::one(f));
        b.equal("X_12 = z1", p.X[0](0, 1), J.z[0]);
        b.equal("X_22 = z2", p.X[0](1, 1), J.z[1]);
        b.equal("Y_11 = z3", p.X[1](0, 0), J.z[2]);
        b.equal("Y_21 = z4", p.X[1](1, 0), J.z[3]);
        b.equal("Y_12 = z5", p.X[1](0, 1), J.z[4]);
        b.equal("Y_22 = z6", p.X[1](1, 1), J.z[5]);
    }
    for (std::size_t i = 0; i < 6; ++i) {
        b.nonzero("z" + std::to_string(i + 1) + " is nonzero", J.z[i]);
    }
    const std::vector<Scalar>& c = J.f;
    b.vanishes("rs - sr", J.r * J.s - J.s * J.r);
    b.vanishes("s^2 - f(r)", J.s * J.s - poly_at(c, J.r));
    b.matrix_vanishes("XC - CX", mat_sub(mat_mul(J.X, J.C), mat_mul(J.C, J.X)));
    const MatM fX = poly_at(c, J.X, f);
    b.matrix_vanishes("C^2 - f(X)", mat_sub(mat_mul(J.C, J.C), fX));
    const std::vector<Expr>& z = J.z;
    const Expr one = Expr::one(f);
    b.vanishes("corner relation", Expr::inv(z[5] - z[3] * Expr::inv(z[2]) * z[4]) *
                                          (z[2] + z[1] * z[3] - z[3] * Expr::inv(z[2]) * z[0] * z[3]) +
                                      one);
    b.vanishes("commutation relation (2,1)", z[0] * z[2] + z[0] * z[1] * z[3] - z[2] * z[0] - z[0] * z[3] * z[1]);
    b.vanishes("commutation relation (2,2)", z[0] * z[3] + z[1] * z[2] + z[1] * z[1] * z[3] - z[3] * z[0] -
                                                 z[2] * z[1] - z[1] * z[3] * z[1]);
    b.vanishes("C^2 relation (1,1)", z[2] * z[2] + z[0] * z[3] * z[3] - fX(0, 0));
    b.vanishes("C^2 relation (2,1)", z[3] * z[2] + z[2] * z[3] + z[1] * z[3] * z[3] - fX(1, 0));
    const Expr alpha = Expr::constant(c[2]);
    const Expr r2 = z[3] * z[3] - z[1] - alpha;
    b.equal("r = z4^2 - z2 - alpha", J.r, r2);
    b.equal("s = z3 + z4 r", J.s, z[2] + z[3] * r2);
    b.equal("r is invariant", a.apply(1, J.r), J.r);
    b.equal("s is invariant", a.apply(1, J.s), J.s);
    b.nonzero("r is nonconstant", J.r * x - x * J.r);
    b.nonzero("s is nonconstant", J.s * y - y * J.s);

    freeness_checks(b, rep, p.z, build_frak_X(p.affine, f), p.basis, a, rc, false);
    rep.generators = p.z;
    rep.presentation = std::move(p);
    return rep;
}

} // namespace detail

inline ScenarioReport run_scenario(const std::string& name, const ScenarioConfig& cfg = {}) {
    if (name == "z2_sign") {
        return detail::run_z2_linear(name, cfg, false);
    }
    if (name == "z2_double_sign") {
        return detail::run_z2_linear(name, cfg, true);
    }
    if (name == "z2_char2_swap") {
        return detail::run_char2_swap(cfg);
    }
    if (name == "z3_scaling_f7") {
        return detail::run_z3_scaling(cfg);
    }
    if (name == "jonquieres") {
        return detail::run_jonquieres(cfg);
    }
    throw ParamError("unknown scenario '" + name + "'");
}

} // namespace skewfield

#endif

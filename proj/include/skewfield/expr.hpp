#ifndef SKEWFIELD_EXPR_HPP
#define SKEWFIELD_EXPR_HPP

// Formal noncommutative rational expressions as hash-consed DAGs.

#include <skewfield/dense.hpp>
#include <skewfield/errors.hpp>
#include <skewfield/eval_field.hpp>
#include <skewfield/field.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace skewfield {

enum class Op : std::uint8_t { constant, variable, sum, product, negate, inverse };

struct Node {
    Op op = Op::constant;
    std::uint32_t var = 0;
    Scalar value;
    std::vector<const Node*> kids;
    std::uint64_t hash = 0;
    std::uint64_t id = 0;
    std::uint32_t arity = 0;     // one more than the largest variable index, 0 if none
    std::uint64_t dim = 0;       // dimension of the linear representation, saturating
    FieldPtr field;              // field of the constants below this node, if any
};

namespace detail {

constexpr std::uint64_t kSaturate = std::numeric_limits<std::uint64_t>::max() / 4;

inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return std::min(kSaturate, a + b); }

class NodePool {
public:
    static NodePool& instance() {
        static NodePool pool;
        return pool;
    }

    const Node* intern(Node&& n) {
        n.hash = structural_hash(n);
        std::lock_guard<std::mutex> lock(mu_);
        auto& bucket = index_[n.hash];
        for (const Node* c : bucket) {
            if (same(*c, n)) {
                return c;
            }
        }
        n.id = nodes_.size();
        nodes_.push_back(std::move(n));
        const Node* out = &nodes_.back();
        bucket.push_back(out);
        return out;
    }

    std::size_t size() const {
        std::lock_guard<std::mutex> lock(mu_);
        return nodes_.size();
    }

private:
    static std::uint64_t structural_hash(const Node& n) {
        std::uint64_t h = mix_seed(static_cast<std::uint64_t>(n.op) + 1, n.var);
        if (n.op == Op::constant) {
            h = mix_seed(h, n.value.hash());
            h = mix_seed(h, n.value.field()->characteristic());
        }
        for (const Node* k : n.kids) {
            h = mix_seed(h, k->hash);
        }
        return h;
    }

    static bool same(const Node& a, const Node& b) {
        if (a.op != b.op || a.var != b.var || a.kids != b.kids) {
            return false;
        }
        if (a.op == Op::constant) {
            return same_field(a.value.field(), b.value.field()) && a.value == b.value;
        }
        return true;
    }

    mutable std::mutex mu_;
    std::deque<Node> nodes_;
    std::unordered_map<std::uint64_t, std::vector<const Node*>> index_;
};

inline FieldPtr merge_field(const FieldPtr& a, const FieldPtr& b) {
    if (!a) {
        return b;
    }
    if (b && !same_field(a, b)) {
        throw FieldMismatch();
    }
    return a;
}

} // namespace detail

class Expr {
public:
    Expr() = default;
    explicit Expr(const Node* n) : n_(n) {}

    const Node* node() const { return n_; }
    bool valid() const { return n_ != nullptr; }
    Op op() const { return n_->op; }
    std::size_t num_kids() const { return n_->kids.size(); }
    Expr kid(std::size_t i) const { return Expr(n_->kids[i]); }
    std::uint32_t var_index() const { return n_->var; }
    const Scalar& value() const { return n_->value; }
    std::uint64_t hash() const { return n_->hash; }
    std::uint64_t id() const { return n_->id; }
    std::uint32_t arity() const { return n_->arity; }
    std::uint64_t dimension() const { return n_->dim; }
    const FieldPtr& field() const { return n_->field; }

    bool is_const() const { return n_->op == Op::constant; }
    bool is_zero_const() const { return is_const() && n_->value.is_zero(); }
    bool is_one_const() const { return is_const() && n_->value.is_one(); }

    friend bool operator==(Expr a, Expr b) { return a.n_ == b.n_; }
    friend bool operator!=(Expr a, Expr b) { return a.n_ != b.n_; }

    static Expr constant(const Scalar& c) {
        Node n;
        n.op = Op::constant;
        n.value = c;
        n.dim = 1;
        n.field = c.field();
        return Expr(detail::NodePool::instance().intern(std::move(n)));
    }
    static Expr integer(const FieldPtr& f, long long v) { return constant(Scalar(f, v)); }
    static Expr zero(const FieldPtr& f) { return integer(f, 0); }
    static Expr one(const FieldPtr& f) { return integer(f, 1); }

    static Expr var(std::uint32_t index) {
        Node n;
        n.op = Op::variable;
        n.var = index;
        n.arity = index + 1;
        n.dim = 2;
        return Expr(detail::NodePool::instance().intern(std::move(n)));
    }

    static Expr sum(const std::vector<Expr>& terms) {
        std::vector<const Node*> out;
        std::optional<Scalar> c;
        auto absorb = [&](const Node* t) {
            if (t->op == Op::constant) {
                if (!c) {
                    c = t->value;
                } else {
                    *c += t->value;
                }
            } else {
                out.push_back(t);
            }
        };
        for (Expr t : terms) {
            if (t.op() == Op::sum) {
                for (const Node* k : t.n_->kids) {
                    absorb(k);
                }
            } else {
                absorb(t.n_);
            }
        }
        if (c && !c->is_zero()) {
            out.push_back(constant(*c).n_);
        }
        if (out.empty()) {
            if (!c) {
                throw Error("empty sum without a field");
            }
            return constant(*c);
        }
        if (out.size() == 1) {
            return Expr(out[0]);
        }
        return make(Op::sum, std::move(out));
    }

    static Expr product(const std::vector<Expr>& factors) {
        std::vector<const Node*> out;
        std::optional<Scalar> c;
        auto absorb = [&](const Node* t) {
            if (t->op == Op::constant) {
                c = c ? *c * t->value : t->value;
            } else {
                out.push_back(t);
            }
        };
        for (Expr t : factors) {
            if (t.op() == Op::product) {
                for (const Node* k : t.n_->kids) {
                    absorb(k);
                }
            } else {
                absorb(t.n_);
            }
        }
        if (c && c->is_zero()) {
            return constant(*c);
        }
        if (out.empty()) {
            if (!c) {
                throw Error("empty product without a field");
            }
            return constant(*c);
        }
        if (c && (-*c).is_one()) {
            return neg(out.size() == 1 ? Expr(out[0]) : make(Op::product, std::move(out)));
        }
        if (c && !c->is_one()) {
            out.insert(out.begin(), constant(*c).n_);
        }
        if (out.size() == 1) {
            return Expr(out[0]);
        }
        return make(Op::product, std::move(out));
    }

    static Expr neg(Expr a) {
        if (a.op() == Op::negate) {
            return a.kid(0);
        }
        if (a.is_const()) {
            return constant(-a.value());
        }
        return make(Op::negate, {a.n_});
    }

    static Expr inv(Expr a) {
        if (a.op() == Op::inverse) {
            return a.kid(0);
        }
        if (a.is_const() && !a.value().is_zero()) {
            return constant(a.value().inv());
        }
        return make(Op::inverse, {a.n_});
    }

    friend Expr operator+(Expr a, Expr b) { return sum({a, b}); }
    friend Expr operator-(Expr a, Expr b) { return sum({a, neg(b)}); }
    friend Expr operator*(Expr a, Expr b) { return product({a, b}); }
    Expr operator-() const { return neg(*this); }

    /// Number of distinct nodes in the DAG.
    std::size_t size() const {
        std::unordered_set<const Node*> seen;
        std::vector<const Node*> stack{n_};
        while (!stack.empty()) {
            const Node* c = stack.back();
            stack.pop_back();
            if (!seen.insert(c).second) {
                continue;
            }
            for (const Node* k : c->kids) {
                stack.push_back(k);
            }
        }
        return seen.size();
    }

private:
    static Expr make(Op op, std::vector<const Node*> kids) {
        Node n;
        n.op = op;
        n.kids = std::move(kids);
        std::uint64_t dim = 0;
        for (const Node* k : n.kids) {
            n.arity = std::max(n.arity, k->arity);
            n.field = detail::merge_field(n.field, k->field);
            dim = detail::sat_add(dim, k->dim);
        }
        if (op == Op::inverse) {
            dim = detail::sat_add(dim, 1);
        }
        n.dim = dim;
        return Expr(detail::NodePool::instance().intern(std::move(n)));
    }

    const Node* n_ = nullptr;
};

inline Expr inv(Expr a) { return Expr::inv(a); }

struct ExprHash {
    std::size_t operator()(Expr e) const { return std::hash<const Node*>{}(e.node()); }
};

// ---------------------------------------------------------------------------
// Printing

namespace detail {

class Printer {
public:
    Printer(char letter, std::size_t limit) : letter_(letter), limit_(limit) {}

    std::string run(Expr e) {
        expr(e);
        if (out_.size() > limit_) {
            out_.resize(limit_);
            out_ += "...";
        }
        return out_;
    }

private:
    bool full() const { return out_.size() > limit_; }

    static bool negative_const(Expr e) {
        return e.is_const() && e.value().field()->is_rational() && e.value().rational() < 0;
    }

    void constant(const Scalar& s) { out_ += s.to_string(); }

    void expr(Expr e) {
        if (e.op() != Op::sum) {
            term(e);
            return;
        }
        for (std::size_t i = 0; i < e.num_kids() && !full(); ++i) {
            Expr t = e.kid(i);
            if (i == 0) {
                term(t);
            } else if (t.op() == Op::negate) {
                out_ += " - ";
                term(t.kid(0));
            } else if (negative_const(t)) {
                out_ += " - ";
                constant(-t.value());
            } else if (t.op() == Op::product && negative_const(t.kid(0))) {
                out_ += " - ";
                constant(-t.kid(0).value());
                for (std::size_t j = 1; j < t.num_kids(); ++j) {
                    out_ += "*";
                    factor(t.kid(j));
                }
            } else {
                out_ += " + ";
                term(t);
            }
        }
    }

    void term(Expr e) {
        if (e.op() != Op::product) {
            factor(e);
            return;
        }
        for (std::size_t i = 0; i < e.num_kids() && !full(); ++i) {
            if (i) {
                out_ += "*";
            }
            factor(e.kid(i));
        }
    }

    void factor(Expr e) {
        switch (e.op()) {
        case Op::constant:
            constant(e.value());
            break;
        case Op::variable:
            out_ += letter_;
            out_ += std::to_string(e.var_index() + 1);
            break;
        case Op::negate:
            out_ += "-";
            factor(e.kid(0));
            break;
        case Op::inverse:
            if (e.kid(0).op() == Op::variable) {
                factor(e.kid(0));
                out_ += "^-1";
            } else {
                out_ += "inv(";
                expr(e.kid(0));
                out_ += ")";
            }
            break;
        case Op::sum:
        case Op::product:
            out_ += "(";
            expr(e);
            out_ += ")";
            break;
        }
    }

    char letter_;
    std::size_t limit_;
    std::string out_;
};

} // namespace detail

/// Infix form in the parser grammar; variables print as <letter><index>.
inline std::string to_string(Expr e, char letter = 'x', std::size_t limit = std::numeric_limits<std::size_t>::max() / 2) {
    return detail::Printer(letter, limit).run(e);
}

// ---------------------------------------------------------------------------
// Parsing
//
// expr   := term (('+'|'-') term)*
// term   := factor ('*' factor)*
// factor := '-' factor | atom ('^-1')*
// atom   := VAR | RATIONAL | '(' expr ')' | 'inv(' expr ')'
//
// A parenthesised comma list "(c0,c1,...)" is additionally read as an element of an extension field.

namespace detail {

class Parser {
public:
    Parser(std::string_view text, std::size_t nvars, FieldPtr field, char letter)
        : text_(text), nvars_(nvars), field_(std::move(field)), letter_(letter) {
        tokenize();
    }

    Expr run() {
        Expr e = expr();
        if (peek().kind != Tok::end) {
            fail("unexpected '" + peek().text + "'");
        }
        return e;
    }

private:
    enum class Tok { var, integer, plus, minus, star, slash, caret, lparen, rparen, comma, inv, end };

    struct Token {
        Tok kind;
        std::string text;
        std::size_t col;
    };

    [[noreturn]] void fail(const std::string& what) const {
        std::size_t col = peek().col;
        if (peek().kind == Tok::end) {
            col = toks_.size() > 1 ? toks_[toks_.size() - 2].col : 1;
        }
        throw SyntaxError(col, what);
    }

    void tokenize() {
        std::size_t i = 0;
        while (i < text_.size()) {
            const char c = text_[i];
            const std::size_t col = i + 1;
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t j = i;
                while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) {
                    ++j;
                }
                toks_.push_back({Tok::integer, std::string(text_.substr(i, j - i)), col});
                i = j;
                continue;
            }
            if (c == letter_) {
                std::size_t j = i + 1;
                if (j >= text_.size() || text_[j] < '1' || text_[j] > '9') {
                    throw SyntaxError(col, std::string("malformed variable after '") + letter_ + "'");
                }
                while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) {
                    ++j;
                }
                toks_.push_back({Tok::var, std::string(text_.substr(i + 1, j - i - 1)), col});
                i = j;
                continue;
            }
            if (text_.substr(i, 4) == "inv(") {
                toks_.push_back({Tok::inv, "inv(", col});
                i += 4;
                continue;
            }
            Tok k;
            switch (c) {
            case '+': k = Tok::plus; break;
            case '-': k = Tok::minus; break;
            case '*': k = Tok::star; break;
            case '/': k = Tok::slash; break;
            case '^': k = Tok::caret; break;
            case '(': k = Tok::lparen; break;
            case ')': k = Tok::rparen; break;
            case ',': k = Tok::comma; break;
            default:
                throw SyntaxError(col, std::string("unexpected character '") + c + "'");
            }
            toks_.push_back({k, std::string(1, c), col});
            ++i;
        }
        toks_.push_back({Tok::end, "end of input", text_.size() + 1});
    }

    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    void expect(Tok k, const char* what) {
        if (peek().kind != k) {
            fail(std::string("expected ") + what);
        }
        take();
    }

    Expr expr() {
        std::vector<Expr> terms{term()};
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            const bool minus = take().kind == Tok::minus;
            Expr t = term();
            terms.push_back(minus ? Expr::neg(t) : t);
        }
        return terms.size() == 1 ? terms[0] : Expr::sum(terms);
    }

    Expr term() {
        std::vector<Expr> f{factor()};
        while (peek().kind == Tok::star) {
            take();
            f.push_back(factor());
        }
        return f.size() == 1 ? f[0] : Expr::product(f);
    }

    Expr factor() {
        if (peek().kind == Tok::minus) {
            take();
            return Expr::neg(factor());
        }
        Expr a = atom();
        while (peek().kind == Tok::caret) {
            take();
            if (peek().kind != Tok::minus || peek(1).kind != Tok::integer || peek(1).text != "1") {
                fail("expected '^-1'");
            }
            take();
            take();
            a = Expr::inv(a);
        }
        return a;
    }

    Expr atom() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::var: {
            take();
            const std::size_t idx = std::stoull(t.text);
            if (idx > nvars_) {
                throw UnknownVariable(idx, nvars_);
            }
            return Expr::var(static_cast<std::uint32_t>(idx - 1));
        }
        case Tok::integer: {
            std::string num = take().text;
            if (peek().kind == Tok::slash) {
                take();
                if (peek().kind != Tok::integer) {
                    fail("expected a positive denominator");
                }
                const std::string den = take().text;
                if (mpz_class(den) == 0) {
                    fail("zero denominator");
                }
                num += "/" + den;
            }
            return Expr::constant(Scalar::parse(field_, num));
        }
        case Tok::lparen: {
            take();
            if (peek().kind == Tok::integer && peek(1).kind == Tok::comma) {
                std::string lit = "(" + take().text;
                while (peek().kind == Tok::comma) {
                    take();
                    if (peek().kind != Tok::integer) {
                        fail("expected a coefficient");
                    }
                    lit += "," + take().text;
                }
                expect(Tok::rparen, "')'");
                return Expr::constant(Scalar::parse(field_, lit + ")"));
            }
            Expr e = expr();
            expect(Tok::rparen, "')'");
            return e;
        }
        case Tok::inv: {
            take();
            Expr e = expr();
            expect(Tok::rparen, "')'");
            return Expr::inv(e);
        }
        default:
            fail(t.kind == Tok::end ? "unexpected end of input" : "unexpected '" + t.text + "'");
        }
    }

    std::string_view text_;
    std::size_t nvars_;
    FieldPtr field_;
    char letter_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Expr parse_expr(std::string_view text, std::size_t nvars, const FieldPtr& field, char letter = 'x') {
    return detail::Parser(text, nvars, field, letter).run();
}

// ---------------------------------------------------------------------------
// Substitution

/// Simultaneous substitution x_i -> images[i].
inline Expr substitute(Expr r, const std::vector<Expr>& images) {
    if (r.arity() > images.size()) {
        throw ArityMismatch("expression uses " + std::to_string(r.arity()) + " variables but only " +
                            std::to_string(images.size()) + " images were given");
    }
    std::unordered_map<const Node*, Expr> memo;
    std::function<Expr(Expr)> go = [&](Expr e) -> Expr {
        auto it = memo.find(e.node());
        if (it != memo.end()) {
            return it->second;
        }
        Expr out;
        switch (e.op()) {
        case Op::constant:
            out = e;
            break;
        case Op::variable:
            out = images[e.var_index()];
            break;
        case Op::negate:
            out = Expr::neg(go(e.kid(0)));
            break;
        case Op::inverse:
            out = Expr::inv(go(e.kid(0)));
            break;
        case Op::sum:
        case Op::product: {
            std::vector<Expr> kids;
            kids.reserve(e.num_kids());
            for (std::size_t i = 0; i < e.num_kids(); ++i) {
                kids.push_back(go(e.kid(i)));
            }
            out = e.op() == Op::sum ? Expr::sum(kids) : Expr::product(kids);
            break;
        }
        }
        memo.emplace(e.node(), out);
        return out;
    };
    return go(r);
}

inline std::vector<Expr> identity_images(std::size_t m) {
    std::vector<Expr> v;
    for (std::size_t i = 0; i < m; ++i) {
        v.push_back(Expr::var(static_cast<std::uint32_t>(i)));
    }
    return v;
}

namespace detail {

class Simplifier {
public:
    explicit Simplifier(FieldPtr f) : f_(std::move(f)) {}

    Expr run(Expr e) {
        auto it = memo_.find(e.node());
        if (it != memo_.end()) {
            return it->second;
        }
        Expr out = compute(e);
        memo_.emplace(e.node(), out);
        return out;
    }

private:
    Expr compute(Expr e) {
        switch (e.op()) {
        case Op::constant:
        case Op::variable:
            return e;
        case Op::negate:
            return Expr::neg(run(e.kid(0)));
        case Op::inverse: {
            Expr k = run(e.kid(0));
            if (k.op() == Op::negate) {
                return Expr::neg(Expr::inv(k.kid(0)));
            }
            if (k.op() == Op::product && k.kid(0).is_const()) {
                std::vector<Expr> rest;
                for (std::size_t i = 1; i < k.num_kids(); ++i) {
                    rest.push_back(k.kid(i));
                }
                return Expr::constant(k.kid(0).value().inv()) * Expr::inv(Expr::product(rest));
            }
            if (k.op() == Op::sum) {
                // Make the leading coefficient 1.
                Expr lead = k.kid(0);
                Scalar c = Scalar::one(f_);
                while (lead.op() == Op::negate) {
                    c = -c;
                    lead = lead.kid(0);
                }
                if (lead.op() == Op::product && lead.kid(0).is_const()) {
                    c = c * lead.kid(0).value();
                }
                if (!lead.is_const() && !c.is_one()) {
                    const Expr ci = Expr::constant(c.inv());
                    return simplify_product(ci, Expr::inv(sum(k, c.inv())));
                }
            }
            return Expr::inv(k);
        }
        case Op::product:
            return product(e);
        case Op::sum:
            return sum(e, Scalar::one(f_));
        }
        return e;
    }

    Expr simplify_product(Expr c, Expr rest) {
        if (c.value().is_one()) {
            return rest;
        }
        if ((-c.value()).is_one()) {
            return Expr::neg(rest);
        }
        return c * rest;
    }

    Expr product(Expr e) {
        bool negative = false;
        std::vector<Expr> stack;
        auto push = [&](Expr k) {
            while (k.op() == Op::negate) {
                negative = !negative;
                k = k.kid(0);
            }
            if (!stack.empty() && !k.is_const()) {
                Expr top = stack.back();
                if ((top.op() == Op::inverse && top.kid(0) == k) || (k.op() == Op::inverse && k.kid(0) == top)) {
                    stack.pop_back();
                    return;
                }
            }
            stack.push_back(k);
        };
        for (std::size_t i = 0; i < e.num_kids(); ++i) {
            Expr k = run(e.kid(i));
            while (k.op() == Op::negate) {
                negative = !negative;
                k = k.kid(0);
            }
            if (k.op() == Op::product) {
                for (std::size_t j = 0; j < k.num_kids(); ++j) {
                    push(k.kid(j));
                }
            } else {
                push(k);
            }
        }
        Expr out = stack.empty() ? Expr::one(f_) : Expr::product(stack);
        return negative ? Expr::neg(out) : out;
    }

    // Adds c * t to the collected terms, distributing over nested sums.
    void collect(Expr t, Scalar c, Scalar& constant, std::vector<Expr>& cores,
                 std::unordered_map<const Node*, Scalar>& coef) {
        while (true) {
            if (t.op() == Op::negate) {
                c = -c;
                t = t.kid(0);
            } else if (t.op() == Op::product && t.kid(0).is_const()) {
                c = c * t.kid(0).value();
                std::vector<Expr> rest;
                for (std::size_t i = 1; i < t.num_kids(); ++i) {
                    rest.push_back(t.kid(i));
                }
                t = rest.empty() ? Expr::one(f_) : Expr::product(rest);
            } else {
                break;
            }
        }
        if (t.is_const()) {
            constant += c * t.value();
            return;
        }
        if (t.op() == Op::sum) {
            for (std::size_t i = 0; i < t.num_kids(); ++i) {
                collect(t.kid(i), c, constant, cores, coef);
            }
            return;
        }
        auto it = coef.find(t.node());
        if (it == coef.end()) {
            coef.emplace(t.node(), c);
            cores.push_back(t);
        } else {
            it->second += c;
        }
    }

    Expr sum(Expr e, const Scalar& scale) {
        Scalar constant = Scalar::zero(f_);
        std::vector<Expr> cores;
        std::unordered_map<const Node*, Scalar> coef;
        for (std::size_t i = 0; i < e.num_kids(); ++i) {
            collect(run(e.kid(i)), scale, constant, cores, coef);
        }
        std::vector<Expr> out;
        for (Expr core : cores) {
            const Scalar& c = coef.at(core.node());
            if (c.is_zero()) {
                continue;
            }
            if (c.is_one()) {
                out.push_back(core);
            } else if ((-c).is_one()) {
                out.push_back(Expr::neg(core));
            } else {
                out.push_back(Expr::constant(c) * core);
            }
        }
        if (!constant.is_zero() || out.empty()) {
            out.push_back(Expr::constant(constant));
        }
        return Expr::sum(out);
    }

    FieldPtr f_;
    std::unordered_map<const Node*, Expr> memo_;
};

} // namespace detail

/// Local rewriting that preserves the value in the skew field: like terms are collected, signs
/// are pulled out of products, adjacent a*inv(a) cancels, and scalars leave inverses.
inline Expr simplify(Expr e, const FieldPtr& field) {
    return detail::Simplifier(field).run(e);
}

// ---------------------------------------------------------------------------
// Evaluation on matrix tuples

/// Bottom-up evaluator with a per-tuple memo, over any evaluation field.
template <class F>
class Evaluator {
public:
    using V = typename F::value_type;
    using M = Mat<V>;

    /// `n` is only consulted when the tuple is empty.
    Evaluator(const F& f, std::vector<M> X, std::size_t n = 1) : f_(f), X_(std::move(X)), n_(n) {
        if (!X_.empty()) {
            n_ = X_[0].rows();
        }
    }

    std::size_t size() const { return n_; }
    const std::vector<M>& tuple() const { return X_; }

    /// Throws DomainError when an inverse is applied to a singular matrix.
    const M& eval(Expr e) {
        auto it = memo_.find(e.node());
        if (it != memo_.end()) {
            return it->second;
        }
        M out = compute(e);
        return memo_.emplace(e.node(), std::move(out)).first->second;
    }

private:
    M compute(Expr e) {
        switch (e.op()) {
        case Op::constant:
            return dense::scalar_matrix(f_, n_, f_.from_base(e.value()));
        case Op::variable:
            if (e.var_index() >= X_.size()) {
                throw UnknownVariable(e.var_index() + 1, X_.size());
            }
            return X_[e.var_index()];
        case Op::negate:
            return dense::neg(f_, eval(e.kid(0)));
        case Op::inverse: {
            auto inv = dense::inverse(f_, eval(e.kid(0)));
            if (!inv) {
                throw DomainError(to_string(e.kid(0), 'x', 60), n_);
            }
            return std::move(*inv);
        }
        case Op::sum: {
            M acc(n_, n_, f_.zero());
            for (std::size_t i = 0; i < e.num_kids(); ++i) {
                Expr k = e.kid(i);
                if (k.is_const()) {
                    const V c = f_.from_base(k.value());
                    for (std::size_t d = 0; d < n_; ++d) {
                        acc(d, d) = f_.add(acc(d, d), c);
                    }
                } else {
                    const M& km = eval(k);
                    for (std::size_t r = 0; r < n_; ++r) {
                        for (std::size_t c = 0; c < n_; ++c) {
                            acc(r, c) = f_.add(acc(r, c), km(r, c));
                        }
                    }
                }
            }
            return acc;
        }
        case Op::product: {
            std::optional<V> scale;
            std::optional<M> acc;
            for (std::size_t i = 0; i < e.num_kids(); ++i) {
                Expr k = e.kid(i);
                if (k.is_const()) {
                    const V c = f_.from_base(k.value());
                    scale = scale ? f_.mul(*scale, c) : c;
                } else if (!acc) {
                    acc = eval(k);
                } else {
                    acc = dense::mul(f_, *acc, eval(k));
                }
            }
            if (!acc) {
                return dense::scalar_matrix(f_, n_, scale ? *scale : f_.one());
            }
            if (scale) {
                return dense::scale(f_, *scale, std::move(*acc));
            }
            return std::move(*acc);
        }
        }
        throw Error("corrupt expression node");
    }

    const F& f_;
    std::vector<M> X_;
    std::size_t n_ = 1;
    std::unordered_map<const Node*, M> memo_;
};

/// An m-tuple of n x n matrices over a field (possibly an extension of the expression field).
struct MatrixTuple {
    FieldPtr field;
    std::size_t n = 0;
    std::vector<Mat<Scalar>> mats;
    /// Image of the base field generator, when field is an extension of a non-prime base.
    std::optional<Scalar> generator_image;
};

inline ExactField exact_field_for(const FieldPtr& expr_field, const MatrixTuple& X) {
    if (!expr_field || same_field(expr_field, X.field)) {
        return ExactField(X.field);
    }
    return ExactField(expr_field, X.field, X.generator_image);
}

/// Exact evaluation r(X).
inline Mat<Scalar> evaluate(Expr r, const MatrixTuple& X, const FieldPtr& expr_field = nullptr) {
    if (X.mats.size() < r.arity()) {
        throw ArityMismatch("tuple has " + std::to_string(X.mats.size()) + " matrices, expression needs " +
                            std::to_string(r.arity()));
    }
    const ExactField f = exact_field_for(expr_field ? expr_field : r.field(), X);
    Evaluator<ExactField> ev(f, X.mats);
    return ev.eval(r);
}

} // namespace skewfield

template <>
struct std::hash<skewfield::Expr> {
    std::size_t operator()(skewfield::Expr e) const { return std::hash<const skewfield::Node*>{}(e.node()); }
};

#endif

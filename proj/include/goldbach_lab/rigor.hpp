#pragma once

// Interval arithmetic with outward rounding, expression trees evaluated in
// it, certified maximization by bisection and enclosure quadrature.
//
// Rounding is directed without touching the FPU mode: every basic
// operation recovers its exact rounding error (two-sum, fma residues) and
// steps one ulp outward only when the error points that way. exp, log, sin
// and cos come from libm and are widened by libm_ulps ulps on each side.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "format.hpp"

namespace goldbach_lab::rigor {

inline constexpr int libm_ulps = 4;

namespace detail {

inline constexpr double inf = std::numeric_limits<double>::infinity();
inline constexpr double tiny = 0x1.0p-960;  // below this, fma residues may be inexact

inline double down(double v) { return std::nextafter(v, -inf); }
inline double up(double v) { return std::nextafter(v, inf); }

inline double down_n(double v, int n) {
    for (int i = 0; i < n; ++i) v = down(v);
    return v;
}
inline double up_n(double v, int n) {
    for (int i = 0; i < n; ++i) v = up(v);
    return v;
}

/// Sign of (a + b) − fl(a + b).
inline int add_error_sign(double a, double b, double s) {
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return (err > 0) - (err < 0);
}

inline double add_lo(double a, double b) {
    const double s = a + b;
    if (!std::isfinite(s)) return s;
    return add_error_sign(a, b, s) < 0 ? down(s) : s;
}
inline double add_hi(double a, double b) {
    const double s = a + b;
    if (!std::isfinite(s)) return s;
    return add_error_sign(a, b, s) > 0 ? up(s) : s;
}

inline double mul_lo(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    const double p = a * b;
    if (!std::isfinite(p)) return p;
    if (std::abs(p) < tiny) return down(p);
    return std::fma(a, b, -p) < 0.0 ? down(p) : p;
}
inline double mul_hi(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    const double p = a * b;
    if (!std::isfinite(p)) return p;
    if (std::abs(p) < tiny) return up(p);
    return std::fma(a, b, -p) > 0.0 ? up(p) : p;
}

/// Sign of a/b − fl(a/b).
inline int div_error_sign(double a, double b, double q) {
    const double r = std::fma(-q, b, a);
    const int sr = (r > 0) - (r < 0);
    return b > 0 ? sr : -sr;
}

inline double div_lo(double a, double b) {
    if (a == 0.0) return 0.0;
    const double q = a / b;
    if (!std::isfinite(q)) return q;
    if (std::abs(q) < tiny || std::abs(a) < tiny) return down(q);
    return div_error_sign(a, b, q) < 0 ? down(q) : q;
}
inline double div_hi(double a, double b) {
    if (a == 0.0) return 0.0;
    const double q = a / b;
    if (!std::isfinite(q)) return q;
    if (std::abs(q) < tiny || std::abs(a) < tiny) return up(q);
    return div_error_sign(a, b, q) > 0 ? up(q) : q;
}

inline double sqrt_lo(double a) {
    const double s = std::sqrt(a);
    if (s == 0.0 || !std::isfinite(s)) return s;
    if (a < tiny) return down(s);
    return std::fma(-s, s, a) < 0.0 ? down(s) : s;
}
inline double sqrt_hi(double a) {
    const double s = std::sqrt(a);
    if (s == 0.0 || !std::isfinite(s)) return s;
    if (a < tiny) return up(s);
    return std::fma(-s, s, a) > 0.0 ? up(s) : s;
}

}  // namespace detail

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double v) : lo(v), hi(v) {  // NOLINT: implicit point intervals
        if (std::isnan(v)) throw DomainError("Interval: NaN");
    }
    Interval(double l, double h) : lo(l), hi(h) {
        if (std::isnan(l) || std::isnan(h) || l > h) throw DomainError("Interval: need lo <= hi");
        // An overflowed endpoint only says the value is beyond the finite range.
        if (lo == detail::inf) lo = std::numeric_limits<double>::max();
        if (hi == -detail::inf) hi = -std::numeric_limits<double>::max();
    }

    /// Encloses the exact value of a decimal literal.
    static Interval from_decimal(const std::string& text) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(text, &used);
        } catch (const std::exception&) {
            throw DomainError("Interval: bad decimal '" + text + "'");
        }
        if (used != text.size()) throw DomainError("Interval: bad decimal '" + text + "'");
        return {detail::down(v), detail::up(v)};
    }

    static Interval whole() { return {-detail::inf, detail::inf}; }

    double width() const { return hi - lo; }
    double mid() const { return std::isfinite(lo) && std::isfinite(hi) ? lo + (hi - lo) / 2.0 : 0.0; }
    bool contains(double v) const { return lo <= v && v <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
    bool is_point() const { return lo == hi; }

    friend bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }
};

inline Interval hull(const Interval& a, const Interval& b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

/// a ∩ b; both must enclose the same quantity, so the result is non-empty
/// unless rounding broke a claim.
inline Interval intersect(const Interval& a, const Interval& b) {
    const double l = std::max(a.lo, b.lo), h = std::min(a.hi, b.hi);
    if (l > h) throw VerificationFailure("rigor: disjoint enclosures of one quantity");
    return {l, h};
}

inline Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

inline Interval operator+(const Interval& a, const Interval& b) {
    return {detail::add_lo(a.lo, b.lo), detail::add_hi(a.hi, b.hi)};
}

inline Interval operator-(const Interval& a, const Interval& b) {
    return {detail::add_lo(a.lo, -b.hi), detail::add_hi(a.hi, -b.lo)};
}

inline Interval operator*(const Interval& a, const Interval& b) {
    const double ps[4][2] = {{a.lo, b.lo}, {a.lo, b.hi}, {a.hi, b.lo}, {a.hi, b.hi}};
    double l = detail::inf, h = -detail::inf;
    for (const auto& p : ps) {
        const double pl = detail::mul_lo(p[0], p[1]), ph = detail::mul_hi(p[0], p[1]);
        if (std::isnan(pl) || std::isnan(ph)) return Interval::whole();
        l = std::min(l, pl);
        h = std::max(h, ph);
    }
    return {l, h};
}

inline Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw DomainError("rigor: division by an interval containing 0");
    const double ps[4][2] = {{a.lo, b.lo}, {a.lo, b.hi}, {a.hi, b.lo}, {a.hi, b.hi}};
    double l = detail::inf, h = -detail::inf;
    for (const auto& p : ps) {
        const double pl = detail::div_lo(p[0], p[1]), ph = detail::div_hi(p[0], p[1]);
        if (std::isnan(pl) || std::isnan(ph)) return Interval::whole();
        l = std::min(l, pl);
        h = std::max(h, ph);
    }
    return {l, h};
}

inline Interval abs(const Interval& a) {
    if (a.lo >= 0.0) return a;
    if (a.hi <= 0.0) return -a;
    return {0.0, std::max(-a.lo, a.hi)};
}

inline Interval sqrt(const Interval& a) {
    if (a.lo < 0.0) throw DomainError("rigor: sqrt of an interval with negative part");
    return {detail::sqrt_lo(a.lo), detail::sqrt_hi(a.hi)};
}

/// a^n for integer n.
inline Interval pow(const Interval& a, int n) {
    if (n == 0) return {1.0, 1.0};
    if (n < 0) return Interval(1.0) / pow(a, -n);
    auto power_nonneg = [n](double v) {
        Interval r(1.0), b(v);
        for (int k = n; k > 0; k >>= 1) {
            if (k & 1) r = r * b;
            b = b * b;
        }
        return r;
    };
    if (a.lo >= 0.0) return {power_nonneg(a.lo).lo, power_nonneg(a.hi).hi};
    if (n % 2 == 1) {
        const Interval lo_part = a.lo < 0.0 ? -power_nonneg(-a.lo) : power_nonneg(a.lo);
        const Interval hi_part = a.hi < 0.0 ? -power_nonneg(-a.hi) : power_nonneg(a.hi);
        return {lo_part.lo, hi_part.hi};
    }
    if (a.hi <= 0.0) return {power_nonneg(-a.hi).lo, power_nonneg(-a.lo).hi};
    return {0.0, power_nonneg(std::max(-a.lo, a.hi)).hi};
}

inline Interval exp(const Interval& a) {
    auto lo = [](double v) {
        if (v == 0.0) return 1.0;
        if (v == -detail::inf) return 0.0;
        return std::max(0.0, detail::down_n(std::exp(v), libm_ulps));
    };
    auto hi = [](double v) {
        if (v == 0.0) return 1.0;
        if (v == -detail::inf) return 0.0;
        return detail::up_n(std::exp(v), libm_ulps);
    };
    return {lo(a.lo), hi(a.hi)};
}

inline Interval log(const Interval& a) {
    if (!(a.lo > 0.0)) throw DomainError("rigor: log of an interval touching <= 0");
    auto lo = [](double v) { return v == 1.0 ? 0.0 : detail::down_n(std::log(v), libm_ulps); };
    auto hi = [](double v) { return v == 1.0 ? 0.0 : detail::up_n(std::log(v), libm_ulps); };
    return {lo(a.lo), hi(a.hi)};
}

/// π ∈ [pi_lo, pi_hi], adjacent doubles.
inline constexpr double pi_lo = 3.141592653589793;
inline const double pi_hi = std::nextafter(pi_lo, 4.0);

inline Interval pi() { return {pi_lo, pi_hi}; }

namespace detail {

inline double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

/// Encloses sin or cos on [a.lo, a.hi]. Extremes sit at (k + offset)·π,
/// with a maximum for even k.
inline Interval trig(const Interval& a, bool is_sin) {
    if (!std::isfinite(a.lo) || !std::isfinite(a.hi) || a.width() >= 7.0 || std::abs(a.lo) > 0x1.0p40 ||
        std::abs(a.hi) > 0x1.0p40)
        return {-1.0, 1.0};
    auto f = [is_sin](double v) { return is_sin ? std::sin(v) : std::cos(v); };
    auto point = [&](double v) -> Interval {
        if (v == 0.0) return is_sin ? Interval(0.0) : Interval(1.0);
        const double y = f(v);
        return {clamp_unit(down_n(y, libm_ulps)), clamp_unit(up_n(y, libm_ulps))};
    };
    const Interval fa = point(a.lo), fb = point(a.hi);
    double lo = std::min(fa.lo, fb.lo), hi = std::max(fa.hi, fb.hi);
    const double offset = is_sin ? 0.5 : 0.0;
    const double k0 = std::floor(a.lo / pi_hi - offset) - 1.0;
    const double k1 = std::ceil(a.hi / pi_lo - offset) + 1.0;
    for (double k = k0; k <= k1; k += 1.0) {
        const Interval c = Interval(k + offset) * pi();
        if (c.hi < a.lo || c.lo > a.hi) continue;
        const bool even = std::fmod(std::abs(k), 2.0) == 0.0;
        if (even) {
            hi = 1.0;
        } else {
            lo = -1.0;
        }
    }
    return {lo, hi};
}

}  // namespace detail

inline Interval sin(const Interval& a) { return detail::trig(a, true); }
inline Interval cos(const Interval& a) { return detail::trig(a, false); }

// ---------------------------------------------------------------------------
// Expression trees

enum class Op { constant, variable, add, sub, mul, div, neg, exp, log, sin, cos, sqrt, abs, pow };

struct Node {
    Op op = Op::constant;
    Interval value;     // constant
    std::string name;   // variable; decimal text for decimal constants
    int exponent = 0;   // pow
    std::shared_ptr<const Node> a, b;
};

class Expr {
public:
    Expr(double v) : node_(make(Op::constant)) {  // NOLINT: implicit constants
        auto n = std::const_pointer_cast<Node>(node_);
        n->value = Interval(v);
    }
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    const Node& node() const { return *node_; }
    const std::shared_ptr<const Node>& ptr() const { return node_; }

    static std::shared_ptr<Node> make(Op op) {
        auto n = std::make_shared<Node>();
        n->op = op;
        return n;
    }

private:
    std::shared_ptr<const Node> node_;
};

inline Expr constant(const Interval& v) {
    auto n = Expr::make(Op::constant);
    n->value = v;
    return Expr(n);
}

/// The exact value of a decimal literal, enclosed.
inline Expr constant_decimal(const std::string& text) {
    auto n = Expr::make(Op::constant);
    n->value = Interval::from_decimal(text);
    n->name = text;
    return Expr(n);
}

inline Expr variable(const std::string& name) {
    auto n = Expr::make(Op::variable);
    n->name = name;
    return Expr(n);
}

inline Expr pi_expr() {
    auto n = Expr::make(Op::constant);
    n->value = pi();
    n->name = "pi";
    return Expr(n);
}

namespace detail {

inline Expr binary(Op op, const Expr& x, const Expr& y) {
    auto n = Expr::make(op);
    n->a = x.ptr();
    n->b = y.ptr();
    return Expr(n);
}

inline Expr unary(Op op, const Expr& x) {
    auto n = Expr::make(op);
    n->a = x.ptr();
    return Expr(n);
}

}  // namespace detail

inline Expr operator+(const Expr& x, const Expr& y) { return detail::binary(Op::add, x, y); }
inline Expr operator-(const Expr& x, const Expr& y) { return detail::binary(Op::sub, x, y); }
inline Expr operator*(const Expr& x, const Expr& y) { return detail::binary(Op::mul, x, y); }
inline Expr operator/(const Expr& x, const Expr& y) { return detail::binary(Op::div, x, y); }
inline Expr operator-(const Expr& x) { return detail::unary(Op::neg, x); }
inline Expr exp(const Expr& x) { return detail::unary(Op::exp, x); }
inline Expr log(const Expr& x) { return detail::unary(Op::log, x); }
inline Expr sin(const Expr& x) { return detail::unary(Op::sin, x); }
inline Expr cos(const Expr& x) { return detail::unary(Op::cos, x); }
inline Expr sqrt(const Expr& x) { return detail::unary(Op::sqrt, x); }
inline Expr abs(const Expr& x) { return detail::unary(Op::abs, x); }

inline Expr pow(const Expr& x, int n) {
    auto node = Expr::make(Op::pow);
    node->a = x.ptr();
    node->exponent = n;
    return Expr(node);
}

using Bindings = std::map<std::string, Interval>;

inline Interval interval_eval(const Node& n, const Bindings& env) {
    switch (n.op) {
        case Op::constant: return n.value;
        case Op::variable: {
            const auto it = env.find(n.name);
            if (it == env.end()) throw DomainError("interval_eval: unbound variable '" + n.name + "'");
            return it->second;
        }
        case Op::add: return interval_eval(*n.a, env) + interval_eval(*n.b, env);
        case Op::sub: return interval_eval(*n.a, env) - interval_eval(*n.b, env);
        case Op::mul: return interval_eval(*n.a, env) * interval_eval(*n.b, env);
        case Op::div: return interval_eval(*n.a, env) / interval_eval(*n.b, env);
        case Op::neg: return -interval_eval(*n.a, env);
        case Op::exp: return exp(interval_eval(*n.a, env));
        case Op::log: return log(interval_eval(*n.a, env));
        case Op::sin: return sin(interval_eval(*n.a, env));
        case Op::cos: return cos(interval_eval(*n.a, env));
        case Op::sqrt: return sqrt(interval_eval(*n.a, env));
        case Op::abs: return abs(interval_eval(*n.a, env));
        case Op::pow: return pow(interval_eval(*n.a, env), n.exponent);
    }
    throw DomainError("interval_eval: unknown node");
}

inline Interval interval_eval(const Expr& e, const Bindings& env) { return interval_eval(e.node(), env); }

/// Plain floating-point evaluation.
inline double eval_double(const Node& n, const std::map<std::string, double>& env) {
    switch (n.op) {
        case Op::constant: return n.value.mid();
        case Op::variable: {
            const auto it = env.find(n.name);
            if (it == env.end()) throw DomainError("eval_double: unbound variable '" + n.name + "'");
            return it->second;
        }
        case Op::add: return eval_double(*n.a, env) + eval_double(*n.b, env);
        case Op::sub: return eval_double(*n.a, env) - eval_double(*n.b, env);
        case Op::mul: return eval_double(*n.a, env) * eval_double(*n.b, env);
        case Op::div: return eval_double(*n.a, env) / eval_double(*n.b, env);
        case Op::neg: return -eval_double(*n.a, env);
        case Op::exp: return std::exp(eval_double(*n.a, env));
        case Op::log: return std::log(eval_double(*n.a, env));
        case Op::sin: return std::sin(eval_double(*n.a, env));
        case Op::cos: return std::cos(eval_double(*n.a, env));
        case Op::sqrt: return std::sqrt(eval_double(*n.a, env));
        case Op::abs: return std::abs(eval_double(*n.a, env));
        case Op::pow: return std::pow(eval_double(*n.a, env), n.exponent);
    }
    throw DomainError("eval_double: unknown node");
}

inline double eval_double(const Expr& e, const std::map<std::string, double>& env) { return eval_double(e.node(), env); }

inline std::size_t node_count(const Node& n) {
    return 1 + (n.a ? node_count(*n.a) : 0) + (n.b ? node_count(*n.b) : 0);
}
inline std::size_t node_count(const Expr& e) { return node_count(e.node()); }

inline void collect_variables(const Node& n, std::set<std::string>& out) {
    if (n.op == Op::variable) out.insert(n.name);
    if (n.a) collect_variables(*n.a, out);
    if (n.b) collect_variables(*n.b, out);
}

inline std::set<std::string> variables(const Expr& e) {
    std::set<std::string> out;
    collect_variables(e.node(), out);
    return out;
}

inline std::string to_string(const Node& n) {
    auto un = [&](const char* f) { return std::string(f) + "(" + to_string(*n.a) + ")"; };
    auto bin = [&](const char* o) { return "(" + to_string(*n.a) + o + to_string(*n.b) + ")"; };
    switch (n.op) {
        case Op::constant:
            if (!n.name.empty()) return n.name;
            if (n.value.is_point()) return fmt(n.value.lo);
            return "[" + fmt(n.value.lo) + "," + fmt(n.value.hi) + "]";
        case Op::variable: return n.name;
        case Op::add: return bin("+");
        case Op::sub: return bin("-");
        case Op::mul: return bin("*");
        case Op::div: return bin("/");
        case Op::neg: return "(-" + to_string(*n.a) + ")";
        case Op::exp: return un("exp");
        case Op::log: return un("log");
        case Op::sin: return un("sin");
        case Op::cos: return un("cos");
        case Op::sqrt: return un("sqrt");
        case Op::abs: return un("abs");
        case Op::pow: return "(" + to_string(*n.a) + "^" + std::to_string(n.exponent) + ")";
    }
    return "?";
}
inline std::string to_string(const Expr& e) { return to_string(e.node()); }

/// FNV-1a of the printed expression.
inline std::uint64_t expr_hash(const Expr& e) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : to_string(e)) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// ---------------------------------------------------------------------------
// Bisection maximization

struct MaxEnclosure {
    Interval enclosure;
    double argmax = 0.0;       // point whose value certified enclosure.lo
    std::uint64_t boxes = 0;   // boxes evaluated
    bool exhausted = false;    // budget ran out before tol
    std::vector<std::string> flags;
};

inline constexpr std::uint64_t bisection_default_budget = 4'000'000;

/// Encloses max_{t ∈ domain} f(t) for an expression in at most one variable.
/// Boxes are refined best-upper-bound first; a box is dropped once its
/// upper bound falls below the best certified value at a sample point.
inline MaxEnclosure bisection_max(const Expr& f, const Interval& domain, double tol,
                                  std::uint64_t budget = bisection_default_budget) {
    if (!(tol > 0.0)) throw DomainError("bisection_max: tol must be positive");
    if (!std::isfinite(domain.lo) || !std::isfinite(domain.hi)) throw DomainError("bisection_max: domain must be finite");
    const auto vars = variables(f);
    if (vars.size() > 1) throw DomainError("bisection_max: expression must have at most one variable");
    MaxEnclosure out;
    if (vars.empty()) {
        out.enclosure = interval_eval(f, {});
        out.argmax = domain.lo;
        out.boxes = 1;
        if (out.enclosure.width() > tol) out.flags.emplace_back("constant wider than tol");
        return out;
    }
    const std::string var = *vars.begin();
    auto eval = [&](const Interval& x) {
        ++out.boxes;
        return interval_eval(f, {{var, x}});
    };
    struct Box {
        Interval x, f;
    };
    auto cmp = [](const Box& a, const Box& b) {
        if (a.f.hi != b.f.hi) return a.f.hi < b.f.hi;
        return a.x.lo > b.x.lo;
    };
    std::priority_queue<Box, std::vector<Box>, decltype(cmp)> heap(cmp);
    double best = -detail::inf;
    auto sample = [&](double t) {
        const Interval v = eval(Interval(t));
        if (v.lo > best) {
            best = v.lo;
            out.argmax = t;
        }
    };
    sample(domain.lo);
    sample(domain.hi);
    sample(domain.mid());
    heap.push({domain, eval(domain)});
    double atomic_hi = -detail::inf;  // boxes too narrow to split
    for (;;) {
        const double U = std::max(heap.empty() ? -detail::inf : heap.top().f.hi, atomic_hi);
        if (U - best <= tol) {
            out.enclosure = {best, std::max(U, best)};
            break;
        }
        if (out.boxes >= budget || heap.empty()) {
            out.exhausted = true;
            out.enclosure = {best, std::max(U, best)};
            out.flags.emplace_back("budget exhausted before tol");
            break;
        }
        const Box b = heap.top();
        heap.pop();
        if (b.f.hi < best) continue;
        const double m = b.x.mid();
        if (!(m > b.x.lo && m < b.x.hi)) {
            atomic_hi = std::max(atomic_hi, b.f.hi);
            continue;
        }
        sample(m);
        for (const Interval& child : {Interval(b.x.lo, m), Interval(m, b.x.hi)}) {
            Interval fc = eval(child);
            fc = {std::max(fc.lo, b.f.lo), std::min(fc.hi, b.f.hi)};
            if (fc.lo > fc.hi) fc = b.f;
            if (fc.hi >= best) heap.push({child, fc});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Enclosure quadrature

/// Encloses ∫_domain f over `parts` equal pieces: on each piece the value at
/// the midpoint times the width, plus the width times the remainder
/// f(piece) − f(mid).
inline Interval enclosure_quadrature(const Expr& f, const Interval& domain, int parts) {
    if (parts < 1) throw DomainError("enclosure_quadrature: parts must be at least 1");
    if (!std::isfinite(domain.lo) || !std::isfinite(domain.hi)) throw DomainError("enclosure_quadrature: infinite domain");
    const auto vars = variables(f);
    if (vars.size() > 1) throw DomainError("enclosure_quadrature: expression must have at most one variable");
    const std::string var = vars.empty() ? std::string("t") : *vars.begin();
    Interval total(0.0);
    const double a = domain.lo, w = domain.width();
    for (int k = 0; k < parts; ++k) {
        const double lo = k == 0 ? a : a + w * k / parts;
        const double hi = k == parts - 1 ? domain.hi : a + w * (k + 1) / parts;
        const Interval piece(lo, hi);
        const Interval width = Interval(hi) - Interval(lo);
        const double mid = piece.mid();
        Interval fm, fp;
        try {
            fm = interval_eval(f, {{var, Interval(mid)}});
            fp = interval_eval(f, {{var, piece}});
        } catch (const DomainError& e) {
            throw DomainError(std::string("enclosure_quadrature: not integrable on the domain: ") + e.what());
        }
        if (!std::isfinite(fp.lo) || !std::isfinite(fp.hi))
            throw DomainError("enclosure_quadrature: unbounded integrand on the domain");
        const Interval remainder = fp - fm;
        total = total + width * (fm + remainder);
    }
    return total;
}

/// JSON record of a certified result.
inline nlohmann::json certified_json(const Expr& f, const Interval& domain, const Interval& enclosure) {
    return {{"expression", to_string(f)},
            {"hash", expr_hash(f)},
            {"domain", {domain.lo, domain.hi}},
            {"enclosure", {enclosure.lo, enclosure.hi}},
            {"nodes", node_count(f)}};
}

/// η∘(t) = t³(2 − t)³ e^{−(t−1)²/2} as an expression in `t`.
inline Expr eta_circ_expr(const std::string& var = "t") {
    const Expr t = variable(var);
    return pow(t, 3) * pow(Expr(2.0) - t, 3) * exp(-(pow(t - Expr(1.0), 2) / Expr(2.0)));
}

}  // namespace goldbach_lab::rigor

#include "copson/profile.hpp"

#include <algorithm>
#include <cmath>

#include "copson/errors.hpp"
#include "copson/quadrature.hpp"

namespace copson {

namespace {

constexpr int kNodes = quad::GaussRule::n;

// Log-linear interpolation between two nonnegative values.
double interpolate(double a, double b, double xi) {
    if (is_inf(a) || is_inf(b)) return kInf;
    if (a > 0.0 && b > 0.0) return std::exp((1.0 - xi) * std::log(a) + xi * std::log(b));
    return (1.0 - xi) * a + xi * b;
}

bool near(double a, double b) { return std::abs(a - b) <= kExponentSlack; }

// Sign of the log-log slope of g between two points, or 0 when undecidable.
double log_slope(double g0, double g1, double x0, double x1) {
    if (!(g0 > 0.0) || !(g1 > 0.0) || is_inf(g0) || is_inf(g1)) return 0.0;
    return std::log(g1 / g0) / std::log(x1 / x0);
}

}  // namespace

Primitive::Primitive() : fn_([](double) { return 0.0; }), zero_(Growth::zero()), infinity_(Growth::zero()) {}

Primitive Primitive::of_weight(const WeightExpr& w, double tol) {
    Primitive P;
    if (w.is_zero()) return P;
    P.identically_zero_ = false;
    P.breaks_ = w.breakpoints();
    const Growth w0 = w.asymptotic(End::Zero);
    if (!integrable(w0, End::Zero)) {
        P.fn_ = [](double t) { return t > 0.0 ? kInf : 0.0; };
        P.zero_ = Growth::unknown();
        P.infinity_ = Growth::unknown();
        return P;
    }
    P.fn_ = [w, tol](double t) { return t > 0.0 ? w.integrate(0.0, t, tol) : 0.0; };
    P.zero_ = primitive_near_zero(w0);
    P.infinity_ = primitive_near_infinity(w.asymptotic(End::Infinity));
    return P;
}

Primitive Primitive::of_step(const StepFunction& g_star) {
    Primitive P;
    if (g_star.is_zero()) return P;
    if (!g_star.is_canonical()) throw InvalidArgument("primitive of a step function needs g*");
    P.identically_zero_ = false;
    P.breaks_ = g_star.knots();
    P.fn_ = [g_star](double t) { return is_inf(t) ? g_star.integral() : g_star.integral_to(t); };
    P.zero_ = Growth::regular(1.0);
    P.infinity_ = Growth::constant();
    return P;
}

double Primitive::operator()(double t) const { return fn_(t); }

Profile::Profile(FundamentalFunction F, Primitive W, const GridOptions& grid, bool need_psi)
    : F_(std::move(F)), W_(std::move(W)), grid_(grid), need_psi_(need_psi) {
    if (grid.hi_exp <= grid.lo_exp || grid.points_per_octave < 1) {
        throw InvalidArgument("grid window must be nonempty with at least one point per octave");
    }
    const int count = (grid.hi_exp - grid.lo_exp) * grid.points_per_octave;
    std::vector<double> pts;
    pts.reserve(static_cast<std::size_t>(count) + 1);
    for (int k = 0; k <= count; ++k) {
        pts.push_back(std::exp2(grid.lo_exp + static_cast<double>(k) / grid.points_per_octave));
    }
    const double lo = pts.front();
    const double hi = pts.back();
    std::vector<double> extra = F_.u().breakpoints();
    extra.insert(extra.end(), F_.v().breakpoints().begin(), F_.v().breakpoints().end());
    extra.insert(extra.end(), W_.breakpoints().begin(), W_.breakpoints().end());
    for (double b : extra) {
        if (b > lo && b < hi) pts.push_back(b);
    }
    std::sort(pts.begin(), pts.end());
    for (double t : pts) {
        if (x_.empty() || t > x_.back() * (1.0 + 1e-9)) x_.push_back(t);
    }

    at_grid_.reserve(x_.size());
    for (double t : x_) at_grid_.push_back(sample(t));
    const quad::GaussRule& g = quad::gauss5();
    const std::size_t segments = x_.size() - 1;
    at_node_.reserve(segments * kNodes);
    node_w_.reserve(segments * kNodes);
    node_U_.reserve(segments * kNodes);
    seg_U_.reserve(segments);
    for (std::size_t i = 0; i < segments; ++i) {
        const double L = std::log(x_[i + 1] / x_[i]);
        for (int k = 0; k < kNodes; ++k) {
            const double y = x_[i] * std::exp(L * g.x[k]);
            at_node_.push_back(sample(y));
            node_w_.push_back(g.w[k] * y * L);
            node_U_.push_back(F_.U(x_[i], y));
        }
        seg_U_.push_back(F_.U(x_[i], x_[i + 1]));
    }
    phi_inf_ = F_.phi_p(kInf);
    W_inf_ = W_.total();
}

Sample Profile::sample(double t) const {
    Sample s;
    s.t = t;
    s.V = F_.V(t);
    s.W = W_(t);
    s.Phi = F_.phi_p(t);
    s.u = F_.u().eval(t);
    s.v = F_.v().eval(t);
    if (need_psi_ && s.u > 0.0) s.Psi = F_.psi(t);
    return s;
}

std::size_t Profile::segment_of(double t) const {
    if (t <= x_.front()) return 0;
    auto it = std::upper_bound(x_.begin(), x_.end(), t);
    const auto i = static_cast<std::size_t>(it - x_.begin()) - 1;
    return std::min(i, x_.size() - 2);
}

Growth Profile::V_growth(End end) const {
    const Growth v = v_growth(end);
    return end == End::Zero ? primitive_near_zero(v) : primitive_near_infinity(v);
}

Growth Profile::U_growth(End end) const {
    const Growth u = u_growth(end);
    return end == End::Zero ? primitive_near_zero(u) : primitive_near_infinity(u);
}

Growth Profile::U_local(End end) const {
    const Growth u = u_growth(end);
    if (u.is_zero()) return Growth::zero();
    if (!u.known() || u.rate != 0.0) return Growth::unknown();
    if (near(u.power, -1.0)) return Growth::regular(0.0, u.log);
    return Growth::regular(u.power + 1.0, u.log);
}

Field make_field(const Profile& P, std::function<double(const Sample&)> fn, Growth at_zero,
                 Growth at_infinity) {
    Field f;
    f.fn = std::move(fn);
    f.zero = at_zero;
    f.infinity = at_infinity;
    f.grid.reserve(P.grid().size());
    for (const Sample& s : P.grid()) f.grid.push_back(f.fn(s));
    f.nodes.reserve(P.nodes().size());
    for (const Sample& s : P.nodes()) f.nodes.push_back(f.fn(s));
    return f;
}

double tail_beyond(double anchor, double previous, double X, double X_previous, const Growth& cls,
                   bool& numeric) {
    if (cls.is_zero() || anchor == 0.0) return 0.0;
    if (is_inf(anchor)) return kInf;
    if (cls.known()) {
        if (!integrable(cls, End::Infinity)) return kInf;
        if (cls.rate < -kExponentSlack) return anchor / -cls.rate;
        if (near(cls.power, -1.0)) return anchor * X * std::log(X) / (-cls.log - 1.0);
        return anchor * X / (-cls.power - 1.0);
    }
    numeric = true;
    const double rho = log_slope(previous, anchor, X_previous, X);
    if (previous > 0.0 && rho < -1.0) return anchor * X / (-rho - 1.0);
    return kInf;
}

double head_below(double anchor, double next, double x, double x_next, const Growth& cls,
                  bool& numeric) {
    if (cls.is_zero() || anchor == 0.0) return 0.0;
    if (is_inf(anchor)) return kInf;
    if (cls.known()) {
        if (!integrable(cls, End::Zero)) return kInf;
        if (near(cls.power, -1.0)) return anchor * x * std::abs(std::log(x)) / (-cls.log - 1.0);
        return anchor * x / (cls.power + 1.0);
    }
    numeric = true;
    const double rho = log_slope(anchor, next, x, x_next);
    if (next > 0.0 && rho > -1.0) return anchor * x / (rho + 1.0);
    return kInf;
}

namespace {

Growth tail_class_beyond(const Profile& P, const Field& f, double c) {
    if (c == 0.0) return f.infinity;
    return mul(f.infinity, pow(P.U_growth(End::Infinity), c));
}

// Adds the nodes of segments first..last-1 and the part beyond the window.
// U0 = U(t, x_first).
double sweep(const Profile& P, const Field& f, double c, std::size_t first, double U0,
             const Growth& beyond, bool& numeric) {
    const std::size_t n = P.size();
    const auto& w = P.node_weights();
    const auto& nU = P.node_U();
    const auto& sU = P.segment_U();
    double sum = 0.0;
    double Ucum = U0;
    double U_prev = U0;
    for (std::size_t j = first; j + 1 < n; ++j) {
        for (int k = 0; k < kNodes; ++k) {
            const std::size_t idx = j * kNodes + static_cast<std::size_t>(k);
            const double fy = f.nodes[idx];
            if (fy == 0.0) continue;
            sum += w[idx] * (c == 0.0 ? fy : ext_mul(fy, ext_pow(Ucum + nU[idx], c)));
        }
        U_prev = Ucum;
        Ucum += sU[j];
    }
    const double X = P.x()[n - 1];
    const double Xp = P.x()[n - 2];
    const double anchor = c == 0.0 ? f.grid[n - 1] : ext_mul(f.grid[n - 1], ext_pow(Ucum, c));
    const double previous = c == 0.0 ? f.grid[n - 2] : ext_mul(f.grid[n - 2], ext_pow(U_prev, c));
    return sum + tail_beyond(anchor, previous, X, Xp, beyond, numeric);
}

}  // namespace

TailIntegral tail_integral(const Profile& P, const Field& f, double c) {
    TailIntegral T;
    const Growth beyond = tail_class_beyond(P, f, c);
    const std::size_t n = P.size();
    T.grid.resize(n);
    for (std::size_t i = 0; i + 1 < n; ++i) T.grid[i] = sweep(P, f, c, i, 0.0, beyond, T.numeric);
    // The last point has no nodes to its right.
    const std::size_t last = n - 1;
    if (c == 0.0) {
        T.grid[last] = tail_beyond(f.grid[last], f.grid[last - 1], P.x()[last], P.x()[last - 1],
                                   beyond, T.numeric);
    } else if (n >= 3 && T.grid[last - 1] > 0.0 && !is_inf(T.grid[last - 1])) {
        const double s =
            log_slope(T.grid[last - 2], T.grid[last - 1], P.x()[last - 2], P.x()[last - 1]);
        T.grid[last] = T.grid[last - 1] * std::pow(P.x()[last] / P.x()[last - 1], s);
    } else {
        T.grid[last] = T.grid[last - 1];
    }
    const Growth tail_f = tail_near_infinity(f.infinity);
    if (c == 0.0) {
        T.infinity = tail_f;
        T.zero = tail_near_zero(f.zero);
    } else {
        const Growth local =
            f.infinity.known() && f.infinity.rate < -kExponentSlack ? P.u_growth(End::Infinity) : P.U_local(End::Infinity);
        T.infinity = mul(tail_f, pow(local, c));
        T.zero = tail_near_zero(mul(f.zero, pow(P.U_growth(End::Zero), c)));
    }
    return T;
}

double tail_integral_at(const Profile& P, const Field& f, double c, double t) {
    const std::size_t i = P.segment_of(t);
    const double right = P.x()[i + 1];
    const FundamentalFunction& F = P.F();
    double partial = 0.0;
    if (right > t) {
        const quad::GaussRule& g = quad::gauss5();
        const double L = std::log(right / t);
        for (int k = 0; k < kNodes; ++k) {
            const double y = t * std::exp(L * g.x[k]);
            const double fy = f.fn(P.sample(y));
            if (fy == 0.0) continue;
            const double val = c == 0.0 ? fy : ext_mul(fy, ext_pow(F.U(t, y), c));
            partial += g.w[k] * y * L * val;
        }
    }
    bool numeric = false;
    const double U0 = c == 0.0 ? 0.0 : F.U(t, right);
    return partial + sweep(P, f, c, i + 1, U0, tail_class_beyond(P, f, c), numeric);
}

std::vector<double> forward_sup(const Profile& P, const std::vector<double>& S_grid, double a) {
    const std::size_t n = P.size();
    const auto& sU = P.segment_U();
    std::vector<double> G(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double U = 0.0;
        double best = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            U += sU[j - 1];
            if (S_grid[j] == 0.0) continue;
            best = std::max(best, ext_mul(ext_pow(U, a), S_grid[j]));
        }
        G[i] = best;
    }
    if (n >= 2) G[n - 1] = G[n - 2];
    return G;
}

Evaluated sup_on_grid(const Profile& P, const std::vector<double>& g_grid,
                      const std::function<double(double)>& at, Growth at_zero, Growth at_infinity) {
    Evaluated out;
    const Trend t0 = trend(at_zero, End::Zero);
    const Trend t1 = trend(at_infinity, End::Infinity);
    if (t0 == Trend::Diverges || t1 == Trend::Diverges) return {kInf, false};
    const std::vector<double>& x = P.x();
    const std::size_t n = x.size();
    if (t0 == Trend::Unknown) {
        out.numeric = true;
        if (log_slope(g_grid[0], g_grid[1], x[0], x[1]) < -0.01) return {kInf, true};
    }
    if (t1 == Trend::Unknown) {
        out.numeric = true;
        if (log_slope(g_grid[n - 2], g_grid[n - 1], x[n - 2], x[n - 1]) > 0.01) return {kInf, true};
    }
    std::size_t best = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (is_inf(g_grid[i])) return {kInf, out.numeric};
        if (g_grid[i] > g_grid[best]) best = i;
    }
    out.value = g_grid[best];
    if (!(out.value > 0.0) || !at) return out;
    // Golden-section search in log t around the grid argmax.
    double a = std::log(x[best == 0 ? 0 : best - 1]);
    double b = std::log(x[std::min(best + 1, n - 1)]);
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - ratio * (b - a);
    double d = a + ratio * (b - a);
    double fc = at(std::exp(c));
    double fd = at(std::exp(d));
    for (int iter = 0; iter < 40; ++iter) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = at(std::exp(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = at(std::exp(d));
        }
    }
    out.value = std::max({out.value, fc, fd});
    return out;
}

Evaluated outer_integral(const Profile& P, const std::vector<double>& G_grid, double e,
                         Growth G_zero, Growth G_infinity) {
    Evaluated out;
    const Growth c0 = mul(P.v_growth(End::Zero), pow(G_zero, e));
    const Growth c1 = mul(P.v_growth(End::Infinity), pow(G_infinity, e));
    if (c0.known() && !integrable(c0, End::Zero)) return {kInf, false};
    if (c1.known() && !integrable(c1, End::Infinity)) return {kInf, false};
    const std::vector<double>& x = P.x();
    const std::size_t n = x.size();
    const quad::GaussRule& g = quad::gauss5();
    const auto& nodes = P.nodes();
    const auto& w = P.node_weights();
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (int k = 0; k < kNodes; ++k) {
            const std::size_t idx = i * kNodes + static_cast<std::size_t>(k);
            const double v = nodes[idx].v;
            if (v == 0.0) continue;
            const double G = interpolate(G_grid[i], G_grid[i + 1], g.x[k]);
            sum += w[idx] * ext_mul(v, ext_pow(G, e));
        }
        if (is_inf(sum)) return {kInf, out.numeric};
    }
    auto integrand = [&](std::size_t i) { return ext_mul(P.grid()[i].v, ext_pow(G_grid[i], e)); };
    sum += head_below(integrand(0), integrand(1), x[0], x[1], c0, out.numeric);
    sum += tail_beyond(integrand(n - 1), integrand(n - 2), x[n - 1], x[n - 2], c1, out.numeric);
    out.value = sum;
    return out;
}

}  // namespace copson

#include "copson/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "copson/errors.hpp"
#include "copson/extended.hpp"
#include "copson/fundamental.hpp"
#include "copson/quadrature.hpp"

namespace copson {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t candidate_seed(std::uint64_t seed, int index) {
    return splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(index));
}

void check_step(const StepFunction& f) {
    if (!f.is_canonical()) throw InvalidArgument("test function must be nonnegative and nonincreasing");
}

// Runs body(i) for i in [0, n) on all hardware threads.
template <class Body>
void parallel_for(int n, Body body) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const int workers = static_cast<int>(std::min<unsigned>(hw, static_cast<unsigned>(std::max(n, 1))));
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int k = 0; k < workers; ++k) {
        pool.emplace_back([&] {
            for (int i = next++; i < n; i = next++) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

struct Candidate {
    std::vector<double> knots;
    std::vector<double> values;
};

Candidate random_candidate(std::mt19937_64& rng, int knot_count, const GridOptions& grid) {
    std::uniform_int_distribution<int> count(1, knot_count);
    std::uniform_real_distribution<double> expo(grid.lo_exp, grid.hi_exp);
    std::exponential_distribution<double> level(1.0);
    const int n = count(rng);
    Candidate c;
    for (int i = 0; i < n; ++i) c.knots.push_back(std::exp2(expo(rng)));
    std::sort(c.knots.begin(), c.knots.end());
    c.knots.erase(std::unique(c.knots.begin(), c.knots.end()), c.knots.end());
    for (std::size_t i = 0; i < c.knots.size(); ++i) c.values.push_back(level(rng));
    std::sort(c.values.begin(), c.values.end(), std::greater<>());
    for (double& x : c.values) x = std::max(x, 1e-300);
    return c;
}

struct Problem {
    const WeightExpr& u;
    const WeightExpr& v;
    const WeightExpr& w;
    double m, p, q, tol;

    // ratio, or nan when the CL norm vanishes.
    double ratio(const Candidate& c) const {
        const StepFunction f(c.knots, c.values);
        const double den = cl_norm(u, v, m, p, f, tol);
        if (den == 0.0) return std::nan("");
        const double num = lambda_norm(w, q, f, tol);
        return ext_div(num, den);
    }
};

struct Outcome {
    double ratio = 0.0;
    Candidate best;
    bool degenerate = false;
};

Outcome refine(const Problem& pr, Candidate c, int local_steps) {
    Outcome out;
    double best = pr.ratio(c);
    if (std::isnan(best)) {
        out.degenerate = true;
        return out;
    }
    const std::size_t n = c.knots.size();
    for (int s = 0; s < local_steps && !is_inf(best); ++s) {
        const double delta = std::max(0.01, 0.5 * std::pow(0.94, s));
        const std::size_t coord = static_cast<std::size_t>(s) % (2 * n);
        const bool is_value = coord < n;
        const std::size_t i = is_value ? coord : coord - n;
        std::vector<double>& x = is_value ? c.values : c.knots;
        const double old = x[i];
        double best_move = old;
        for (double dir : {1.0, -1.0}) {
            double trial = old * std::exp(dir * delta);
            if (is_value) {
                // Keep the values nonincreasing.
                if (i > 0) trial = std::min(trial, c.values[i - 1]);
                if (i + 1 < n) trial = std::max(trial, c.values[i + 1]);
            } else {
                if ((i > 0 && !(trial > c.knots[i - 1])) || (i + 1 < n && !(trial < c.knots[i + 1]))) {
                    continue;
                }
            }
            if (trial == old) continue;
            x[i] = trial;
            const double r = pr.ratio(c);
            if (!std::isnan(r) && r > best) {
                best = r;
                best_move = trial;
            }
            x[i] = old;
        }
        x[i] = best_move;
    }
    out.ratio = best;
    out.best = std::move(c);
    return out;
}

}  // namespace

double lambda_norm(const WeightExpr& w, double q, const StepFunction& f, double tol) {
    check_step(f);
    double sum = 0.0;
    for (std::size_t i = 0; i < f.pieces(); ++i) {
        const double c = f.values()[i];
        if (c == 0.0) continue;
        double mass;
        try {
            mass = w.integrate(f.left(i), f.right(i), tol);
        } catch (const NonIntegrableNearZero&) {
            return kInf;
        }
        sum += ext_mul(ext_pow(c, q), mass);
    }
    return ext_pow(sum, 1.0 / q);
}

double cl_norm(const WeightExpr& u, const WeightExpr& v, double m, double p, const StepFunction& f,
               double tol) {
    check_step(f);
    if (f.is_zero()) return 0.0;
    const double a = p / m;
    const std::size_t n = f.pieces();
    // tail[i] = int_{right(i)}^inf u f^m.
    std::vector<double> tail(n + 1, 0.0);
    for (std::size_t i = n - 1; i-- > 0;) {
        const double c = f.values()[i + 1];
        tail[i] = tail[i + 1];
        if (c > 0.0) tail[i] += ext_mul(ext_pow(c, m), u.integrate(f.left(i + 1), f.right(i + 1), tol / 10));
    }
    std::vector<double> breaks = u.breakpoints();
    breaks.insert(breaks.end(), v.breakpoints().begin(), v.breakpoints().end());
    std::sort(breaks.begin(), breaks.end());
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double cm = ext_pow(f.values()[i], m);
        const double lo = f.left(i);
        const double hi = f.right(i);
        std::vector<double> cuts{lo};
        for (double b : breaks) {
            if (b > lo && b < hi) cuts.push_back(b);
        }
        cuts.push_back(hi);
        // Walk right to left so that U(beta, hi) is accumulated.
        double U_right = 0.0;
        for (std::size_t j = cuts.size() - 1; j-- > 0;) {
            const double alpha = cuts[j];
            const double beta = cuts[j + 1];
            const double base = ext_mul(cm, U_right) + tail[i];
            auto f_abs = [&](double t) {
                const double vt = v.eval(t);
                if (vt == 0.0) return 0.0;
                return ext_mul(vt, ext_pow(ext_mul(cm, u.integrate(t, beta, tol / 10)) + base, a));
            };
            auto f_near = [&](double d) {
                const double vt = v.eval(beta - d);
                if (vt == 0.0) return 0.0;
                return ext_mul(vt, ext_pow(ext_mul(cm, u.integrate_back(beta, d, tol / 10)) + base, a));
            };
            total += quad::with_right_distance(f_abs, f_near, alpha, beta, tol);
            if (is_inf(total)) return kInf;
            U_right += u.integrate(alpha, beta, tol / 10);
        }
    }
    return ext_pow(total, 1.0 / p);
}

EmpiricalResult empirical_embedding_constant(const WeightExpr& u, const WeightExpr& v,
                                             const WeightExpr& w, double m, double p, double q,
                                             const OptimizerBudget& budget, const GridOptions& grid) {
    if (budget.candidates < 1 || budget.local_steps < 0 || budget.knot_count < 1) {
        throw InvalidArgument("optimizer budget must be positive");
    }
    if (!(q > 0.0)) throw InvalidArgument("q must be positive");
    FundamentalFunction(u, v, m, p, grid.tol).require_admissible();
    EmpiricalResult res;
    if (w.is_zero()) {
        res.best_f = StepFunction({1.0}, {1.0});
        return res;
    }
    const Problem pr{u, v, w, m, p, q, grid.tol};
    std::vector<Outcome> outcomes(static_cast<std::size_t>(budget.candidates));
    parallel_for(budget.candidates, [&](int idx) {
        std::mt19937_64 rng(candidate_seed(budget.seed, idx));
        const Candidate c = random_candidate(rng, budget.knot_count, grid);
        outcomes[static_cast<std::size_t>(idx)] = refine(pr, c, budget.local_steps);
    });
    bool found = false;
    for (const Outcome& o : outcomes) {
        if (o.degenerate) {
            ++res.degenerate;
            continue;
        }
        ++res.evaluated;
        if (!found || o.ratio > res.C_emp) {
            found = true;
            res.C_emp = o.ratio;
            res.best_f = StepFunction(o.best.knots, o.best.values);
        }
    }
    return res;
}

RescaleReport rescale_equivalence_check(const WeightExpr& u, const WeightExpr& v,
                                        const WeightExpr& w, double m, double p, double q,
                                        const OptimizerBudget& budget, const GridOptions& grid) {
    RescaleReport r;
    r.C_emp = empirical_embedding_constant(u, v, w, m, p, q, budget, grid).C_emp;
    r.C_rescaled = m == 1.0 ? r.C_emp
                            : empirical_embedding_constant(u, v, w, 1.0, p / m, q / m, budget, grid).C_emp;
    r.predicted = ext_pow(r.C_rescaled, 1.0 / m);
    if (r.C_emp == r.predicted) {
        r.relative_gap = 0.0;
    } else if (r.C_emp > 0.0 && !is_inf(r.C_emp) && !is_inf(r.predicted)) {
        r.relative_gap = std::abs(r.C_emp - r.predicted) / r.C_emp;
    } else {
        r.relative_gap = kInf;
    }
    return r;
}

DivergenceProbe divergence_probe(const WeightExpr& u, const WeightExpr& v, const WeightExpr& w,
                                 double m, double p, double q, const OptimizerBudget& budget,
                                 const std::vector<int>& half_widths, double growth_factor,
                                 double tol) {
    if (half_widths.size() < 2) throw InvalidArgument("divergence probe needs at least two windows");
    DivergenceProbe out;
    out.half_widths = half_widths;
    for (int h : half_widths) {
        GridOptions g;
        g.lo_exp = -h;
        g.hi_exp = h;
        g.tol = tol;
        out.C_emp.push_back(empirical_embedding_constant(u, v, w, m, p, q, budget, g).C_emp);
    }
    bool monotone = true;
    for (std::size_t i = 1; i < out.C_emp.size(); ++i) {
        if (out.C_emp[i] < out.C_emp[i - 1]) monotone = false;
    }
    const double first = out.C_emp.front();
    const double last = out.C_emp.back();
    out.grows = monotone && (is_inf(last) || last >= growth_factor * first);
    return out;
}

}  // namespace copson

#include "copson/step_function.hpp"

#include <algorithm>
#include <cmath>

#include "copson/errors.hpp"
#include "lexer.hpp"

namespace copson {

StepFunction::StepFunction(std::vector<double> knots, std::vector<double> values)
    : knots_(std::move(knots)), values_(std::move(values)) {
    if (knots_.size() != values_.size()) {
        throw InvalidArgument("step function needs as many values as knots");
    }
    double prev = 0.0;
    double acc = 0.0;
    cumulative_.reserve(knots_.size());
    for (std::size_t i = 0; i < knots_.size(); ++i) {
        if (!(knots_[i] > prev) || !std::isfinite(knots_[i])) {
            throw InvalidArgument("step knots must be positive, finite and increasing");
        }
        if (!std::isfinite(values_[i])) throw InvalidArgument("step values must be finite");
        acc += values_[i] * (knots_[i] - prev);
        cumulative_.push_back(acc);
        prev = knots_[i];
    }
}

StepFunction StepFunction::parse(std::string_view text) {
    detail::Lexer lx(text);
    const std::size_t at = lx.position();
    if (lx.identifier() != "step") lx.fail("expected 'step'");
    lx.expect('(');
    auto knots = lx.list();
    lx.expect(',');
    auto values = lx.list();
    lx.expect(')');
    if (!lx.at_end()) lx.fail("trailing characters after step literal");
    try {
        return StepFunction(std::move(knots), std::move(values));
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what(), at);
    }
}

std::string StepFunction::to_string() const {
    auto list = [](const std::vector<double>& xs) {
        std::string s = "[";
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (i) s += ",";
            s += format_number(xs[i]);
        }
        return s + "]";
    };
    return "step(" + list(knots_) + "," + list(values_) + ")";
}

double StepFunction::eval(double t) const {
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    if (it == knots_.end()) return 0.0;
    return values_[static_cast<std::size_t>(it - knots_.begin())];
}

bool StepFunction::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

bool StepFunction::is_canonical() const {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i] < 0.0) return false;
        if (i > 0 && values_[i] > values_[i - 1]) return false;
    }
    return true;
}

double StepFunction::integral_to(double t) const {
    if (!(t > 0.0)) return 0.0;
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    const auto i = static_cast<std::size_t>(it - knots_.begin());
    if (i == knots_.size()) return cumulative_.empty() ? 0.0 : cumulative_.back();
    const double before = i == 0 ? 0.0 : cumulative_[i - 1];
    return before + values_[i] * (t - left(i));
}

double StepFunction::integral() const { return cumulative_.empty() ? 0.0 : cumulative_.back(); }

double StepFunction::integral_from(double t) const {
    if (!(t > 0.0)) return integral();
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    auto i = static_cast<std::size_t>(it - knots_.begin());
    if (i == knots_.size()) return 0.0;
    double s = values_[i] * (knots_[i] - t);
    for (++i; i < knots_.size(); ++i) s += values_[i] * (knots_[i] - knots_[i - 1]);
    return s;
}

double StepFunction::support_end() const {
    for (std::size_t i = knots_.size(); i-- > 0;) {
        if (values_[i] != 0.0) return knots_[i];
    }
    return 0.0;
}

StepFunction StepFunction::scaled(double factor) const {
    std::vector<double> v = values_;
    for (double& x : v) x *= factor;
    return StepFunction(knots_, std::move(v));
}

WeightExpr StepFunction::as_weight() const {
    std::vector<double> v = values_;
    v.push_back(0.0);
    return WeightExpr::piecewise_constant(knots_, std::move(v));
}

StepFunction rearrange(const StepFunction& g) {
    struct Piece {
        double length;
        double value;
    };
    if (g.is_canonical()) {
        // Keep the original knots so the output is bit-identical.
        std::vector<double> knots;
        std::vector<double> values;
        for (std::size_t i = 0; i < g.pieces(); ++i) {
            const double v = g.values()[i];
            if (v == 0.0) break;
            if (!values.empty() && values.back() == v) {
                knots.back() = g.right(i);
            } else {
                knots.push_back(g.right(i));
                values.push_back(v);
            }
        }
        return StepFunction(std::move(knots), std::move(values));
    }
    std::vector<Piece> pieces;
    for (std::size_t i = 0; i < g.pieces(); ++i) {
        const double v = std::abs(g.values()[i]);
        if (v > 0.0) pieces.push_back({g.right(i) - g.left(i), v});
    }
    std::stable_sort(pieces.begin(), pieces.end(),
                     [](const Piece& a, const Piece& b) { return a.value > b.value; });
    std::vector<double> knots;
    std::vector<double> values;
    double at = 0.0;
    for (const Piece& p : pieces) {
        at += p.length;
        if (!values.empty() && values.back() == p.value) {
            knots.back() = at;
        } else {
            knots.push_back(at);
            values.push_back(p.value);
        }
    }
    return StepFunction(std::move(knots), std::move(values));
}

double running_average(const StepFunction& g_star, double t) {
    if (!(t > 0.0)) throw InvalidArgument("running_average needs t > 0");
    return g_star.integral_to(t) / t;
}

}  // namespace copson

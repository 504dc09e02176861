#include "copson/discrete_lemmas.hpp"

#include <algorithm>
#include <cmath>

#include "copson/errors.hpp"
#include "copson/extended.hpp"

namespace copson {

namespace {

bool is_p20(LemmaVariant v) {
    return v == LemmaVariant::P20Sum || v == LemmaVariant::P20SupInner || v == LemmaVariant::P20SupSup;
}

bool is_supsup(LemmaVariant v) { return v == LemmaVariant::P20SupSup || v == LemmaVariant::P21SupSup; }

bool is_sup_inner(LemmaVariant v) {
    return v == LemmaVariant::P20SupInner || v == LemmaVariant::P21SupInner;
}

}  // namespace

LemmaVariant parse_variant(std::string_view name) {
    if (name == "P20sum") return LemmaVariant::P20Sum;
    if (name == "P20sup-inner") return LemmaVariant::P20SupInner;
    if (name == "P20supsup") return LemmaVariant::P20SupSup;
    if (name == "P21sum") return LemmaVariant::P21Sum;
    if (name == "P21sup-inner") return LemmaVariant::P21SupInner;
    if (name == "P21supsup") return LemmaVariant::P21SupSup;
    throw InvalidArgument("unknown lemma variant '" + std::string(name) + "'");
}

std::string to_string(LemmaVariant v) {
    switch (v) {
        case LemmaVariant::P20Sum: return "P20sum";
        case LemmaVariant::P20SupInner: return "P20sup-inner";
        case LemmaVariant::P20SupSup: return "P20supsup";
        case LemmaVariant::P21Sum: return "P21sum";
        case LemmaVariant::P21SupInner: return "P21sup-inner";
        case LemmaVariant::P21SupSup: return "P21supsup";
    }
    return "?";
}

double geometric_ratio(const std::vector<double>& b, LemmaVariant variant) {
    if (b.size() < 2) throw NotGeometric("need at least two terms");
    double D = kInf;
    for (std::size_t k = 0; k + 1 < b.size(); ++k) {
        if (b[k] < 0.0 || b[k + 1] < 0.0) throw NotGeometric("b must be nonnegative");
        const double small = is_p20(variant) ? b[k] : b[k + 1];
        const double large = is_p20(variant) ? b[k + 1] : b[k];
        if (small == 0.0) continue;
        D = std::min(D, large / small);
    }
    if (!(D > 1.0)) throw NotGeometric("growth ratio " + std::to_string(D) + " is not above 1");
    return D;
}

double discrete_lemma_constant(const std::vector<double>& b, const std::vector<double>& c,
                               double alpha, LemmaVariant variant) {
    if (b.size() != c.size()) throw InvalidArgument("b and c must have the same length");
    if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
    for (double x : c) {
        if (x < 0.0) throw InvalidArgument("c must be nonnegative");
    }
    geometric_ratio(b, variant);
    const std::size_t n = b.size();
    // inner[k]: sum or sup of c over m >= k (P20) or m <= k (P21).
    std::vector<double> inner(n);
    const bool sup = is_sup_inner(variant);
    auto fold = [sup](double acc, double x) { return sup ? std::max(acc, x) : acc + x; };
    if (is_p20(variant)) {
        double acc = 0.0;
        for (std::size_t k = n; k-- > 0;) inner[k] = acc = fold(acc, c[k]);
    } else {
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) inner[k] = acc = fold(acc, c[k]);
    }
    double lhs = 0.0;
    double rhs = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double l = ext_mul(ext_pow(inner[k], alpha), b[k]);
        const double r = ext_mul(ext_pow(c[k], alpha), b[k]);
        if (is_supsup(variant)) {
            lhs = std::max(lhs, l);
            rhs = std::max(rhs, r);
        } else {
            lhs += l;
            rhs += r;
        }
    }
    if (lhs == 0.0) return 0.0;
    return ext_div(lhs, rhs);
}

double discrete_lemma_bound(double alpha, double D, LemmaVariant variant) {
    if (!(D > 1.0)) throw NotGeometric("D must exceed 1");
    if (is_supsup(variant)) return std::pow(1.0 - std::pow(D, -1.0 / alpha), -alpha);
    if (is_sup_inner(variant) || alpha <= 1.0) return D / (D - 1.0);
    // Hoelder with the split b_m^{1/2} b_m^{-1/2}, then two geometric series.
    const double head = std::pow(1.0 - std::pow(D, -1.0 / (2.0 * (alpha - 1.0))), 1.0 - alpha);
    return head / (1.0 - std::pow(D, -0.5));
}

std::vector<double> holder_saturator(const std::vector<double>& b, double p, double q) {
    if (!(q > 0.0) || !(p > q)) throw InvalidArgument("need 0 < q < p");
    const double s = p / (p - q);
    double total = 0.0;
    for (double x : b) {
        if (x < 0.0) throw InvalidArgument("b must be nonnegative");
        total += std::pow(x, s);
    }
    if (!(total > 0.0)) throw DegenerateB("all b_k vanish");
    if (!std::isfinite(total)) throw InvalidArgument("sum of b^{p/(p-q)} is not finite");
    const double norm = std::pow(total, 1.0 / p);
    std::vector<double> c;
    c.reserve(b.size());
    for (double x : b) c.push_back(std::pow(x, 1.0 / (p - q)) / norm);
    return c;
}

}  // namespace copson

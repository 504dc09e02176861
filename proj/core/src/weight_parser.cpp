#include <charconv>
#include <cmath>
#include <limits>

#include "copson/weights.hpp"
#include "lexer.hpp"

namespace copson {

namespace detail {

std::string Lexer::identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
}

double Lexer::atom() {
    skip_space();
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
        negative = text_[pos_] == '-';
        ++pos_;
    }
    if (text_.substr(pos_, 3) == "inf") {
        pos_ += 3;
        const double inf = std::numeric_limits<double>::infinity();
        return negative ? -inf : inf;
    }
    double value = 0.0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr == first) fail("expected number");
    pos_ += static_cast<std::size_t>(res.ptr - first);
    return negative ? -value : value;
}

double Lexer::number() {
    double x = atom();
    if (accept('/')) {
        const double d = atom();
        if (d == 0.0) fail("division by zero in number");
        x /= d;
    }
    return x;
}

std::vector<double> Lexer::list() {
    expect('[');
    std::vector<double> out;
    if (accept(']')) return out;
    do {
        out.push_back(number());
    } while (accept(','));
    expect(']');
    return out;
}

}  // namespace detail

namespace {

WeightExpr parse_expr(detail::Lexer& lx) {
    const std::size_t at = lx.position();
    const std::string name = lx.identifier();
    lx.expect('(');
    auto checked = [&](auto make) {
        try {
            return make();
        } catch (const InvalidArgument& e) {
            throw ParseError(e.what(), at);
        }
    };
    WeightExpr out;
    if (name == "pow" || name == "exp") {
        const double c = lx.number();
        lx.expect(',');
        const double x = lx.number();
        out = checked([&] {
            return name == "pow" ? WeightExpr::power_law(c, x) : WeightExpr::exponential(c, x);
        });
    } else if (name == "sum") {
        std::vector<WeightExpr> children;
        do {
            children.push_back(parse_expr(lx));
        } while (lx.accept(','));
        out = WeightExpr::sum(std::move(children));
    } else if (name == "prod") {
        WeightExpr a = parse_expr(lx);
        lx.expect(',');
        WeightExpr b = parse_expr(lx);
        out = WeightExpr::product(a, b);
    } else if (name == "piecewise") {
        auto knots = lx.list();
        lx.expect(',');
        auto values = lx.list();
        out = checked([&] { return WeightExpr::piecewise_constant(knots, values); });
    } else if (name == "restrict") {
        WeightExpr child = parse_expr(lx);
        lx.expect(',');
        const double lo = lx.number();
        lx.expect(',');
        const double hi = lx.number();
        out = checked([&] { return WeightExpr::restrict(child, lo, hi); });
    } else {
        throw ParseError("unknown weight constructor '" + name + "'", at);
    }
    lx.expect(')');
    return out;
}

}  // namespace

WeightExpr WeightExpr::parse(std::string_view text) {
    detail::Lexer lx(text);
    WeightExpr w = parse_expr(lx);
    if (!lx.at_end()) lx.fail("trailing characters after weight expression");
    return w;
}

}  // namespace copson

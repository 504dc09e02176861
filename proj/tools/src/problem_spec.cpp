#include "copson_cli/problem_spec.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "copson/errors.hpp"
#include "copson/json_io.hpp"

namespace copson::cli {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

// Strips a comment that is not inside quotes.
std::string_view strip_comment(std::string_view line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

double to_real(const std::string& key, const std::string& value, std::size_t line) {
    try {
        std::size_t used = 0;
        const double x = std::stod(value, &used);
        if (used == value.size()) return x;
    } catch (const std::exception&) {
    }
    throw ParseError("line " + std::to_string(line) + ": '" + key + "' needs a number, got '" + value + "'", line);
}

int to_int(const std::string& key, const std::string& value, std::size_t line) {
    const double x = to_real(key, value, line);
    if (x != static_cast<double>(static_cast<long long>(x))) {
        throw ParseError("line " + std::to_string(line) + ": '" + key + "' needs an integer", line);
    }
    return static_cast<int>(x);
}

}  // namespace

ProblemSpec parse_problem(std::string_view text) {
    static const std::set<std::string> known{
        "u", "v", "w", "g", "m", "p", "q", "t", "depth", "lo_exp", "hi_exp", "points_per_octave",
        "tol", "candidates", "local_steps", "knot_count", "seed"};
    std::map<std::string, std::pair<std::string, std::size_t>> raw;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string body = trim(strip_comment(line));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ParseError("line " + std::to_string(number) + ": expected 'key = value'", number);
        }
        const std::string key = trim(std::string_view(body).substr(0, eq));
        std::string value = trim(std::string_view(body).substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        if (!known.count(key)) {
            throw ParseError("line " + std::to_string(number) + ": unknown key '" + key + "'", number);
        }
        if (raw.count(key)) {
            throw ParseError("line " + std::to_string(number) + ": '" + key + "' given twice", number);
        }
        raw[key] = {value, number};
    }

    ProblemSpec s;
    auto has = [&](const char* k) { return raw.count(k) > 0; };
    auto real = [&](const char* k) { return to_real(k, raw[k].first, raw[k].second); };
    auto integer = [&](const char* k) { return to_int(k, raw[k].first, raw[k].second); };
    auto weight = [&](const char* k, std::string& text, WeightExpr& out) {
        if (!has(k)) throw ParseError(std::string("missing weight '") + k + "'", 0);
        text = raw[k].first;
        try {
            out = WeightExpr::parse(text);
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(raw[k].second) + ": " + k + ": " + e.message(), e.position());
        }
    };
    weight("u", s.u_text, s.u);
    weight("v", s.v_text, s.v);
    if (has("w")) {
        weight("w", s.w_text, s.w);
    } else {
        s.w_text = s.w.to_string();
    }
    if (has("g")) {
        s.g_text = raw["g"].first;
        try {
            s.g = StepFunction::parse(*s.g_text);
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(raw["g"].second) + ": g: " + e.message(), e.position());
        }
    }
    if (has("m")) s.m = real("m");
    if (has("p")) s.p = real("p");
    if (has("q")) s.q = real("q");
    if (has("t")) s.t = real("t");
    if (has("depth")) s.depth = integer("depth");
    if (has("lo_exp")) s.grid.lo_exp = integer("lo_exp");
    if (has("hi_exp")) s.grid.hi_exp = integer("hi_exp");
    if (has("points_per_octave")) s.grid.points_per_octave = integer("points_per_octave");
    if (has("tol")) s.grid.tol = real("tol");
    if (has("candidates")) s.budget.candidates = integer("candidates");
    if (has("local_steps")) s.budget.local_steps = integer("local_steps");
    if (has("knot_count")) s.budget.knot_count = integer("knot_count");
    if (has("seed")) s.budget.seed = static_cast<std::uint64_t>(integer("seed"));

    if (!(s.m > 0.0) || !(s.p > 0.0) || (s.q && !(*s.q > 0.0))) {
        throw ParseError("m, p and q must be positive", 0);
    }
    if (!(s.t > 0.0)) throw ParseError("t must be positive", 0);
    if (s.depth < 1) throw ParseError("depth must be at least 1", 0);
    if (s.grid.hi_exp <= s.grid.lo_exp || s.grid.points_per_octave < 1 || !(s.grid.tol > 0.0)) {
        throw ParseError("grid window must be nonempty with positive density and tolerance", 0);
    }
    if (s.budget.candidates < 1 || s.budget.local_steps < 0 || s.budget.knot_count < 1) {
        throw ParseError("optimizer budget must be positive", 0);
    }
    return s;
}

ProblemSpec load_problem(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open problem file '" + path + "'", 0);
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_problem(buf.str());
}

nlohmann::json ProblemSpec::to_json() const {
    nlohmann::json j{{"u", u_text},
                     {"v", v_text},
                     {"w", w_text},
                     {"m", m},
                     {"p", p},
                     {"q", q ? nlohmann::json(*q) : nlohmann::json(nullptr)},
                     {"g", g_text ? nlohmann::json(*g_text) : nlohmann::json(nullptr)},
                     {"t", t},
                     {"depth", depth},
                     {"grid", copson::to_json(grid)},
                     {"budget", copson::to_json(budget)}};
    return j;
}

}  // namespace copson::cli

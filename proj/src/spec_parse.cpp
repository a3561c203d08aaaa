#include "cim/spec_parse.hpp"

#include "cim/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <vector>

namespace cim {

namespace {

struct Field {
    std::string key;
    std::string value;
    int key_column;    // 1-based
    int value_column;  // 1-based
};

[[noreturn]] void fail(std::string_view what, std::string_view spec, const std::string& field, std::string_view token,
                       int column) {
    std::string msg = std::string(what) + " at column " + std::to_string(column) + " in '" + std::string(spec) + "'";
    throw ParseError(msg, field, std::string(token), column);
}

// Splits `key=value,key=value` starting at `offset` (0-based) within `spec`.
std::vector<Field> split_fields(std::string_view spec, std::size_t offset) {
    std::vector<Field> out;
    std::size_t pos = offset;
    while (pos <= spec.size()) {
        const std::size_t comma = std::min(spec.find(',', pos), spec.size());
        const std::string_view item = spec.substr(pos, comma - pos);
        const int column = static_cast<int>(pos) + 1;
        const std::size_t eq = item.find('=');
        if (item.empty()) {
            fail("empty parameter", spec, "", item, column);
        }
        if (eq == std::string_view::npos || eq == 0) {
            fail("expected key=value", spec, "", item, column);
        }
        Field f{std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)), column,
                column + static_cast<int>(eq) + 1};
        for (const auto& seen : out) {
            if (seen.key == f.key) {
                fail("duplicate parameter '" + f.key + "'", spec, f.key, f.key, column);
            }
        }
        out.push_back(std::move(f));
        if (comma == spec.size()) {
            break;
        }
        pos = comma + 1;
    }
    return out;
}

double parse_real(std::string_view spec, const Field& f) {
    double v = 0.0;
    const char* first = f.value.data();
    const char* last = first + f.value.size();
    if (!f.value.empty() && *first == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (f.value.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
        fail("expected a real number for '" + f.key + "'", spec, f.key, f.value, f.value_column);
    }
    return v;
}

int parse_int(std::string_view spec, const Field& f) {
    int v = 0;
    const char* first = f.value.data();
    const char* last = first + f.value.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (f.value.empty() || ec != std::errc() || ptr != last) {
        fail("expected an integer for '" + f.key + "'", spec, f.key, f.value, f.value_column);
    }
    return v;
}

// Checks that `fields` has exactly the keys in `required` plus any in `optional`.
std::map<std::string, const Field*> bind(std::string_view spec, const std::vector<Field>& fields,
                                         std::initializer_list<std::string_view> required,
                                         std::initializer_list<std::string_view> optional = {}) {
    std::map<std::string, const Field*> bound;
    for (const auto& f : fields) {
        const bool known = std::find(required.begin(), required.end(), f.key) != required.end() ||
                           std::find(optional.begin(), optional.end(), f.key) != optional.end();
        if (!known) {
            fail("unknown parameter '" + f.key + "'", spec, f.key, f.key, f.key_column);
        }
        bound[f.key] = &f;
    }
    for (auto key : required) {
        if (!bound.contains(std::string(key))) {
            fail("missing parameter '" + std::string(key) + "'", spec, std::string(key), "",
                 static_cast<int>(spec.size()) + 1);
        }
    }
    return bound;
}

}  // namespace

std::string format_number(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

MarginalFamily parse_marginal(std::string_view spec) {
    const std::size_t colon = spec.find(':');
    const std::string_view family = spec.substr(0, colon);
    std::vector<Field> fields;
    if (colon != std::string_view::npos) {
        fields = split_fields(spec, colon + 1);
    }

    if (family == "exponential") {
        auto b = bind(spec, fields, {"theta"});
        return MarginalFamily(Exponential{parse_real(spec, *b["theta"])});
    }
    if (family == "logistic") {
        bind(spec, fields, {});
        return MarginalFamily(Logistic{});
    }
    if (family == "rayleigh") {
        auto b = bind(spec, fields, {"sigma"});
        return MarginalFamily(Rayleigh{parse_real(spec, *b["sigma"])});
    }
    if (family == "genexp") {
        auto b = bind(spec, fields, {"theta", "lambda"});
        return MarginalFamily(GeneralizedExponential{parse_real(spec, *b["theta"]), parse_real(spec, *b["lambda"])});
    }
    if (family == "uniform") {
        auto b = bind(spec, fields, {"theta"});
        return MarginalFamily(Uniform{parse_real(spec, *b["theta"])});
    }
    if (family == "invweibull") {
        auto b = bind(spec, fields, {"theta", "beta"});
        return MarginalFamily(InverseWeibull{parse_real(spec, *b["theta"]), parse_real(spec, *b["beta"])});
    }
    fail("unknown marginal family '" + std::string(family) + "'", spec, "family", family, 1);
}

std::string format_marginal(const MarginalFamily& m) {
    const auto& p = m.params();
    if (const auto* e = std::get_if<Exponential>(&p)) {
        return "exponential:theta=" + format_number(e->theta);
    }
    if (std::holds_alternative<Logistic>(p)) {
        return "logistic";
    }
    if (const auto* r = std::get_if<Rayleigh>(&p)) {
        return "rayleigh:sigma=" + format_number(r->sigma);
    }
    if (const auto* g = std::get_if<GeneralizedExponential>(&p)) {
        return "genexp:theta=" + format_number(g->theta) + ",lambda=" + format_number(g->lambda);
    }
    if (const auto* u = std::get_if<Uniform>(&p)) {
        return "uniform:theta=" + format_number(u->theta);
    }
    const auto& w = std::get<InverseWeibull>(p);
    return "invweibull:theta=" + format_number(w.theta) + ",beta=" + format_number(w.beta);
}

GosParams parse_gos(std::string_view spec) {
    const std::size_t colon = spec.find(':');
    if (colon == std::string_view::npos) {
        const auto fields = split_fields(spec, 0);
        auto b = bind(spec, fields, {"r", "n", "m", "k"});
        return GosParams(parse_int(spec, *b["r"]), parse_int(spec, *b["n"]), parse_real(spec, *b["m"]),
                         parse_real(spec, *b["k"]));
    }
    const std::string_view kind = spec.substr(0, colon);
    const auto fields = split_fields(spec, colon + 1);
    if (kind == "os") {
        auto b = bind(spec, fields, {"r", "n"});
        return GosParams::order_statistic(parse_int(spec, *b["r"]), parse_int(spec, *b["n"]));
    }
    if (kind == "record") {
        auto b = bind(spec, fields, {"r"}, {"n"});
        const int r = parse_int(spec, *b["r"]);
        const int n = b.contains("n") ? parse_int(spec, *b["n"]) : r;
        return GosParams(r, n, -1.0, 1.0);
    }
    fail("unknown GOS shorthand '" + std::string(kind) + "'", spec, "kind", kind, 1);
}

std::string format_gos(const GosParams& p) {
    const std::string r = std::to_string(p.r());
    const std::string n = std::to_string(p.n());
    if (p.is_order_statistic()) {
        return "os:r=" + r + ",n=" + n;
    }
    if (p.is_record()) {
        return p.n() == p.r() ? "record:r=" + r : "record:r=" + r + ",n=" + n;
    }
    return "r=" + r + ",n=" + n + ",m=" + format_number(p.m()) + ",k=" + format_number(p.k());
}

}  // namespace cim

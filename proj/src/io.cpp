#include "qpgeom/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <regex>
#include <sstream>

namespace qpgeom {

ParseError::ParseError(std::string source, int line, std::string field, const std::string& message)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) +
                         (field.empty() ? std::string() : " [" + field + "]") + ": " + message),
      source_(std::move(source)),
      line_(line),
      field_(std::move(field)) {}

namespace {

int line_at(const std::string& text, std::size_t pos) {
    pos = std::min(pos, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
}

// Line of the `occurrence`-th quoted `key` at or after `from`; 0 if absent.
int line_of_key(const std::string& text, const std::string& key, std::size_t from = 0, int occurrence = 0) {
    const std::string token = "\"" + key + "\"";
    std::size_t pos = from;
    for (int k = 0; k <= occurrence; ++k) {
        pos = text.find(token, k == 0 ? pos : pos + 1);
        if (pos == std::string::npos) return 0;
    }
    return line_at(text, pos);
}

Json parse_json(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        throw ParseError(source, line_at(text, byte), "", "malformed JSON: " + std::string(e.what()));
    }
}

struct Context {
    const std::string& text;
    const std::string& source;
    double eps;

    Numeric value(const Json& v, const std::string& field, int line) const {
        try {
            return numeric_from_json(v, eps);
        } catch (const std::exception& e) {
            throw ParseError(source, line, field, e.what());
        }
    }
};

WalkSpec walk_from(const Json& obj, const Context& ctx, std::size_t offset) {
    if (!obj.is_object()) throw ParseError(ctx.source, line_at(ctx.text, offset), "walk", "expected an object");
    static const std::regex key_re(R"(p_(-?[01])_(-?[01])|h_(-?[01])|v_(-?[01]))");
    WalkSpec w;
    for (const auto& [key, val] : obj.items()) {
        const int line = line_of_key(ctx.text, key, offset);
        std::smatch m;
        if (!std::regex_match(key, m, key_re)) throw ParseError(ctx.source, line, key, "unknown key");
        const Numeric x = ctx.value(val, key, line);
        if (m[1].matched) {
            const int s = std::stoi(m[1]), t = std::stoi(m[2]);
            if (s == 0 && t == 0 && key != "p_0_0") throw ParseError(ctx.source, line, key, "unknown key");
            w.p(s, t) = x;
        } else if (m[3].matched) {
            w.h(std::stoi(m[3])) = x;
        } else {
            w.v(std::stoi(m[4])) = x;
        }
    }
    return w;
}

TermSet terms_from(const Json& list, const Context& ctx, std::size_t offset, const Tolerances& tol) {
    if (!list.is_array()) throw ParseError(ctx.source, line_at(ctx.text, offset), "terms", "expected a list");
    std::vector<GeometricTerm> raw;
    int index = 0;
    for (const auto& item : list) {
        const std::string path = "terms[" + std::to_string(index) + "]";
        if (!item.is_object()) throw ParseError(ctx.source, 0, path, "expected an object");
        auto field = [&](const char* name) {
            const int line = line_of_key(ctx.text, name, offset, index);
            if (!item.contains(name)) throw ParseError(ctx.source, line, path + "." + name, "missing");
            return ctx.value(item.at(name), path + "." + name, line);
        };
        GeometricTerm t{field("rho"), field("sigma"), field("alpha")};
        for (const auto& [key, val] : item.items())
            if (key != "rho" && key != "sigma" && key != "alpha")
                throw ParseError(ctx.source, line_of_key(ctx.text, key, offset), path + "." + key, "unknown key");
        raw.push_back(t);
        ++index;
    }
    try {
        return canonicalize(raw, tol);
    } catch (const std::exception& e) {
        throw ParseError(ctx.source, 0, "terms", e.what());
    }
}

std::size_t offset_of(const std::string& text, const char* key) {
    const auto pos = text.find(std::string("\"") + key + "\"");
    return pos == std::string::npos ? 0 : pos;
}

}  // namespace

Numeric numeric_from_json(const Json& value, double eps) {
    if (value.is_string()) return Numeric::parse(value.get<std::string>(), eps);
    if (value.is_number_integer()) return Numeric(value.get<long>());
    if (value.is_number()) return Numeric::approximate(value.get<double>(), eps);
    throw std::invalid_argument("expected a number or numeric string");
}

Json to_json(const Numeric& x) { return x.str(); }

Bundle parse_bundle(const std::string& text, const std::string& source, const Tolerances& tol) {
    const Json doc = parse_json(text, source);
    const Context ctx{text, source, tol.eps};
    Bundle b;
    if (doc.is_object() && doc.contains("walk")) {
        b.walk = walk_from(doc.at("walk"), ctx, offset_of(text, "walk"));
        if (doc.contains("terms")) b.terms = terms_from(doc.at("terms"), ctx, offset_of(text, "terms"), tol);
        if (doc.contains("provenance")) b.provenance = doc.at("provenance");
        for (const auto& [key, val] : doc.items())
            if (key != "walk" && key != "terms" && key != "provenance")
                throw ParseError(source, line_of_key(text, key), key, "unknown key");
    } else {
        b.walk = walk_from(doc, ctx, 0);
    }
    return b;
}

TermSet parse_terms(const std::string& text, const std::string& source, const Tolerances& tol) {
    const Json doc = parse_json(text, source);
    const Context ctx{text, source, tol.eps};
    if (doc.is_object()) {
        if (!doc.contains("terms")) throw ParseError(source, 1, "terms", "missing");
        return terms_from(doc.at("terms"), ctx, offset_of(text, "terms"), tol);
    }
    return terms_from(doc, ctx, 0, tol);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, 0, "", "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json to_json(const WalkSpec& w) {
    Json out = Json::object();
    for (int s = -1; s <= 1; ++s)
        for (int t = -1; t <= 1; ++t)
            if (!w.p(s, t).is_zero()) out["p_" + std::to_string(s) + "_" + std::to_string(t)] = to_json(w.p(s, t));
    for (int s = -1; s <= 1; ++s)
        if (!w.h(s).is_zero()) out["h_" + std::to_string(s)] = to_json(w.h(s));
    for (int t = -1; t <= 1; ++t)
        if (!w.v(t).is_zero()) out["v_" + std::to_string(t)] = to_json(w.v(t));
    return out;
}

Json to_json(const TermSet& g) {
    Json out = Json::array();
    for (const auto& t : g) out.push_back({{"rho", to_json(t.rho)}, {"sigma", to_json(t.sigma)}, {"alpha", to_json(t.alpha)}});
    return out;
}

Json to_json(const ValidationVerdict& v) {
    return {{"valid", v.valid()},
            {"stochastic", v.stochastic},
            {"row_sums", {to_json(v.row_sums[0]), to_json(v.row_sums[1]), to_json(v.row_sums[2])}},
            {"irreducible_on_truncation", v.irreducible},
            {"aperiodic_on_truncation", v.aperiodic},
            {"period", v.period},
            {"truncation_size", v.truncation_size}};
}

Json to_json(const ConditionReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"verdict", to_string(c.verdict)}, {"details", c.details}});
    Json out = {{"overall", to_string(r.overall)}, {"checks", checks}};
    if (!r.refuted_by.empty()) out["refuted_by"] = r.refuted_by;
    return out;
}

Json to_json(const InvariantCheck& c) {
    return {{"is_invariant_on_window", c.is_invariant_on_window},
            {"max_residual", to_json(c.max_residual)},
            {"residual_route", c.residual_route},
            {"functional_route", c.functional_route},
            {"routes_agree", c.routes_agree}};
}

Json to_json(const Chain& c) {
    Json points = Json::array();
    for (const auto& p : c.points) points.push_back({to_json(p.rho), to_json(p.sigma)});
    return {{"points", points}, {"stop_reason", to_string(c.stop)}, {"stop_detail", c.stop_detail}};
}

void write_pi_csv(std::ostream& os, const StationaryEstimate& est) {
    os << "i,j,pi\n";
    char buf[64];
    for (int i = 0; i <= est.N; ++i)
        for (int j = 0; j <= est.N; ++j) {
            std::snprintf(buf, sizeof buf, "%d,%d,%.17g\n", i, j, est.at(i, j));
            os << buf;
        }
}

void write_curve_csv(std::ostream& os, const std::vector<CurveSample>& samples) {
    os << "curve,rho,sigma\n";
    char buf[80];
    for (const auto& s : samples) {
        std::snprintf(buf, sizeof buf, "%c,%.17g,%.17g\n", s.curve, s.rho, s.sigma);
        os << buf;
    }
}

}  // namespace qpgeom

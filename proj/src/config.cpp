#include "slantsurf/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "slantsurf/error.hpp"

namespace slantsurf {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

Config Config::parse_string(const std::string& text, const std::string& origin) {
    Config cfg;
    cfg.origin_ = origin;
    std::istringstream is(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw Error(Errc::ParseError, origin + ":" + std::to_string(lineno) +
                                                  ":1: unterminated section header");
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty())
                throw Error(Errc::ParseError, origin + ":" + std::to_string(lineno) +
                                                  ":2: empty section name");
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(Errc::ParseError, origin + ":" + std::to_string(lineno) +
                                              ":1: expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw Error(Errc::ParseError, origin + ":" + std::to_string(lineno) +
                                              ":1: empty key");
        Value v;
        v.raw = trim(line.substr(eq + 1));
        v.line = lineno;
        v.col = static_cast<int>(eq) + 2;
        auto [it, inserted] = cfg.values_.insert({{section, key}, v});
        (void)it;
        if (!inserted)
            throw Error(Errc::ParseError, origin + ":" + std::to_string(lineno) + ":1: " +
                                              "duplicate key '" + key + "' in [" +
                                              section + "]");
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(Errc::ParseError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str(), path);
}

const Config::Value* Config::find(const std::string& section, const std::string& key) const {
    auto it = values_.find({section, key});
    return it == values_.end() ? nullptr : &it->second;
}

bool Config::has_section(const std::string& section) const {
    for (const auto& [sk, v] : values_) {
        (void)v;
        if (sk.first == section ||
            sk.first.rfind(section + ".", 0) == 0)
            return true;
    }
    return false;
}

void Config::fail_at(const Value& v, const std::string& what) const {
    throw Error(Errc::ParseError, origin_ + ":" + std::to_string(v.line) + ":" +
                                      std::to_string(v.col) + ": " + what);
}

void Config::fail(const std::string& what) const {
    throw Error(Errc::ParseError, origin_ + ": " + what);
}

double Config::number(const std::string& section, const std::string& key) const {
    const Value* v = find(section, key);
    if (!v) fail("missing key '" + key + "' in [" + section + "]");
    char* end = nullptr;
    const double d = std::strtod(v->raw.c_str(), &end);
    if (end == v->raw.c_str() || *end != '\0' || !std::isfinite(d))
        fail_at(*v, "expected a number, got '" + v->raw + "'");
    return d;
}

double Config::number_or(const std::string& section, const std::string& key,
                         double dflt) const {
    return find(section, key) ? number(section, key) : dflt;
}

int Config::integer_or(const std::string& section, const std::string& key, int dflt) const {
    const Value* v = find(section, key);
    if (!v) return dflt;
    const double d = number(section, key);
    if (d != std::floor(d)) fail_at(*v, "expected an integer");
    return static_cast<int>(d);
}

std::string Config::str(const std::string& section, const std::string& key) const {
    const Value* v = find(section, key);
    if (!v) fail("missing key '" + key + "' in [" + section + "]");
    return v->raw;
}

std::string Config::str_or(const std::string& section, const std::string& key,
                           const std::string& dflt) const {
    const Value* v = find(section, key);
    return v ? v->raw : dflt;
}

void Config::ensure_known(
    const std::vector<std::pair<std::string, std::string>>& allowed) const {
    for (const auto& [sk, v] : values_) {
        bool ok = false;
        for (const auto& a : allowed)
            if (a.first == sk.first && a.second == sk.second) {
                ok = true;
                break;
            }
        if (!ok)
            fail_at(v, "unknown key '" + sk.second + "' in [" + sk.first + "]");
    }
}

namespace {

Expr parse_component(const Config& cfg, const std::string& section, const std::string& key,
                     const std::string& var) {
    const Config::Value* v = cfg.find(section, key);
    if (!v) cfg.fail("missing key '" + key + "' in [" + section + "]");
    try {
        return Expr::parse(v->raw, var);
    } catch (const Error& e) {
        cfg.fail_at(*v, std::string("in expression: ") + e.what());
    }
}

CurveSpec load_curve(const Config& cfg, const std::string& section, const std::string& var,
                     double lo, double hi) {
    const std::string mode = cfg.str_or(section, "mode", "expr");
    if (mode == "expr") {
        return make_expr_curve(parse_component(cfg, section, "x1", var),
                               parse_component(cfg, section, "x2", var),
                               parse_component(cfg, section, "x3", var), lo, hi);
    }
    if (mode == "table") {
        const std::string path = cfg.str(section, "file");
        std::ifstream in(path);
        if (!in) cfg.fail("cannot open sample table '" + path + "'");
        std::vector<double> us;
        std::vector<LorentzVec3> ps;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const std::string t = trim(line);
            if (t.empty() || t[0] == '#') continue;
            std::istringstream ls(t);
            double u, x1, x2, x3;
            char comma;
            if (t.find(',') != std::string::npos) {
                if (!(ls >> u >> comma >> x1 >> comma >> x2 >> comma >> x3))
                    throw Error(Errc::ParseError, path + ":" + std::to_string(lineno) +
                                                      ":1: expected 'u, x1, x2, x3'");
            } else if (!(ls >> u >> x1 >> x2 >> x3)) {
                throw Error(Errc::ParseError, path + ":" + std::to_string(lineno) +
                                                  ":1: expected 'u x1 x2 x3'");
            }
            us.push_back(u);
            ps.push_back({x1, x2, x3});
        }
        return make_spline_curve(us, ps);
    }
    cfg.fail("mode must be 'expr' or 'table' in [" + section + "]");
}

}  // namespace

RuledSurfaceSpec load_surface(const Config& cfg) {
    cfg.ensure_known({{"surface.base", "mode"},
                      {"surface.base", "x1"},
                      {"surface.base", "x2"},
                      {"surface.base", "x3"},
                      {"surface.base", "file"},
                      {"surface.director", "mode"},
                      {"surface.director", "x1"},
                      {"surface.director", "x2"},
                      {"surface.director", "x3"},
                      {"surface.director", "file"},
                      {"domain", "u_min"},
                      {"domain", "u_max"},
                      {"domain", "samples"}});
    const double lo = cfg.number("domain", "u_min");
    const double hi = cfg.number("domain", "u_max");
    if (!(hi > lo)) cfg.fail("u_max must exceed u_min");
    RuledSurfaceSpec s;
    s.base = load_curve(cfg, "surface.base", "u", lo, hi);
    s.director = load_curve(cfg, "surface.director", "u", lo, hi);
    return s;
}

ProfileJob load_profile(const Config& cfg) {
    cfg.ensure_known({{"profile", "class"},
                      {"profile", "mode"},
                      {"profile", "file"},
                      {"profile", "k1"},
                      {"profile", "k2"},
                      {"profile", "s_min"},
                      {"profile", "s_max"},
                      {"profile", "step"},
                      {"mode", "kind"},
                      {"mode", "alpha"},
                      {"mode", "beta"},
                      {"mode", "gamma"}});

    ProfileJob job;
    const std::string cls = cfg.str("profile", "class");
    FrameClass fc;
    if (cls == "N_minus") fc = FrameClass::NMinus;
    else if (cls == "N_plus") fc = FrameClass::NPlus;
    else if (cls == "N_times") fc = FrameClass::NTimes;
    else cfg.fail("class must be N_minus, N_plus or N_times");

    const std::string pmode = cfg.str_or("profile", "mode", "expr");
    if (pmode == "expr") {
        const Expr k1 = parse_component(cfg, "profile", "k1", "s");
        const Expr k2 = parse_component(cfg, "profile", "k2", "s");
        job.profile.k1 = [k1](const Jet& s) { return k1.eval(s); };
        job.profile.k2 = [k2](const Jet& s) { return k2.eval(s); };
        job.profile.cls = fc;
        job.profile.s_min = cfg.number("profile", "s_min");
        job.profile.s_max = cfg.number("profile", "s_max");
        job.profile.validate();
    } else if (pmode == "table") {
        const std::string path = cfg.str("profile", "file");
        std::ifstream in(path);
        if (!in) cfg.fail("cannot open profile table '" + path + "'");
        std::vector<double> ss, k1s, k2s;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const std::string t = trim(line);
            if (t.empty() || t[0] == '#') continue;
            std::istringstream ls(t);
            double sv, a, b;
            char comma;
            if (t.find(',') != std::string::npos) {
                if (!(ls >> sv >> comma >> a >> comma >> b))
                    throw Error(Errc::ParseError, path + ":" + std::to_string(lineno) +
                                                      ":1: expected 's, k1, k2'");
            } else if (!(ls >> sv >> a >> b)) {
                throw Error(Errc::ParseError, path + ":" + std::to_string(lineno) +
                                                  ":1: expected 's k1 k2'");
            }
            ss.push_back(sv);
            k1s.push_back(a);
            k2s.push_back(b);
        }
        job.profile = make_sampled_profile(ss, k1s, k2s, fc);
    } else {
        cfg.fail("profile mode must be 'expr' or 'table'");
    }
    job.step = cfg.number_or("profile", "step", 1e-3);
    if (!(job.step > 0.0)) cfg.fail("step must be positive");

    const std::string kind = cfg.str_or("mode", "kind", "developable");
    if (kind == "developable") job.mode = ReconstructionMode::Developable;
    else if (kind == "geodesic") job.mode = ReconstructionMode::GeodesicStriction;
    else if (kind == "custom") {
        job.mode = ReconstructionMode::Custom;
        job.custom = true;
        job.coeffs.alpha = cfg.number_or("mode", "alpha", 1.0);
        job.coeffs.beta = cfg.number_or("mode", "beta", 0.0);
        job.coeffs.gamma = cfg.number_or("mode", "gamma", 0.0);
    } else {
        cfg.fail("mode kind must be developable, geodesic or custom");
    }
    return job;
}

}  // namespace slantsurf

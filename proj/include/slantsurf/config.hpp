#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slantsurf/ruled.hpp"
#include "slantsurf/synthesis.hpp"

namespace slantsurf {

// Line-oriented key-value configuration with dotted [section.names].
// Unknown keys are rejected by the loaders; every diagnostic carries
// line/column.
class Config {
public:
    struct Value {
        std::string raw;
        int line = 0;
        int col = 0;
    };

    static Config parse_string(const std::string& text, const std::string& origin);
    static Config parse_file(const std::string& path);

    const Value* find(const std::string& section, const std::string& key) const;
    bool has_section(const std::string& section) const;

    double number(const std::string& section, const std::string& key) const;
    double number_or(const std::string& section, const std::string& key, double dflt) const;
    int integer_or(const std::string& section, const std::string& key, int dflt) const;
    std::string str(const std::string& section, const std::string& key) const;
    std::string str_or(const std::string& section, const std::string& key,
                       const std::string& dflt) const;

    // Throws ParseError naming the first key outside the allowed set.
    void ensure_known(const std::vector<std::pair<std::string, std::string>>& allowed) const;

    [[noreturn]] void fail_at(const Value& v, const std::string& what) const;
    [[noreturn]] void fail(const std::string& what) const;

private:
    std::string origin_;
    std::map<std::pair<std::string, std::string>, Value> values_;
};

// [surface.base], [surface.director] (mode = expr | table), [domain].
RuledSurfaceSpec load_surface(const Config& cfg);

// [profile]: class, k1, k2, s_min, s_max (expressions in s); [mode] optional.
struct ProfileJob {
    CurvatureProfile profile;
    ReconstructionMode mode = ReconstructionMode::Developable;
    ModeCoeffs coeffs;
    bool custom = false;
    double step = 1e-3;
};
ProfileJob load_profile(const Config& cfg);

}  // namespace slantsurf

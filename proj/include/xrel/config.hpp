#pragma once

// Job configuration: a key = value text file with exact numbers, plus a
// canonical emitter so that emit(parse(emit(c))) == emit(c).

#include "xrel/cm.hpp"
#include "xrel/subgroup.hpp"

#include <array>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace xrel {

class config_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct JobConfig {
    std::array<std::string, 3> curve{"0", "-1", "0"};
    std::int64_t field = 0;
    std::array<std::string, 3> coeffs{"1", "1", "1"};
    /// Points as text pairs; an empty pair stands for the point at infinity.
    std::vector<std::array<std::string, 2>> generators;
    std::vector<std::array<std::string, 2>> torsion;
    int box = 0;
    int precision = 64;
    std::string cm = "auto";
    unsigned threads = 1;
    int samples = 100;
    std::uint64_t seed = 1;
};

namespace config_detail {

inline std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

/// A bracketed list parsed into a tree of strings.
struct Node {
    std::string atom;
    std::vector<Node> items;
    bool list = false;
};

inline Node parse_node(const std::string& s, std::size_t& pos)
{
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
        ++pos;
    Node n;
    if (pos < s.size() && s[pos] == '[') {
        n.list = true;
        ++pos;
        while (true) {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
                ++pos;
            if (pos >= s.size())
                throw config_error("unterminated list in '" + s + "'");
            if (s[pos] == ']') {
                ++pos;
                break;
            }
            n.items.push_back(parse_node(s, pos));
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
                ++pos;
            if (pos < s.size() && s[pos] == ',')
                ++pos;
            else if (pos < s.size() && s[pos] != ']')
                throw config_error("expected ',' or ']' in '" + s + "'");
        }
        return n;
    }
    std::size_t start = pos;
    int depth = 0;
    while (pos < s.size()) {
        char c = s[pos];
        if (c == '(')
            ++depth;
        else if (c == ')')
            --depth;
        else if (depth == 0 && (c == ',' || c == ']' || c == '['))
            break;
        ++pos;
    }
    n.atom = trim(s.substr(start, pos - start));
    if (n.atom.empty())
        throw config_error("empty entry in '" + s + "'");
    return n;
}

inline Node parse_tree(const std::string& s)
{
    std::size_t pos = 0;
    Node n = parse_node(s, pos);
    if (!trim(s.substr(pos)).empty())
        throw config_error("trailing text in '" + s + "'");
    return n;
}

inline std::string check_number(const std::string& text)
{
    try {
        return QuadNum::parse(text).str();
    } catch (const std::exception& e) {
        throw config_error("bad number '" + text + "': " + e.what());
    }
}

inline std::array<std::string, 3> parse_triple(const std::string& key, const std::string& value)
{
    Node n = parse_tree(value);
    if (!n.list || n.items.size() != 3)
        throw config_error(key + " must be a list of three numbers, e.g. [1, 1, 2]");
    std::array<std::string, 3> out;
    for (std::size_t i = 0; i < 3; ++i) {
        if (n.items[i].list)
            throw config_error(key + " entries must be numbers");
        out[i] = check_number(n.items[i].atom);
    }
    return out;
}

inline std::array<std::string, 2> parse_point(const Node& n)
{
    if (!n.list && n.atom == "inf")
        return {"", ""};
    if (!n.list || n.items.size() != 2 || n.items[0].list || n.items[1].list)
        throw config_error("points are written [x, y] or inf");
    return {check_number(n.items[0].atom), check_number(n.items[1].atom)};
}

inline std::vector<std::array<std::string, 2>> parse_points(const std::string& key, const std::string& value)
{
    Node n = parse_tree(value);
    if (!n.list)
        throw config_error(key + " must be a list of points");
    std::vector<std::array<std::string, 2>> out;
    for (const auto& item : n.items)
        out.push_back(parse_point(item));
    return out;
}

inline long parse_int(const std::string& key, const std::string& value, long lo, long hi)
{
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(value, &used);
    } catch (const std::exception&) {
        throw config_error(key + " must be an integer");
    }
    if (used != value.size())
        throw config_error(key + " must be an integer");
    if (v < lo || v > hi)
        throw config_error(key + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
}

inline std::string point_text(const std::array<std::string, 2>& p)
{
    return p[0].empty() ? "inf" : "[" + p[0] + ", " + p[1] + "]";
}

} // namespace config_detail

/// Sets one key; throws config_error on unknown keys or malformed values.
inline void set_config_value(JobConfig& cfg, const std::string& key, const std::string& raw)
{
    using namespace config_detail;
    const std::string value = trim(raw);
    if (key == "curve") {
        cfg.curve = parse_triple(key, value);
    } else if (key == "coeffs") {
        cfg.coeffs = parse_triple(key, value);
    } else if (key == "field") {
        cfg.field = parse_int(key, value, -1000000000L, 1000000000L);
    } else if (key == "generators") {
        cfg.generators = parse_points(key, value);
        for (const auto& g : cfg.generators)
            if (g[0].empty())
                throw config_error("generators must be affine points");
    } else if (key == "torsion") {
        cfg.torsion = parse_points(key, value);
    } else if (key == "box") {
        cfg.box = static_cast<int>(parse_int(key, value, 0, 1000));
    } else if (key == "precision") {
        cfg.precision = static_cast<int>(parse_int(key, value, 53, 64));
    } else if (key == "cm") {
        try {
            CmMode::parse(value);
        } catch (const std::invalid_argument& e) {
            throw config_error(e.what());
        }
        cfg.cm = value;
    } else if (key == "threads") {
        cfg.threads = static_cast<unsigned>(parse_int(key, value, 1, 256));
    } else if (key == "samples") {
        cfg.samples = static_cast<int>(parse_int(key, value, 1, 1000000));
    } else if (key == "seed") {
        cfg.seed = static_cast<std::uint64_t>(parse_int(key, value, 0, 2147483647L));
    } else {
        throw config_error("unknown config key '" + key + "'");
    }
}

inline JobConfig parse_config(std::istream& in)
{
    JobConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = config_detail::trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(lineno) + ": expected key = value");
        try {
            set_config_value(cfg, config_detail::trim(line.substr(0, eq)), line.substr(eq + 1));
        } catch (const config_error& e) {
            throw config_error("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cfg;
}

inline JobConfig parse_config_text(const std::string& text)
{
    std::istringstream in(text);
    return parse_config(in);
}

inline JobConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw config_error("cannot open config file '" + path + "'");
    return parse_config(in);
}

inline std::string emit_config(const JobConfig& cfg)
{
    using config_detail::point_text;
    auto triple = [](const std::array<std::string, 3>& t) { return "[" + t[0] + ", " + t[1] + ", " + t[2] + "]"; };
    auto points = [](const std::vector<std::array<std::string, 2>>& ps) {
        std::string out = "[";
        for (std::size_t i = 0; i < ps.size(); ++i)
            out += (i ? ", " : "") + point_text(ps[i]);
        return out + "]";
    };
    std::ostringstream os;
    os << "curve = " << triple(cfg.curve) << "\n";
    os << "field = " << cfg.field << "\n";
    os << "coeffs = " << triple(cfg.coeffs) << "\n";
    os << "generators = " << points(cfg.generators) << "\n";
    os << "torsion = " << points(cfg.torsion) << "\n";
    os << "box = " << cfg.box << "\n";
    os << "precision = " << cfg.precision << "\n";
    os << "cm = " << cfg.cm << "\n";
    os << "threads = " << cfg.threads << "\n";
    os << "samples = " << cfg.samples << "\n";
    os << "seed = " << cfg.seed << "\n";
    return os.str();
}

/// The exact objects a config describes.
struct Job {
    WeierstrassCurve curve;
    std::optional<RelationCoeffs> coeffs;
    SubgroupSpec subgroup;
    CmMode cm;
};

inline CurvePoint point_from_text(const std::array<std::string, 2>& p)
{
    if (p[0].empty())
        return CurvePoint::infinity();
    return {QuadNum::parse(p[0]), QuadNum::parse(p[1])};
}

/// Builds the curve and subgroup; the identity is added to the torsion list
/// when missing. Coefficients are left empty if one of them is zero so that
/// callers can report it.
inline Job build_job(const JobConfig& cfg)
{
    try {
        WeierstrassCurve E(QuadNum::parse(cfg.curve[0]), QuadNum::parse(cfg.curve[1]), QuadNum::parse(cfg.curve[2]),
                           cfg.field == 1 ? 0 : cfg.field);
        Job job{E, std::nullopt, {}, CmMode::parse(cfg.cm)};
        std::array<QuadNum, 3> c{QuadNum::parse(cfg.coeffs[0]), QuadNum::parse(cfg.coeffs[1]),
                                 QuadNum::parse(cfg.coeffs[2])};
        if (!c[0].is_zero() && !c[1].is_zero() && !c[2].is_zero())
            job.coeffs.emplace(c[0], c[1], c[2]);
        for (const auto& g : cfg.generators)
            job.subgroup.generators.push_back(point_from_text(g));
        job.subgroup.torsion.clear();
        bool has_identity = false;
        for (const auto& t : cfg.torsion) {
            job.subgroup.torsion.push_back(point_from_text(t));
            has_identity = has_identity || t[0].empty();
        }
        if (!has_identity)
            job.subgroup.torsion.insert(job.subgroup.torsion.begin(), CurvePoint::infinity());
        validate_subgroup(E, job.subgroup);
        return job;
    } catch (const config_error&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw config_error(e.what());
    } catch (const std::domain_error& e) {
        throw config_error(e.what());
    }
}

} // namespace xrel

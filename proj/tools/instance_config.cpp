#include "instance_config.hpp"

#include "drinfeld/expression.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace drinfeld::cli {
namespace {

int line_of(const YAML::Node& n) { return n.Mark().line + 1; }

[[noreturn]] void fail(const YAML::Node& n, const std::string& what) { throw ParseError(what, line_of(n)); }

void check_keys(const YAML::Node& n, const std::set<std::string>& allowed, const std::string& where) {
    if (!n.IsMap()) fail(n, where + " must be a mapping");
    for (const auto& kv : n) {
        const std::string key = kv.first.as<std::string>();
        if (!allowed.count(key)) fail(kv.first, "unknown key '" + key + "' in " + where);
    }
}

template <class T>
T scalar(const YAML::Node& n, const std::string& field) {
    if (!n.IsScalar()) fail(n, "field '" + field + "' must be a scalar");
    try {
        return n.as<T>();
    } catch (const YAML::Exception&) {
        fail(n, "field '" + field + "' has the wrong type");
    }
}

std::vector<std::string> string_list(const YAML::Node& n, const std::string& field) {
    if (!n.IsSequence()) fail(n, "field '" + field + "' must be a list");
    std::vector<std::string> out;
    for (const auto& x : n) out.push_back(scalar<std::string>(x, field));
    return out;
}

InstanceConfig parse_instance(const YAML::Node& n) {
    check_keys(n,
               {"id", "q", "m", "phi_T", "place", "tower", "variety", "points", "annihilators", "local", "levels",
                "target", "elements", "height_a", "n_max", "precision", "max_iter"},
               "instance");
    InstanceConfig c;
    c.line = line_of(n);
    if (!n["id"]) fail(n, "instance is missing 'id'");
    c.id = scalar<std::string>(n["id"], "id");
    if (!n["q"]) fail(n, "instance '" + c.id + "' is missing 'q'");
    c.q = scalar<std::uint32_t>(n["q"], "q");
    if (n["m"]) c.m = scalar<unsigned>(n["m"], "m");
    if (!n["phi_T"]) fail(n, "instance '" + c.id + "' is missing 'phi_T'");
    c.phi_T = string_list(n["phi_T"], "phi_T");
    if (n["place"]) c.place = scalar<std::string>(n["place"], "place");
    if (const auto t = n["tower"]) {
        check_keys(t, {"constant_degree", "g"}, "tower");
        TowerConfig tc;
        if (t["constant_degree"]) tc.constant_degree = scalar<unsigned>(t["constant_degree"], "constant_degree");
        if (!t["g"]) fail(t, "tower is missing 'g'");
        tc.g = scalar<std::string>(t["g"], "g");
        c.tower = tc;
    }
    if (const auto x = n["variety"]) {
        check_keys(x, {"g", "generators"}, "variety");
        VarietyConfig vc;
        if (x["g"]) vc.g = scalar<std::size_t>(x["g"], "g");
        if (!x["generators"]) fail(x, "variety is missing 'generators'");
        vc.generators = string_list(x["generators"], "generators");
        c.variety = vc;
    }
    if (const auto p = n["points"]) {
        if (!p.IsSequence()) fail(p, "field 'points' must be a list of lists");
        for (const auto& pt : p) c.points.push_back(string_list(pt, "points"));
    }
    if (n["annihilators"]) c.annihilators = string_list(n["annihilators"], "annihilators");
    if (const auto l = n["local"]) {
        check_keys(l, {"residue_degree", "ramification", "unit"}, "local");
        if (l["residue_degree"]) c.local.residue_degree = scalar<unsigned>(l["residue_degree"], "residue_degree");
        if (l["ramification"]) c.local.ramification = scalar<unsigned>(l["ramification"], "ramification");
        if (l["unit"]) c.local.unit = scalar<std::string>(l["unit"], "unit");
    }
    if (n["levels"]) c.levels = string_list(n["levels"], "levels");
    if (n["target"]) c.target = string_list(n["target"], "target");
    if (n["elements"]) c.elements = string_list(n["elements"], "elements");
    if (n["height_a"]) c.height_a = scalar<std::string>(n["height_a"], "height_a");
    if (n["n_max"]) c.n_max = scalar<unsigned>(n["n_max"], "n_max");
    if (n["precision"]) c.precision = scalar<std::int64_t>(n["precision"], "precision");
    if (n["max_iter"]) c.max_iter = scalar<std::size_t>(n["max_iter"], "max_iter");
    return c;
}

Config parse_document(const YAML::Node& root) {
    check_keys(root, {"schema", "instances"}, "document");
    Config cfg;
    if (!root["schema"]) fail(root, "document is missing 'schema'");
    cfg.schema = scalar<int>(root["schema"], "schema");
    if (cfg.schema != kSchemaVersion)
        fail(root["schema"], "unsupported schema version " + std::to_string(cfg.schema) + " (expected " +
                                 std::to_string(kSchemaVersion) + ")");
    const auto inst = root["instances"];
    if (!inst || !inst.IsSequence()) fail(root, "document needs an 'instances' list");
    std::set<std::string> ids;
    for (const auto& n : inst) {
        cfg.instances.push_back(parse_instance(n));
        if (!ids.insert(cfg.instances.back().id).second) fail(n, "duplicate instance id '" + cfg.instances.back().id + "'");
    }
    return cfg;
}

// (p, n) with q = p^n, or ParseError.
std::pair<std::uint32_t, unsigned> prime_power(std::uint32_t q, int line) {
    if (q < 2) throw ParseError("q must be a prime power, got " + std::to_string(q), line);
    std::uint32_t p = 2;
    while (q % p) ++p;
    unsigned n = 0;
    std::uint32_t r = q;
    while (r % p == 0) {
        r /= p;
        ++n;
    }
    if (r != 1) throw ParseError("q must be a prime power, got " + std::to_string(q), line);
    return {p, n};
}

template <class Fn>
auto with_context(const InstanceConfig& c, const std::string& field, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const ParseError& e) {
        throw ParseError("instance '" + c.id + "', field '" + field + "': " + e.what(), c.line);
    } catch (const std::invalid_argument& e) {
        throw ParseError("instance '" + c.id + "', field '" + field + "': " + e.what(), c.line);
    }
}

}  // namespace

Config parse_config(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ParseError(e.msg, e.mark.line + 1);
    }
    return parse_document(root);
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read config '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

Instance build_instance(const InstanceConfig& c) {
    const auto [p, n] = prime_power(c.q, c.line);
    if (c.m == 0) throw ParseError("instance '" + c.id + "': m must be positive", c.line);
    const GaloisField& fq = GaloisField::get(p, n);
    const GaloisField& k = GaloisField::get(p, n * c.m);
    DrinfeldModule phi = with_context(c, "phi_T", [&] {
        std::vector<RationalFunction> coeffs;
        for (const auto& s : c.phi_T) coeffs.push_back(parse_rational_function(s, k));
        return DrinfeldModule(fq, c.m, OrePolynomial(n, std::move(coeffs)));
    });
    const ValuationSet places(k);
    Place v = with_context(c, "place", [&] {
        if (c.place == "inf") return places.infinity();
        return places.at(parse_polynomial(c.place, k));
    });
    RationalTower tower = with_context(c, "tower", [&] {
        if (!c.tower) return RationalTower::trivial(k);
        const GaloisField& kp = GaloisField::get(p, n * c.m * c.tower->constant_degree);
        return RationalTower(k, parse_polynomial(c.tower->g, kp, "L"));
    });
    return Instance{&c, &fq, &k, std::move(phi), std::move(v), std::move(tower)};
}

std::string substitute_base(const Instance& inst, const std::string& text) {
    if (!inst.config->tower) return text;
    static const std::regex base(R"(\bT\b)");
    return std::regex_replace(text, base, "(" + inst.config->tower->g + ")");
}

RationalFunction parse_tower_element(const Instance& inst, const std::string& text) {
    return with_context(*inst.config, "element", [&] {
        if (inst.config->tower)
            return parse_rational_function(substitute_base(inst, text), inst.tower.extension_constants(), "L");
        return parse_rational_function(text, *inst.k);
    });
}

}  // namespace drinfeld::cli

#pragma once

#include "drinfeld/drinfeld_module.hpp"
#include "drinfeld/places.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace drinfeld::cli {

inline constexpr int kSchemaVersion = 1;

struct TowerConfig {
    unsigned constant_degree = 1;
    std::string g;  // polynomial in L
};

struct VarietyConfig {
    std::size_t g = 1;
    std::vector<std::string> generators;
};

struct LocalConfig {
    unsigned residue_degree = 1;
    unsigned ramification = 1;
    std::string unit = "1";
};

struct InstanceConfig {
    std::string id;
    int line = 0;
    std::uint32_t q = 0;
    unsigned m = 1;
    std::vector<std::string> phi_T;
    std::string place = "T";
    std::optional<TowerConfig> tower;
    std::optional<VarietyConfig> variety;
    std::vector<std::vector<std::string>> points;
    std::vector<std::string> annihilators;
    LocalConfig local;
    std::vector<std::string> levels;
    std::optional<std::vector<std::string>> target;
    std::vector<std::string> elements;
    std::string height_a = "T";
    unsigned n_max = 4;
    std::optional<std::int64_t> precision;
    std::optional<std::size_t> max_iter;
};

struct Config {
    int schema = kSchemaVersion;
    std::vector<InstanceConfig> instances;
};

/// Throws ParseError with the offending line for malformed documents,
/// unknown keys and wrong types.
Config load_config(const std::string& path);
Config parse_config(const std::string& text);

/// Domain objects built from an instance; throws ParseError on bad fields.
struct Instance {
    const InstanceConfig* config;
    const GaloisField* fq;
    const GaloisField* k;  // F_{q^m}
    DrinfeldModule phi;
    Place v;
    RationalTower tower;
};

Instance build_instance(const InstanceConfig& c);

/// Rewrites the base variable T as its expression g(L) when the instance has a tower.
std::string substitute_base(const Instance& inst, const std::string& text);

/// Parses an element of L (variable L) or of K (variable T) when there is no tower.
RationalFunction parse_tower_element(const Instance& inst, const std::string& text);

}  // namespace drinfeld::cli

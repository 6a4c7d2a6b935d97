#pragma once

#include "hamlet/holon.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hamlet {

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Descriptor of an algorithm, dataset or model resource: name, category
/// chain and parameter set, plus the defaults used to complete partial
/// parameter lists against the family schema.
struct ResourceSpec {
    HolonKind entity_kind = HolonKind::Algorithm;
    std::string name;
    std::vector<std::string> type_chain;
    ParamSet params;
    ParamSet defaults;
    std::string display_id; // optional reporting id such as "A01"

    static ResourceSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

ParamSet param_set_from_json(const nlohmann::json& j);
nlohmann::json param_set_to_json(const ParamSet& set);

/// Fixes a parameter-identifier schema per (kind, family name) at first
/// insertion; later specs for the same family are padded from their defaults
/// section so every set entering the algebra is congruent within its family.
class SchemaRegistry {
public:
    /// Returns the full parameter set over the family schema; registers the
    /// schema when the family is new. Unknown or uncoverable parameters
    /// raise ValidationError.
    ParamSet normalize(const ResourceSpec& spec);

    bool known(HolonKind kind, const std::string& name) const;
    std::vector<std::string> schema(HolonKind kind, const std::string& name) const;

    void register_display_id(const ResourceSpec& spec, const ParamSet& normalized);
    std::string display_id(HolonKind kind, const std::string& name, const ParamSet& params) const;

private:
    static std::string key(HolonKind kind, const std::string& name);
    std::map<std::string, std::vector<std::string>> schemas_;
    std::map<std::string, std::string> display_ids_;
};

} // namespace hamlet

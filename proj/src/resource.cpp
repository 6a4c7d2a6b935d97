#include "hamlet/resource.hpp"

#include <algorithm>

namespace hamlet {

ParamSet param_set_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError("params must be a JSON object");
    ParamSet out;
    for (const auto& [k, v] : j.items()) {
        if (v.is_string())
            out.set(k, ParamValue::from_token(v.get<std::string>()));
        else if (v.is_number_integer())
            out.set(k, ParamValue::literal(std::to_string(v.get<long long>())));
        else if (v.is_number())
            out.set(k, ParamValue::literal(std::to_string(v.get<double>())));
        else if (v.is_boolean())
            out.set(k, ParamValue::literal(v.get<bool>() ? "true" : "false"));
        else
            throw ValidationError("parameter " + k + " must be a scalar");
    }
    return out;
}

nlohmann::json param_set_to_json(const ParamSet& set) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [p, v] : set.pairs()) out[p] = v.text();
    return out;
}

ResourceSpec ResourceSpec::from_json(const nlohmann::json& j) {
    ResourceSpec spec;
    if (!j.is_object()) throw ValidationError("resource spec must be a JSON object");
    const std::string kind = j.value("kind", "algorithm");
    if (kind == "algorithm")
        spec.entity_kind = HolonKind::Algorithm;
    else if (kind == "data")
        spec.entity_kind = HolonKind::Data;
    else
        throw ValidationError("resource kind must be \"algorithm\" or \"data\", got " + kind);
    if (!j.contains("name") || !j["name"].is_string() || j["name"].get<std::string>().empty())
        throw ValidationError("resource spec needs a non-empty name");
    spec.name = j["name"].get<std::string>();
    if (j.contains("type_chain"))
        for (const auto& t : j["type_chain"]) spec.type_chain.push_back(t.get<std::string>());
    if (j.contains("params")) spec.params = param_set_from_json(j["params"]);
    if (j.contains("defaults")) spec.defaults = param_set_from_json(j["defaults"]);
    spec.display_id = j.value("id", "");
    return spec;
}

nlohmann::json ResourceSpec::to_json() const {
    nlohmann::json j = {{"kind", entity_kind == HolonKind::Data ? "data" : "algorithm"},
                        {"name", name},
                        {"type_chain", type_chain},
                        {"params", param_set_to_json(params)},
                        {"defaults", param_set_to_json(defaults)}};
    if (!display_id.empty()) j["id"] = display_id;
    return j;
}

std::string SchemaRegistry::key(HolonKind kind, const std::string& name) {
    return std::string(to_string(kind)) + ":" + name;
}

ParamSet SchemaRegistry::normalize(const ResourceSpec& spec) {
    const std::string k = key(spec.entity_kind, spec.name);
    auto it = schemas_.find(k);
    if (it == schemas_.end()) {
        std::vector<std::string> ids;
        for (const auto& [p, v] : spec.params.pairs()) ids.push_back(p);
        for (const auto& [p, v] : spec.defaults.pairs())
            if (!spec.params.contains(p)) ids.push_back(p);
        std::sort(ids.begin(), ids.end());
        it = schemas_.emplace(k, std::move(ids)).first;
    } else {
        for (const auto& [p, v] : spec.params.pairs())
            if (std::find(it->second.begin(), it->second.end(), p) == it->second.end())
                throw ValidationError("parameter \"" + p + "\" is not in the schema of family \"" +
                                      spec.name + "\"");
    }
    ParamSet out;
    for (const auto& p : it->second) {
        if (const ParamValue* v = spec.params.find(p))
            out.set(p, *v);
        else if (const ParamValue* d = spec.defaults.find(p))
            out.set(p, *d);
        else
            throw ValidationError("family \"" + spec.name + "\" requires parameter \"" + p +
                                  "\" and the spec carries no default for it");
    }
    return out;
}

bool SchemaRegistry::known(HolonKind kind, const std::string& name) const {
    return schemas_.count(key(kind, name)) != 0;
}

std::vector<std::string> SchemaRegistry::schema(HolonKind kind, const std::string& name) const {
    auto it = schemas_.find(key(kind, name));
    return it == schemas_.end() ? std::vector<std::string>{} : it->second;
}

void SchemaRegistry::register_display_id(const ResourceSpec& spec, const ParamSet& normalized) {
    if (spec.display_id.empty()) return;
    display_ids_[key(spec.entity_kind, spec.name) + normalized.text()] = spec.display_id;
}

std::string SchemaRegistry::display_id(HolonKind kind, const std::string& name,
                                       const ParamSet& params) const {
    auto it = display_ids_.find(key(kind, name) + params.text());
    return it == display_ids_.end() ? "" : it->second;
}

} // namespace hamlet

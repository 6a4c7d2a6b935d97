#pragma once

#include "hamlet/algebra.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace hamlet {

struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MissingAddressError : StructuralError {
    using StructuralError::StructuralError;
};

enum class HolonKind { Sys, Abstract, Algorithm, Data, Model };

const char* to_string(HolonKind kind);
HolonKind holon_kind_from_string(const std::string& s);

/// Runtime-unique holon identifier; doubles as the message address.
struct HolonId {
    std::uint32_t value = 0;

    explicit operator bool() const { return value != 0; }
    auto operator<=>(const HolonId&) const = default;
};

/// Expertise acquired through training: which concrete algorithm or dataset
/// a holon (or its subtree) has been involved with.
struct SkillEntry {
    HolonKind entity_kind = HolonKind::Algorithm; // Algorithm or Data
    std::string entity_name;
    ParamSet params;

    bool operator==(const SkillEntry& o) const {
        return entity_kind == o.entity_kind && entity_name == o.entity_name && params == o.params;
    }
    bool operator<(const SkillEntry& o) const {
        if (entity_kind != o.entity_kind) return entity_kind < o.entity_kind;
        if (entity_name != o.entity_name) return entity_name < o.entity_name;
        return params < o.params;
    }
};

using SkillSet = std::set<SkillEntry>;

/// One agent's state: identity, kind, position in the holarchy, capability
/// and skill sets, directory links and the per-query address book.
struct HolonState {
    HolonId id;
    std::uint32_t serial = 0; // creation number; 0 for the bootstrap roots
    HolonKind kind = HolonKind::Abstract;
    int level = -1; // -1 until linked under a super
    std::string name;
    ParamSet capability;
    SkillSet skills;
    std::vector<HolonId> supers;
    std::vector<HolonId> subs;
    std::map<std::string, HolonId> address_book; // query id -> next hop
    std::vector<std::string> type_chain;         // organizational only

    // Model holons: resolved super links and training status.
    HolonId model_alg;
    HolonId model_data;
    bool trained = false;

    bool is_root() const { return serial == 0; }
    std::string label() const;
};

} // namespace hamlet

#pragma once

#include "hamlet/holon.hpp"

#include <json.hpp>

#include <memory>
#include <mutex>
#include <shared_mutex>

namespace hamlet {

/// Owns every holon's state and performs the structural operations: creation,
/// joining, address bookkeeping, skill recording, validation and export.
/// Message protocols live elsewhere; this is the quiesced-state view.
class Registry {
public:
    Registry() = default;

    HolonId bootstrap_sys();
    HolonId bootstrap_abstract(const std::string& name, HolonId sys);

    /// Registers a holon; with a super the level and directory links are set
    /// on both sides, without one the holon stays detached until join_holon.
    HolonId create_holon(const std::string& name, HolonId super, const ParamSet& capability,
                         const SkillSet& skills, HolonKind kind);

    /// Moves self under new_super (replacing the previous tree super) and
    /// fixes directory links on all three sides. Joining one's own
    /// descendant is refused.
    void join_holon(HolonId self, HolonId new_super);

    /// Adds a data-side super to a model holon.
    void join_model_to_data(HolonId model, HolonId data_holon);

    /// Replaces the capability with its parametric sum with `incoming`;
    /// returns true when the capability changed. Level-1 roots are a no-op.
    bool apply_capability(HolonId self, const ParamSet& incoming);

    void store_address(HolonId self, const std::string& query_id, HolonId target);
    HolonId get_address(HolonId self, const std::string& query_id) const;
    bool has_address(HolonId self, const std::string& query_id) const;

    /// After new_intermediate was inserted between parent and moved_leaf,
    /// repoints every parent entry at moved_leaf to new_intermediate and
    /// seeds the intermediate with entries pointing at the leaf.
    void rewire_addresses_on_insert(HolonId parent, HolonId new_intermediate, HolonId moved_leaf);

    /// Records the skills of a freshly trained model and propagates the
    /// union updates through both super chains up to level 1.
    void record_model_skill(HolonId model);

    /// Checks the structural laws (levels, super multiplicity, composite
    /// capability as parametric sum of subs, skill equations, link symmetry)
    /// and returns one line per violation.
    std::vector<std::string> validate() const;

    std::string export_dot(bool include_models) const;
    nlohmann::json snapshot_json() const;

    const HolonState& holon(HolonId id) const;
    HolonState& holon_mut(HolonId id);
    bool exists(HolonId id) const;
    std::size_t count() const;
    std::vector<HolonId> all_ids() const;
    HolonId find_by_serial(std::uint32_t serial) const;

    /// Tree children only (model subs excluded), ascending id.
    std::vector<HolonId> tree_children(HolonId id) const;
    std::vector<HolonId> model_children(HolonId id) const;
    HolonId tree_super(HolonId id) const;
    bool is_descendant(HolonId node, HolonId ancestor) const;

private:
    HolonId allocate(HolonKind kind, const std::string& name);
    void check_parent_legal(HolonKind child, HolonId super) const;

    std::vector<std::unique_ptr<HolonState>> holons_; // index = id - 1
    std::uint32_t next_serial_ = 1;
    mutable std::shared_mutex mutex_;
};

} // namespace hamlet

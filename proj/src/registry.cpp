#include "hamlet/registry.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace hamlet {

const char* to_string(HolonKind kind) {
    switch (kind) {
        case HolonKind::Sys: return "sys";
        case HolonKind::Abstract: return "abstract";
        case HolonKind::Algorithm: return "algorithm";
        case HolonKind::Data: return "data";
        case HolonKind::Model: return "model";
    }
    return "unknown";
}

HolonKind holon_kind_from_string(const std::string& s) {
    if (s == "sys") return HolonKind::Sys;
    if (s == "abstract") return HolonKind::Abstract;
    if (s == "algorithm") return HolonKind::Algorithm;
    if (s == "data") return HolonKind::Data;
    if (s == "model") return HolonKind::Model;
    throw StructuralError("unknown holon kind: " + s);
}

std::string HolonState::label() const {
    if (is_root()) return name;
    return std::to_string(serial) + ":" + name;
}

HolonId Registry::allocate(HolonKind kind, const std::string& name) {
    auto h = std::make_unique<HolonState>();
    h->id = HolonId{static_cast<std::uint32_t>(holons_.size() + 1)};
    h->kind = kind;
    h->name = name;
    holons_.push_back(std::move(h));
    return holons_.back()->id;
}

HolonId Registry::bootstrap_sys() {
    std::unique_lock lock(mutex_);
    if (!holons_.empty()) throw StructuralError("system holon already exists");
    HolonId id = allocate(HolonKind::Sys, "SYS");
    holons_[id.value - 1]->level = 0;
    return id;
}

HolonId Registry::bootstrap_abstract(const std::string& name, HolonId sys) {
    std::unique_lock lock(mutex_);
    HolonState& parent = *holons_.at(sys.value - 1);
    if (parent.kind != HolonKind::Sys) throw StructuralError("abstract roots hang off SYS");
    HolonId id = allocate(HolonKind::Abstract, name);
    HolonState& h = *holons_[id.value - 1];
    h.level = 1;
    h.supers.push_back(sys);
    parent.subs.push_back(id);
    return id;
}

void Registry::check_parent_legal(HolonKind child, HolonId super) const {
    const HolonState& p = *holons_.at(super.value - 1);
    switch (child) {
        case HolonKind::Sys:
            throw StructuralError("SYS cannot have a super");
        case HolonKind::Abstract:
            if (p.kind != HolonKind::Sys && p.kind != HolonKind::Abstract)
                throw StructuralError("abstract holon requires SYS or abstract super");
            break;
        case HolonKind::Algorithm:
            if (p.kind != HolonKind::Abstract && p.kind != HolonKind::Algorithm)
                throw StructuralError("algorithm holon requires abstract or algorithm super");
            break;
        case HolonKind::Data:
            if (p.kind != HolonKind::Abstract && p.kind != HolonKind::Data)
                throw StructuralError("data holon requires abstract or data super");
            break;
        case HolonKind::Model:
            if (p.kind != HolonKind::Algorithm)
                throw StructuralError("model holons are spawned by algorithm holons");
            break;
    }
}

HolonId Registry::create_holon(const std::string& name, HolonId super, const ParamSet& capability,
                               const SkillSet& skills, HolonKind kind) {
    std::unique_lock lock(mutex_);
    if (name.empty()) throw StructuralError("holon name must be non-empty");
    if (super) check_parent_legal(kind, super);
    HolonId id = allocate(kind, name);
    HolonState& h = *holons_[id.value - 1];
    h.serial = next_serial_++;
    h.capability = capability;
    h.skills = skills;
    if (super) {
        HolonState& p = *holons_[super.value - 1];
        h.level = p.level + 1;
        h.supers.push_back(super);
        p.subs.push_back(id);
        if (kind == HolonKind::Model) h.model_alg = super;
    }
    return id;
}

namespace {
void erase_id(std::vector<HolonId>& v, HolonId id) {
    v.erase(std::remove(v.begin(), v.end(), id), v.end());
}
} // namespace

void Registry::join_holon(HolonId self, HolonId new_super) {
    std::unique_lock lock(mutex_);
    HolonState& h = *holons_.at(self.value - 1);
    HolonState& p = *holons_.at(new_super.value - 1);
    if (h.kind == HolonKind::Sys) throw StructuralError("SYS joins nothing");
    if (h.kind == HolonKind::Model) throw StructuralError("models join data holons, not supers");

    // cycle prevention: the new super must not live under self
    for (HolonId cur = new_super; cur;) {
        if (cur == self) throw StructuralError("cannot join own descendant: " + h.label());
        const HolonState& c = *holons_[cur.value - 1];
        cur = c.supers.empty() ? HolonId{} : c.supers.front();
    }
    check_parent_legal(h.kind, new_super);

    if (!h.supers.empty()) {
        HolonState& old = *holons_[h.supers.front().value - 1];
        erase_id(old.subs, self);
    }
    h.supers.clear();
    h.supers.push_back(new_super);
    if (std::find(p.subs.begin(), p.subs.end(), self) == p.subs.end()) p.subs.push_back(self);

    // levels of the moved subtree shift; model levels follow their algorithm super
    std::function<void(HolonId, int)> relevel = [&](HolonId id, int level) {
        HolonState& node = *holons_[id.value - 1];
        node.level = level;
        for (HolonId sub : node.subs) {
            const HolonState& s = *holons_[sub.value - 1];
            if (s.kind == HolonKind::Model) {
                if (s.model_alg == id) holons_[sub.value - 1]->level = level + 1;
            } else {
                relevel(sub, level + 1);
            }
        }
    };
    relevel(self, p.level + 1);
}

void Registry::join_model_to_data(HolonId model, HolonId data_holon) {
    std::unique_lock lock(mutex_);
    HolonState& m = *holons_.at(model.value - 1);
    HolonState& d = *holons_.at(data_holon.value - 1);
    if (m.kind != HolonKind::Model) throw StructuralError("only models join data holons");
    if (d.kind != HolonKind::Data) throw StructuralError("model's second super must be a data holon");
    if (m.model_data) throw StructuralError("model already joined a data holon");
    m.model_data = data_holon;
    m.supers.push_back(data_holon);
    d.subs.push_back(model);
}

bool Registry::apply_capability(HolonId self, const ParamSet& incoming) {
    std::unique_lock lock(mutex_);
    HolonState& h = *holons_.at(self.value - 1);
    if (h.level <= 1) return false; // abstract roots keep an empty capability
    try {
        ParamSet merged = psum(h.capability, incoming);
        if (merged == h.capability) return false;
        h.capability = std::move(merged);
        return true;
    } catch (const AlgebraError& e) {
        throw StructuralError(std::string("capability schema violation at ") + h.label() + ": " +
                              e.what());
    }
}

void Registry::store_address(HolonId self, const std::string& query_id, HolonId target) {
    std::unique_lock lock(mutex_);
    holons_.at(self.value - 1)->address_book[query_id] = target;
}

HolonId Registry::get_address(HolonId self, const std::string& query_id) const {
    std::shared_lock lock(mutex_);
    const HolonState& h = *holons_.at(self.value - 1);
    auto it = h.address_book.find(query_id);
    if (it == h.address_book.end())
        throw MissingAddressError("no address stored at " + h.label() + " for query " + query_id);
    return it->second;
}

bool Registry::has_address(HolonId self, const std::string& query_id) const {
    std::shared_lock lock(mutex_);
    return holons_.at(self.value - 1)->address_book.count(query_id) != 0;
}

void Registry::rewire_addresses_on_insert(HolonId parent, HolonId new_intermediate,
                                          HolonId moved_leaf) {
    std::unique_lock lock(mutex_);
    HolonState& p = *holons_.at(parent.value - 1);
    HolonState& mid = *holons_.at(new_intermediate.value - 1);
    for (auto& [query_id, target] : p.address_book) {
        if (target == moved_leaf) {
            target = new_intermediate;
            mid.address_book[query_id] = moved_leaf;
        }
    }
}

void Registry::record_model_skill(HolonId model) {
    std::unique_lock lock(mutex_);
    HolonState& m = *holons_.at(model.value - 1);
    if (m.kind != HolonKind::Model) throw StructuralError("record_model_skill expects a model");
    if (!m.model_alg || !m.model_data)
        throw StructuralError("model " + m.label() + " has unresolved super links");

    const HolonState& alg = *holons_[m.model_alg.value - 1];
    const HolonState& dat = *holons_[m.model_data.value - 1];
    SkillEntry alg_entry{HolonKind::Algorithm, alg.name, alg.capability};
    SkillEntry dat_entry{HolonKind::Data, dat.name, dat.capability};
    m.skills = {alg_entry, dat_entry};
    m.trained = true;

    auto propagate = [&](HolonId from, const SkillEntry& entry) {
        for (HolonId cur = from; cur;) {
            HolonState& h = *holons_[cur.value - 1];
            h.skills.insert(entry);
            if (h.level <= 1) break;
            cur = h.supers.empty() ? HolonId{} : h.supers.front();
        }
    };
    propagate(m.model_alg, dat_entry);
    propagate(m.model_data, alg_entry);
}

const HolonState& Registry::holon(HolonId id) const {
    std::shared_lock lock(mutex_);
    if (!id || id.value > holons_.size()) throw StructuralError("unknown holon id");
    return *holons_[id.value - 1];
}

HolonState& Registry::holon_mut(HolonId id) {
    std::unique_lock lock(mutex_);
    if (!id || id.value > holons_.size()) throw StructuralError("unknown holon id");
    return *holons_[id.value - 1];
}

bool Registry::exists(HolonId id) const {
    std::shared_lock lock(mutex_);
    return id && id.value <= holons_.size();
}

std::size_t Registry::count() const {
    std::shared_lock lock(mutex_);
    return holons_.size();
}

std::vector<HolonId> Registry::all_ids() const {
    std::shared_lock lock(mutex_);
    std::vector<HolonId> ids;
    ids.reserve(holons_.size());
    for (const auto& h : holons_) ids.push_back(h->id);
    return ids;
}

HolonId Registry::find_by_serial(std::uint32_t serial) const {
    std::shared_lock lock(mutex_);
    for (const auto& h : holons_)
        if (h->serial == serial) return h->id;
    return HolonId{};
}

std::vector<HolonId> Registry::tree_children(HolonId id) const {
    std::shared_lock lock(mutex_);
    std::vector<HolonId> out;
    for (HolonId sub : holons_.at(id.value - 1)->subs)
        if (holons_[sub.value - 1]->kind != HolonKind::Model) out.push_back(sub);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<HolonId> Registry::model_children(HolonId id) const {
    std::shared_lock lock(mutex_);
    std::vector<HolonId> out;
    for (HolonId sub : holons_.at(id.value - 1)->subs)
        if (holons_[sub.value - 1]->kind == HolonKind::Model) out.push_back(sub);
    std::sort(out.begin(), out.end());
    return out;
}

HolonId Registry::tree_super(HolonId id) const {
    std::shared_lock lock(mutex_);
    const HolonState& h = *holons_.at(id.value - 1);
    return h.supers.empty() ? HolonId{} : h.supers.front();
}

bool Registry::is_descendant(HolonId node, HolonId ancestor) const {
    std::shared_lock lock(mutex_);
    for (HolonId cur = node; cur;) {
        if (cur == ancestor) return true;
        const HolonState& h = *holons_.at(cur.value - 1);
        cur = h.supers.empty() ? HolonId{} : h.supers.front();
    }
    return false;
}

std::vector<std::string> Registry::validate() const {
    std::shared_lock lock(mutex_);
    std::vector<std::string> out;
    auto fail = [&](const std::string& msg) { out.push_back(msg); };

    for (const auto& hp : holons_) {
        const HolonState& h = *hp;
        const std::string who = h.label();

        // link symmetry
        for (HolonId s : h.supers) {
            const HolonState& p = *holons_.at(s.value - 1);
            if (std::find(p.subs.begin(), p.subs.end(), h.id) == p.subs.end())
                fail(who + ": super " + p.label() + " does not list it as sub");
        }
        for (HolonId s : h.subs) {
            const HolonState& c = *holons_.at(s.value - 1);
            if (std::find(c.supers.begin(), c.supers.end(), h.id) == c.supers.end())
                fail(who + ": sub " + c.label() + " does not list it as super");
        }
        for (const auto& [query_id, target] : h.address_book)
            if (!target || target.value > holons_.size())
                fail(who + ": address book entry for " + query_id + " points nowhere");

        switch (h.kind) {
            case HolonKind::Sys:
                if (h.level != 0) fail(who + ": SYS must sit at level 0");
                if (!h.supers.empty()) fail(who + ": SYS must have no supers");
                break;
            case HolonKind::Abstract:
            case HolonKind::Algorithm:
            case HolonKind::Data:
                if (h.supers.size() != 1)
                    fail(who + ": expected exactly one super, found " +
                         std::to_string(h.supers.size()));
                break;
            case HolonKind::Model: {
                if (!h.subs.empty()) fail(who + ": models are atomic");
                if (h.trained) {
                    if (!(h.model_alg && h.model_data) || h.supers.size() != 2)
                        fail(who + ": trained model needs one algorithm and one data super");
                } else if (h.supers.size() != 1 || !h.model_alg) {
                    fail(who + ": pending model must hang off its algorithm creator");
                }
                if (h.model_alg) {
                    const HolonState& alg = *holons_[h.model_alg.value - 1];
                    if (alg.kind != HolonKind::Algorithm)
                        fail(who + ": creator link is not an algorithm holon");
                    if (h.level != alg.level + 1)
                        fail(who + ": model level must be its algorithm's level + 1");
                }
                if (h.model_data &&
                    holons_[h.model_data.value - 1]->kind != HolonKind::Data)
                    fail(who + ": data link is not a data holon");
                break;
            }
        }

        // level arithmetic along tree links
        if (h.kind != HolonKind::Model) {
            for (HolonId s : h.subs) {
                const HolonState& c = *holons_[s.value - 1];
                if (c.kind == HolonKind::Model) continue;
                if (c.level != h.level + 1)
                    fail(who + ": sub " + c.label() + " level " + std::to_string(c.level) +
                         " != " + std::to_string(h.level + 1));
            }
        }

        // composite capability law
        if ((h.kind == HolonKind::Algorithm || h.kind == HolonKind::Data) && h.level > 1) {
            std::vector<const HolonState*> kids;
            for (HolonId s : h.subs) {
                const HolonState& c = *holons_[s.value - 1];
                if (c.kind != HolonKind::Model) kids.push_back(&c);
            }
            if (!kids.empty()) {
                try {
                    ParamSet folded;
                    for (const HolonState* c : kids) folded = psum(folded, c->capability);
                    if (folded != h.capability)
                        fail(who + ": capability " + h.capability.text() +
                             " != parametric sum of subs " + folded.text());
                } catch (const AlgebraError& e) {
                    fail(who + ": capability fold failed: " + e.what());
                }
            }
        }

        // skill laws
        if (h.kind == HolonKind::Model) {
            if (h.trained && h.model_alg && h.model_data) {
                const HolonState& alg = *holons_[h.model_alg.value - 1];
                const HolonState& dat = *holons_[h.model_data.value - 1];
                SkillSet expect{{HolonKind::Algorithm, alg.name, alg.capability},
                                {HolonKind::Data, dat.name, dat.capability}};
                if (h.skills != expect) fail(who + ": model skills differ from super capabilities");
            }
        } else if (h.kind == HolonKind::Algorithm || h.kind == HolonKind::Data ||
                   h.kind == HolonKind::Abstract) {
            SkillSet expect;
            const HolonKind mirror =
                h.kind == HolonKind::Data ? HolonKind::Algorithm : HolonKind::Data;
            bool has_tree_kids = false;
            for (HolonId s : h.subs) {
                const HolonState& c = *holons_[s.value - 1];
                if (c.kind == HolonKind::Model) {
                    if (!c.trained) continue;
                    for (const auto& e : c.skills)
                        if (e.entity_kind == mirror) expect.insert(e);
                } else {
                    has_tree_kids = true;
                    for (const auto& e : c.skills) expect.insert(e);
                }
            }
            (void)has_tree_kids;
            if (h.skills != expect) fail(who + ": skills are not the union over sub-holons");
        }
    }
    return out;
}

std::string Registry::export_dot(bool include_models) const {
    std::shared_lock lock(mutex_);
    auto node_key = [&](const HolonState& h) {
        return h.is_root() ? h.name : "h" + std::to_string(h.serial);
    };
    std::ostringstream os;
    os << "digraph holarchy {\n";
    os << "  rankdir=TB;\n";
    os << "  node [shape=box];\n";
    for (const auto& hp : holons_) {
        if (hp->kind == HolonKind::Model && !include_models) continue;
        os << "  " << node_key(*hp) << " [label=\"" << hp->label() << "\"];\n";
    }
    for (const auto& hp : holons_) {
        if (hp->kind == HolonKind::Model) continue;
        std::vector<HolonId> kids = hp->subs;
        std::sort(kids.begin(), kids.end());
        for (HolonId s : kids) {
            const HolonState& c = *holons_[s.value - 1];
            if (c.kind == HolonKind::Model) continue;
            os << "  " << node_key(*hp) << " -> " << node_key(c) << ";\n";
        }
    }
    if (include_models) {
        for (const auto& hp : holons_) {
            if (hp->kind != HolonKind::Model) continue;
            if (hp->model_alg)
                os << "  " << node_key(*holons_[hp->model_alg.value - 1]) << " -> "
                   << node_key(*hp) << " [style=dashed];\n";
            if (hp->model_data)
                os << "  " << node_key(*holons_[hp->model_data.value - 1]) << " -> "
                   << node_key(*hp) << " [style=dashed];\n";
        }
    }
    os << "}\n";
    return os.str();
}

nlohmann::json Registry::snapshot_json() const {
    std::shared_lock lock(mutex_);
    nlohmann::json holons = nlohmann::json::array();
    auto label_of = [&](HolonId id) { return holons_.at(id.value - 1)->label(); };
    for (const auto& hp : holons_) {
        const HolonState& h = *hp;
        nlohmann::json caps = nlohmann::json::object();
        for (const auto& [p, v] : h.capability.pairs()) caps[p] = v.text();
        nlohmann::json skills = nlohmann::json::array();
        for (const auto& e : h.skills) {
            nlohmann::json params = nlohmann::json::object();
            for (const auto& [p, v] : e.params.pairs()) params[p] = v.text();
            skills.push_back({{"kind", to_string(e.entity_kind)},
                              {"name", e.entity_name},
                              {"params", params}});
        }
        nlohmann::json supers = nlohmann::json::array();
        for (HolonId s : h.supers) supers.push_back(label_of(s));
        std::vector<HolonId> kids = h.subs;
        std::sort(kids.begin(), kids.end());
        nlohmann::json subs = nlohmann::json::array();
        for (HolonId s : kids) subs.push_back(label_of(s));
        nlohmann::json addresses = nlohmann::json::object();
        for (const auto& [query_id, target] : h.address_book)
            addresses[query_id] = label_of(target);
        nlohmann::json entry = {{"label", h.label()},       {"kind", to_string(h.kind)},
                                {"level", h.level},         {"name", h.name},
                                {"capability", caps},       {"skills", skills},
                                {"supers", supers},         {"subs", subs},
                                {"addresses", addresses},   {"trained", h.trained}};
        if (h.kind == HolonKind::Model && h.model_alg && h.model_data) {
            entry["links"] = {{"algorithm", label_of(h.model_alg)},
                              {"data", label_of(h.model_data)}};
        }
        holons.push_back(entry);
    }
    return nlohmann::json{{"holons", holons}};
}

} // namespace hamlet

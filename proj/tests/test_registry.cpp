#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hamlet/registry.hpp"

using namespace hamlet;

namespace {

struct Fixture {
    Registry reg;
    HolonId sys, alg, data;
    Fixture() {
        sys = reg.bootstrap_sys();
        alg = reg.bootstrap_abstract("ALG", sys);
        data = reg.bootstrap_abstract("DATA", sys);
    }
};

} // namespace

TEST_CASE("bootstrap yields SYS/ALG/DATA at the right levels") {
    Fixture f;
    CHECK(f.reg.count() == 3);
    CHECK(f.reg.holon(f.sys).level == 0);
    CHECK(f.reg.holon(f.alg).level == 1);
    CHECK(f.reg.holon(f.data).level == 1);
    CHECK(f.reg.holon(f.sys).label() == "SYS");
    CHECK(f.reg.validate().empty());
}

TEST_CASE("create_holon assigns levels, serials and directory links") {
    Fixture f;
    HolonId leaf = f.reg.create_holon("X", f.alg, ParamSet{{"p", "a"}}, {}, HolonKind::Algorithm);
    CHECK(f.reg.holon(leaf).level == 2);
    CHECK(f.reg.holon(leaf).serial == 1);
    CHECK(f.reg.holon(leaf).label() == "1:X");
    CHECK(f.reg.tree_children(f.alg) == std::vector<HolonId>{leaf});
    CHECK(f.reg.tree_super(leaf) == f.alg);
    CHECK(f.reg.validate().empty());

    // duplicate names under the same parent are fine; identity is the id
    HolonId leaf2 = f.reg.create_holon("X", f.alg, ParamSet{{"p", "b"}}, {}, HolonKind::Algorithm);
    CHECK(leaf2 != leaf);
    CHECK(f.reg.holon(leaf2).serial == 2);
}

TEST_CASE("kind/parent legality is enforced") {
    Fixture f;
    HolonId aleaf = f.reg.create_holon("X", f.alg, ParamSet{{"p", "a"}}, {}, HolonKind::Algorithm);
    CHECK_THROWS_AS(f.reg.create_holon("D", aleaf, ParamSet{}, {}, HolonKind::Data),
                    StructuralError);
    CHECK_THROWS_AS(f.reg.create_holon("M", f.data, ParamSet{}, {}, HolonKind::Model),
                    StructuralError);
    CHECK_THROWS_AS(f.reg.create_holon("A", f.sys, ParamSet{}, {}, HolonKind::Algorithm),
                    StructuralError);
}

TEST_CASE("detached create then join updates supers exactly once") {
    Fixture f;
    HolonId mid = f.reg.create_holon("X", f.alg, ParamSet{{"p", "a"}}, {}, HolonKind::Algorithm);
    HolonId leaf = f.reg.create_holon("X", HolonId{}, ParamSet{{"p", "b"}}, {}, HolonKind::Algorithm);
    CHECK(f.reg.holon(leaf).level == -1);
    CHECK(f.reg.holon(leaf).supers.empty());
    f.reg.join_holon(leaf, mid);
    CHECK(f.reg.holon(leaf).supers == std::vector<HolonId>{mid});
    CHECK(f.reg.holon(leaf).level == 3);
}

TEST_CASE("join refuses cycles") {
    Fixture f;
    HolonId a = f.reg.create_holon("X", f.alg, ParamSet{{"p", "a"}}, {}, HolonKind::Algorithm);
    HolonId b = f.reg.create_holon("X", a, ParamSet{{"p", "b"}}, {}, HolonKind::Algorithm);
    CHECK_THROWS_AS(f.reg.join_holon(a, b), StructuralError);
}

TEST_CASE("join relevels the moved subtree including models") {
    Fixture f;
    HolonId leaf = f.reg.create_holon("X", f.alg, ParamSet{{"p", "a"}}, {}, HolonKind::Algorithm);
    HolonId model = f.reg.create_holon("X", leaf, ParamSet{{"p", "a"}}, {}, HolonKind::Model);
    CHECK(f.reg.holon(model).level == 3);
    HolonId mid = f.reg.create_holon("X", f.alg, ParamSet{{"p", "a"}}, {}, HolonKind::Algorithm);
    f.reg.join_holon(leaf, mid);
    CHECK(f.reg.holon(leaf).level == 3);
    CHECK(f.reg.holon(model).level == 4);
}

TEST_CASE("apply_capability accumulates by parametric sum and skips roots") {
    Fixture f;
    HolonId mid = f.reg.create_holon("X", f.alg, ParamSet{{"p", "a"}}, {}, HolonKind::Algorithm);
    CHECK(f.reg.apply_capability(mid, ParamSet{{"p", "b"}}));
    CHECK(f.reg.holon(mid).capability == ParamSet{{"p", "*"}});
    CHECK_FALSE(f.reg.apply_capability(mid, ParamSet{{"p", "c"}})); // already general
    CHECK_FALSE(f.reg.apply_capability(f.alg, ParamSet{{"p", "a"}}));
    CHECK(f.reg.holon(f.alg).capability.empty());
    CHECK_THROWS_AS(f.reg.apply_capability(mid, ParamSet{{"q", "a"}}), StructuralError);
}

TEST_CASE("model skills and their propagation to level 1") {
    Fixture f;
    HolonId svc = f.reg.create_holon("SVC", f.alg, ParamSet{{"kernel", "rbf"}}, {},
                                     HolonKind::Algorithm);
    HolonId iris = f.reg.create_holon("iris", f.data, ParamSet{{"type", "train"}}, {},
                                      HolonKind::Data);
    HolonId model = f.reg.create_holon("SVC", svc, ParamSet{{"kernel", "rbf"}}, {},
                                       HolonKind::Model);
    f.reg.join_model_to_data(model, iris);
    f.reg.record_model_skill(model);

    SkillEntry data_entry{HolonKind::Data, "iris", ParamSet{{"type", "train"}}};
    SkillEntry alg_entry{HolonKind::Algorithm, "SVC", ParamSet{{"kernel", "rbf"}}};
    CHECK(f.reg.holon(model).skills == SkillSet{alg_entry, data_entry});
    CHECK(f.reg.holon(svc).skills == SkillSet{data_entry});
    CHECK(f.reg.holon(f.alg).skills == SkillSet{data_entry});
    CHECK(f.reg.holon(iris).skills == SkillSet{alg_entry});
    CHECK(f.reg.holon(f.data).skills == SkillSet{alg_entry});
    CHECK(f.reg.validate().empty());

    // a second model over the same data adds no new entry at the algorithm holon
    HolonId model2 = f.reg.create_holon("SVC", svc, ParamSet{{"kernel", "rbf"}}, {},
                                        HolonKind::Model);
    f.reg.join_model_to_data(model2, iris);
    f.reg.record_model_skill(model2);
    CHECK(f.reg.holon(svc).skills.size() == 1);
}

TEST_CASE("record_model_skill requires resolved links") {
    Fixture f;
    HolonId svc = f.reg.create_holon("SVC", f.alg, ParamSet{{"kernel", "rbf"}}, {},
                                     HolonKind::Algorithm);
    HolonId model = f.reg.create_holon("SVC", svc, ParamSet{{"kernel", "rbf"}}, {},
                                       HolonKind::Model);
    CHECK_THROWS_AS(f.reg.record_model_skill(model), StructuralError);
}

TEST_CASE("address book stores per-query next hops") {
    Fixture f;
    HolonId a = f.reg.create_holon("X", f.alg, ParamSet{{"p", "a"}}, {}, HolonKind::Algorithm);
    f.reg.store_address(f.sys, "q1", f.alg);
    f.reg.store_address(f.sys, "q2", f.data);
    CHECK(f.reg.get_address(f.sys, "q1") == f.alg);
    CHECK(f.reg.get_address(f.sys, "q2") == f.data);
    CHECK_THROWS_AS(f.reg.get_address(a, "q1"), MissingAddressError);
}

TEST_CASE("address rewiring mirrors the insertion example") {
    Fixture f;
    // holon 0 with entries {q1 -> 1, q2 -> 1}; holon 2 inserted over 1
    HolonId h0 = f.reg.create_holon("X", f.alg, ParamSet{{"p", "a"}}, {}, HolonKind::Algorithm);
    HolonId h1 = f.reg.create_holon("X", h0, ParamSet{{"p", "a"}}, {}, HolonKind::Algorithm);
    f.reg.store_address(h0, "q1", h1);
    f.reg.store_address(h0, "q2", h1);
    HolonId h2 = f.reg.create_holon("X", h0, ParamSet{{"p", "a"}}, {}, HolonKind::Algorithm);
    f.reg.join_holon(h1, h2);
    f.reg.rewire_addresses_on_insert(h0, h2, h1);

    CHECK(f.reg.get_address(h0, "q1") == h2);
    CHECK(f.reg.get_address(h0, "q2") == h2);
    CHECK(f.reg.get_address(h2, "q1") == h1);
    CHECK(f.reg.get_address(h2, "q2") == h1);

    // a later query writes fresh entries without disturbing the rewired ones
    f.reg.store_address(h0, "q3", h2);
    CHECK(f.reg.get_address(h0, "q3") == h2);

    SUBCASE("no-op when nothing points at the moved leaf") {
        HolonId h3 = f.reg.create_holon("X", h2, ParamSet{{"p", "b"}}, {}, HolonKind::Algorithm);
        f.reg.rewire_addresses_on_insert(h2, h3, HolonId{999});
        CHECK(f.reg.get_address(h2, "q1") == h1);
    }
}

TEST_CASE("validate flags hand-corrupted state") {
    Fixture f;
    HolonId a = f.reg.create_holon("X", f.alg, ParamSet{{"p", "a"}}, {}, HolonKind::Algorithm);
    HolonId mid = f.reg.create_holon("X", f.alg, ParamSet{{"p", "a"}}, {}, HolonKind::Algorithm);
    f.reg.join_holon(a, mid);
    HolonId b = f.reg.create_holon("X", mid, ParamSet{{"p", "b"}}, {}, HolonKind::Algorithm);
    f.reg.apply_capability(mid, f.reg.holon(b).capability);
    CHECK(f.reg.validate().empty());

    f.reg.holon_mut(mid).capability = ParamSet{{"p", "a"}};
    auto violations = f.reg.validate();
    REQUIRE_FALSE(violations.empty());
    CHECK(violations.front().find("parametric sum") != std::string::npos);
}

TEST_CASE("dot export is deterministic and mirrors the tree") {
    Fixture f;
    CHECK(f.reg.export_dot(true) == f.reg.export_dot(true));
    std::string dot = f.reg.export_dot(false);
    CHECK(dot.find("SYS [label=\"SYS\"]") != std::string::npos);
    CHECK(dot.find("SYS -> ALG;") != std::string::npos);
    CHECK(dot.find("SYS -> DATA;") != std::string::npos);

    HolonId leaf = f.reg.create_holon("X", f.alg, ParamSet{{"p", "a"}}, {}, HolonKind::Algorithm);
    HolonId model = f.reg.create_holon("X", leaf, ParamSet{{"p", "a"}}, {}, HolonKind::Model);
    (void)model;
    std::string with_models = f.reg.export_dot(true);
    std::string without = f.reg.export_dot(false);
    CHECK(with_models.find("style=dashed") != std::string::npos);
    CHECK(without.find("style=dashed") == std::string::npos);
    CHECK(without.find("h2") == std::string::npos);
}

TEST_CASE("json snapshot captures capabilities, skills and links") {
    Fixture f;
    HolonId svc = f.reg.create_holon("SVC", f.alg, ParamSet{{"kernel", "rbf"}}, {},
                                     HolonKind::Algorithm);
    (void)svc;
    auto snap = f.reg.snapshot_json();
    REQUIRE(snap["holons"].size() == 4);
    CHECK(snap["holons"][3]["label"] == "1:SVC");
    CHECK(snap["holons"][3]["capability"]["kernel"] == "rbf");
    CHECK(snap["holons"][0]["label"] == "SYS");
}

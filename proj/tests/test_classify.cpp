#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "sextic/classify.hpp"
#include "sextic/errors.hpp"

using namespace sextic;

namespace {

IVec dual(std::initializer_list<long> v) {
    IVec d;
    for (long x : v) d.push_back(Int(x));
    return d;
}

// the four glue subgroups of the A3+2A7 demonstration
const std::vector<std::vector<IVec>> kDemoGlue = {
    {},
    {dual({0, 4, 4, 0})},
    {dual({1, 1, 1, 1})},
    {dual({2, 2, 2, 0})},
};

LatticeType demo_type(int i) {
    auto s = make_setting(parse_ade("A3+2A7"));
    return build_lattice_type(s, kDemoGlue[static_cast<size_t>(i)]);
}

}  // namespace

TEST_CASE("v-smooth recognition") {
    auto s = make_setting(parse_ade("A3+2A7"));
    // x with one dual-basis component and zeros elsewhere
    IVec x(18, Int(0));
    x[2] = 1;  // t3^dual
    CHECK(v_smooth(*s, x));
    // e1 + e2 in the first A7 block: dual coords G*(e1+e2) = (-1,-1,1,0,...)
    IVec y(18, Int(0));
    y[3] = -1;
    y[4] = -1;
    y[5] = 1;
    CHECK(!v_smooth(*s, y));
    // e1^dual + e2^dual at one point
    IVec z(18, Int(0));
    z[3] = 1;
    z[4] = 1;
    CHECK(!v_smooth(*s, z));
}

TEST_CASE("demonstration type H0: empty class sets") {
    LatticeType t = demo_type(0);
    CHECK(t.glue_order() == 1);
    CHECK(t.sets.line_b.empty());
    CHECK(t.sets.line_l.empty());
    CHECK(t.sets.conic_b.empty());
    CHECK(t.sets.conic_l.empty());
    CHECK(t.profile.degs == std::vector<int>{6});
    CHECK(t.profile.z1 == 0);
    CHECK(t.profile.z2 == 0);
}

TEST_CASE("demonstration type H1: one involution-fixed conic class u") {
    LatticeType t = demo_type(1);
    CHECK(t.glue_order() == 2);
    CHECK(t.sets.line_b.empty());
    CHECK(t.sets.line_l.empty());
    REQUIRE(t.sets.conic_b.size() == 1);
    CHECK(t.sets.conic_l.empty());
    IVec u = dual({0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 2});
    CHECK(t.sets.conic_b[0] == u);
    CHECK(t.profile.degs == std::vector<int>{2, 4});
    CHECK(t.g_structure == IVec{Int(2)});
    CHECK(t.profile.f_structure.empty());
}

TEST_CASE("demonstration type H2: Z-splitting line pair v") {
    LatticeType t = demo_type(2);
    CHECK(t.glue_order() == 8);
    IVec v = dual({1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1});
    REQUIRE(t.sets.line_l.size() == 2);
    CHECK((t.sets.line_l[0] == v || t.sets.line_l[1] == v));
    CHECK(t.sets.line_l[0] == t.setting->apply_iota(t.sets.line_l[1]));
    CHECK(t.profile.z1 == 1);
    CHECK(t.profile.z2 == 0);
    CHECK(t.g_structure == IVec{Int(8)});
    CHECK(t.profile.f_structure == IVec{Int(4)});
    // v has class order 8
    CHECK(class_order(*t.setting, v) == 8);
    // the conic-component u is still there
    REQUIRE(t.sets.conic_b.size() == 1);
}

TEST_CASE("demonstration type H3: conic pair w and component u") {
    LatticeType t = demo_type(3);
    CHECK(t.glue_order() == 4);
    IVec w = dual({0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 2});
    REQUIRE(t.sets.conic_l.size() == 2);
    CHECK((t.sets.conic_l[0] == w || t.sets.conic_l[1] == w));
    CHECK(t.sets.conic_l[0] == t.setting->apply_iota(t.sets.conic_l[1]));
    REQUIRE(t.sets.conic_b.size() == 1);
    CHECK(t.profile.z1 == 0);
    CHECK(t.profile.z2 == 1);
    CHECK(class_order(*t.setting, w) == 4);
    // any lattice vector of Sigma has class order 1
    IVec sigma_vec(18, Int(0));
    for (int i = 0; i < 18; ++i) sigma_vec[static_cast<size_t>(i)] = t.setting->sigma.gram.at(i, 0);
    CHECK(class_order(*t.setting, sigma_vec) == 1);
}

TEST_CASE("lattice_types canonical outputs") {
    auto demo = lattice_types(parse_ade("A3+2A7"));
    REQUIRE(demo.size() == 4);
    std::vector<Int> orders;
    for (const auto& t : demo) orders.push_back(t.glue_order());
    CHECK(orders == std::vector<Int>{Int(1), Int(2), Int(4), Int(8)});
    // same configuration for the three reducible ones, different for H0
    CHECK(demo[1].fingerprint == demo[2].fingerprint);
    CHECK(demo[2].fingerprint == demo[3].fingerprint);
    CHECK(demo[0].fingerprint != demo[1].fingerprint);

    auto torus = lattice_types(parse_ade("6A2"));
    REQUIRE(torus.size() == 2);
    CHECK(torus[0].fingerprint == torus[1].fingerprint);  // the classical couple
    CHECK(torus[0].glue_order() == 1);
    CHECK(torus[1].glue_order() == 3);
    CHECK(torus[1].profile.z2 == 1);
    CHECK(torus[1].g_structure == IVec{Int(3)});
    CHECK(torus[1].profile.f_structure == IVec{Int(3)});

    CHECK(lattice_types(parse_ade("A1")).size() == 1);
    CHECK_THROWS_AS(lattice_types(ADEType{{{ADEFamily::A, 19}, {ADEFamily::A, 1}}}), domain_error);
}

TEST_CASE("quartic-plus-conic configuration with cubic lift classes") {
    auto types = lattice_types(parse_ade("3A1+4A3"));
    // the two [2,4]-types with cyclic G of order 4 (Zariski couple)
    std::vector<const LatticeType*> qc;
    for (const auto& t : types)
        if (t.profile.degs == std::vector<int>{2, 4} && t.g_structure == IVec{Int(4)})
            qc.push_back(&t);
    REQUIRE(qc.size() == 2);
    CHECK(qc[0]->fingerprint == qc[1]->fingerprint);
    const LatticeType* with_conic = qc[0]->profile.z2 == 1 ? qc[0] : qc[1];
    const LatticeType* without = qc[0]->profile.z2 == 1 ? qc[1] : qc[0];
    CHECK(with_conic->profile.z2 == 1);
    CHECK(without->profile.z2 == 0);
    CHECK(without->profile.z1 == 0);
    for (const auto* t : {with_conic, without}) {
        REQUIRE(t->profile.f_structure.size() == 1);
        CHECK(t->profile.f_structure[0] == 2);
    }
    // the no-conic member has exactly two cubic lift classes generating G
    REQUIRE(without->sets.cubic_l.size() == 2);
    for (const auto& g : without->sets.cubic_l) CHECK(class_order(*without->setting, g) == 4);
}

TEST_CASE("cubic classes: pencil class for two-cubic splittings, empty for A1") {
    auto t35 = lattice_types(parse_ade("3A5"));
    bool found33 = false;
    for (const auto& t : t35)
        if (t.profile.degs == std::vector<int>{3, 3}) {
            found33 = true;
            CHECK(!t.sets.cubic_b.empty());
        }
    CHECK(found33);
    auto a1 = lattice_types(parse_ade("A1"));
    REQUIRE(a1.size() == 1);
    CHECK(a1[0].sets.cubic_b.empty());
    CHECK(a1[0].sets.cubic_l.empty());
}

TEST_CASE("profile tau data for the conic families with several pairs") {
    // 4A4: two conic pairs, class order 5, patterns (1,1,2,2) and (2,2,4,4)
    auto types = lattice_types(parse_ade("4A4"));
    const LatticeType* c = nullptr;
    for (const auto& t : types)
        if (t.profile.z2 == 2) c = &t;
    REQUIRE(c != nullptr);
    CHECK(c->g_structure == IVec{Int(5)});
    CHECK(c->profile.f_structure == IVec{Int(5)});
    REQUIRE(c->sets.conic_l.size() == 4);
    for (const auto& x : c->sets.conic_l) CHECK(class_order(*c->setting, x) == 5);
    // tau entries are within range and use even-multiplicity indices
    for (const auto& pc : c->profile.classes) {
        if (pc.role != "conic-lift") continue;
        for (size_t p = 0; p < pc.tau.size(); ++p) {
            CHECK(pc.tau[p] >= 0);
            if (pc.tau[p] > 0) CHECK(even_multiplicity(c->setting->comp(static_cast<int>(p)), pc.tau[p]));
        }
    }
}

TEST_CASE("counts for small total Milnor numbers match the classification table") {
    auto res = enumerate_all(5, 1);
    std::vector<long> lat, cfg;
    for (const auto& row : res.rows) {
        lat.push_back(row.lattice_types);
        cfg.push_back(row.config_types);
    }
    CHECK(lat == std::vector<long>{1, 1, 2, 3, 6, 10});
    CHECK(cfg == std::vector<long>{1, 1, 2, 3, 6, 10});
    CHECK(res.kples.empty());
}

TEST_CASE("enumeration is independent of the worker count") {
    auto r1 = enumerate_all(6, 1);
    auto r2 = enumerate_all(6, 3);
    REQUIRE(r1.rows.size() == r2.rows.size());
    for (size_t i = 0; i < r1.rows.size(); ++i) {
        CHECK(r1.rows[i].lattice_types == r2.rows[i].lattice_types);
        CHECK(r1.rows[i].config_types == r2.rows[i].config_types);
    }
}

TEST_CASE("involution stability and parity invariants on classified types") {
    for (const char* name : {"A3+2A7", "6A2", "3A5", "2A4+A9"}) {
        for (const auto& t : lattice_types(parse_ade(name))) {
            const TypeSetting& s = *t.setting;
            auto is_stable = [&](const std::vector<IVec>& v) {
                std::set<IVec> set(v.begin(), v.end());
                for (const auto& x : v)
                    if (!set.count(s.apply_iota(x))) return false;
                return true;
            };
            CHECK(is_stable(t.sets.line_b));
            CHECK(is_stable(t.sets.line_l));
            CHECK(is_stable(t.sets.conic_b));
            CHECK(is_stable(t.sets.conic_l));
            CHECK(is_stable(t.sets.cubic_b));
            CHECK(is_stable(t.sets.cubic_l));
            CHECK(t.sets.line_l.size() % 2 == 0);
            CHECK(t.sets.conic_l.size() % 2 == 0);
            // involution acts freely on the lift parts
            for (const auto& x : t.sets.line_l) CHECK(s.apply_iota(x) != x);
            for (const auto& x : t.sets.conic_l) CHECK(s.apply_iota(x) != x);
            // parity invariant: nonzero components of degree <= 2 classes sit
            // at even-multiplicity indices
            for (const auto& pc : t.profile.classes) {
                if (pc.role == "cubic-lift" || pc.role == "cubic-component") continue;
                for (size_t p = 0; p < pc.tau.size(); ++p)
                    if (pc.tau[p] > 0)
                        CHECK(even_multiplicity(s.comp(static_cast<int>(p)), pc.tau[p]));
            }
        }
    }
}

TEST_CASE("json-visible invariants: glue members map into the overlattice") {
    LatticeType t = demo_type(2);
    for (const auto& tuple : t.glue_tuples) {
        IVec d = t.setting->dual_of_tuple(tuple);
        QVec q(d.size());
        for (size_t i = 0; i < d.size(); ++i) q[i] = Rat(d[i]);
        CHECK(t.lambda.contains(q));
    }
}

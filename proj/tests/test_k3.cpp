#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sextic/ade.hpp"
#include "sextic/classify.hpp"
#include "sextic/errors.hpp"
#include "sextic/k3.hpp"

using namespace sextic;

namespace {

FiniteQuadraticForm trivial_form() { return FiniteQuadraticForm{}; }

GenusSpec spec_of(int p, int m, FiniteQuadraticForm f) { return GenusSpec{p, m, std::move(f)}; }

}  // namespace

TEST_CASE("symmetric signature") {
    QMat m(2, 2);
    m.at(0, 0) = 2;
    m.at(1, 1) = -2;
    CHECK(symmetric_signature(m) == std::make_pair(1, 1));
    // hyperbolic plane with zero diagonal
    QMat u(2, 2);
    u.at(0, 1) = 1;
    u.at(1, 0) = 1;
    CHECK(symmetric_signature(u) == std::make_pair(1, 1));
    QMat neg = QMat::from_int(ade_gram(parse_ade("E8")));
    CHECK(symmetric_signature(neg) == std::make_pair(0, 8));
}

TEST_CASE("even lattice existence: unimodular cases") {
    CHECK(exists_even_lattice(spec_of(0, 8, trivial_form())));   // E8(-1)
    CHECK(!exists_even_lattice(spec_of(0, 1, trivial_form())));  // -1 not 0 mod 8
    CHECK(exists_even_lattice(spec_of(1, 1, trivial_form())));   // hyperbolic plane
    CHECK(exists_even_lattice(spec_of(0, 0, trivial_form())));
    CHECK(exists_even_lattice(spec_of(3, 19, trivial_form())));
}

TEST_CASE("even lattice existence validated by witness search at small rank") {
    // positive answers get an explicit witness; negative answers fail for a
    // stated reason (signature congruence or length bound)
    std::vector<std::pair<GenusSpec, bool>> cases;
    {
        // disc of A2: exists at (0,2) as A2 itself
        cases.push_back({spec_of(0, 2, disc_form(EvenLattice(ade_gram(parse_ade("A2"))))), true});
        // same form cannot live in signature (1,1): Milgram
        cases.push_back({spec_of(1, 1, disc_form(EvenLattice(ade_gram(parse_ade("A2"))))), false});
        // (Z/3)^2 with mixed signs on a hyperbolic-signature plane: [[0,3],[3,0]]
        IMat g(2, 2);
        g.at(0, 1) = 3;
        g.at(1, 0) = 3;
        cases.push_back({spec_of(1, 1, disc_form(EvenLattice(g))), true});
        // diag(-6,-6)
        IMat g2(2, 2);
        g2.at(0, 0) = -6;
        g2.at(1, 1) = -6;
        cases.push_back({spec_of(0, 2, disc_form(EvenLattice(g2))), true});
        // A1^3 form at too small a rank: length obstruction
        auto a1 = disc_form(EvenLattice(ade_gram(parse_ade("3A1"))));
        cases.push_back({spec_of(0, 1, a1), false});
    }
    for (auto& [spec, expect] : cases) {
        CHECK(exists_even_lattice(spec) == expect);
        if (expect) {
            auto witness = search_witness_lattice(spec, 3);
            REQUIRE(witness.has_value());
            auto [p, m] = symmetric_signature(QMat::from_int(*witness));
            CHECK(p == spec.p_plus);
            CHECK(m == spec.p_minus);
            CHECK(forms_isomorphic(disc_form(EvenLattice(*witness)), spec.form));
        }
    }
}

TEST_CASE("monotone under adding a hyperbolic plane") {
    std::vector<GenusSpec> specs;
    specs.push_back(spec_of(0, 2, disc_form(EvenLattice(ade_gram(parse_ade("A2"))))));
    specs.push_back(spec_of(0, 4, disc_form(EvenLattice(ade_gram(parse_ade("D4"))))));
    specs.push_back(spec_of(0, 5, disc_form(EvenLattice(ade_gram(parse_ade("A5"))))));
    specs.push_back(spec_of(1, 3, disc_form(EvenLattice(ade_gram(parse_ade("A1+A2"))))));
    for (auto& s : specs) {
        if (!exists_even_lattice(s)) continue;
        GenusSpec bigger = s;
        bigger.p_plus += 1;
        bigger.p_minus += 1;
        CHECK(exists_even_lattice(bigger));
    }
}

TEST_CASE("Milgram congruence for polarized ADE lattices across all mu <= 19") {
    // sign(disc) == 1 - mu mod 8; per-component signatures add, so checking
    // every irreducible component plus the polarization block covers all
    // configurations.
    auto check_comp = [](const std::string& name) {
        ADEType r = parse_ade(name);
        auto f = disc_form(EvenLattice(ade_gram(r)));
        CHECK(signature_mod8(f) == ((-r.mu()) % 8 + 8) % 8);
    };
    for (int l = 1; l <= 19; ++l) check_comp("A" + std::to_string(l));
    for (int m = 4; m <= 19; ++m) check_comp("D" + std::to_string(m));
    check_comp("E6");
    check_comp("E7");
    check_comp("E8");
    // spot-check a few full polarized lattices directly
    for (const char* name : {"A3+2A7", "6A2", "2A1+4A3", "D5+E7+A4", "9A2"}) {
        ADEType r = parse_ade(name);
        auto s = make_setting(r);
        CHECK(signature_mod8(s->sigma_disc) == ((1 - r.mu()) % 8 + 8) % 8);
    }
}

TEST_CASE("embeds_in_k3 on realized overlattices; signature guard") {
    auto s = make_setting(parse_ade("6A2"));
    auto h0 = make_isotropic_subgroup(s->sigma_disc, {});
    auto ol = overlattice(s->sigma, s->sigma_disc, *h0);
    CHECK(embeds_in_k3(ol.abstract));
    // all four A3+2A7 overlattices embed
    auto s2 = make_setting(parse_ade("A3+2A7"));
    for (auto gens : std::vector<std::vector<IVec>>{{},
                                                    {{Int(0), Int(4), Int(4), Int(0)}},
                                                    {{Int(1), Int(1), Int(1), Int(1)}},
                                                    {{Int(2), Int(2), Int(2), Int(0)}}}) {
        auto h = make_isotropic_subgroup(s2->sigma_disc, gens);
        REQUIRE(h.has_value());
        auto o = overlattice(s2->sigma, s2->sigma_disc, *h);
        CHECK(embeds_in_k3(o.abstract));
    }
    // wrong signature is a domain error
    CHECK_THROWS_AS(embeds_in_k3(EvenLattice(ade_gram(parse_ade("A2")))), domain_error);
}

TEST_CASE("root and isotropic vector conditions") {
    // trivial glue always passes
    for (const char* name : {"A1", "A7", "6A2", "E8+D4"}) {
        EvenLattice e(ade_gram(parse_ade(name)));
        CHECK(root_condition(e, {}));
        CHECK(isotropic_condition(e, {}));
    }
    // A7 + h with glue <4 e7^dual>: the [4]-coset contains (-2)-vectors
    {
        EvenLattice e(ade_gram(parse_ade("A7")));
        GlueClassView c;
        c.h_half = false;
        QVec dual(7, Rat(0));
        dual[6] = 4;
        c.e_part = e.dual_to_primal(dual);
        CHECK(!root_condition(e, {c}));
    }
    // A1 + h with glue <a^dual + h^dual>: x = (h + a)/2 has x^2 = 0, (x,h) = 1
    {
        EvenLattice e(ade_gram(parse_ade("A1")));
        GlueClassView c;
        c.h_half = true;
        QVec dual(1, Rat(1));
        c.e_part = e.dual_to_primal(dual);
        CHECK(!isotropic_condition(e, {c}));
    }
    // the three nontrivial A3+2A7 glue subgroups pass both conditions
    {
        auto s = make_setting(parse_ade("A3+2A7"));
        EvenLattice e(ade_gram(parse_ade("A3+2A7")));
        for (auto gens : std::vector<std::vector<IVec>>{{{Int(0), Int(4), Int(4), Int(0)}},
                                                        {{Int(1), Int(1), Int(1), Int(1)}},
                                                        {{Int(2), Int(2), Int(2), Int(0)}}}) {
            auto h = make_isotropic_subgroup(s->sigma_disc, gens);
            REQUIRE(h.has_value());
            std::vector<GlueClassView> classes;
            for (const auto& el : h->elements) {
                bool zero = true;
                for (const auto& v : el)
                    if (v != 0) zero = false;
                if (zero) continue;
                GlueClassView c;
                c.h_half = el[3] == 1;
                QVec dual(static_cast<size_t>(e.rank), Rat(0));
                for (int slot = 0; slot < 3; ++slot) {
                    const IVec& gd = s->slot_gens_dual[static_cast<size_t>(slot)];
                    for (int i = 0; i < e.rank; ++i)
                        dual[static_cast<size_t>(i)] += Rat(el[static_cast<size_t>(slot)] * gd[static_cast<size_t>(i)]);
                }
                c.e_part = e.dual_to_primal(dual);
                classes.push_back(std::move(c));
            }
            CHECK(root_condition(e, classes));
            CHECK(isotropic_condition(e, classes));
        }
    }
}

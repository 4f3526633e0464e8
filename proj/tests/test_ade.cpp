#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sextic/ade.hpp"
#include "sextic/errors.hpp"
#include "sextic/lattice.hpp"

using namespace sextic;

TEST_CASE("ADE string grammar") {
    ADEType r = parse_ade("A3+2A7");
    REQUIRE(r.components.size() == 3);
    CHECK(r.components[0].name() == "A3");
    CHECK(r.components[1].name() == "A7");
    CHECK(r.components[2].name() == "A7");
    CHECK(r.mu() == 17);
    CHECK(r.name() == "A3+2A7");

    ADEType t = parse_ade("3A5");
    REQUIRE(t.components.size() == 3);
    for (auto& c : t.components) CHECK(c.name() == "A5");

    CHECK_THROWS_AS(parse_ade("D3"), parse_error);
    CHECK_THROWS_AS(parse_ade("E9"), parse_error);
    CHECK_THROWS_AS(parse_ade("A3+"), parse_error);
    CHECK_THROWS_AS(parse_ade("4A5"), parse_error);  // rank 20 > 19
    CHECK(parse_ade("0").components.empty());
}

TEST_CASE("component Gram matrices") {
    CHECK(ade_gram(parse_ade("A1")).at(0, 0) == -2);
    IMat a2 = ade_gram(parse_ade("A2"));
    CHECK(a2.at(0, 0) == -2);
    CHECK(a2.at(0, 1) == 1);
    CHECK(a2.at(1, 0) == 1);
    CHECK(a2.at(1, 1) == -2);
    // |det| of Sigma(A3+2A7 + h): 4*8*8*2
    IMat g = ade_gram(parse_ade("A3+2A7"));
    IMat sigma(18, 18);
    for (int i = 0; i < 17; ++i)
        for (int j = 0; j < 17; ++j) sigma.at(i, j) = g.at(i, j);
    sigma.at(17, 17) = 2;
    Int d = det(sigma);
    CHECK((d < 0 ? -d : d) == 512);
    // every component gram is negative definite
    for (const char* name : {"A7", "D4", "D9", "E6", "E7", "E8"})
        CHECK(is_negative_definite(ade_gram(parse_ade(name))));
}

TEST_CASE("involution tables") {
    auto a3 = component_involution({ADEFamily::A, 3});
    CHECK(a3 == std::vector<int>{2, 1, 0});  // t1 <-> t3
    auto d4 = component_involution({ADEFamily::D, 4});
    CHECK(d4 == std::vector<int>{0, 1, 2, 3});
    auto d5 = component_involution({ADEFamily::D, 5});
    CHECK(d5 == std::vector<int>{1, 0, 2, 3, 4});
    auto e6 = component_involution({ADEFamily::E, 6});
    CHECK(e6[0] == 0);
    CHECK(e6[1] == 5);  // e2 <-> e6
    CHECK(e6[2] == 4);  // e3 <-> e5
    CHECK(e6[3] == 3);
    auto e7 = component_involution({ADEFamily::E, 7});
    for (int i = 0; i < 7; ++i) CHECK(e7[static_cast<size_t>(i)] == i);
}

TEST_CASE("involution is a Gram isometry and squares to identity") {
    for (const char* name : {"A5", "D6", "D7", "E6", "E7", "E8"}) {
        ADEType r = parse_ade(name);
        IMat g = ade_gram(r);
        auto p = ade_involution(r);
        for (int i = 0; i < r.mu(); ++i) {
            CHECK(p[static_cast<size_t>(p[static_cast<size_t>(i)])] == i);
            for (int j = 0; j < r.mu(); ++j)
                CHECK(g.at(p[static_cast<size_t>(i)], p[static_cast<size_t>(j)]) == g.at(i, j));
        }
    }
}

TEST_CASE("multiplicity parity table") {
    CHECK(even_multiplicity({ADEFamily::A, 5}, 3));
    CHECK(even_multiplicity({ADEFamily::A, 4}, 1));
    CHECK(!even_multiplicity({ADEFamily::E, 6}, 1));
    CHECK(even_multiplicity({ADEFamily::E, 6}, 2));
    CHECK(!even_multiplicity({ADEFamily::E, 7}, 2));
    CHECK(!even_multiplicity({ADEFamily::E, 7}, 4));
    CHECK(even_multiplicity({ADEFamily::E, 7}, 7));
    CHECK(!even_multiplicity({ADEFamily::E, 8}, 8));
    // D6 (even): i even or 1 or 2
    CHECK(even_multiplicity({ADEFamily::D, 6}, 1));
    CHECK(even_multiplicity({ADEFamily::D, 6}, 2));
    CHECK(!even_multiplicity({ADEFamily::D, 6}, 3));
    CHECK(even_multiplicity({ADEFamily::D, 6}, 4));
    // D7 (odd): i odd or 1 or 2
    CHECK(even_multiplicity({ADEFamily::D, 7}, 2));
    CHECK(even_multiplicity({ADEFamily::D, 7}, 3));
    CHECK(!even_multiplicity({ADEFamily::D, 7}, 4));
    CHECK_THROWS_AS(even_multiplicity({ADEFamily::A, 3}, 4), domain_error);
}

TEST_CASE("smooth branch classes") {
    CHECK(smooth_branch_classes({ADEFamily::A, 7}) == std::vector<int>{4});
    CHECK(smooth_branch_classes({ADEFamily::A, 4}).empty());
    CHECK(smooth_branch_classes({ADEFamily::E, 7}) == std::vector<int>{7});
    CHECK(smooth_branch_classes({ADEFamily::E, 6}).empty());
    CHECK(smooth_branch_classes({ADEFamily::D, 6}) == std::vector<int>{1, 2, 6});
    CHECK(smooth_branch_classes({ADEFamily::D, 7}) == std::vector<int>{7});
}

TEST_CASE("sigma_P values") {
    CHECK(sigma_p({ADEFamily::A, 2}, 1) == make_rat(-1, 3));
    CHECK(sigma_p({ADEFamily::E, 8}, 8) == Rat(-2));
    CHECK(sigma_p({ADEFamily::D, 9}, 1) == make_rat(2 - 9, 4));
    CHECK(sigma_p({ADEFamily::A, 7}, 0) == Rat(0));
    CHECK(sigma_p({ADEFamily::E, 6}, 4) == Rat(-6));
    CHECK(sigma_p({ADEFamily::E, 7}, 5) == make_rat(-15, 2));
}

TEST_CASE("sigma_P symmetry and sign") {
    for (int l = 1; l <= 12; ++l)
        for (int tau = 1; tau <= l; ++tau)
            CHECK(sigma_p({ADEFamily::A, l}, tau) == sigma_p({ADEFamily::A, l}, l + 1 - tau));
    for (const char* name : {"A9", "D8", "D11", "E6", "E7", "E8"}) {
        ADEComponent c = parse_ade(name).components[0];
        CHECK(sigma_p(c, 0) == 0);
        for (int tau = 1; tau <= c.n; ++tau) CHECK(sigma_p(c, tau) < 0);
    }
}

TEST_CASE("sigma_P equals the dual-pairing of the incidence class with its involute") {
    // independent oracle: sigma_P(tau) = (e_tau^dual, iota(e_tau^dual))
    for (const char* name : {"A1", "A2", "A6", "A11", "D4", "D5", "D8", "D9", "E6", "E7", "E8"}) {
        ADEComponent c = parse_ade(name).components[0];
        EvenLattice l(component_gram(c));
        auto inv = component_involution(c);
        const QMat& gi = l.gram_inverse();
        for (int tau = 1; tau <= c.n; ++tau) {
            Rat expect = gi.at(tau - 1, inv[static_cast<size_t>(tau - 1)]);
            CHECK(sigma_p(c, tau) == expect);
        }
    }
}

TEST_CASE("automorphism generators") {
    // A3+2A7: order 2 * (2*2*2) = 16
    ADEType r = parse_ade("A3+2A7");
    CHECK(permutation_group_order(aut_generators(r), r.mu()) == 16);
    // A1: trivial
    ADEType a1 = parse_ade("A1");
    CHECK(permutation_group_order(aut_generators(a1), 1) == 1);
    // 3A5: 2^3 * 3! = 48
    ADEType t = parse_ade("3A5");
    CHECK(permutation_group_order(aut_generators(t), t.mu()) == 48);
    // D4 triality-restricted: full S3
    ADEType d4 = parse_ade("D4");
    CHECK(permutation_group_order(aut_generators(d4), 4) == 6);
}

TEST_CASE("automorphisms preserve the Gram matrix; equal brute-force stabilizer at small rank") {
    for (const char* name : {"2A2", "A1+A3", "D4+A1", "2A3", "D5+A2", "E6+A1"}) {
        ADEType r = parse_ade(name);
        IMat g = ade_gram(r);
        auto gens = aut_generators(r);
        for (const auto& p : gens)
            for (int i = 0; i < r.mu(); ++i)
                for (int j = 0; j < r.mu(); ++j)
                    CHECK(g.at(p[static_cast<size_t>(i)], p[static_cast<size_t>(j)]) == g.at(i, j));
        // brute-force stabilizer: all Gram-preserving permutations
        int n = r.mu();
        std::vector<int> perm(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
        size_t count = 0;
        do {
            bool ok = true;
            for (int i = 0; i < n && ok; ++i)
                for (int j = 0; j < n; ++j)
                    if (g.at(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)]) != g.at(i, j)) {
                        ok = false;
                        break;
                    }
            if (ok) ++count;
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(permutation_group_order(gens, n) == count);
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sextic/ade.hpp"
#include "sextic/classify.hpp"
#include "sextic/discform.hpp"
#include "sextic/errors.hpp"
#include "sextic/orbits.hpp"

using namespace sextic;

namespace {

EvenLattice sigma_of(const char* name) {
    ADEType r = parse_ade(name);
    return make_setting(r)->sigma;
}

}  // namespace

TEST_CASE("discriminant form basics") {
    // E8 is unimodular
    EvenLattice e8(ade_gram(parse_ade("E8")));
    CHECK(disc_form(e8).order() == 1);

    // <h>, h^2 = 2: Z/2 with q = 1/2
    IMat h(1, 1);
    h.at(0, 0) = 2;
    EvenLattice hl(h);
    auto f = disc_form(hl);
    REQUIRE(f.orders.size() == 1);
    CHECK(f.orders[0] == 2);
    CHECK(f.qvals[0] == make_rat(1, 2));
}

TEST_CASE("discriminant form of the A3+2A7 polarized lattice") {
    auto s = make_setting(parse_ade("A3+2A7"));
    const auto& f = s->sigma_disc;
    REQUIRE(f.orders.size() == 4);
    CHECK(f.orders[0] == 4);
    CHECK(f.orders[1] == 8);
    CHECK(f.orders[2] == 8);
    CHECK(f.orders[3] == 2);
    // q(w,x,y,z) = -(3/4)w^2 - (7/8)x^2 - (7/8)y^2 + (1/2)z^2 mod 2
    CHECK(f.qvals[0] == mod_interval(make_rat(-3, 4), Rat(2)));
    CHECK(f.qvals[1] == mod_interval(make_rat(-7, 8), Rat(2)));
    CHECK(f.qvals[2] == mod_interval(make_rat(-7, 8), Rat(2)));
    CHECK(f.qvals[3] == make_rat(1, 2));
    // off-diagonal pairings vanish (orthogonal components)
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) CHECK(f.bvals.at(i, j) == 0);
}

TEST_CASE("|disc| equals |det| and q is well defined") {
    std::mt19937 rng(5);
    for (const char* name : {"A4", "D5", "E6+A2", "A3+2A7", "D4+D4"}) {
        EvenLattice sig = sigma_of(name);
        auto f = disc_form(sig);
        Int d = det(sig.gram);
        CHECK(f.order() == (d < 0 ? -d : d));
        // q well defined: shifting a dual vector by a lattice vector preserves q mod 2
        const QMat& gi = sig.gram_inverse();
        for (int trial = 0; trial < 5; ++trial) {
            IVec x(static_cast<size_t>(sig.rank));
            for (auto& v : x) v = static_cast<long>(rng() % 7) - 3;
            QVec xd(x.size());
            for (size_t i = 0; i < x.size(); ++i) xd[i] = Rat(x[i]);
            auto qval = [&](const QVec& d2) {
                QVec p = mat_vec(gi, d2);
                Rat s(0);
                for (size_t i = 0; i < p.size(); ++i) s += d2[i] * p[i];
                return mod_interval(s, Rat(2));
            };
            QVec shifted = xd;
            int k = static_cast<int>(rng() % static_cast<unsigned>(sig.rank));
            for (int i = 0; i < sig.rank; ++i) shifted[static_cast<size_t>(i)] += Rat(sig.gram.at(i, k));
            CHECK(qval(xd) == qval(shifted));
        }
    }
}

TEST_CASE("isotropic subgroup constructor verifies every element") {
    auto s = make_setting(parse_ade("A3+2A7"));
    // H2 = <[1,1,1,1]> is isotropic of order 8
    auto h2 = make_isotropic_subgroup(s->sigma_disc, {IVec{Int(1), Int(1), Int(1), Int(1)}});
    REQUIRE(h2.has_value());
    CHECK(h2->order() == 8);
    REQUIRE(h2->structure.size() == 1);
    CHECK(h2->structure[0] == 8);
    // a class with q != 0 is rejected with an offender
    IVec offender;
    auto bad = make_isotropic_subgroup(s->sigma_disc, {IVec{Int(1), Int(0), Int(0), Int(0)}}, &offender);
    CHECK(!bad.has_value());
    CHECK(s->sigma_disc.q_of(offender) != 0);
}

TEST_CASE("overlattice: index, evenness, discriminant order identity") {
    auto s = make_setting(parse_ade("A3+2A7"));
    auto h0 = make_isotropic_subgroup(s->sigma_disc, {});
    auto ol0 = overlattice(s->sigma, s->sigma_disc, *h0);
    // H = 0 gives Sigma itself
    Int d0 = det(ol0.abstract.gram);
    CHECK((d0 < 0 ? -d0 : d0) == 512);

    auto h2 = make_isotropic_subgroup(s->sigma_disc, {IVec{Int(1), Int(1), Int(1), Int(1)}});
    auto ol2 = overlattice(s->sigma, s->sigma_disc, *h2);
    Int d2 = det(ol2.abstract.gram);
    CHECK((d2 < 0 ? -d2 : d2) == 512 / 64);  // |A| / |H|^2
    auto f2 = disc_form(ol2.abstract);
    CHECK(f2.order() == 8);
    // index via quotient structure
    std::vector<QVec> sg;
    for (int j = 0; j < s->sigma.rank; ++j) {
        QVec col(static_cast<size_t>(s->sigma.rank));
        for (int i = 0; i < s->sigma.rank; ++i) col[static_cast<size_t>(i)] = Rat(s->sigma.gram.at(i, j));
        sg.push_back(col);
    }
    Sublattice ssub = Sublattice::from_generators(s->sigma.rank, sg);
    IVec q = quotient_structure(ol2.in_dual, ssub);
    REQUIRE(q.size() == 1);
    CHECK(q[0] == 8);
    // trivial quotient
    CHECK(quotient_structure(ol2.in_dual, ol2.in_dual).empty());
}

TEST_CASE("overlattice refuses non-isotropic glue") {
    auto s = make_setting(parse_ade("A1"));
    // [a^dual] has q = -1/2
    IsotropicSubgroup fake;
    fake.elements = {IVec{Int(0), Int(0)}, IVec{Int(1), Int(0)}};
    fake.generators = {IVec{Int(1), Int(0)}};
    fake.order_value = 2;
    CHECK_THROWS(overlattice(s->sigma, s->sigma_disc, fake));
}

TEST_CASE("isotropic orbit representatives for A3+2A7 match the four known subgroups") {
    auto s = make_setting(parse_ade("A3+2A7"));
    // automorphism maps on disc tuples from the global generators
    std::vector<TupleMap> maps;
    {
        // negation on each A-slot (diagram flips) and the swap of the two A7 slots
        size_t k = s->sigma_disc.ngens();
        TupleMap neg1{std::vector<std::vector<long>>(k, std::vector<long>(k, 0))};
        for (size_t i = 0; i < k; ++i) neg1.m[i][i] = 1;
        neg1.m[0][0] = -1;
        maps.push_back(neg1);
        TupleMap neg2 = neg1;
        neg2.m[0][0] = 1;
        neg2.m[1][1] = -1;
        maps.push_back(neg2);
        TupleMap neg3 = neg2;
        neg3.m[1][1] = 1;
        neg3.m[2][2] = -1;
        maps.push_back(neg3);
        TupleMap swap = neg1;
        swap.m[0][0] = 1;
        swap.m[1][1] = swap.m[2][2] = 0;
        swap.m[1][2] = swap.m[2][1] = 1;
        maps.push_back(swap);
    }
    auto orbits = isotropic_orbits(s->sigma_disc, maps);
    // filter to the four sextic-realizable ones is done in classify; here the
    // raw orbit census contains them; check the printed generators appear.
    std::vector<Int> orders;
    for (const auto& h : orbits) orders.push_back(h.order());
    CHECK(std::count(orders.begin(), orders.end(), Int(1)) == 1);
    CHECK(std::count(orders.begin(), orders.end(), Int(8)) >= 1);
    // exhaustive set is recovered by expanding every orbit
    auto all = isotropic_subgroups_all(s->sigma_disc);
    size_t expanded = 0;
    for (const auto& h : orbits) expanded += orbit_size(s->sigma_disc, h, maps);
    CHECK(expanded == all.size());
}

TEST_CASE("trivial form has only the zero subgroup") {
    EvenLattice e8(ade_gram(parse_ade("E8")));
    auto f = disc_form(e8);
    auto all = isotropic_subgroups_all(f);
    REQUIRE(all.size() == 1);
    CHECK(all[0].order() == 1);
}

TEST_CASE("structured enumeration agrees with the plain method at small scale") {
    for (const char* name : {"A1", "A2", "2A1", "A3", "6A2", "2A2+A1", "A7", "D4+A1", "4A1"}) {
        ADEType r = parse_ade(name);
        auto s = make_setting(r);
        StructuredEnumOptions opt;  // no viability filter
        auto reps = enumerate_isotropic_up_to_aut(s->disc, opt);
        // build the full automorphism maps on tuples from aut_generators
        std::vector<TupleMap> maps;
        size_t k = s->sigma_disc.ngens();
        for (const auto& perm : aut_generators(r)) {
            TupleMap tm{std::vector<std::vector<long>>(k, std::vector<long>(k, 0))};
            for (size_t sl = 0; sl < k; ++sl) {
                // image of slot generator under the basis permutation
                IVec img(static_cast<size_t>(s->n), Int(0));
                for (int i = 0; i < s->n - 1; ++i)
                    img[static_cast<size_t>(perm[static_cast<size_t>(i)])] =
                        s->slot_gens_dual[sl][static_cast<size_t>(i)];
                img[static_cast<size_t>(s->n - 1)] = s->slot_gens_dual[sl][static_cast<size_t>(s->n - 1)];
                auto tuple = s->tuple_of_dual(img);
                for (size_t i = 0; i < k; ++i) tm.m[i][sl] = tuple[i];
            }
            maps.push_back(tm);
        }
        auto plain = isotropic_orbits(s->sigma_disc, maps);
        CHECK(reps.size() == plain.size());
    }
}

TEST_CASE("jordan decomposition reassembles group order and is orthogonal") {
    for (const char* name : {"A3+2A7", "6A2", "2A1+4A3", "D5+A4", "E6+E7"}) {
        EvenLattice sig = sigma_of(name);
        auto f = disc_form(sig);
        for (const Int& p : f.prime_support()) {
            auto blocks = jordan_decomposition(f, p);
            Int expect(1);
            {
                Int o = f.order();
                while (o % p == 0) { expect *= p; o /= p; }
            }
            Int got(1);
            for (const auto& b : blocks) {
                Int pk(1);
                for (int i = 0; i < b.scale; ++i) pk *= p;
                for (int t = 0; t < b.rank; ++t) got *= pk;
            }
            CHECK(got == expect);
        }
    }
}

TEST_CASE("signatures via Gauss sums: components match minus their rank mod 8") {
    for (const char* name : {"A1", "A2", "A7", "A12", "D4", "D7", "D10", "E6", "E7"}) {
        ADEType r = parse_ade(name);
        EvenLattice l(ade_gram(r));
        auto f = disc_form(l);
        int sig = signature_mod8(f);
        int expect = ((-r.mu()) % 8 + 8) % 8;
        CHECK(sig == expect);
    }
    // the polarization block has signature +1
    IMat h(1, 1);
    h.at(0, 0) = 2;
    auto f = disc_form(EvenLattice(h));
    CHECK(signature_mod8(f) == 1);
}

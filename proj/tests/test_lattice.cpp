#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sextic/ade.hpp"
#include "sextic/errors.hpp"
#include "sextic/lattice.hpp"

using namespace sextic;

namespace {

QVec qvec(std::initializer_list<long> v) {
    QVec q;
    for (long x : v) q.push_back(Rat(x));
    return q;
}

}  // namespace

TEST_CASE("root monoid membership") {
    EvenLattice a3(ade_gram(parse_ade("A3")));
    CHECK(in_root_monoid(a3, qvec({1, 0, 0})));
    CHECK(!in_root_monoid(a3, qvec({1, -1, 0})));
    CHECK(in_root_monoid(a3, qvec({1, 2, 1})));
    QVec half{make_rat(1, 2), Rat(0), Rat(0)};
    CHECK(!in_root_monoid(a3, half));
    // ambient version with span error
    std::vector<QVec> fs = {qvec({1, 0, 0}), qvec({0, 1, 0})};
    CHECK(in_root_monoid(fs, qvec({1, 1, 0})));
    CHECK(!in_root_monoid(fs, qvec({1, -1, 0})));
    CHECK_THROWS_AS(in_root_monoid(fs, qvec({0, 0, 1})), domain_error);
}

TEST_CASE("vector enumeration: A1 roots") {
    EvenLattice a1(ade_gram(parse_ade("A1")));
    auto v = vectors_in_coset_with_norm(a1, qvec({0}), Rat(-2));
    REQUIRE(v.size() == 2);
    CHECK(v[0] == qvec({-1}));
    CHECK(v[1] == qvec({1}));
}

TEST_CASE("vector enumeration: A2 has six roots") {
    EvenLattice a2(ade_gram(parse_ade("A2")));
    auto v = vectors_in_coset_with_norm(a2, qvec({0, 0}), Rat(-2));
    CHECK(v.size() == 6);
    auto naive = vectors_in_coset_with_norm_naive(a2, qvec({0, 0}), Rat(-2));
    CHECK(v == naive);
}

TEST_CASE("vector enumeration: glue coset of A3") {
    EvenLattice a3(ade_gram(parse_ade("A3")));
    // coset e3^dual: primal coords = column of G^{-1}
    QVec coset = a3.dual_to_primal(qvec({0, 0, 1}));
    auto v = vectors_in_coset_with_norm(a3, coset, make_rat(-3, 4));
    CHECK(v.size() == 4);
    auto naive = vectors_in_coset_with_norm_naive(a3, coset, make_rat(-3, 4));
    CHECK(v == naive);
}

TEST_CASE("root counts of the irreducible types up to rank 8") {
    auto count = [](const char* name) {
        EvenLattice l(ade_gram(parse_ade(name)));
        return vectors_in_coset_with_norm(l, QVec(static_cast<size_t>(l.rank), Rat(0)), Rat(-2)).size();
    };
    for (int l = 1; l <= 8; ++l) {
        std::string name = "A" + std::to_string(l);
        CHECK(count(name.c_str()) == static_cast<size_t>(l * (l + 1)));
    }
    for (int m = 4; m <= 8; ++m) {
        std::string name = "D" + std::to_string(m);
        CHECK(count(name.c_str()) == static_cast<size_t>(2 * m * (m - 1)));
    }
    CHECK(count("E6") == 72);
    CHECK(count("E7") == 126);
    CHECK(count("E8") == 240);
}

TEST_CASE("enumerator agrees with the naive box oracle on random cosets") {
    std::mt19937 rng(11);
    std::vector<std::string> names = {"A2", "A3", "2A2", "A1+A3", "D4", "A5", "D5", "A2+A3", "3A2", "E6"};
    for (const auto& name : names) {
        ADEType r = parse_ade(name);
        EvenLattice l(ade_gram(r));
        for (int trial = 0; trial < 4; ++trial) {
            QVec coset(static_cast<size_t>(l.rank));
            long den = 1 + static_cast<long>(rng() % 12);
            for (auto& c : coset) c = make_rat(static_cast<long>(rng() % 5) - 2, den);
            for (long nn : {0L, -2L, -4L}) {
                Rat norm = Rat(nn) + make_rat(static_cast<long>(rng() % 3) - 2, den);
                if (norm > 0) norm = -norm;
                auto fast = vectors_in_coset_with_norm(l, coset, norm);
                auto naive = vectors_in_coset_with_norm_naive(l, coset, norm);
                CHECK(fast == naive);
            }
        }
    }
}

TEST_CASE("enumeration rejects indefinite input") {
    IMat g(2, 2);
    g.at(0, 0) = 2;
    g.at(1, 1) = -2;
    EvenLattice l(g);
    CHECK_THROWS_AS(vectors_in_coset_with_norm(l, qvec({0, 0}), Rat(-2)), domain_error);
}

TEST_CASE("rank zero lattice is trivial but valid") {
    EvenLattice l{IMat(0, 0)};
    auto v = vectors_in_coset_with_norm(l, QVec{}, Rat(0));
    REQUIRE(v.size() == 1);
    CHECK(v[0].empty());
    CHECK(vectors_in_coset_with_norm(l, QVec{}, Rat(-2)).empty());
}

TEST_CASE("fundamental system from a generic form") {
    EvenLattice a1(ade_gram(parse_ade("A1")));
    auto f1 = fundamental_system_from_form(a1, qvec({1}));
    REQUIRE(f1.size() == 1);
    CHECK(f1[0] == IVec{Int(1)});

    EvenLattice a2(ade_gram(parse_ade("A2")));
    auto f2 = fundamental_system_from_form(a2, qvec({2, 1}));
    REQUIRE(f2.size() == 2);
    // Gram of the returned simple roots is the A2 matrix
    QVec r0(2), r1(2);
    for (int i = 0; i < 2; ++i) { r0[static_cast<size_t>(i)] = Rat(f2[0][static_cast<size_t>(i)]); r1[static_cast<size_t>(i)] = Rat(f2[1][static_cast<size_t>(i)]); }
    CHECK(a2.norm_primal(r0) == -2);
    CHECK(a2.norm_primal(r1) == -2);
    CHECK(a2.pair_primal(r0, r1) == 1);

    EvenLattice a3(ade_gram(parse_ade("A3")));
    auto f3 = fundamental_system_from_form(a3, qvec({3, 2, 1}));
    // standard chain is recovered (as a set)
    std::vector<IVec> expect = {{Int(0), Int(0), Int(1)}, {Int(0), Int(1), Int(0)}, {Int(1), Int(0), Int(0)}};
    CHECK(f3 == expect);

    CHECK_THROWS_AS(fundamental_system_from_form(a2, qvec({1, -1})), domain_error);
}

TEST_CASE("every root is one-signed over a fundamental system") {
    std::mt19937 rng(3);
    for (const char* name : {"A4", "D4", "2A2", "E6"}) {
        ADEType r = parse_ade(name);
        EvenLattice l(ade_gram(r));
        QVec t(static_cast<size_t>(l.rank));
        // random generic form; retry while on a wall
        std::vector<IVec> fs;
        while (true) {
            for (auto& c : t) c = make_rat(static_cast<long>(rng() % 2001) - 1000, 997);
            try {
                fs = fundamental_system_from_form(l, t);
                break;
            } catch (const domain_error&) {}
        }
        REQUIRE(static_cast<int>(fs.size()) == l.rank);
        std::vector<QVec> fsq;
        for (const auto& f : fs) {
            QVec q(f.size());
            for (size_t i = 0; i < f.size(); ++i) q[i] = Rat(f[i]);
            fsq.push_back(q);
        }
        for (const auto& d : vectors_in_coset_with_norm(l, QVec(static_cast<size_t>(l.rank), Rat(0)), Rat(-2))) {
            bool plus = false, minus = false;
            try {
                plus = in_root_monoid(fsq, d);
            } catch (const domain_error&) {}
            QVec neg(d.size());
            for (size_t i = 0; i < d.size(); ++i) neg[i] = -d[i];
            try {
                minus = in_root_monoid(fsq, neg);
            } catch (const domain_error&) {}
            CHECK((plus || minus));
        }
    }
}

TEST_CASE("sublattices: canonical basis, membership, primitivity") {
    // <2e> inside <e> (rank 1)
    Sublattice big = Sublattice::from_generators(1, {qvec({1})});
    Sublattice small = Sublattice::from_generators(1, {qvec({2})});
    CHECK(!is_primitive_sublattice(small, big));
    CHECK(is_primitive_sublattice(big, big));

    // index-2 sublattice of Z^2
    Sublattice l2 = Sublattice::from_generators(2, {qvec({1, 1}), qvec({1, -1})});
    Sublattice z2 = Sublattice::from_generators(2, {qvec({1, 0}), qvec({0, 1})});
    CHECK(!is_primitive_sublattice(l2, z2));
    // rational generators are handled exactly
    Sublattice half = Sublattice::from_generators(2, {QVec{make_rat(1, 2), make_rat(1, 2)}, qvec({0, 1})});
    CHECK(half.contains(qvec({1, 0})));
    CHECK(half.contains(QVec{make_rat(1, 2), make_rat(1, 2)}));
    CHECK(!half.contains(QVec{make_rat(1, 2), Rat(0)}));
    // generator order does not matter
    Sublattice half2 = Sublattice::from_generators(2, {qvec({0, 1}), QVec{make_rat(1, 2), make_rat(3, 2)}});
    CHECK(half == half2);
}

TEST_CASE("QVector host and basis discipline") {
    EvenLattice a2(ade_gram(parse_ade("A2")));
    EvenLattice a1(ade_gram(parse_ade("A1")));
    QVector x(&a2, CoordBasis::primal, qvec({1, 0}));
    QVector y(&a2, CoordBasis::primal, qvec({0, 1}));
    CHECK(x.pair(y) == 1);
    CHECK(x.norm() == -2);
    QVector xd = x.to_basis(CoordBasis::dual);
    CHECK(xd.coords == qvec({-2, 1}));
    CHECK(xd.pair(y) == 1);  // mixed pairing
    CHECK_THROWS_AS(x + xd, domain_error);
    QVector z(&a1, CoordBasis::primal, qvec({1}));
    CHECK_THROWS_AS(x.pair(z), domain_error);
    CHECK(xd.to_basis(CoordBasis::primal) == x);
}

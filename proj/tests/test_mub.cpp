#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mubx/mub.hpp"
#include "support.hpp"

using namespace mubx;

namespace {

Matrix pauli(char which) {
    Matrix m(2);
    switch (which) {
        case 'x': m(0, 1) = 1.0; m(1, 0) = 1.0; break;
        case 'y': m(0, 1) = {0.0, -1.0}; m(1, 0) = {0.0, 1.0}; break;
        default: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    }
    return m;
}

bool is_eigenbasis_of(const Basis& b, const Matrix& op) {
    for (const auto& v : b.vectors) {
        const std::vector<cplx> ov = op.apply(v);
        const cplx lambda = inner(v, ov);
        double residual = 0.0;
        for (size_t i = 0; i < v.size(); ++i) residual += std::norm(ov[i] - lambda * v[i]);
        if (std::sqrt(residual) > 1e-10) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("complete sets pass verification in every supported dimension") {
    for (int d : {2, 3, 4, 5, 7, 8, 9}) {
        CAPTURE(d);
        const MubSet set = build_complete_mub(d);
        CHECK(static_cast<int>(set.bases.size()) == d + 1);
        const MubReport rep = verify_mub(set, 1e-10);
        CHECK(rep.pass);
        CHECK(rep.max_orthonormality_dev <= 1e-10);
        CHECK(rep.max_unbiasedness_dev <= 1e-10);
        // first basis is computational by convention
        const Basis comp = computational_basis(d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                CHECK(std::abs(set.bases[0].vectors[i][j] - comp.vectors[i][j]) == 0.0);
    }
}

TEST_CASE("d=2 yields the Z, X, Y eigenbases") {
    const MubSet set = build_complete_mub(2);
    REQUIRE(set.bases.size() == 3);
    CHECK(is_eigenbasis_of(set.bases[0], pauli('z')));
    CHECK(is_eigenbasis_of(set.bases[1], pauli('x')));
    CHECK(is_eigenbasis_of(set.bases[2], pauli('y')));
}

TEST_CASE("d=3 overlaps are exactly unbiased to near machine precision") {
    const MubReport rep = verify_mub(build_complete_mub(3), 1e-12);
    CHECK(rep.max_unbiasedness_dev <= 1e-12);
}

TEST_CASE("d=5 count") { CHECK(build_complete_mub(5).bases.size() == 6); }

TEST_CASE("unsupported dimensions are rejected with the supported set named") {
    CHECK_THROWS_WITH_AS(build_complete_mub(6), doctest::Contains("{2,3,4,5,7,8,9}"),
                         std::invalid_argument);
    CHECK_THROWS_AS(build_complete_mub(10), std::invalid_argument);
}

TEST_CASE("d=6 triple") {
    const MubSet set = build_partial_mub_6();
    REQUIRE(set.bases.size() == 3);
    const MubReport rep = verify_mub(set, 1e-10);
    CHECK(rep.pass);
    for (int i = 0; i < 6; ++i) CHECK(set.bases[0].vectors[i][i] == cplx{1.0, 0.0});
}

TEST_CASE("verify_mub edge cases") {
    MubSet single{3, {computational_basis(3)}};
    CHECK(verify_mub(single, 1e-10).pass);  // no pairs: vacuous unbiasedness

    MubSet duplicate{3, {computational_basis(3), computational_basis(3)}};
    const MubReport rep = verify_mub(duplicate, 1e-10);
    CHECK_FALSE(rep.pass);
    CHECK(rep.max_unbiasedness_dev == doctest::Approx(1.0 - 1.0 / 3.0));

    MubSet mismatch{3, {computational_basis(3), computational_basis(4)}};
    CHECK_THROWS_AS(verify_mub(mismatch, 1e-10), std::invalid_argument);
}

TEST_CASE("conjugate basis") {
    const Basis comp = computational_basis(4);
    const Basis cc = conjugate_basis(comp);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(cc.vectors[i][j] == comp.vectors[i][j]);

    const Basis fourier = fourier_basis(5);
    const Basis fc = conjugate_basis(fourier);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            CHECK(fc.vectors[i][j] == std::conj(fourier.vectors[i][j]));

    const Basis back = conjugate_basis(fc);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) CHECK(back.vectors[i][j] == fourier.vectors[i][j]);
}

TEST_CASE("unbiasedness is invariant under per-vector phases") {
    MubSet set = build_complete_mub(3);
    const MubReport before = verify_mub(set, 1e-10);
    auto gen = test::rng(7);
    std::uniform_real_distribution<double> u(0.0, 2.0 * 3.14159265358979);
    for (auto& basis : set.bases)
        for (auto& v : basis.vectors) {
            const double ang = u(gen);
            const cplx phase{std::cos(ang), std::sin(ang)};
            for (cplx& z : v) z *= phase;
        }
    const MubReport after = verify_mub(set, 1e-10);
    CHECK(after.pass == before.pass);
    CHECK(after.max_unbiasedness_dev == doctest::Approx(before.max_unbiasedness_dev).epsilon(1e-9));
}

TEST_CASE("json round trip") {
    const MubSet set = build_complete_mub(3);
    nlohmann::json j = set;
    const MubSet back = j.get<MubSet>();
    CHECK(back.d == set.d);
    REQUIRE(back.bases.size() == set.bases.size());
    for (size_t b = 0; b < set.bases.size(); ++b)
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k)
                CHECK(back.bases[b].vectors[i][k] == set.bases[b].vectors[i][k]);

    const nlohmann::json missing_bases{{"d", 2}};
    CHECK_THROWS_AS(missing_bases.get<MubSet>(), nlohmann::json::exception);
}

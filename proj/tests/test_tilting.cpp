#include "complex_fixtures.hpp"
#include "qtilt/tilting.hpp"

#include <gtest/gtest.h>

using namespace qtilt;
using namespace fixtures;

namespace {

std::vector<std::size_t> all_of(const AlgebraPtr& a) { return all_vertices(*a); }

// Brute-force oracle for E: follow nu P(v) = I(v) by testing projectivity of each
// injective directly, without the permutation table.
std::vector<std::size_t> nust_oracle(const AlgebraPtr& a) {
    const std::size_t n = a->num_vertices();
    auto is_proj_inj = [&](std::size_t v) {
        for (std::size_t w = 0; w < n; ++w)
            if (is_isomorphic(projective(a, v), injective(a, w))) return true;
        return false;
    };
    auto nu_of = [&](std::size_t v) -> std::optional<std::size_t> {
        for (std::size_t w = 0; w < n; ++w)
            if (is_isomorphic(injective(a, v), projective(a, w))) return w;
        return std::nullopt;
    };
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t cur = v;
        bool ok = true;
        for (std::size_t i = 0; i <= n && ok; ++i) {
            if (!is_proj_inj(cur)) ok = false;
            auto nx = nu_of(cur);
            if (!nx) ok = false;
            else cur = *nx;
        }
        if (ok) out.push_back(v);
    }
    return out;
}

ProjComplex sec5_t(const AlgebraPtr& a, int r = 1, int s = 1) { return construct_tpq(a, {0}, {2, 3}, r, s).complex; }

}  // namespace

TEST(NuStable, Fig1) {
    auto a = shared(fig1());
    auto rep = maximal_nu_stable(a);
    EXPECT_EQ(rep.e_labels, (std::vector<std::size_t>{1, 2}));
    EXPECT_FALSE(rep.in_e(0));
}

TEST(NuStable, Sec5ContainsPAndQ) {
    auto a = shared(sec5_a());
    auto rep = maximal_nu_stable(a);
    EXPECT_TRUE(rep.in_e(0));
    EXPECT_TRUE(rep.in_e(2));
    EXPECT_TRUE(rep.in_e(3));
    EXPECT_FALSE(rep.in_e(1));
}

TEST(NuStable, SemisimpleAllProjectives) {
    auto a = shared(semisimple3());
    EXPECT_EQ(maximal_nu_stable(a).e_labels.size(), 3u);
}

TEST(NuStable, AgreesWithIsomorphismOracle) {
    for (const auto& p : {fig1(), fig2(), sec5_a(), sec5_b(), a2(), single_vertex()}) {
        auto a = shared(p);
        EXPECT_EQ(maximal_nu_stable(a).e_labels, nust_oracle(a));
    }
}

TEST(NuStable, EClosedUnderNu) {
    for (const auto& p : {fig1(), fig2(), sec5_a(), sec5_b()}) {
        auto a = shared(p);
        auto e = maximal_nu_stable(a).e_labels;
        Representation em = projective_sum(a, e);
        EXPECT_TRUE(is_isomorphic(nakayama(em), em).has_value());
    }
}

TEST(AddNu, ExamplesAndAllSubsets) {
    EXPECT_TRUE(check_add_nu_equal(shared(sec5_a()), {0}).via_nakayama);
    EXPECT_FALSE(check_add_nu_equal(shared(fig1()), {0}).via_nakayama);
    EXPECT_TRUE(check_add_nu_equal(shared(fig1()), {}).via_nakayama);
    std::size_t cases = 0;
    for (const auto& p : {fig1(), fig2(), sec5_a(), sec5_b(), a2(), semisimple3()}) {
        auto a = shared(p);
        const std::size_t n = a->num_vertices();
        for (std::size_t mask = 0; mask < (1u << n); ++mask) {
            std::vector<std::size_t> labels;
            for (std::size_t v = 0; v < n; ++v)
                if (mask >> v & 1) labels.push_back(v);
            EXPECT_NO_THROW(check_add_nu_equal(a, labels));
            ++cases;
        }
    }
    EXPECT_GE(cases, 20u);
}

TEST(AddNu, RejectsNonProjective) {
    auto a = shared(fig1());
    try {
        check_add_nu_equal(simple(a, 0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotProjective);
    }
}

TEST(VerifyTilting, Sec3Complex) {
    auto a = shared(fig1());
    auto rep = verify_tilting(sec3_t(a));
    EXPECT_TRUE(rep.self_orthogonal);
    EXPECT_EQ(rep.hom_dims.at(0), 9u);
    EXPECT_EQ(rep.hom_dims.at(1), 0u);
    EXPECT_EQ(rep.hom_dims.at(-1), 0u);
    EXPECT_TRUE(rep.k0_unimodular);
    EXPECT_TRUE(rep.basic);
    EXPECT_EQ(rep.generation, GenerationStatus::K0NecessaryOnly);
}

TEST(VerifyTilting, StalkAndDoubled) {
    auto a = shared(fig1());
    auto st = verify_tilting(stalk(a, all_of(a)));
    EXPECT_TRUE(st.tilting());
    EXPECT_TRUE(st.basic);
    auto t = sec3_t(a);
    auto d = verify_tilting(direct_sum(t, t));
    EXPECT_TRUE(d.self_orthogonal);
    EXPECT_FALSE(d.basic);
}

TEST(VerifyTilting, NotSelfOrthogonal) {
    // P(1) + P(1)[1] has Hom(P(1), P(1)[1][-1]) != 0
    auto a = shared(fig1());
    ProjComplex x = direct_sum(stalk(a, {0}), stalk(a, {0}, -1));
    EXPECT_FALSE(verify_tilting(x).self_orthogonal);
    EXPECT_THROW(end_algebra(x), Error);
}

TEST(VerifyTilting, InvalidComplexes) {
    auto a = shared(fig2());
    // unit entry
    ProjComplex unit(a, {{0, {0}}, {1, {0}}}, {{0, label_matrix(*a, 1, 1, {{0, 0, a->idempotent(0)}})}});
    try {
        verify_tilting(unit);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotRadical);
    }
}

TEST(Construct, Sec5Summands) {
    auto a = shared(sec5_a());
    auto c = construct_tpq(a, {0}, {2, 3}, 1, 1);
    EXPECT_TRUE(validate(c.complex).is_radical);
    ASSERT_EQ(c.decomposition.pieces.size(), 4u);
    EXPECT_EQ(c.decomposition.num_classes(), 4u);
    ProjComplex t2(a, {{-1, {0}}, {0, {1}}, {1, {2}}},
                   {{-1, label_matrix(*a, 1, 1, {{0, 0, elem(*a, {"alpha'"})}})},
                    {0, label_matrix(*a, 1, 1, {{0, 0, elem(*a, {"beta'"})}})}});
    ASSERT_TRUE(validate(t2).d_squared_zero);
    bool found = false;
    for (const auto& p : c.decomposition.pieces) found = found || is_isomorphic_complex(p.complex, t2).has_value();
    EXPECT_TRUE(found);
    auto rep = verify_tilting(c.complex, true);
    EXPECT_TRUE(rep.tilting());
    EXPECT_TRUE(rep.basic);
    EXPECT_EQ(rep.generation, GenerationStatus::ProvedByConstruction);
}

TEST(Construct, AllSmallParameters) {
    auto a = shared(sec5_a());
    for (int r : {1, 2})
        for (int s : {1, 2}) {
            auto c = construct_tpq(a, {0}, {2, 3}, r, s);
            auto rep = verify_tilting(c.complex, true);
            EXPECT_TRUE(rep.self_orthogonal) << r << "," << s;
            EXPECT_EQ(c.decomposition.pieces.size(), a->num_vertices());
        }
}

TEST(Construct, EmptyPQGivesStalk) {
    for (const auto& p : {fig1(), sec5_a()}) {
        auto a = shared(p);
        auto c = construct_tpq(a, {}, {}, 1, 1);
        EXPECT_EQ(c.complex, stalk(a, all_of(a)));
    }
}

TEST(Construct, Preconditions) {
    auto a = shared(sec5_a());
    auto expect_pre = [&](std::vector<std::size_t> p, std::vector<std::size_t> q, int r, int s) {
        try {
            construct_tpq(a, p, q, r, s);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::PreconditionFailed);
        }
    };
    expect_pre({0}, {0}, 1, 1);   // Hom(P, Q) != 0
    expect_pre({1}, {2, 3}, 1, 1);  // P(2) not nu-stable
    expect_pre({0}, {2, 3}, 0, 1);
}

TEST(EndAlgebra, Sec3IsFig2) {
    auto a = shared(fig1());
    auto e = end_algebra(sec3_t(a));
    EXPECT_EQ(e.algebra.dim(), 9u);
    ASSERT_TRUE(e.presentation.has_value());
    auto b = fig2();
    auto m = match_presentation(e.algebra, *e.presentation, b.quiver, b.relations);
    ASSERT_TRUE(m.has_value());
    EXPECT_TRUE(m->ideal_equal);
    Matrix cb = cartan_matrix(b.build()), ce = cartan_matrix(e.algebra, e.idempotents);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(cb(i, j), ce(m->vertex_map[i], m->vertex_map[j]));
}

TEST(EndAlgebra, Sec5) {
    auto a = shared(sec5_a());
    auto e = end_algebra(sec5_t(a));
    ASSERT_TRUE(e.presentation.has_value());
    EXPECT_EQ(e.presentation->quiver.num_vertices(), 4u);
    EXPECT_EQ(e.presentation->quiver.num_arrows(), 5u);
    auto b = sec5_b();
    auto m = match_presentation(e.algebra, *e.presentation, b.quiver, b.relations);
    ASSERT_TRUE(m.has_value());
    EXPECT_TRUE(m->ideal_equal);
}

TEST(EndAlgebra, StalkIsA) {
    for (const auto& p : {fig1(), fig2(), sec5_a()}) {
        auto a = shared(p);
        auto e = end_algebra(stalk(a, all_of(a)));
        auto m = match_presentation(e.algebra, *e.presentation, p.quiver, p.relations);
        ASSERT_TRUE(m.has_value());
        EXPECT_TRUE(m->ideal_equal);
    }
}

TEST(EndAlgebra, DoubledIsNotBasic) {
    auto a = shared(fig1());
    auto t = sec3_t(a);
    auto e = end_algebra(direct_sum(t, t));
    EXPECT_EQ(e.algebra.dim(), 36u);
    EXPECT_FALSE(e.basic);
    EXPECT_FALSE(e.presentation.has_value());
    EXPECT_THROW(f_homology(e, simple(a, 0), 0), Error);
}

TEST(IteratedNuStable, Verdicts) {
    auto a = shared(fig1());
    auto rep = check_iterated_nu_stable(a, sec3_t(a));
    EXPECT_TRUE(rep.verdict);
    ASSERT_EQ(rep.conditions.size(), 1u);
    EXPECT_EQ(rep.conditions[0].vertex, 0u);
    EXPECT_TRUE(rep.conditions[0].not_in_t_pm);
    EXPECT_EQ(rep.conditions[0].multiplicity_t0, 1u);

    auto a5 = shared(sec5_a());
    EXPECT_TRUE(check_iterated_nu_stable(a5, sec5_t(a5), true).verdict);
    for (const auto& p : {fig1(), fig2(), sec5_a()}) {
        auto ap = shared(p);
        EXPECT_TRUE(check_iterated_nu_stable(ap, stalk(ap, all_of(ap))).verdict);
    }
}

TEST(IteratedNuStable, MutationAwayFromP1Fails) {
    // P(1) -> Q plus P(2) + P(3): tilting, but P(1) sits in T^{-1}
    auto a = shared(fig1());
    ProjComplex x = mutation(a, 0, true);
    ASSERT_TRUE(verify_tilting(x).tilting());
    auto rep = check_iterated_nu_stable(a, x);
    EXPECT_FALSE(rep.verdict);
    ASSERT_EQ(rep.conditions.size(), 1u);
    EXPECT_FALSE(rep.conditions[0].not_in_t_pm);
    EXPECT_FALSE(check_simple_images(a, end_algebra(x)).verdict);
}

TEST(IteratedNuStable, NotTiltingRejected) {
    auto a = shared(fig1());
    ProjComplex x = direct_sum(stalk(a, {0}), stalk(a, {0}, -1));
    try {
        check_iterated_nu_stable(a, x);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotTilting);
    }
}

TEST(FHomology, Fig1Examples) {
    auto a = shared(fig1());
    auto e = end_algebra(sec3_t(a));
    for (int i = -1; i <= 1; ++i)
        EXPECT_EQ(f_homology(e, simple(a, 0), i).module.total_dim(), i == 0 ? 1u : 0u);
    EXPECT_EQ(f_homology(e, projective(a, 0), 1).module.total_dim(), 2u);
    for (int i = -1; i <= 1; ++i) EXPECT_EQ(f_homology(e, zero_module(a), i).module.total_dim(), 0u);
}

TEST(FHomology, MatchesHomotopyHomWithStalk) {
    // for projective X, Hom_K(T, X[i]) is a homotopy Hom into a stalk complex
    auto a = shared(fig1());
    auto t = sec3_t(a);
    auto e = end_algebra(t);
    for (std::size_t v = 0; v < 3; ++v)
        for (int i = -1; i <= 1; ++i)
            EXPECT_EQ(f_homology(e, projective(a, v), i).module.total_dim(), homotopy_hom(t, stalk(a, {v}), i).dim());
}

TEST(FHomology, AdditiveOnRandomSums) {
    auto a = shared(fig1());
    auto e = end_algebra(sec3_t(a));
    std::vector<Representation> pool;
    for (std::size_t v = 0; v < 3; ++v) {
        pool.push_back(simple(a, v));
        pool.push_back(projective(a, v));
        pool.push_back(injective(a, v));
    }
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        const Representation& x = pool[rng() % pool.size()];
        const Representation& y = pool[rng() % pool.size()];
        auto px = homology_profile(e, x), py = homology_profile(e, y), ps = homology_profile(e, direct_sum(x, y));
        for (const auto& [i, d] : ps)
            for (std::size_t k = 0; k < d.size(); ++k) EXPECT_EQ(d[k], px[i][k] + py[i][k]);
    }
}

TEST(StableImage, Fig1) {
    auto a = shared(fig1());
    auto e = end_algebra(sec3_t(a));
    auto c = stable_image(e, simple(a, 0));
    ASSERT_TRUE(c.image.has_value());
    EXPECT_EQ(c.image->total_dim(), 1u);
    EXPECT_EQ(total(socle(*c.image).module.dims()), 1u);
    try {
        stable_image(e, projective(a, 0));
        FAIL();
    } catch (const Error& err) {
        EXPECT_EQ(err.kind(), ErrorKind::NotConcentrated);
    }
    auto z = stable_image(e, zero_module(a));
    EXPECT_EQ(z.image->total_dim(), 0u);
}

TEST(StableImage, NuStableProjectivesLandInEB) {
    auto a = shared(fig1());
    auto e = end_algebra(sec3_t(a));
    auto eb = maximal_nu_stable(e.module_algebra);
    for (std::size_t v : {1u, 2u}) {
        auto prof = homology_profile(e, projective(a, v));
        if (!concentrated_in_zero(prof)) continue;
        auto img = stable_image(e, projective(a, v));
        auto labels = projective_labels(*img.image);
        ASSERT_TRUE(labels.has_value());
        for (auto w : *labels) EXPECT_TRUE(eb.in_e(w));
    }
}

TEST(SimpleImages, CrossValidation) {
    auto a = shared(fig1());
    auto t = sec3_t(a);
    EXPECT_EQ(check_simple_images(a, end_algebra(t)).verdict, check_iterated_nu_stable(a, t).verdict);
    auto a5 = shared(sec5_a());
    auto t5 = sec5_t(a5);
    auto s5 = check_simple_images(a5, end_algebra(t5));
    EXPECT_TRUE(s5.verdict);
    ASSERT_EQ(s5.checks.size(), 1u);
    EXPECT_EQ(s5.checks[0].vertex, 1u);
    for (const auto& p : {fig1(), fig2(), sec5_a()}) {
        auto ap = shared(p);
        auto st = stalk(ap, all_of(ap));
        EXPECT_EQ(check_simple_images(ap, end_algebra(st)).verdict, check_iterated_nu_stable(ap, st).verdict);
    }
}

TEST(SimpleImages, CrossValidationOnMutations) {
    std::size_t tilting = 0, negative = 0;
    for (const auto& p : {fig1(), fig2(), sec5_a()}) {
        auto a = shared(p);
        for (std::size_t v = 0; v < a->num_vertices(); ++v)
            for (bool left : {true, false}) {
                ProjComplex x = mutation(a, v, left);
                if (!verify_tilting(x).tilting()) continue;
                ++tilting;
                bool five = check_iterated_nu_stable(a, x).verdict;
                bool four = check_simple_images(a, end_algebra(x)).verdict;
                EXPECT_EQ(four, five) << "vertex " << v << (left ? " left" : " right");
                negative += !five;
            }
    }
    EXPECT_GE(tilting, 10u);
    EXPECT_GE(negative, 4u);
}

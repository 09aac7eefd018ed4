#include "complex_fixtures.hpp"

#include <gtest/gtest.h>

using namespace qtilt;
using namespace fixtures;

namespace {

struct Fig1 : ::testing::Test {
    AlgebraPtr a = shared(fig1());
    ProjComplex t = sec3_t(a);
};

ProjComplex identity_cone(const AlgebraPtr& a, std::size_t v) {
    ProjComplex p = stalk(a, {v});
    return cone(p, p, identity_chain_map(p));
}

}  // namespace

TEST_F(Fig1, ValidateExamples) {
    auto v = validate(t);
    EXPECT_TRUE(v.d_squared_zero);
    EXPECT_TRUE(v.is_radical);
    auto s = validate(stalk(a, {0}));
    EXPECT_TRUE(s.d_squared_zero && s.is_radical);
    auto c = validate(identity_cone(a, 0));
    EXPECT_TRUE(c.d_squared_zero);
    EXPECT_FALSE(c.is_radical);
}

TEST_F(Fig1, DSquaredNonzeroDetected) {
    // P(3) -beta-> P(2) -alpha-> P(1) composes to alpha beta != 0
    ProjComplex x(a, {{0, {2}}, {1, {1}}, {2, {0}}},
                  {{0, label_matrix(*a, 1, 1, {{0, 0, elem(*a, {"beta"})}})},
                   {1, label_matrix(*a, 1, 1, {{0, 0, elem(*a, {"alpha"})}})}});
    EXPECT_FALSE(validate(x).d_squared_zero);
}

TEST_F(Fig1, EntriesMustLieInCorner) {
    EXPECT_THROW(ProjComplex(a, {{-1, {0}}, {0, {0}}}, {{-1, label_matrix(*a, 1, 1, {{0, 0, elem(*a, {"beta"})}})}}),
                 Error);
}

TEST_F(Fig1, ShiftConvention) {
    ProjComplex s = shift(t, 1);
    EXPECT_EQ(s.labels(-2), (std::vector<std::size_t>{1, 1, 2}));
    EXPECT_EQ(s.labels(-1), (std::vector<std::size_t>{0}));
    EXPECT_EQ(s.diff(-2).at(0, 0), scaled(elem(*a, {"alpha"}), -1));
    EXPECT_EQ(shift(shift(t, 1), -1), t);
}

TEST_F(Fig1, HomotopyHomDimensions) {
    EXPECT_EQ(homotopy_hom(t, t, 0).dim(), 9u);
    for (int n : {-2, -1, 1, 2}) EXPECT_EQ(homotopy_hom(t, t, n).dim(), 0u) << n;
    ProjComplex p1 = stalk(a, {0});
    EXPECT_EQ(homotopy_hom(p1, p1, 1).dim(), 0u);
    EXPECT_EQ(homotopy_hom(t, p1, 1).dim(), 2u);
}

TEST_F(Fig1, StalkHomsAreModuleHoms) {
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            EXPECT_EQ(homotopy_hom(stalk(a, {i}), stalk(a, {j}), 0).dim(), a->between(i, j).size());
}

TEST_F(Fig1, HomotopyClassesCompose) {
    HomotopyHom e = homotopy_hom(t, t, 0);
    const auto& b = e.basis();
    // composition of classes is well defined and associative on the basis
    for (const auto& f : b)
        for (const auto& g : b) {
            ChainMap fg = compose(t, t, t, f, g);
            ASSERT_TRUE(e.is_chain_map(fg));
            for (const auto& h : b) {
                ChainMap l = compose(t, t, t, fg, h), r = compose(t, t, t, f, compose(t, t, t, g, h));
                EXPECT_TRUE(chain_maps_equal(t, t, l, r));
            }
        }
    Vec id = e.coordinates(identity_chain_map(t));
    EXPECT_FALSE(is_zero(id));
}

TEST_F(Fig1, NullHomotopyWitness) {
    // h: t -> t[-1] with a single entry; d h + h d is null-homotopic by construction
    ProjComplex p1 = stalk(a, {0});
    ProjComplex c = identity_cone(a, 0);
    HomotopyHom e = homotopy_hom(c, c, 0);
    EXPECT_EQ(e.dim(), 0u);
    ChainMap id = identity_chain_map(c);
    EXPECT_TRUE(e.is_null_homotopic(id));
    auto h = e.homotopy_witness(id);
    ASSERT_TRUE(h.has_value());
    EXPECT_TRUE(chain_maps_equal(c, c, detail::homotopy_boundary(c, c, *h, 0), id));
    EXPECT_FALSE(is_null_homotopic(p1, p1, identity_chain_map(p1)));
}

TEST_F(Fig1, MinimizeCone) {
    Minimized m = minimize(identity_cone(a, 0));
    EXPECT_TRUE(m.complex.empty());
}

TEST_F(Fig1, MinimizeRadicalIsIdentity) {
    Minimized m = minimize(t);
    EXPECT_EQ(m.complex, t);
    EXPECT_TRUE(chain_maps_equal(t, t, m.to, identity_chain_map(t)));
    EXPECT_TRUE(chain_maps_equal(t, t, m.from, identity_chain_map(t)));
}

TEST_F(Fig1, MinimizeRemovesTwistedContractible) {
    // t + cone(id P(2)) with an extra radical entry linking them
    ProjComplex big = direct_sum(t, shift(identity_cone(a, 1), 1));
    ASSERT_FALSE(validate(big).is_radical);
    Minimized m = minimize(big);
    EXPECT_TRUE(validate(m.complex).is_radical);
    EXPECT_TRUE(is_isomorphic_complex(m.complex, t).has_value());
    EXPECT_EQ(minimize(m.complex).complex, m.complex);
    // homotopy invariance of Hom dimensions
    for (int n : {-1, 0, 1}) EXPECT_EQ(homotopy_hom(big, t, n).dim(), homotopy_hom(t, t, n).dim());
}

TEST_F(Fig1, MinimizeWithRadicalUnit) {
    // unit e_2 + 3 beta alpha on P(2) (fig2 has the loop beta alpha at 2)
    AlgebraPtr b = shared(fig2());
    Vec x = b->idempotent(1);
    axpy(x, Scalar(3), elem(*b, {"beta", "alpha"}));  // loop at 2
    ProjComplex c(b, {{0, {1}}, {1, {1, 0}}},
                  {{0, label_matrix(*b, 1, 2, {{0, 0, x}, {0, 1, elem(*b, {"alpha"})}})}});
    ASSERT_TRUE(validate(c).d_squared_zero);
    Minimized m = minimize(c);
    EXPECT_EQ(m.complex.num_summands(), 1u);
    EXPECT_EQ(m.complex.labels(1), (std::vector<std::size_t>{0}));
    Vec inv = unit_inverse(*b, 1, x);
    EXPECT_EQ(b->mul(inv, x), b->idempotent(1));
}

TEST_F(Fig1, SplitIdempotentExamples) {
    ChainMap id = identity_chain_map(t);
    EXPECT_EQ(split_idempotent(t, id).complex, t);
    EXPECT_TRUE(split_idempotent(t, ChainMap{0, {}}).complex.empty());
    ChainMap e{0, {}};
    e.comp[-1] = label_matrix(*a, 3, 3, {{1, 1, a->idempotent(1)}});
    ComplexSummand s = split_idempotent(t, e);
    EXPECT_EQ(s.complex, stalk(a, {1}, -1));
    EXPECT_THROW(split_idempotent(t, add(t, t, id, id)), Error);
}

TEST_F(Fig1, SplitIdempotentStrictifies) {
    // e + (null-homotopic) is still idempotent up to homotopy
    ProjComplex big = direct_sum(t, shift(identity_cone(a, 1), 1));
    ChainMap e{0, {}};
    for (int i : big.degrees()) e.comp[i] = LabelMatrix(big.labels(i).size(), big.labels(i).size(), a->dim());
    e.comp[-1].at(0, 0) = a->idempotent(1);
    e.comp[0].at(0, 0) = a->idempotent(0);
    ASSERT_TRUE(is_chain_map(big, big, e));
    ComplexSummand s = split_idempotent(big, e);
    EXPECT_EQ(s.complex.num_summands(), 2u);
    EXPECT_TRUE(validate(s.complex).is_radical);
}

TEST_F(Fig1, DecomposeSec3Example) {
    ComplexDecomposition d = decompose_complex(t);
    ASSERT_EQ(d.pieces.size(), 3u);
    EXPECT_EQ(d.num_classes(), 3u);
    EXPECT_EQ(d.pieces[0].complex.labels(-1), (std::vector<std::size_t>{1}));
    EXPECT_EQ(d.pieces[0].complex.labels(0), (std::vector<std::size_t>{0}));
    std::multiset<std::size_t> stalks;
    for (std::size_t k = 1; k < 3; ++k) {
        EXPECT_EQ(d.pieces[k].complex.num_summands(), 1u);
        stalks.insert(d.pieces[k].complex.labels(-1).at(0));
    }
    EXPECT_EQ(stalks, (std::multiset<std::size_t>{1, 2}));
    for (const auto& p : d.pieces) {
        auto v = validate(p.complex);
        EXPECT_TRUE(v.d_squared_zero && v.is_radical);
        EXPECT_TRUE(is_chain_map(p.complex, t, p.inclusion));
        EXPECT_TRUE(is_chain_map(t, p.complex, p.projection));
    }
}

TEST_F(Fig1, DecomposeDoubledAndStalk) {
    ComplexDecomposition d = decompose_complex(direct_sum(t, t));
    EXPECT_EQ(d.pieces.size(), 6u);
    EXPECT_EQ(d.num_classes(), 3u);
    for (auto m : d.multiplicity) EXPECT_EQ(m, 2u);
    ComplexDecomposition s = decompose_complex(stalk(a, all_vertices(*a)));
    EXPECT_EQ(s.pieces.size(), 3u);
    EXPECT_EQ(s.num_classes(), 3u);
}

TEST(ComplexSec5, StalkOfRegularModule) {
    AlgebraPtr a = shared(sec5_a());
    ComplexDecomposition s = decompose_complex(stalk(a, all_vertices(*a)));
    EXPECT_EQ(s.pieces.size(), 4u);
}

TEST_F(Fig1, IsomorphicComplexes) {
    // reorder summands of degree -1
    ProjComplex u(a, {{-1, {2, 1, 1}}, {0, {0}}},
                  {{-1, label_matrix(*a, 3, 1, {{2, 0, elem(*a, {"alpha"}, Scalar(5))}})}});
    auto iso = is_isomorphic_complex(t, u);
    ASSERT_TRUE(iso.has_value());
    EXPECT_TRUE(is_chain_map(t, u, iso->forward));
    EXPECT_TRUE(is_chain_map(u, t, iso->backward));
    EXPECT_TRUE(chain_maps_equal(t, t, compose(t, u, t, iso->forward, iso->backward), identity_chain_map(t)));
    ProjComplex v(a, {{-1, {1, 1, 2}}, {0, {0}}}, {});
    EXPECT_FALSE(is_isomorphic_complex(t, v).has_value());
}

TEST_F(Fig1, Homology) {
    Representation p1 = projective(a, 0);
    EXPECT_EQ(homology(stalk(a, {0}), 0).dims(), p1.dims());
    EXPECT_EQ(homology(stalk(a, {0}), 1).total_dim(), 0u);
    for (int i : {-1, 0, 1}) EXPECT_EQ(homology(identity_cone(a, 0), i).total_dim(), 0u);
    // degree -1: kernel of (alpha, 0, 0)^T on P(2)^2 + P(3)
    ModuleMap d = to_module_map(a, t.labels(-1), t.labels(0), t.diff(-1));
    std::size_t rk = rank(total_matrix(d));
    Representation h = homology(t, -1);
    EXPECT_EQ(h.total_dim(), projective_sum_dim(*a, {1, 1, 2}) - rk);
    EXPECT_EQ(homology(t, 0).total_dim(), p1.total_dim() - rk);
}

TEST_F(Fig1, LabelModuleMapRoundTrip) {
    LabelMatrix m = t.diff(-1);
    ModuleMap f = to_module_map(a, t.labels(-1), t.labels(0), m);
    EXPECT_TRUE(is_homomorphism(projective_sum(a, t.labels(-1)), projective_sum(a, t.labels(0)), f));
    EXPECT_EQ(from_module_map(*a, t.labels(-1), t.labels(0), f), m);
}

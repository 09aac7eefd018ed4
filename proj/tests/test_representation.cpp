#include "fixtures.hpp"
#include "qtilt/approximation.hpp"
#include "qtilt/decompose.hpp"
#include "qtilt/nakayama.hpp"

#include <gtest/gtest.h>

using namespace qtilt;

namespace {

AlgebraPtr ptr(const fixtures::Presented& p) { return std::make_shared<const Algebra>(p.module_algebra()); }

std::vector<Representation> sample_modules(const AlgebraPtr& a) {
    std::vector<Representation> out;
    for (std::size_t v = 0; v < a->num_vertices(); ++v) {
        out.push_back(projective(a, v));
        out.push_back(injective(a, v));
        out.push_back(simple(a, v));
        out.push_back(radical(projective(a, v)).module);
        out.push_back(top(injective(a, v)).module);
    }
    return out;
}

}  // namespace

TEST(Representation, StandardModules) {
    auto a = ptr(fixtures::sec5_a());
    EXPECT_EQ(projective(a, 0).dims(), (DimVector{2, 1, 0, 0}));
    Representation i4 = injective(a, 3);
    EXPECT_EQ(i4.total_dim(), 3u);
    EXPECT_EQ(total(socle(i4).module.dims()), 1u);
    EXPECT_EQ(socle(i4).module.dims(), (DimVector{0, 0, 0, 1}));
    auto f = ptr(fixtures::fig1());
    EXPECT_EQ(simple(f, 1).dims(), (DimVector{0, 1, 0}));
}

TEST(Representation, HomExamples) {
    auto f = ptr(fixtures::fig1());
    EXPECT_EQ(hom_space(projective(f, 1), projective(f, 0)).size(), 1u);
    auto a = ptr(fixtures::sec5_a());
    EXPECT_EQ(hom_space(projective(a, 0), direct_sum(projective(a, 2), projective(a, 3))).size(), 0u);
    EXPECT_EQ(hom_space(simple(a, 1), simple(a, 1)).size(), 1u);
}

TEST(Representation, YonedaCount) {
    for (auto p : {fixtures::fig1(), fixtures::fig2(), fixtures::sec5_a(), fixtures::sec5_b()}) {
        auto a = ptr(p);
        for (const auto& x : sample_modules(a))
            for (std::size_t v = 0; v < a->num_vertices(); ++v) {
                auto h = hom_space(projective(a, v), x);
                EXPECT_EQ(h.size(), x.dim(v));
                for (const auto& m : h) EXPECT_TRUE(is_homomorphism(projective(a, v), x, m));
            }
    }
}

TEST(Representation, LoewyLayers) {
    auto a = ptr(fixtures::sec5_a());
    EXPECT_EQ(radical_layers(projective(a, 3)), (std::vector<DimVector>{{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 0, 0, 1}}));
    EXPECT_EQ(radical_layers(projective(a, 2)), (std::vector<DimVector>{{0, 0, 1, 0}, {0, 1, 0, 1}, {0, 0, 1, 0}}));
    EXPECT_EQ(radical_layers(projective(a, 0)), (std::vector<DimVector>{{1, 0, 0, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}}));
    EXPECT_EQ(radical_layers(projective(a, 1)), (std::vector<DimVector>{{0, 1, 0, 0}, {1, 0, 1, 0}}));
    Representation s = simple(a, 2);
    EXPECT_EQ(top(s).module.dims(), s.dims());
    EXPECT_EQ(socle(s).module.dims(), s.dims());
}

TEST(Representation, KernelImageCokernel) {
    auto f = ptr(fixtures::fig1());
    Representation p2 = projective(f, 1), p1 = projective(f, 0);
    ModuleMap h = hom_space(p2, p1)[0];
    auto k = kernel(p2, h);
    auto im = image(p1, h);
    auto ck = cokernel(p1, h);
    EXPECT_EQ(total(k.module.dims()) + total(im.module.dims()), p2.total_dim());
    EXPECT_EQ(total(ck.module.dims()) + total(im.module.dims()), p1.total_dim());
    EXPECT_TRUE(is_homomorphism(k.module, p2, k.inclusion));
    EXPECT_TRUE(is_homomorphism(p1, ck.module, ck.projection));
    EXPECT_TRUE(compose(k.inclusion, h).is_zero());
}

TEST(Decompose, Examples) {
    auto a = ptr(fixtures::sec5_a());
    Representation p3 = projective(a, 2);
    auto c = decompose(direct_sum(p3, p3));
    ASSERT_EQ(c.multiplicity.size(), 1u);
    EXPECT_EQ(c.multiplicity[0], 2u);
    EXPECT_TRUE(is_isomorphic(c.pieces[c.representative[0]].module, p3));

    Representation regular = projective_sum(a, {0, 1, 2, 3});
    auto ca = decompose(regular);
    EXPECT_EQ(ca.pieces.size(), 4u);
    EXPECT_EQ(ca.multiplicity, (std::vector<std::size_t>{1, 1, 1, 1}));
    for (std::size_t v = 0; v < 4; ++v) {
        bool found = false;
        for (const auto& p : ca.pieces) found = found || is_isomorphic(p.module, projective(a, v)).has_value();
        EXPECT_TRUE(found);
    }

    Representation rp1 = radical(projective(a, 0)).module;
    auto cr = decompose(rp1);
    ASSERT_EQ(cr.pieces.size(), 1u);
    EXPECT_EQ(rp1.total_dim(), 2u);
    EXPECT_FALSE(projective_labels(rp1).has_value());
    EXPECT_TRUE(decompose(zero_module(a)).pieces.empty());
}

TEST(Decompose, MixedSummands) {
    // P(v) + S(v) share a top vertex; needs a non-generic annihilator or eigenvalue split.
    auto a = ptr(fixtures::sec5_a());
    Representation m = direct_sum(a, {projective(a, 2), simple(a, 2), projective(a, 2), injective(a, 0)});
    auto c = decompose(m, 3);
    EXPECT_EQ(c.pieces.size(), 4u);
    std::size_t twos = 0;
    for (auto k : c.multiplicity) twos += (k == 2);
    EXPECT_EQ(twos, 1u);
    for (const auto& p : c.pieces) EXPECT_TRUE(is_indecomposable(p.module));
}

TEST(Decompose, IsIsomorphic) {
    auto a = ptr(fixtures::sec5_a());
    EXPECT_TRUE(is_isomorphic(projective(a, 0), projective(a, 0)));
    EXPECT_FALSE(is_isomorphic(simple(a, 0), simple(a, 1)));
    auto iso = is_isomorphic(nakayama(projective(a, 0)), projective(a, 0));
    ASSERT_TRUE(iso);
    EXPECT_EQ(compose(iso->first, iso->second), identity_map(projective(a, 0)));
    // non-isomorphic modules with equal dimension vectors
    Representation x = direct_sum(simple(a, 0), simple(a, 1));
    Representation y = radical(projective(a, 1)).module;  // layers of P2 rad: 1 and 3
    Representation z = top(injective(a, 0)).module;
    (void)y;
    (void)z;
    Representation p1rad = radical(projective(a, 0)).module;  // 2 over 1
    EXPECT_EQ(x.dims(), p1rad.dims());
    EXPECT_FALSE(is_isomorphic(x, p1rad));
}

TEST(Nakayama, Examples) {
    auto a = ptr(fixtures::sec5_a());
    Representation n1 = nakayama(projective(a, 0));
    EXPECT_EQ(n1.total_dim(), 3u);
    EXPECT_TRUE(projective_labels(n1));
    auto f = ptr(fixtures::fig1());
    EXPECT_FALSE(projective_labels(nakayama(projective(f, 0))));
    auto perm = nakayama_permutation(f);
    EXPECT_FALSE(perm[0].has_value());
    EXPECT_TRUE(perm[1].has_value());
    EXPECT_TRUE(perm[2].has_value());
    Representation pp = direct_sum(projective(a, 1), projective(a, 1));
    EXPECT_TRUE(is_isomorphic(nakayama(pp), direct_sum(injective(a, 1), injective(a, 1))));
    EXPECT_THROW(nakayama(simple(a, 0)), Error);
}

TEST(Nakayama, MapsAreFunctorial) {
    auto a = ptr(fixtures::sec5_a());
    const Algebra& al = *a;
    for (std::size_t x = 0; x < 4; ++x)
        for (std::size_t y = 0; y < 4; ++y)
            for (std::size_t z = 0; z < 4; ++z)
                for (auto bi : al.between(x, y))
                    for (auto ci : al.between(y, z)) {
                        Vec b = al.basis_vec(bi), c = al.basis_vec(ci);
                        ModuleMap lhs = compose(nakayama_map(a, x, y, b), nakayama_map(a, y, z, c));
                        ModuleMap rhs = nakayama_map(a, x, z, al.mul(b, c));
                        EXPECT_EQ(lhs, rhs);
                        EXPECT_TRUE(is_homomorphism(injective(a, x), injective(a, y), nakayama_map(a, x, y, b)));
                    }
}

TEST(Approximation, RightAndLeft) {
    auto a = ptr(fixtures::sec5_a());
    Representation regular = projective_sum(a, {0, 1, 2, 3});
    auto f = minimal_right_approximation(std::vector<std::size_t>{0}, regular);
    EXPECT_EQ(f.labels, (std::vector<std::size_t>{0, 0}));
    EXPECT_TRUE(is_homomorphism(f.object, regular, f.map));
    Representation p1 = projective(a, 0);
    for (const auto& h : hom_space(p1, regular)) EXPECT_TRUE(factors_through_right(h, f.map, p1, f.object));

    auto id = minimal_right_approximation(p1, p1);
    EXPECT_EQ(id.labels, (std::vector<std::size_t>{0}));
    EXPECT_TRUE(is_invertible(id.map));

    auto zero = minimal_right_approximation(std::vector<std::size_t>{0}, simple(a, 3));
    EXPECT_TRUE(zero.labels.empty());

    auto g = minimal_left_approximation(std::vector<std::size_t>{2, 3}, regular);
    EXPECT_TRUE(is_homomorphism(regular, g.object, g.map));
    for (std::size_t w : {2u, 3u}) {
        Representation pw = projective(a, w);
        for (const auto& h : hom_space(regular, pw)) EXPECT_TRUE(factors_through_left(h, g.map, g.object, pw));
    }
    EXPECT_EQ(g.labels, (std::vector<std::size_t>{2, 2, 3}));
}

#pragma once

#include "qtilt/algebra.hpp"

namespace fixtures {

using namespace qtilt;

struct Presented {
    Quiver quiver;
    std::vector<Relation> relations;
    Algebra build() const { return build_path_algebra(quiver, relations); }
    // left modules over this are the right modules of kQ/I
    Algebra module_algebra() const { return build_module_algebra(quiver, relations); }
};

// alpha:1->2, beta:2->3, gamma:3->1; alpha beta gamma = beta gamma alpha beta = gamma alpha beta gamma = 0
inline Presented fig1() {
    Quiver q = make_quiver({"1", "2", "3"}, {{"alpha", "1", "2"}, {"beta", "2", "3"}, {"gamma", "3", "1"}});
    auto rels = monomial_relations(q, {{"alpha", "beta", "gamma"},
                                       {"beta", "gamma", "alpha", "beta"},
                                       {"gamma", "alpha", "beta", "gamma"}});
    return {q, rels};
}

inline Presented fig2() {
    Quiver q = make_quiver({"1", "2", "3"},
                           {{"alpha", "1", "2"}, {"beta", "2", "1"}, {"gamma", "2", "3"}, {"delta", "3", "2"}});
    auto rels = monomial_relations(q, {{"alpha", "gamma"}, {"delta", "beta"}, {"alpha", "beta"},
                                       {"delta", "gamma", "delta"}});
    rels.push_back(make_relation(q, {{Scalar(1), {"beta", "alpha"}}, {Scalar(-1), {"gamma", "delta"}}}));
    return {q, rels};
}

inline Presented sec5_a() {
    Quiver q = make_quiver({"1", "2", "3", "4"}, {{"alpha", "1", "2"},
                                                  {"alpha'", "2", "1"},
                                                  {"beta", "2", "3"},
                                                  {"beta'", "3", "2"},
                                                  {"gamma", "3", "4"},
                                                  {"gamma'", "4", "3"}});
    auto rels = monomial_relations(q, {{"alpha'", "alpha"},
                                       {"beta", "beta'"},
                                       {"alpha", "beta"},
                                       {"beta", "gamma"},
                                       {"beta'", "alpha'"},
                                       {"gamma'", "beta'"}});
    rels.push_back(make_relation(q, {{Scalar(1), {"beta'", "beta"}}, {Scalar(-1), {"gamma", "gamma'"}}}));
    return {q, rels};
}

inline Presented sec5_b() {
    Quiver q = make_quiver({"1", "2", "3", "4"}, {{"alpha", "1", "2"},
                                                  {"alpha'", "2", "1"},
                                                  {"beta", "2", "3"},
                                                  {"gamma", "3", "4"},
                                                  {"delta", "4", "2"}});
    auto rels = monomial_relations(q, {{"alpha'", "alpha"},
                                       {"alpha", "beta"},
                                       {"delta", "alpha'"},
                                       {"beta", "gamma", "delta"},
                                       {"gamma", "delta", "beta", "gamma"}});
    return {q, rels};
}

inline Presented single_vertex() {
    Quiver q = make_quiver({"1"}, {});
    return {q, {}};
}

inline Presented a2() {
    Quiver q = make_quiver({"1", "2"}, {{"a", "1", "2"}});
    return {q, {}};
}

inline Presented semisimple3() {
    Quiver q = make_quiver({"1", "2", "3"}, {});
    return {q, {}};
}

}  // namespace fixtures

// Acceptance run: one PASS/FAIL line per criterion, all checks exact.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>

#include "qtilt/qtilt.hpp"

using namespace qtilt;

namespace {

const std::string kCorpus = QTILT_CORPUS_DIR;

struct Failures {
    std::vector<std::string> items;
    void check(bool ok, const std::string& what) {
        if (!ok) items.push_back(what);
    }
};

struct Loaded {
    AlgebraSpec spec;
    AlgebraPtr alg;
};

Loaded load(const std::string& name) {
    Loaded l{parse_algebra(read_json_file(kCorpus + "/" + name + ".json")), nullptr};
    l.alg = l.spec.module_algebra();
    return l;
}

ProjComplex load_complex(const Loaded& l, const std::string& name) {
    return parse_complex(read_json_file(kCorpus + "/" + name + ".json"), l.spec, l.alg);
}

Representation load_module(const Loaded& l, const std::string& name) {
    return parse_module(read_json_file(kCorpus + "/" + name + ".json"), l.spec, l.alg);
}

const std::vector<std::string> kAlgebras = {"fig1", "fig2", "sec5_A", "sec5_B", "one_vertex", "a2", "semisimple3"};

/// Nonzero terms, shifted so that the lowest degree is 0.
std::map<int, std::vector<std::size_t>> normalized_terms(const ProjComplex& x) {
    std::map<int, std::vector<std::size_t>> out;
    std::optional<int> low;
    for (const auto& [d, l] : x.terms())
        if (!l.empty() && !low) low = d;
    for (const auto& [d, l] : x.terms()) {
        if (l.empty()) continue;
        auto s = l;
        std::sort(s.begin(), s.end());
        out[d - *low] = s;
    }
    return out;
}

Matrix cartan_of(const Algebra& a, const std::vector<Vec>& idem) { return cartan_matrix(a, idem); }

bool cartan_equal_up_to_permutation(const Matrix& x, const Matrix& y) {
    if (x.rows() != y.rows()) return false;
    std::vector<std::size_t> p(x.rows());
    std::iota(p.begin(), p.end(), 0);
    do {
        bool same = true;
        for (std::size_t i = 0; i < p.size() && same; ++i)
            for (std::size_t j = 0; j < p.size() && same; ++j) same = x(p[i], p[j]) == y(i, j);
        if (same) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

ProjComplex contractible(const AlgebraPtr& a, std::size_t v, int degree) {
    ProjComplex p = stalk(a, {v});
    return shift(cone(p, p, identity_chain_map(p)), -degree);
}

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

// ---- criteria ---------------------------------------------------------------------

Failures criterion1() {
    Failures f;
    Loaded a = load("sec5_A");
    f.check(a.spec.path_algebra().dim() == 13, "dim A != 13");
    const std::vector<std::string> loewy = {"1/2/1", "2/{1,3}", "3/{2,4}/3", "4/3/4"};
    for (std::size_t v = 0; v < 4; ++v)
        f.check(detail::loewy_text(a.spec.quiver, projective(a.alg, v)) == loewy[v], "Loewy structure of P" + std::to_string(v + 1));
    TpqConstruction c = construct_tpq(a.alg, {0}, {2, 3}, 1, 1);
    const auto& d = c.decomposition;
    f.check(d.pieces.size() == 4, "T does not have 4 summands");
    std::set<std::size_t> classes(d.class_of.begin(), d.class_of.end());
    f.check(classes.size() == d.pieces.size(), "summands are not pairwise non-isomorphic");
    const std::map<int, std::vector<std::size_t>> chain = {{0, {0}}, {1, {1}}, {2, {2}}};
    bool found = false;
    for (const auto& p : d.pieces) {
        if (normalized_terms(p.complex) != chain) continue;
        ProjComplex q = p.complex;
        bool nonzero = true;
        for (const auto& [deg, m] : q.diffs())
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t k = 0; k < m.cols(); ++k) nonzero = nonzero && !is_zero(m.at(r, k));
        found = found || (nonzero && q.diffs().size() == 2);
    }
    f.check(found, "no summand of the form 0 -> P1 -> P2 -> P3 -> 0");
    TiltingReport tr = verify_tilting(c.complex, true);
    f.check(tr.tilting() && tr.basic, "verify_tilting rejects T");
    EndAlgebra e = end_algebra(c.complex);
    f.check(e.presentation && e.presentation->quiver.num_vertices() == 4 && e.presentation->quiver.num_arrows() == 5,
            "End(T) quiver is not 4 vertices / 5 arrows");
    Loaded b = load("sec5_B");
    if (e.presentation) {
        auto m = match_presentation(e.algebra, *e.presentation, b.spec.quiver, b.spec.relations);
        f.check(m && m->ideal_equal, "End(T) relation ideal differs from the expected one");
    }
    f.check(check_iterated_nu_stable(a.alg, c.complex, true).verdict, "iterated nu-stable verdict is FALSE");
    return f;
}

Failures criterion2() {
    Failures f;
    Loaded a = load("fig1");
    NuStableReport nu = maximal_nu_stable(a.alg);
    f.check(nu.e_labels == std::vector<std::size_t>{1, 2}, "E != P(2) + P(3)");
    ProjComplex t = load_complex(a, "fig1_T");
    auto v = validate(t);
    f.check(v.d_squared_zero && v.is_radical, "T fails validate");
    TiltingReport tr = verify_tilting(t);
    for (const auto& [n, d] : tr.hom_dims)
        if (n != 0) f.check(d == 0, "Hom(T, T[" + std::to_string(n) + "]) != 0");
    f.check(tr.tilting(), "T is not tilting");
    EndAlgebra e = end_algebra(t);
    Loaded b = load("fig2");
    Algebra pb = b.spec.path_algebra();
    f.check(e.algebra.dim() == pb.dim() && pb.dim() == 9, "dim End(T) != dim B = 9");
    std::vector<Vec> idem;
    for (std::size_t k = 0; k < pb.num_vertices(); ++k) idem.push_back(pb.idempotent(k));
    f.check(cartan_equal_up_to_permutation(cartan_of(e.algebra, e.idempotents), cartan_of(pb, idem)),
            "Cartan matrices differ");
    if (e.presentation) {
        auto m = match_presentation(e.algebra, *e.presentation, b.spec.quiver, b.spec.relations);
        f.check(m && m->ideal_equal, "relation ideals differ");
    } else {
        f.check(false, "End(T) has no presentation");
    }
    NuStableReport it = check_iterated_nu_stable(a.alg, t);
    f.check(it.verdict, "iterated nu-stable verdict is FALSE");
    bool witness = false;
    for (const auto& c : it.conditions)
        if (c.vertex == 0) witness = c.not_in_t_pm && c.multiplicity_t0 == 1 && c.multiplicity_one;
    f.check(witness, "no (a)/(b) witness for P(1)");
    return f;
}

Failures criterion3() {
    Failures f;
    std::vector<std::pair<Loaded, ProjComplex>> cases;
    {
        Loaded a = load("fig1");
        cases.emplace_back(a, load_complex(a, "fig1_T"));
        cases.emplace_back(a, load_complex(a, "fig1_mutation_T"));
    }
    {
        Loaded a = load("sec5_A");
        cases.emplace_back(a, construct_tpq(a.alg, {0}, {2, 3}, 1, 1).complex);
    }
    for (const auto& n : {"fig1", "fig2", "sec5_A"}) {
        Loaded a = load(n);
        cases.emplace_back(a, stalk(a.alg, all_vertices(*a.alg)));
    }
    for (const auto& [a, t] : cases) {
        EndAlgebra e = end_algebra(t);
        bool four = check_iterated_nu_stable(a.alg, t).verdict;
        bool five = check_simple_images(a.alg, e).verdict;
        f.check(four == five, a.spec.name + ": criteria disagree");
    }
    return f;
}

Failures criterion4(std::size_t& count) {
    Failures f;
    for (const auto& n : kAlgebras) {
        Loaded a = load(n);
        const std::size_t nv = a.alg->num_vertices();
        for (std::size_t mask = 1; mask < (1u << nv); ++mask) {
            std::vector<std::size_t> labels;
            for (std::size_t v = 0; v < nv; ++v)
                if (mask >> v & 1) labels.push_back(v);
            for (int twice = 0; twice < 2; ++twice) {
                std::vector<std::size_t> x = labels;
                if (twice) x.push_back(labels.front());
                AddNuCheck c = check_add_nu_equal(a.alg, x);
                ++count;
                f.check(c.via_nakayama == c.via_e, n + ": routes disagree on {" + label_list(a.spec.quiver, x) + "}");
            }
        }
    }
    f.check(count >= 20, "fewer than 20 cases");
    return f;
}

Failures criterion5() {
    Failures f;
    Loaded a = load("fig1");
    ProjComplex t = load_complex(a, "fig1_T");
    std::vector<std::pair<std::string, ProjComplex>> xs = {
        {"T", t},
        {"doubled", load_complex(a, "fig1_doubled_T")},
        {"unit", load_complex(a, "fig1_unit")},
        {"mutation", load_complex(a, "fig1_mutation_T")},
        {"T + contractible", direct_sum(t, contractible(a.alg, 1, -1))},
        {"T + two contractibles", direct_sum(direct_sum(t, contractible(a.alg, 0, 0)), contractible(a.alg, 2, -2))},
    };
    Loaded s = load("sec5_A");
    TpqConstruction c = construct_tpq(s.alg, {0}, {2, 3}, 1, 1);
    for (auto& [name, x] : xs) {
        ProjComplex m = minimize(x).complex;
        f.check(minimize(m).complex == m, name + ": minimize is not idempotent");
        f.check(validate(m).is_radical, name + ": minimized complex is not radical");
        for (int n = -2; n <= 2; ++n)
            f.check(homotopy_hom(x, t, n).dim() == homotopy_hom(m, t, n).dim() &&
                        homotopy_hom(t, x, n).dim() == homotopy_hom(t, m, n).dim(),
                    name + ": Hom dimension changed by minimization");
    }
    ProjComplex rc = minimize(c.raw).complex;
    f.check(minimize(rc).complex == rc, "construction: minimize is not idempotent");
    // radical complexes homotopy equivalent to T agree with T degreewise
    for (const auto& x : {xs[4].second, xs[5].second}) {
        ProjComplex m = minimize(x).complex;
        f.check(normalized_terms(m) == normalized_terms(t), "radical forms of T differ degreewise");
    }
    f.check(normalized_terms(rc) == normalized_terms(c.complex), "radical forms of T(P,Q) differ degreewise");
    for (const auto& n : kAlgebras) {
        Loaded l = load(n);
        auto mods = sample_modules(l.alg);
        if (n == "fig1")
            for (const auto& m : {"fig1_S1", "fig1_P1", "fig1_explicit"}) mods.push_back(load_module(l, m));
        for (const auto& x : mods)
            for (std::size_t v = 0; v < l.alg->num_vertices(); ++v)
                f.check(hom_space(projective(l.alg, v), x).size() == x.dim(v), n + ": Yoneda count fails");
    }
    return f;
}

Failures criterion6(std::uint64_t seed) {
    Failures f;
    Loaded a = load("fig1");
    ProjComplex t = load_complex(a, "fig1_T");
    EndAlgebra e = end_algebra(t);
    StableImageCertificate s1 = stable_image(e, load_module(a, "fig1_S1"));
    f.check(s1.image && s1.image->total_dim() == 1, "image of S(1) is not simple");
    Representation p1 = load_module(a, "fig1_P1");
    HomologyProfile prof = homology_profile(e, p1);
    std::size_t h1 = 0;
    if (prof.count(1))
        for (auto d : prof.at(1)) h1 += d;
    f.check(h1 == 2, "H^1 of P(1) does not have dimension 2");
    bool raised = false;
    try {
        stable_image(e, p1);
    } catch (const Error& err) {
        raised = err.kind() == ErrorKind::NotConcentrated;
    }
    f.check(raised, "stable_image(P(1)) does not raise NotConcentrated");
    auto pool = sample_modules(a.alg);
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < 10; ++trial) {
        const auto& x = pool[rng() % pool.size()];
        const auto& y = pool[rng() % pool.size()];
        auto px = homology_profile(e, x), py = homology_profile(e, y), ps = homology_profile(e, direct_sum(x, y));
        for (const auto& [i, d] : ps)
            for (std::size_t k = 0; k < d.size(); ++k) {
                std::size_t expect = (px.count(i) ? px[i][k] : 0) + (py.count(i) ? py[i][k] : 0);
                f.check(d[k] == expect, "profile not additive (trial " + std::to_string(trial) + ")");
            }
    }
    return f;
}

Failures criterion7() {
    Failures f;
    Loaded a = load("fig1");
    f.check(!verify_tilting(load_complex(a, "fig1_doubled_T")).basic, "doubled complex reported basic");
    f.check(!validate(load_complex(a, "fig1_unit")).is_radical, "unit differential reported radical");
    Loaded s = load("sec5_A");
    bool raised = false;
    try {
        construct_tpq(s.alg, {0}, {0}, 1, 1);
    } catch (const Error& err) {
        raised = err.kind() == ErrorKind::PreconditionFailed;
    }
    f.check(raised, "Hom(P, Q) != 0 not rejected");
    return f;
}

}  // namespace

int main(int argc, char** argv) {
    std::uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 42;
    std::size_t addnu_cases = 0;
    struct Entry {
        int id;
        std::string name;
        double limit;
        std::function<Failures()> run;
    };
    std::vector<Entry> entries = {
        {1, "end-to-end construction, T(P,Q) over the four-vertex algebra", 10, criterion1},
        {2, "three-vertex example: E, tilting check, End(T)", 5, criterion2},
        {3, "conditions (a)/(b) agree with the simple-image test", 10, criterion3},
        {4, "add(X) = add(nu X) routes agree", 5, [&] { return criterion4(addnu_cases); }},
        {5, "homotopy category infrastructure", 10, criterion5},
        {6, "stable image and homology profiles", 5, [&] { return criterion6(seed); }},
        {7, "negative controls", 2, criterion7},
    };
    int failed = 0;
    for (const auto& e : entries) {
        auto t0 = std::chrono::steady_clock::now();
        Failures f;
        try {
            f = e.run();
        } catch (const std::exception& ex) {
            f.items.push_back(std::string("exception: ") + ex.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > e.limit) f.items.push_back("over time limit");
        bool ok = f.items.empty();
        failed += !ok;
        std::printf("%s [%d] %s  (%.3f s, limit %.0f s)\n", ok ? "PASS" : "FAIL", e.id, e.name.c_str(), secs, e.limit);
        if (e.id == 4) std::printf("       %zu projective modules checked\n", addnu_cases);
        for (const auto& s : f.items) std::printf("       - %s\n", s.c_str());
    }
    return failed ? 1 : 0;
}

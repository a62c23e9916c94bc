// The monad zoo: carrier-count oracles, independently computed multiplication
// formulas, full law checks with pinned coverage modes, algebra enumeration,
// and semialgebra normalization.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "weaklaw/monad.hpp"
#include "weaklaw/zoo.hpp"

using namespace weaklaw;

namespace {

const DiagramStat* find_stat(const LawReport& rep, const std::string& name,
                             const std::string& carrier) {
    for (const DiagramStat& d : rep.diagrams)
        if (d.name == name && d.carrier == carrier) return &d;
    return nullptr;
}

}  // namespace

TEST_CASE("powerset family carriers and operations") {
    auto p = powerset_monad();
    auto pp = nonempty_powerset_monad();
    auto pf = finite_powerset_monad();
    for (int n = 0; n <= 3; ++n) {
        Cp x = std_carrier(n);
        CHECK(p->obj(x)->size() == size_t(1) << n);
        CHECK(pp->obj(x)->size() == (size_t(1) << n) - 1);
        CHECK(pf->obj(x)->elems() == p->obj(x)->elems());
        CHECK(p->size_of(double(n)) == double(size_t(1) << n));
    }
    Cp x2 = std_carrier(2);
    Val a = x2->at(0), b = x2->at(1);
    CHECK(p->unit_elem(x2, a) == set_of({a}));
    // union multiplication
    Val tt = set_of({set_of({a}), set_of({a, b})});
    CHECK(p->mult_elem(x2, tt) == set_of({a, b}));
    CHECK(p->mult_elem(x2, empty_set()) == empty_set());
    // nonempty variant never produces the empty subset
    for (Val v : pp->obj(x2)->elems()) CHECK(!v->kids().empty());
}

TEST_CASE("ultrafilters are exactly the principal ones") {
    auto beta = ultrafilter_monad();
    // Brute-forced element lists up to four points, constructed above that.
    for (int n = 0; n <= 5; ++n) {
        Cp x = std_carrier(n);
        Cp bx = beta->obj(x);
        CHECK(bx->size() == size_t(n));
        for (Val f : bx->elems()) {
            Val pt = principal_point(f);
            CHECK(x->contains(pt));
            CHECK(f == principal_ultrafilter(x, pt));
            // an ultrafilter on an n-point set has 2^(n-1) members
            CHECK(f->kids().size() == size_t(1) << (n - 1));
        }
    }
    Cp x3 = std_carrier(3);
    Val c = x3->at(2);
    CHECK(principal_point(beta->unit_elem(x3, c)) == c);
    // functor action relabels the principal point
    Cp x2 = std_carrier(2);
    Val img = beta->map_elem([&](Val) { return x2->at(0); },
                             beta->unit_elem(x3, c), x2);
    CHECK(img == principal_ultrafilter(x2, x2->at(0)));
}

TEST_CASE("ultrafilter multiplication matches the membership formula") {
    auto beta = ultrafilter_monad();
    for (int n = 1; n <= 3; ++n) {
        Cp y = std_carrier(n);
        Cp by = beta->obj(y);
        Cp bby = beta->obj(by);
        std::vector<Val> subsets = all_subsets(y->elems());
        for (Val u : bby->elems()) {
            Val quick = beta->mult_elem(y, u);
            // A is in mult(U) iff {F : A in F} is in U.
            std::vector<Val> members;
            for (Val a : subsets) {
                std::vector<Val> hat;
                for (Val f : by->elems())
                    if (f->contains(a)) hat.push_back(f);
                if (u->contains(set_of(hat))) members.push_back(a);
            }
            CHECK(quick == set_of(members));
        }
    }
}

TEST_CASE("filter carriers, cores, unit, and map") {
    auto fm = filter_monad();
    for (int n = 0; n <= 3; ++n) {
        Cp x = std_carrier(n);
        CHECK(fm->obj(x)->size() == size_t(1) << n);
    }
    // the only filter on the empty set is {emptyset}
    Cp x0 = std_carrier(0);
    CHECK(fm->obj(x0)->at(0) == set_of({empty_set()}));

    Cp x2 = std_carrier(2);
    Val a = x2->at(0), b = x2->at(1);
    // principal filter at a point: all supersets of {a}
    CHECK(fm->unit_elem(x2, a) == set_of({set_of({a}), set_of({a, b})}));
    // cores round-trip through up-sets
    for (Val f : fm->obj(x2)->elems()) CHECK(upset_of(x2, filter_core(f)) == f);
    // mapping the improper filter (core emptyset) yields the improper filter
    Val improper = upset_of(x2, {});
    Cp x1 = std_carrier(1);
    Val mapped = fm->map_elem([&](Val) { return x1->at(0); }, improper, x1);
    CHECK(mapped == upset_of(x1, {}));
    CHECK(filter_core(improper).empty());
    (void)b;
}

TEST_CASE("filter multiplication matches the membership formula") {
    auto fm = filter_monad();
    for (int n = 0; n <= 2; ++n) {
        Cp y = std_carrier(n);
        Cp fy = fm->obj(y);
        Cp ffy = fm->obj(fy);
        std::vector<Val> subsets = all_subsets(y->elems());
        for (Val big : ffy->elems()) {
            Val quick = fm->mult_elem(y, big);
            // A is in mult(FF) iff {G : A in G} is in FF.
            std::vector<Val> members;
            for (Val a : subsets) {
                std::vector<Val> hat;
                for (Val g : fy->elems())
                    if (g->contains(a)) hat.push_back(g);
                if (big->contains(set_of(hat))) members.push_back(a);
            }
            CHECK(quick == set_of(members));
        }
    }
}

TEST_CASE("multiset carriers and truncated multiplication") {
    auto ms = multiset_monad();
    CHECK(ms->truncated);
    size_t expected[] = {1, 4, 10, 20};
    for (int n = 0; n <= 3; ++n)
        CHECK(ms->obj(std_carrier(n))->size() == expected[n]);

    Cp x2 = std_carrier(2);
    Val a = x2->at(0), b = x2->at(1);
    Val s1 = multiset_of({a});
    Val s2 = multiset_of({a, b});
    CHECK(ms->mult_elem(x2, multiset_of({s1, s2})) == multiset_of({a, a, b}));
    // concatenation past the cap is undefined
    Val big = multiset_of({a, a});
    CHECK(ms->mult_elem(x2, multiset_of({big, big})) == nullptr);
    // ... and shows up as genuinely partial in the materialized multiplication
    PartialFn mu = ms->mult(x2);
    CHECK(mu.undefined_count() > 0);
    CHECK(ms->unit_elem(x2, a) == multiset_of({a}));
}

TEST_CASE("normal band elements and word evaluation") {
    auto nb = normal_band_monad();
    CHECK(nb->truncated);
    size_t expected[] = {0, 1, 6, 24};
    for (int n = 0; n <= 3; ++n)
        CHECK(nb->obj(std_carrier(n))->size() == expected[n]);
    // a different degree is a different monad object
    auto nb2 = normal_band_monad(2);
    CHECK(nb2->symbol == "NB2");
    CHECK(nb2->obj(std_carrier(2))->size() == 6);
    CHECK(nb2->obj(std_carrier(3))->size() == 15);

    Cp x2 = std_carrier(2);
    Val a = x2->at(0);
    CHECK(nb->unit_elem(x2, a) == bip_of({a}, a, a));

    // Multiplication must agree with evaluating the word
    // alpha * s1 * ... * sk * beta in the band, where the binary product is
    // (A,a,b)(B,c,d) = (A union B, a, d), undefined past the size cap.
    auto check_against_words = [](MonadPtr m, int d, const Cp& base) {
        auto prod = [d](Val u, Val v) -> Val {
            std::vector<Val> un = union_sorted(u->kids(), v->kids());
            if (int(un.size()) > d) return nullptr;
            return bip_of(std::move(un), u->first_point(), v->second_point());
        };
        Cp nbx = m->obj(base);
        Cp nb2x = m->obj(nbx);
        size_t undefined = 0;
        for (Val om : nb2x->elems()) {
            Val cur = om->first_point();
            for (Val s : om->kids()) {
                cur = prod(cur, s);
                if (!cur) break;
            }
            if (cur) cur = prod(cur, om->second_point());
            Val quick = m->mult_elem(base, om);
            CHECK(quick == cur);
            if (!cur) ++undefined;
        }
        return undefined;
    };
    CHECK(check_against_words(nb, 3, std_carrier(2)) == 0);   // unions fit
    CHECK(check_against_words(nb2, 2, std_carrier(3)) > 0);   // some overflow
}

TEST_CASE("monad laws hold across the zoo") {
    std::vector<std::pair<std::string, Status>> expected = {
        {"powerset", Status::SampledPass},
        {"nonempty-powerset", Status::SampledPass},
        {"finite-powerset", Status::SampledPass},
        {"ultrafilter", Status::Pass},
        {"filter", Status::SampledPass},
        {"multiset", Status::Pass},
        {"normal-band", Status::SampledPass},
        {"identity", Status::Pass},
    };
    auto monads = all_monads();
    REQUIRE(monads.size() == expected.size());
    for (size_t i = 0; i < monads.size(); ++i) {
        MonadPtr m = monads[i];
        CAPTURE(m->name);
        CHECK(m->name == expected[i].first);
        CheckConfig cfg;
        cfg.sizes = m->default_sizes;
        LawReport rep = check_monad_laws(*m, cfg);
        CHECK(rep.ok());
        CHECK(rep.status == expected[i].second);
        // sampled runs must record their seed, exhaustive ones must not
        CHECK(rep.seed.has_value() == (expected[i].second == Status::SampledPass));
    }
}

TEST_CASE("coverage modes follow the budget model") {
    CheckConfig cfg;

    auto p = powerset_monad();
    LawReport prep = check_monad_laws(*p, cfg);
    REQUIRE(find_stat(prep, "assoc", "X2"));
    CHECK(find_stat(prep, "assoc", "X2")->mode == "exhaustive");
    REQUIRE(find_stat(prep, "assoc", "X3"));
    CHECK(find_stat(prep, "assoc", "X3")->mode == "sampled");

    auto fm = filter_monad();
    LawReport frep = check_monad_laws(*fm, cfg);
    REQUIRE(find_stat(frep, "assoc", "X2"));
    CHECK(find_stat(frep, "assoc", "X2")->mode == "sampled");
    REQUIRE(find_stat(frep, "assoc", "X3"));
    CHECK(find_stat(frep, "assoc", "X3")->mode == "skipped");

    // Truncated monads: the dedicated scans stay exhaustive below the sizes
    // where towers explode, and genuinely partial instances are accounted as
    // out of range rather than silently dropped.
    auto ms = multiset_monad();
    LawReport mrep = check_monad_laws(*ms, cfg);
    for (int n = 0; n <= 3; ++n) {
        const DiagramStat* st = find_stat(mrep, "assoc", "X" + std::to_string(n));
        REQUIRE(st);
        CHECK(st->mode == "exhaustive");
    }
    CHECK(find_stat(mrep, "assoc", "X1")->out_of_range > 0);

    auto nb = normal_band_monad();
    LawReport nrep = check_monad_laws(*nb, cfg);
    REQUIRE(find_stat(nrep, "assoc", "X2"));
    CHECK(find_stat(nrep, "assoc", "X2")->mode == "exhaustive");
    CHECK(find_stat(nrep, "assoc", "X2")->out_of_range > 0);
    REQUIRE(find_stat(nrep, "assoc", "X3"));
    CHECK(find_stat(nrep, "assoc", "X3")->mode == "sampled");
}

TEST_CASE("algebra enumeration: ultrafilter algebras are unique") {
    auto beta = ultrafilter_monad();
    for (int n = 0; n <= 3; ++n) {
        Cp x = std_carrier(n);
        auto algs = enumerate_algebras(*beta, x);
        REQUIRE(algs.size() == 1);
        // the unique structure map sends a principal ultrafilter to its point
        for (Val f : beta->obj(x)->elems())
            CHECK(algs[0].action(f) == principal_point(f));
    }
    // powerset algebras on two points: the two join-semilattice orders
    auto p = powerset_monad();
    CHECK(enumerate_algebras(*p, std_carrier(2)).size() == 2);
    // ... and none at all on the empty carrier (P(empty) is nonempty)
    CHECK(enumerate_algebras(*p, std_carrier(0)).empty());
    // identity algebras are forced by the unit law
    auto id = identity_monad();
    for (int n = 0; n <= 3; ++n)
        CHECK(enumerate_algebras(*id, std_carrier(n)).size() == 1);
}

TEST_CASE("semialgebra normalization splits off a genuine algebra") {
    auto p = powerset_monad();
    Cp x3 = std_carrier(3);
    Val a = x3->at(0), b = x3->at(1), c = x3->at(2);
    Cp px3 = p->obj(x3);
    // "max in the chain a < b < c, but never below b": associative, not
    // unital, with idempotent e sending a to b.
    auto rank = [&](Val v) { return x3->index_of(v); };
    FinFn action = FinFn::from_fn(px3, x3, [&](Val s) {
        Val best = b;
        for (Val v : s->kids())
            if (rank(v) > rank(best)) best = v;
        return best;
    });
    AlgebraSpec semi{"max-or-b", x3, action};
    NormalizedSemialgebra norm = normalize_semialgebra(*p, semi, "chain-bc");
    CHECK(norm.split.image->size() == 2);
    CHECK(norm.split.image->contains(b));
    CHECK(norm.split.image->contains(c));
    CHECK(compose(norm.split.p, norm.split.i) == FinFn::identity(norm.split.image));
    // the induced action is the join of the chain b < c
    Cp pim = p->obj(norm.split.image);
    CHECK(norm.algebra.action(set_of({})) == b);
    CHECK(norm.algebra.action(set_of({c})) == c);
    CHECK(norm.algebra.action(set_of({b, c})) == c);
    LawReport rep = check_algebra(*p, norm.algebra);
    CHECK(rep.ok());

    // a swap is not idempotent, hence not a semialgebra
    FinFn swap = FinFn::from_fn(px3, x3, [&](Val s) {
        if (s == set_of({a})) return b;
        if (s == set_of({b})) return a;
        return c;
    });
    AlgebraSpec bad{"swap", x3, swap};
    CHECK_THROWS_AS(normalize_semialgebra(*p, bad, "img"), PreconditionError);
}

TEST_CASE("kleisli composition through the powerset") {
    auto p = powerset_monad();
    Cp x2 = std_carrier(2);
    Val a = x2->at(0), b = x2->at(1);
    Cp px2 = p->obj(x2);
    FinFn f = FinFn::from_fn(x2, px2, [&](Val v) {
        return v == a ? set_of({a, b}) : empty_set();
    });
    FinFn g = FinFn::from_fn(x2, px2, [&](Val v) {
        return v == a ? set_of({a, b}) : set_of({a});
    });
    FinFn gf = kleisli_compose(*p, f, g, x2);
    CHECK(gf(a) == set_of({a, b}));
    CHECK(gf(b) == empty_set());
}

TEST_CASE("set-algebra helpers") {
    Cp x3 = std_carrier(3);
    Val a = x3->at(0), b = x3->at(1), c = x3->at(2);
    CHECK(intersect_sorted({a, b}, {b, c}) == std::vector<Val>{b});
    CHECK(union_sorted({a}, {b, c}) == std::vector<Val>({a, b, c}));
    CHECK(all_subsets(x3->elems()).size() == 8);
    // empty-core up-set contains every subset
    CHECK(upset_of(x3, {})->kids().size() == 8);
    // whole-set core leaves a single member
    CHECK(upset_of(x3, {a, b, c})->kids().size() == 1);
    CHECK_THROWS_AS(principal_ultrafilter(x3, atom("zz")), PreconditionError);
    CHECK_THROWS_AS(filter_core(empty_set()), PreconditionError);
    CHECK_THROWS_AS(principal_point(upset_of(x3, {a, b})), PreconditionError);
}

TEST_CASE("catalog lookup") {
    auto monads = all_monads();
    CHECK(monads.size() == 8);
    for (MonadPtr m : monads) {
        CHECK(find_monad(m->name) == m);
        CHECK(find_monad(m->symbol) == m);
        CHECK(!m->note.empty());
    }
    CHECK(find_monad("P") == powerset_monad());
    CHECK(find_monad("beta") == ultrafilter_monad());
    CHECK(find_monad("no-such-monad") == nullptr);
}

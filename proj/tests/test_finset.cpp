// Foundations: interned values, carriers, functions, relations, squares,
// idempotent splitting, and the JSON round trips.  Expected values here are
// small enough to be written out by hand.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "weaklaw/errors.hpp"
#include "weaklaw/finset.hpp"
#include "weaklaw/json_io.hpp"
#include "weaklaw/report.hpp"
#include "weaklaw/value.hpp"

using namespace weaklaw;

TEST_CASE("values intern and canonicalize") {
    Val a = atom("a"), b = atom("b");
    CHECK(a == atom("a"));
    CHECK(a != b);
    CHECK(set_of({b, a, a}) == set_of({a, b}));
    CHECK(set_of({}) == empty_set());
    CHECK(multiset_of({b, a, a}) == multiset_of({a, a, b}));
    CHECK(multiset_of({a, a}) != multiset_of({a}));
    CHECK(pair_of(a, b) != pair_of(b, a));
    CHECK(bip_of({a, b}, a, b) == bip_of({b, a}, a, b));
    CHECK_THROWS_AS(bip_of({a}, a, b), PreconditionError);
}

TEST_CASE("value order is total and structural") {
    Val a = atom("a"), b = atom("b");
    CHECK(cmp(a, a) == 0);
    CHECK(cmp(a, b) < 0);
    CHECK(cmp(b, a) > 0);
    // Atoms sort before structured values.
    CHECK(cmp(a, empty_set()) < 0);
    // Sets compare lexicographically on sorted children.
    CHECK(cmp(set_of({a}), set_of({a, b})) < 0);
    CHECK(cmp(set_of({a, b}), set_of({b})) < 0);
    // Pairs and bips are distinguished from sets by tag.
    CHECK(cmp(set_of({a, b}), pair_of(a, b)) != 0);
    CHECK(cmp(bip_of({a, b}, a, a), bip_of({a, b}, a, b)) < 0);
}

TEST_CASE("rendering is stable") {
    Val a = atom("a"), b = atom("b");
    CHECK(a->str() == "a");
    CHECK(set_of({b, a})->str() == "{a,b}");
    CHECK(multiset_of({a, a, b})->str() == "[a,a,b]");
    CHECK(pair_of(a, b)->str() == "(a,b)");
    CHECK(bip_of({a, b}, b, a)->str() == "<{a,b}:b,a>");
    CHECK(empty_set()->str() == "{}");
}

TEST_CASE("carriers keep canonical element order") {
    Val a = atom("a"), b = atom("b"), c = atom("c");
    Cp x = make_carrier("X", {c, a, b, a});
    CHECK(x->size() == 3);
    CHECK(x->at(0) == a);
    CHECK(x->at(2) == c);
    CHECK(x->index_of(b) == 1);
    CHECK(x->contains(c));
    CHECK_FALSE(x->contains(atom("z")));
    CHECK_THROWS_AS(x->index_of(atom("z")), PreconditionError);

    Cp e = make_carrier("E", {});
    CHECK(e->size() == 0);

    CHECK(std_carrier(0)->size() == 0);
    CHECK(std_carrier(3)->size() == 3);
    CHECK(std_carrier(3)->name() == "X3");
    CHECK(std_carrier(2)->at(1) == b);
}

TEST_CASE("functions compose and classify") {
    Cp x2 = std_carrier(2), x3 = std_carrier(3);
    Val a = atom("a"), b = atom("b"), c = atom("c");

    FinFn f = FinFn::from_fn(x2, x3, [&](Val v) { return v == a ? b : c; });
    CHECK(f(a) == b);
    CHECK(f(b) == c);
    CHECK_FALSE(is_surjective(f));
    CHECK(is_injective(f));

    FinFn g = FinFn::from_fn(x3, x2, [&](Val v) { return v == c ? b : a; });
    CHECK(is_surjective(g));
    CHECK_FALSE(is_injective(g));

    FinFn gf = compose(g, f);
    CHECK(gf(a) == a);
    CHECK(gf(b) == b);
    CHECK(compose(FinFn::identity(x3), f) == f);
    CHECK(compose(f, FinFn::identity(x2)) == f);
}

TEST_CASE("partial functions track definedness") {
    Cp x2 = std_carrier(2);
    PartialFn p(x2, x2, {1, -1});
    CHECK(p.defined_idx(0));
    CHECK_FALSE(p.defined_idx(1));
    CHECK(p.undefined_count() == 1);
    CHECK(p(atom("a")).value() == atom("b"));
    CHECK_FALSE(p(atom("b")).has_value());
    CHECK_THROWS_AS(p.to_total(), PreconditionError);
    CHECK(PartialFn::total(FinFn::identity(x2)).to_total() == FinFn::identity(x2));
}

TEST_CASE("relations compose with witnesses") {
    Cp x3 = std_carrier(3);
    Val a = atom("a"), b = atom("b"), c = atom("c");
    FinRel r = FinRel::from_pairs(x3, x3, {{a, b}, {b, c}});
    FinRel s = FinRel::from_pairs(x3, x3, {{b, c}, {c, a}});

    FinRel sr = compose_rel(s, r);
    CHECK(sr.related(a, c));
    CHECK(sr.related(b, a));
    CHECK(sr.pairs().size() == 2);

    std::unordered_map<uint64_t, Val> wit;
    compose_rel_with_witness(s, r, &wit);
    CHECK(wit.size() == 2);

    CHECK(FinRel::identity(x3).subset_of(FinRel::full(x3, x3)));
    CHECK(converse(converse(r)) == r);

    auto img = r.image_of({a, b});
    REQUIRE(img.size() == 2);
    CHECK(img[0] == b);
    CHECK(img[1] == c);
}

TEST_CASE("graph and cograph glue functions into relations") {
    Cp x2 = std_carrier(2), x3 = std_carrier(3);
    Val a = atom("a"), b = atom("b"), c = atom("c");
    FinFn f = FinFn::from_fn(x2, x3, [&](Val v) { return v == a ? b : c; });

    CHECK(graph(f).related(a, b));
    CHECK(cograph(f).related(b, a));
    CHECK(converse(graph(f)) == cograph(f));

    AdjunctionReport adj = check_adjunction(f);
    CHECK(adj.holds);
}

TEST_CASE("tabulation recovers the relation") {
    Cp x3 = std_carrier(3);
    Val a = atom("a"), b = atom("b"), c = atom("c");
    FinRel r = FinRel::from_pairs(x3, x3, {{a, a}, {a, c}, {b, c}});
    Tabulation t = tabulate(r);
    CHECK(t.apex->size() == 3);
    CHECK(compose_rel(graph(t.q), cograph(t.p)) == r);
}

TEST_CASE("weak pullback detection") {
    Cp x1 = std_carrier(1), x2 = std_carrier(2);
    Val a = atom("a"), b = atom("b");

    // Identity square on X2 pulled along a collapse: apex X2, legs identity,
    // cospan X2 -> X1 <- X2.  The pullback is X2 x X2; the comparison map
    // hits only the diagonal, so this is not a weak pullback.
    FinFn collapse = FinFn::from_fn(x2, x1, [&](Val) { return a; });
    Square bad{FinFn::identity(x2), FinFn::identity(x2), collapse, collapse};
    REQUIRE(bad.commutes());
    WeakPullbackReport wr = is_weak_pullback(bad);
    CHECK_FALSE(wr.weak);
    REQUIRE(wr.missing.has_value());
    CHECK((*wr.missing == pair_of(a, b) || *wr.missing == pair_of(b, a)));

    // The actual pullback square of the same cospan is a weak pullback.
    Cp sq = make_carrier("Q", {pair_of(a, a), pair_of(a, b), pair_of(b, a), pair_of(b, b)});
    FinFn p1 = FinFn::from_fn(sq, x2, [](Val v) { return v->kids()[0]; });
    FinFn p2 = FinFn::from_fn(sq, x2, [](Val v) { return v->kids()[1]; });
    Square good{p2, p1, collapse, collapse};
    REQUIRE(good.commutes());
    CHECK(is_weak_pullback(good).weak);

    // Non-commuting squares are rejected outright.
    FinFn swap = FinFn::from_fn(x2, x2, [&](Val v) { return v == a ? b : a; });
    Square askew{swap, FinFn::identity(x2), FinFn::identity(x2), FinFn::identity(x2)};
    CHECK_THROWS_AS(is_weak_pullback(askew), PreconditionError);
}

TEST_CASE("idempotent splitting") {
    Cp x3 = std_carrier(3);
    Val a = atom("a"), c = atom("c");
    // e collapses b onto a and fixes a, c.
    FinFn e = FinFn::from_fn(x3, x3, [&](Val v) { return v == atom("b") ? a : v; });
    Splitting s = split_idempotent(e, "I");
    CHECK(s.image->size() == 2);
    CHECK(s.image->contains(a));
    CHECK(s.image->contains(c));
    CHECK(compose(s.i, s.p) == e);
    CHECK(compose(s.p, s.i) == FinFn::identity(s.image));

    FinFn notid = FinFn::from_fn(x3, x3, [&](Val v) {
        return v == a ? atom("b") : (v == atom("b") ? c : a);
    });
    CHECK_THROWS_AS(split_idempotent(notid, "J"), PreconditionError);
}

TEST_CASE("budget guard trips on oversized constructions") {
    uint64_t before = element_budget();
    set_element_budget(10);
    CHECK_THROWS_AS(guard_budget(11, "eleven things"), BudgetError);
    CHECK_NOTHROW(guard_budget(10, "ten things"));
    set_element_budget(before);
}

TEST_CASE("json round trips") {
    Val a = atom("a"), b = atom("b");
    Val v = set_of({a, multiset_of({a, a}), pair_of(a, b), bip_of({a, b}, b, a)});
    CHECK(value_from_json(value_to_json(v)) == v);

    Cp x2 = std_carrier(2);
    Json cj = carrier_to_json(x2);
    Cp back = carrier_from_json(cj);
    CHECK(back->elems() == x2->elems());
    CHECK(back->name() == x2->name());

    FinFn f = FinFn::from_fn(x2, x2, [&](Val v2) { return v2 == a ? b : a; });
    CHECK(finfn_from_json(finfn_to_json(f)) == f);

    FinRel r = FinRel::from_pairs(x2, x2, {{a, a}, {b, a}});
    CHECK(finrel_from_json(finrel_to_json(r)) == r);

    CHECK_THROWS_AS(value_from_json(Json{{"nope", 1}}), ParseError);
    CHECK_THROWS_AS(finfn_from_json(Json{{"dom", carrier_to_json(x2)}}), ParseError);
}

TEST_CASE("json output is deterministic") {
    Cp x2 = std_carrier(2);
    FinRel r = FinRel::from_pairs(x2, x2, {{atom("b"), atom("a")}, {atom("a"), atom("a")}});
    std::string once = dump_json(finrel_to_json(r));
    std::string twice = dump_json(finrel_to_json(r));
    CHECK(once == twice);
    CHECK(once.back() == '\n');
    // Pairs come out in canonical order regardless of construction order:
    // inside the pairs section, (a,a) precedes (b,a).
    size_t pairs_at = once.find("\"pairs\"");
    REQUIRE(pairs_at != std::string::npos);
    CHECK(once.find("\"a\"", pairs_at) < once.find("\"b\"", pairs_at));
}

TEST_CASE("law reports aggregate diagram stats") {
    LawReport rep;
    rep.subject = "demo";
    rep.operation = "check-demo";
    rep.budget = 1000;

    DiagramStat ok{"unit", "X2", "exhaustive", 4, 4, 0, true};
    rep.absorb(ok);
    CHECK(rep.status == Status::Pass);

    DiagramStat sampled{"assoc", "X3", "sampled", 100, 1e30, 0, true};
    rep.absorb(sampled);
    CHECK(rep.status == Status::SampledPass);
    CHECK(rep.ok());

    Witness w;
    w.diagram = "assoc";
    w.carrier = "X3";
    w.input = atom("a");
    w.sides = {{"lhs", atom("a")}, {"rhs", atom("b")}};
    rep.fail_with(w);
    CHECK(rep.status == Status::Fail);
    CHECK_FALSE(rep.ok());

    Json j = rep.to_json();
    CHECK(j["status"] == "fail");
    CHECK(j["diagrams"].size() == 2);
    CHECK(j["witness"]["sides"].size() == 2);

    std::string dot = witness_to_dot(rep);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("assoc") != std::string::npos);
}

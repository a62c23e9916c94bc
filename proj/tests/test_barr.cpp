// Relation lifting: closed-form liftings against the span construction,
// weak-cartesianness of functors and unit/multiplication families, and the
// lifting laws (identity, graph, inclusion, composition).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "weaklaw/barr.hpp"
#include "weaklaw/zoo.hpp"

using namespace weaklaw;

namespace {

const DiagramStat* find_fail(const LawReport& rep) {
    for (const DiagramStat& d : rep.diagrams)
        if (!d.passed) return &d;
    return nullptr;
}

}  // namespace

TEST_CASE("span lifting of a one-pair relation through the powerset") {
    Cp n2 = make_carrier("N2", {atom("n0"), atom("n1")});
    Cp l1 = make_carrier("L1", {atom("w")});
    FinRel r = FinRel::from_pairs(n2, l1, {{atom("n0"), atom("w")}});

    auto pf = functor_of(powerset_monad());
    FinRel lifted = barr_lift(*pf, r);
    CHECK(lifted.pairs().size() == 2);
    CHECK(lifted.related(empty_set(), empty_set()));
    CHECK(lifted.related(set_of({atom("n0")}), set_of({atom("w")})));
    // the subset containing the unrelated point never lifts
    CHECK(!lifted.related(set_of({atom("n0"), atom("n1")}), set_of({atom("w")})));

    // same answer from the closed-form two-sided condition
    CHECK(egli_milner(r) == lifted);

    // the identity functor lifts a relation to itself
    auto idf = identity_functor();
    CHECK(barr_lift(*idf, r) == r);
}

TEST_CASE("closed-form powerset lifting on identity and total relations") {
    Cp x2 = std_carrier(2);
    auto p = powerset_monad();
    CHECK(egli_milner(FinRel::identity(x2)) == FinRel::identity(p->obj(x2)));

    FinRel total = egli_milner(FinRel::full(x2, x2));
    // empty with empty, and every pair of nonempty subsets
    CHECK(total.pairs().size() == 1 + 3 * 3);
    CHECK(total.related(empty_set(), empty_set()));
    Val a = x2->at(0), b = x2->at(1);
    CHECK(total.related(set_of({a}), set_of({b})));
    CHECK(!total.related(empty_set(), set_of({a})));
}

TEST_CASE("closed-form lifting equals the span lifting for all small relations") {
    auto pf = functor_of(powerset_monad());
    auto bf = functor_of(ultrafilter_monad());
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b) {
            Cp xa = std_carrier(a), xb = std_carrier(b);
            if (a * b <= 6) {
                for (const FinRel& r : enumerate_relations(xa, xb)) {
                    CHECK(egli_milner(r) == barr_lift(*pf, r));
                    CHECK(beta_lift(r) == barr_lift(*bf, r));
                }
            } else {
                Rng rng(0xba55ull + uint64_t(a * 16 + b));
                for (int i = 0; i < 25; ++i) {
                    FinRel r = sample_relation(xa, xb, rng);
                    CHECK(egli_milner(r) == barr_lift(*pf, r));
                    CHECK(beta_lift(r) == barr_lift(*bf, r));
                }
            }
        }
}

TEST_CASE("ultrafilter lifting relates principal points exactly as the base") {
    Cp x2 = std_carrier(2);
    Cp x3 = std_carrier(3);
    Val a = x2->at(0), b = x2->at(1);
    FinRel r = FinRel::from_pairs(x2, x3, {{a, x3->at(2)}, {b, x3->at(0)}});
    FinRel lifted = beta_lift(r);
    CHECK(lifted.pairs().size() == r.pairs().size());
    CHECK(lifted.related(principal_ultrafilter(x2, a),
                         principal_ultrafilter(x3, x3->at(2))));
    CHECK(!lifted.related(principal_ultrafilter(x2, a),
                          principal_ultrafilter(x3, x3->at(0))));
    // identity relation lifts to the identity
    CHECK(beta_lift(FinRel::identity(x2)) == FinRel::identity(ultrafilter_monad()->obj(x2)));
}

TEST_CASE("weak-cartesianness of functors") {
    CheckConfig cfg;

    auto pf = functor_of(powerset_monad());
    LawReport prep = check_weakly_cartesian_functor(*pf, cfg);
    CHECK(prep.ok());

    auto bf = functor_of(ultrafilter_monad());
    CHECK(check_weakly_cartesian_functor(*bf, cfg).ok());

    auto idf = identity_functor();
    CHECK(check_weakly_cartesian_functor(*idf, cfg).ok());

    // a constant functor sends every square to an identity square, which is
    // always a weak pullback
    auto cf = constant_functor(2);
    CHECK(check_weakly_cartesian_functor(*cf, cfg).ok());

    // the support functor collapses an empty pullback over nonempty carriers
    // into a non-weak square
    auto sf = support_functor();
    LawReport srep = check_weakly_cartesian_functor(*sf, cfg);
    CHECK(srep.status == Status::Fail);
    REQUIRE(srep.witness.has_value());
    CHECK(srep.witness->input == pair_of(atom("*"), atom("*")));

    // bounded multisets stay weakly cartesian: fibers of equal size always
    // admit a pairing no larger than either side
    auto mf = functor_of(multiset_monad());
    CHECK(check_weakly_cartesian_functor(*mf, cfg).ok());

    // bounded bands do not: covering both supports can take more pairs than
    // the cap allows once the two distinguished points coincide on one side
    auto nf = functor_of(normal_band_monad());
    CheckConfig nbcfg;
    nbcfg.sizes = {0, 1, 3};
    LawReport nrep = check_weakly_cartesian_functor(*nf, nbcfg);
    CHECK(nrep.status == Status::Fail);
    CHECK(nrep.witness.has_value());
}

TEST_CASE("weak-cartesianness of unit and multiplication families") {
    CheckConfig cfg;
    auto p = powerset_monad();

    // unit fails: a two-point subset over a collapse has no singleton preimage
    LawReport urep = check_weakly_cartesian_nat(*p, NatFamily::Unit, cfg);
    CHECK(urep.status == Status::Fail);
    REQUIRE(urep.witness.has_value());
    Cp x2 = std_carrier(2);
    Cp x1 = std_carrier(1);
    CHECK(urep.witness->input ==
          pair_of(x1->at(0), set_of({x2->at(0), x2->at(1)})));

    // multiplication passes: intersecting with fiber preimages rebuilds the
    // inner family
    LawReport mrep = check_weakly_cartesian_nat(*p, NatFamily::Mult, cfg);
    CHECK(mrep.ok());

    // ultrafilter unit and multiplication are bijective at finite scale
    auto bm = ultrafilter_monad();
    LawReport burep = check_weakly_cartesian_nat(*bm, NatFamily::Unit, cfg);
    CHECK(burep.ok());
    bool noted = false;
    for (const std::string& n : burep.notes)
        noted = noted || n.find("bijection") != std::string::npos;
    CHECK(noted);
    CHECK(check_weakly_cartesian_nat(*bm, NatFamily::Mult, cfg).ok());

    // partial multiplications are out of scope, loudly
    auto ms = multiset_monad();
    CHECK_THROWS_AS(check_weakly_cartesian_nat(*ms, NatFamily::Mult, cfg),
                    PreconditionError);
}

TEST_CASE("lifting laws for weakly cartesian functors") {
    CheckConfig small;
    small.sizes = {0, 1, 2};

    auto pf = functor_of(powerset_monad());
    LawReport prep = check_2functor(*pf, small);
    CHECK(prep.ok());
    CHECK(prep.status == Status::Pass);  // everything exhaustive at this scale

    auto idf = identity_functor();
    CHECK(check_2functor(*idf, small).ok());

    auto bf = functor_of(ultrafilter_monad());
    CHECK(check_2functor(*bf, small).ok());

    // the support functor breaks composition: two one-pair relations with
    // disjoint middles compose to nothing, but their lifts both collapse to
    // the point relation
    auto sf = support_functor();
    LawReport srep = check_2functor(*sf, small);
    CHECK(srep.status == Status::Fail);
    const DiagramStat* bad = find_fail(srep);
    REQUIRE(bad);
    CHECK(bad->name == "lift-compose");
}

TEST_CASE("relation enumeration and sampling") {
    Cp x2 = std_carrier(2);
    Cp x3 = std_carrier(3);
    CHECK(enumerate_relations(x2, x3).size() == 64);
    CHECK(enumerate_relations(std_carrier(0), x3).size() == 1);
    // sampling is deterministic under a fixed seed
    Rng r1(42), r2(42);
    CHECK(sample_relation(x2, x3, r1) == sample_relation(x2, x3, r2));
    CHECK_THROWS_AS(enumerate_relations(std_carrier(5), std_carrier(5)),
                    BudgetError);
}

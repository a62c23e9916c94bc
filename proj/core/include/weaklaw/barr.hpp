// Extending set functions to relations: every endofunctor lifts a relation by
// tabulating it into a span, applying the functor to both legs, and composing
// the cograph of one with the graph of the other.  For weakly cartesian
// functors (those preserving weak pullbacks) this lifting respects identities,
// composition, and inclusion; the checkers here test weak-cartesianness of
// functors and of unit/multiplication families, and the lifting laws
// themselves, over enumerated small carriers.
#pragma once

#include <map>
#include <memory>

#include "weaklaw/monad.hpp"

namespace weaklaw {

// Endofunctor given by executable data (the functor part of a MonadSpec
// qualifies via functor_of).  obj/arr are derived and memoized.
class FunctorSpec {
public:
    std::string name;
    std::function<std::vector<Val>(const Cp&)> elements_fn;
    std::function<Val(const std::function<Val(Val)>&, Val, const Cp& cod)> map_elem;
    std::function<double(double)> size_of;    // optional, |F X| from |X|
    std::function<double(double)> elem_cost;  // optional, cost per element
    // Optional override so a monad-backed functor shares its monad's memoized
    // carriers (keeps lifted relations comparable across code paths).
    std::function<Cp(const Cp&)> obj_override;

    Cp obj(const Cp& x);
    FinFn arr(const FinFn& f);
    double est_size(double base) const;
    double est_elem_cost(double base) const;

private:
    std::map<std::vector<Val>, Cp> obj_memo_;
};

using FunctorPtr = std::shared_ptr<FunctorSpec>;

FunctorPtr functor_of(const MonadPtr& m);  // a monad's underlying endofunctor
FunctorPtr identity_functor();
// Sends every carrier (the empty one included) to the same `points`-element
// set and every function to the identity; weakly cartesian for any size.
FunctorPtr constant_functor(int points);
// Sends the empty carrier to itself and every nonempty carrier to a point;
// the smallest functor that fails weak-cartesianness (an empty pullback over
// a cospan of nonempty carriers maps to a non-weak square).
FunctorPtr support_functor();

// Relation lifting: tabulate r into a span (p, q), apply f, and return the
// cograph-then-graph composite between f(dom) and f(cod).
FinRel barr_lift(FunctorSpec& f, const FinRel& r);

// Powerset lifting in closed form: subsets (A, B) are related when every
// member of A is related to some member of B and every member of B is related
// to some member of A.  Agrees with barr_lift of the powerset functor.
FinRel egli_milner(const FinRel& r);

// Ultrafilter lifting in closed form: (F, G) are related when the forward
// image of every member of F is a member of G.  Agrees with barr_lift of the
// ultrafilter functor; on finite carriers this relates principal ultrafilters
// exactly when their points are related.
FinRel beta_lift(const FinRel& r);

// Does f send weak pullbacks to weak pullbacks?  Enumerates cospans over
// carriers drawn from cfg.sizes; for each, tests the canonical pullback
// square and all weak-pullback completions with small apexes, applying f and
// re-testing.  The failure witness carries the image pair with no preimage.
LawReport check_weakly_cartesian_functor(FunctorSpec& f, const CheckConfig& cfg = {});

// Is the unit (or multiplication) family of m weakly cartesian?  Tests every
// naturality square along functions between carriers from cfg.sizes.
// The multiplication variant requires a total multiplication.
enum class NatFamily { Unit, Mult };
LawReport check_weakly_cartesian_nat(MonadSpec& m, NatFamily which,
                                     const CheckConfig& cfg = {});

// Lifting laws for f: identities lift to identities, composition and
// inclusion are preserved, and graphs lift to graphs of f.arr.  All four hold
// together exactly when f is weakly cartesian at the tested scale.
LawReport check_2functor(FunctorSpec& f, const CheckConfig& cfg = {});

// All 2^(|x||y|) relations between two carriers, in canonical order.
std::vector<FinRel> enumerate_relations(const Cp& x, const Cp& y,
                                        uint64_t budget = kDefaultBudget);
FinRel sample_relation(const Cp& x, const Cp& y, Rng& rng);

}  // namespace weaklaw

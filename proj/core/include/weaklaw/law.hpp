// Distributive laws between finite-set monads, given as executable data: a
// pointwise component delta_X : T S X -> S T X tagged strict (four axiom
// diagrams) or weak (the inner-unit diagram is dropped).  The module houses
// the axiom checker, the conversions between laws, Kleisli extensions, and
// (weak) liftings, the composite monad obtained by splitting the canonical
// idempotent, delta-algebras, and the equivalence of the three presentations
// of the algebras over a law — each verified by enumeration at desk scale.
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "weaklaw/finset.hpp"
#include "weaklaw/monad.hpp"

namespace weaklaw {

enum class LawStrength { Strict, Weak };

class DistLaw {
public:
    std::string name;  // catalog name, e.g. "pf-over-p"
    std::string note;  // one-line description of the component formula
    MonadPtr s;        // outer monad (S, unit nu, mult omega)
    MonadPtr t;        // inner monad (T, unit eta, mult mu)
    LawStrength strength = LawStrength::Weak;

    // The component delta_X applied to one element of T S X; `x` is the base
    // carrier X.  Total: laws whose inner monad is size-truncated still have
    // total components (the truncation shows up in the mu-diagrams instead).
    std::function<Val(Val, const Cp&)> delta_elem;
    // delta_X(eta_{SX}(a)) for a in S X, evaluated without materializing the
    // inner unit.  Needed because some inner units produce values whose
    // explicit representation is exponentially larger than the answer (the
    // ultrafilter monad over a large carrier); defaults to the composite.
    std::function<Val(Val, const Cp&)> delta_after_unit;
    // The composite idempotent S mu . delta_T . eta_{STX} on one element of
    // S T X, in fused form for laws where the intermediate delta image is
    // exponentially larger than the fixed point it collapses to (the
    // family-of-unions closure); defaults to composing the pieces.
    std::function<Val(Val, const Cp&)> comp_idem;
    // Rough cost of one delta_elem evaluation at base size m.
    std::function<double(double)> delta_cost;

    bool strict() const { return strength == LawStrength::Strict; }
    // Memoized materialized component T S X -> S T X.
    FinFn delta(const Cp& x);
    // delta_X(eta_{SX}(a)) through delta_after_unit (or the default composite).
    Val after_unit(Val a, const Cp& x);

private:
    std::map<std::vector<Val>, FinFn> memo_;
};

using LawPtr = std::shared_ptr<DistLaw>;

// The shipped laws.  Components are the closed comprehension formulas; each
// one is cross-checked in tests against the law derived from the matching
// relation lifting.
LawPtr law_pf_over_p();         // powerset over finite powerset (weak)
LawPtr law_p_over_beta();       // powerset over ultrafilter (weak)
LawPtr law_p_over_multiset();   // powerset over bounded multiset (strict)
LawPtr law_p_over_normalband(); // powerset over bounded normal band (weak)
LawPtr law_p_plus_over_beta();  // nonempty powerset over ultrafilter (weak)
// Trivial inner monad: delta is the identity and the composite collapses to s.
LawPtr identity_law(MonadPtr s);

std::vector<LawPtr> all_laws();
// Lookup by catalog name; accepts the reversed alias "p-over-pf" for
// "pf-over-p".  nullptr when unknown.
LawPtr find_law(const std::string& name);

// Checks the axiom diagrams of `d` over base carriers of the configured
// sizes: the two multiplication rectangles, the outer-unit triangle, and
// naturality of the components; for strict evaluation also the inner-unit
// triangle.  For weak evaluation the inner-unit diagram is still evaluated
// but reported separately (stat name "t-unit(dropped)") without affecting
// the overall status — at finite scale some weak laws satisfy it by accident
// and others genuinely do not, and the report keeps that visible.
// `treat_as` overrides the law's declared strength.
LawReport check_law(DistLaw& d, const CheckConfig& cfg = {},
                    std::optional<LawStrength> treat_as = {});

// The Kleisli extension of the inner monad along the law: a map f : X -> SY
// goes to delta_Y . T f : TX -> STY.  For strict laws the extension is a
// genuine monad on the Kleisli category, with unit and multiplication
// nu_TX . eta_X and nu_TX . mu_X.
struct KleisliExtension {
    LawPtr law;
    // T~ f for a Kleisli map f : X -> S Y; `y` is the base carrier Y.
    FinFn apply(const FinFn& f, const Cp& y) const;
    // Convenience for powerset-valued S: relations X -|-> Y as Kleisli maps.
    FinRel apply_rel(const FinRel& r) const;
    FinFn unit(const Cp& x) const;      // nu_TX . eta_X : X -> STX
    PartialFn mult(const Cp& x) const;  // nu_TX . mu_X : TTX -> STX
};
KleisliExtension extension_from_law(LawPtr d);

// The law recovered from an action on relation-like Kleisli maps (the lifted
// arrow action, e.g. a Barr lifting): delta_X is the action applied to the
// membership relation S X -|-> X, read off pointwise.  Requires a
// powerset-valued outer monad.  `lifted` receives the membership relation
// over (S X, X) and must return its lift over (T S X, T X).
LawPtr law_from_extension(MonadPtr s, MonadPtr t,
                          std::function<FinRel(const FinRel&)> lifted,
                          const std::string& name, LawStrength strength,
                          const std::string& note = "");

// The outer monad applied to a T-algebra along the law: carrier S X with
// action S x . delta_X.  For strict laws a genuine T-algebra; for weak laws
// in general only a semialgebra (associativity without the unit law) — see
// weak_lift for the normalized version.
AlgebraSpec lifting_from_law(DistLaw& d, const AlgebraSpec& a);

// The weak lifting of the outer monad at one T-algebra: the semialgebra
// (S X, S x . delta_X), the genuine algebra split off by its idempotent
// e = S x . delta_X . eta_{SX}, the section/retraction pair, and the unit
// and multiplication induced on the split carrier.  The second-level data
// (carrier2, iota2, pi2) describe the lift applied to the lifted algebra,
// which is the domain of the multiplication.  The second-level T-action is
// deliberately not materialized: its domain T(S(carrier)) can be
// representable-in-principle only (ultrafilters over doubly exponential
// carriers), while every diagram below only needs the maps kept here.
struct WeakLifted {
    MonadPtr s, t;
    AlgebraSpec base;         // the input T-algebra (X, x)
    AlgebraSpec semialgebra;  // (S X, S x . delta_X)
    AlgebraSpec algebra;      // split carrier Y with induced T-action
    FinFn iota;               // Y -> S X, section
    FinFn pi;                 // S X -> Y, retraction
    FinFn unit;               // X -> Y         (pi . nu_X)
    Cp carrier2;              // carrier of the second-level lift
    FinFn iota2;              // carrier2 -> S Y
    FinFn pi2;                // S Y -> carrier2
    FinFn mult;               // carrier2 -> Y  (pi . omega_X . S iota . iota2)
};
WeakLifted weak_lift(DistLaw& d, const AlgebraSpec& a);

// pi . iota = 1 plus the four section/retraction diagrams tying the lifted
// unit and multiplication to the outer monad's.
LawReport check_weak_lifting_data(const WeakLifted& w, const CheckConfig& cfg = {});

// The functorial package of weak_lift, remembering the generating law.
struct WeakLifting {
    LawPtr law;
    std::string name;
    WeakLifted at(const AlgebraSpec& a) const;
    // Arrow map: for f carrying `from.base` to `to.base` as algebras, the
    // lifted map pi_to . S f . iota_from between the split carriers.
    FinFn arr(const WeakLifted& from, const WeakLifted& to, const FinFn& f) const;
};
WeakLifting lifting_of(LawPtr d);

// The law recovered from a lifting: delta_X = sigma . T S eta_X where sigma
// is iota . y . T pi at the free T-algebra on X (for strict laws the
// splitting is trivial and this is the classical formula).  Throws
// PreconditionError when the free-algebra idempotent leaves the truncated
// carrier at the requested size.
LawPtr law_from_lifting(const WeakLifting& w);

// The composite monad on S T X.  Strict laws: unit nu eta, multiplication
// omega mu . S delta T.  Weak laws: the same structure conjugated onto the
// carrier of fixed points of the canonical idempotent
// S mu . delta T . eta_{STX}.
MonadPtr composite_monad(LawPtr d);

// An object carrying compatible algebra structure for both monads.
struct DeltaAlgebra {
    std::string name;
    Cp carrier;
    FinFn t_action;  // T(carrier) -> carrier
    FinFn s_action;  // S(carrier) -> carrier
};
// Both actions are genuine algebras and the interchange square
// s . S t . delta = t . T s holds on T S (carrier).
LawReport check_delta_algebra(DistLaw& d, const DeltaAlgebra& alg,
                              const CheckConfig& cfg = {});
// All delta-algebra structures on `x`, as pairs drawn from the enumerated
// T-algebras and S-algebras, in canonical order.
std::vector<DeltaAlgebra> enumerate_delta_algebras(DistLaw& d, const Cp& x,
                                                   uint64_t budget = kDefaultBudget);

// The three presentations of the algebras over a law — algebras for the
// lifted monad, algebras for the composite monad, delta-algebras — compared
// by enumeration: equal counts, canonical mutually-inverse bijections, and
// (on carriers of size <= 2) matching morphism counts.
LawReport check_equivalences(DistLaw& d, const CheckConfig& cfg = {});

}  // namespace weaklaw

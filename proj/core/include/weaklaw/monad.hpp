// Finite-set monads given by executable data: a carrier builder, a pointwise
// functor action, and pointwise unit/multiplication.  The law checker runs
// every monad axiom diagram over small standard carriers, choosing per diagram
// between exhaustive enumeration, seeded sampling, and declared skips, and it
// accounts explicitly for the partial multiplication of size-truncated monads.
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "weaklaw/errors.hpp"
#include "weaklaw/finset.hpp"
#include "weaklaw/report.hpp"
#include "weaklaw/rng.hpp"

namespace weaklaw {

// Knobs shared by all checkers.  `budget` caps the number of diagram instances
// evaluated exhaustively for one diagram; anything larger is sampled with
// `samples` seeded draws, or skipped (with accounting) when no sampler exists.
struct CheckConfig {
    std::vector<int> sizes{0, 1, 2, 3};
    uint64_t budget = kDefaultBudget;
    uint64_t seed = 0x5eedf00dull;
    uint64_t samples = 200;
};

class MonadSpec {
public:
    std::string name;    // e.g. "powerset"
    std::string symbol;  // derived carrier prefix, e.g. "P" gives "P(X2)"
    std::string note;    // one-line description for the catalog
    bool truncated = false;  // multiplication may be undefined on some inputs
    std::vector<int> default_sizes{0, 1, 2, 3};

    // Elements of T X, in canonical value order.  Must work for any carrier,
    // including carriers whose elements are themselves structured values.
    std::function<std::vector<Val>(const Cp&)> elements_fn;
    // T f applied to one element of T X; `f` maps elements of X to elements
    // of Y, and `cod` is Y itself (filter-like functors need the codomain to
    // materialize images).  Must return nullptr if `f` returns nullptr on a
    // needed input.
    std::function<Val(const std::function<Val(Val)>&, Val, const Cp& cod)> map_elem;
    // True when map_elem actually reads `cod` (filter-like functors push
    // forward along f and need the codomain base).  When false, callers may
    // pass nullptr for `cod` and skip materializing the codomain carrier.
    bool map_needs_cod = false;
    // Unit at X applied to one element of X.
    std::function<Val(const Cp&, Val)> unit_elem;
    // True when unit_elem actually reads the carrier (up-set closures need the
    // ambient base).  When false, callers may pass nullptr for the carrier.
    bool unit_needs_carrier = false;
    // Multiplication at base X applied to one element of T T X; nullptr means
    // undefined (size-truncated monads only).
    std::function<Val(const Cp&, Val)> mult_elem;
    // |T X| as a function of |X| (doubles so towers can overflow to inf).
    std::function<double(double)> size_of;
    // Rough cost to build one element of T X when |X| = m; defaults to 1.
    std::function<double(double)> elem_cost;
    // Seeded draw of one element of T X; required for sampled diagram modes.
    std::function<Val(const Cp&, Rng&)> sample_elem;
    // Optional streaming associativity check used when T T T X is too large to
    // materialize but valid inputs can be enumerated directly.
    std::function<DiagramStat(const Cp&, const CheckConfig&)> assoc_scan;

    // Derived, memoized by carrier element list.
    Cp obj(const Cp& x);
    FinFn arr(const FinFn& f);      // T f : T X -> T Y, materialized
    FinFn unit(const Cp& x);        // eta_X : X -> T X
    PartialFn mult(const Cp& x);    // mu_X : T T X -> T X
    Val map1(const FinFn& f, Val t) const;  // pointwise T f

    double est_size(double base) const;  // -1 when unknown
    double est_elem_cost(double base) const;

private:
    std::map<std::vector<Val>, Cp> obj_memo_;
};

using MonadPtr = std::shared_ptr<MonadSpec>;

// An Eilenberg-Moore algebra candidate: a carrier with a total action map
// T(carrier) -> carrier.  Whether the unit axiom is required is a choice of
// the checker (semialgebras drop it).
struct AlgebraSpec {
    std::string name;
    Cp carrier;
    FinFn action;
};

LawReport check_monad_laws(MonadSpec& m, const CheckConfig& cfg = {});

LawReport check_algebra(MonadSpec& m, const AlgebraSpec& alg,
                        bool require_unit = true, const CheckConfig& cfg = {});

// Splitting a semialgebra through the idempotent e = action . unit:
// p : X -> Y and i : Y -> X with p.i = id and i.p = e, plus the induced
// genuine algebra on Y with action p . x . T(i).  Throws PreconditionError
// when e is not idempotent (i.e. the input is not a semialgebra).
struct NormalizedSemialgebra {
    Splitting split;
    AlgebraSpec algebra;
};
NormalizedSemialgebra normalize_semialgebra(MonadSpec& m, const AlgebraSpec& semi,
                                            const std::string& image_name = "");

// Kleisli composition: f : X -> T Y, g : Y -> T Z (with z_base = Z) gives
// mu_Z . T g . f : X -> T Z.
FinFn kleisli_compose(MonadSpec& m, const FinFn& f, const FinFn& g, const Cp& z_base);

// All algebra structures on `x` (action tables in canonical order); with
// require_unit = false, all semialgebras (associative actions) instead.
std::vector<AlgebraSpec> enumerate_algebras(MonadSpec& m, const Cp& x,
                                            bool require_unit = true,
                                            uint64_t budget = kDefaultBudget);

// Helpers shared by checkers.
std::vector<FinFn> enumerate_functions(const Cp& dom, const Cp& cod,
                                       uint64_t budget = kDefaultBudget);
FinFn sample_function(const Cp& dom, const Cp& cod, Rng& rng);
double count_functions(const Cp& dom, const Cp& cod);
uint64_t fnv1a(std::string_view s);
Val undefined_marker();  // placeholder value used in witnesses for undefined sides

}  // namespace weaklaw

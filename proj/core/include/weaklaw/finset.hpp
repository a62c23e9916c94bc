// Finite sets, functions, relations, and commuting squares, with the
// operations the rest of the library is built from: relation composition
// with witnesses, (co)graphs, tabulation, the direct/inverse-image
// adjunction, weak-pullback detection, and idempotent splitting.
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "weaklaw/errors.hpp"
#include "weaklaw/value.hpp"

namespace weaklaw {

// An ordered, duplicate-free finite set of interned values.  Element order is
// the canonical value order, so two carriers with equal element lists are
// interchangeable regardless of how they were produced.
class Carrier {
public:
    Carrier(std::string name, std::vector<Val> elems);

    const std::string& name() const { return name_; }
    const std::vector<Val>& elems() const { return elems_; }
    size_t size() const { return elems_.size(); }
    Val at(size_t i) const { return elems_[i]; }

    bool contains(Val v) const { return pos_.count(v) != 0; }
    // Index of v in elems(); PreconditionError if absent.
    int index_of(Val v) const;

private:
    std::string name_;
    std::vector<Val> elems_;
    std::unordered_map<Val, int> pos_;
};

using Cp = std::shared_ptr<const Carrier>;

Cp make_carrier(std::string name, std::vector<Val> elems);
// Standard n-element test carrier on atoms a, b, c, d, e (n <= 5) named "Xn".
Cp std_carrier(int n);

// Total function between carriers, stored as an index table over dom.
class FinFn {
public:
    FinFn() = default;
    FinFn(Cp dom, Cp cod, std::vector<int32_t> tab);
    // Build from a callable on values.
    static FinFn from_fn(Cp dom, Cp cod, const std::function<Val(Val)>& f);
    static FinFn identity(Cp x);

    const Cp& dom() const { return dom_; }
    const Cp& cod() const { return cod_; }
    const std::vector<int32_t>& tab() const { return tab_; }

    int32_t map_idx(int32_t i) const { return tab_[i]; }
    Val operator()(Val v) const { return cod_->at(tab_[dom_->index_of(v)]); }

    bool operator==(const FinFn& o) const;

private:
    Cp dom_, cod_;
    std::vector<int32_t> tab_;
};

FinFn compose(const FinFn& g, const FinFn& f);  // g after f
bool is_surjective(const FinFn& f);
bool is_injective(const FinFn& f);

// Partial function: like FinFn but entries may be undefined (-1).  Used for
// truncated monads whose multiplication can fall out of range.
class PartialFn {
public:
    PartialFn() = default;
    PartialFn(Cp dom, Cp cod, std::vector<int32_t> tab);
    static PartialFn total(const FinFn& f);

    const Cp& dom() const { return dom_; }
    const Cp& cod() const { return cod_; }
    const std::vector<int32_t>& tab() const { return tab_; }

    bool defined_idx(int32_t i) const { return tab_[i] >= 0; }
    int32_t map_idx(int32_t i) const { return tab_[i]; }
    std::optional<Val> operator()(Val v) const;
    size_t undefined_count() const;

    // Conversion to a total function; PreconditionError if any entry is undefined.
    FinFn to_total() const;

private:
    Cp dom_, cod_;
    std::vector<int32_t> tab_;
};

// Binary relation between carriers, stored as a canonically sorted list of
// index pairs plus a membership set.
class FinRel {
public:
    FinRel() = default;
    FinRel(Cp dom, Cp cod, std::vector<std::pair<int32_t, int32_t>> pairs);
    static FinRel from_pairs(Cp dom, Cp cod, const std::vector<std::pair<Val, Val>>& pairs);
    static FinRel full(Cp dom, Cp cod);
    static FinRel identity(Cp x);

    const Cp& dom() const { return dom_; }
    const Cp& cod() const { return cod_; }
    const std::vector<std::pair<int32_t, int32_t>>& pairs() const { return pairs_; }

    bool related_idx(int32_t i, int32_t j) const {
        return memb_.count((uint64_t(uint32_t(i)) << 32) | uint32_t(j)) != 0;
    }
    bool related(Val a, Val b) const;

    // Forward image of a set of dom elements, as a sorted value list.
    std::vector<Val> image_of(const std::vector<Val>& xs) const;

    bool subset_of(const FinRel& o) const;  // same carriers required
    bool operator==(const FinRel& o) const;

private:
    Cp dom_, cod_;
    std::vector<std::pair<int32_t, int32_t>> pairs_;
    std::unordered_set<uint64_t> memb_;
};

// Relational composite s . r (r: X -|-> Y first, then s: Y -|-> Z).
FinRel compose_rel(const FinRel& s, const FinRel& r);
// As above, also returning one witnessing middle element per composed pair.
FinRel compose_rel_with_witness(const FinRel& s, const FinRel& r,
                                std::unordered_map<uint64_t, Val>* witness);

FinRel graph(const FinFn& f);    // {(x, f x)} : dom -|-> cod
FinRel cograph(const FinFn& f);  // {(f x, x)} : cod -|-> dom
FinRel converse(const FinRel& r);

// Tabulation of a relation: a span (p, q) whose apex is the set of pairs of r,
// with p, q the projections; composing cograph(p) then graph(q) recovers r.
struct Tabulation {
    Cp apex;
    FinFn p;  // apex -> dom
    FinFn q;  // apex -> cod
};
Tabulation tabulate(const FinRel& r);

// Direct image graph(f) is left adjoint to inverse image cograph(f):
// identity <= cograph . graph  and  graph . cograph <= identity.
struct AdjunctionReport {
    bool holds = false;
    std::string detail;  // first violated inclusion, with a witness pair
};
AdjunctionReport check_adjunction(const FinFn& f);

// Commuting square
//         top
//      A ----> B
// left |       | right
//      v       v
//      C ----> D
//        bottom
struct Square {
    FinFn top, left, bottom, right;
    bool commutes() const;
};

// Weak-pullback test: the comparison map from the apex A into the pullback of
// (bottom, right) must be surjective.  PreconditionError on a non-commuting
// square.  On failure, `missing` holds a pullback element (left-leg value,
// top-leg value) with no preimage.
struct WeakPullbackReport {
    bool weak = false;
    std::optional<Val> missing;  // pair value (c, b)
};
WeakPullbackReport is_weak_pullback(const Square& sq);

// Split an idempotent e : X -> X as e = i . p with p . i = identity on the
// image carrier.  PreconditionError unless e . e = e.
struct Splitting {
    Cp image;
    FinFn p;  // X -> image (retraction)
    FinFn i;  // image -> X (section)
};
Splitting split_idempotent(const FinFn& e, const std::string& image_name);

// Element budget shared by carrier-producing operations.
uint64_t element_budget();
void set_element_budget(uint64_t budget);
// Throws BudgetError if n exceeds the budget, naming the construction.
void guard_budget(double n, const std::string& what);

}  // namespace weaklaw

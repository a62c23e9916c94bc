// Finite topological spaces and finite lattices, with the constructions the
// hyperspace showcase is built from: subbasis saturation, closure, the
// way-below relation evaluated by brute force over directed subsets, Lawson
// and hit-and-miss topologies, and the liminf/adherence convergence checks
// relating filter limits to topological limits on a lattice.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_set>
#include <vector>

#include "weaklaw/errors.hpp"
#include "weaklaw/finset.hpp"
#include "weaklaw/monad.hpp"
#include "weaklaw/report.hpp"
#include "weaklaw/value.hpp"

namespace weaklaw {

// A topology on a finite carrier, stored as the explicit sorted family of
// open sets (each a Set value over the carrier's elements).  Construction
// validates the axioms: the empty set and the full carrier are open, and
// opens are closed under pairwise union and intersection (which for a finite
// family is all of them).
class FinTopSpace {
public:
    FinTopSpace(std::string name, Cp carrier, std::vector<Val> opens);

    static FinTopSpace discrete(const Cp& x);
    static FinTopSpace indiscrete(const Cp& x);
    // Saturate a subbasis: close under finite intersections (the empty
    // intersection giving the full carrier), then under finite unions (the
    // empty union giving the empty set).
    static FinTopSpace from_subbasis(std::string name, const Cp& x,
                                     const std::vector<Val>& subbasis);

    const std::string& name() const { return name_; }
    const Cp& carrier() const { return carrier_; }
    const std::vector<Val>& opens() const { return opens_; }

    bool is_open(Val a) const { return open_memb_.count(a) != 0; }
    bool is_closed(Val a) const;
    // Smallest closed superset of a (a need not be open or closed).
    Val closure(Val a) const;
    // Sorted list of closed sets (complements of opens).
    std::vector<Val> closed_sets() const;
    bool is_discrete() const;
    // Same carrier elements and the same family of opens.
    bool same_topology(const FinTopSpace& o) const;

private:
    std::string name_;
    Cp carrier_;
    std::vector<Val> opens_;
    std::unordered_set<Val> open_memb_;
};

// Every topology on the carrier, in a deterministic order.  Throws
// BudgetError when the candidate family count 2^(2^|X|) exceeds the budget.
std::vector<FinTopSpace> enumerate_topologies(const Cp& x,
                                              uint64_t budget = kDefaultBudget);

// A finite lattice: a carrier together with a partial order under which
// every pair has a meet and a join (hence, being finite and required
// nonempty, a top and a bottom).  Construction validates reflexivity,
// antisymmetry, transitivity, and the existence of all meets and joins,
// throwing PreconditionError naming the first violation.
class FinLattice {
public:
    FinLattice(std::string name, Cp carrier,
               const std::function<bool(Val, Val)>& leq);

    const std::string& name() const { return name_; }
    const Cp& carrier() const { return carrier_; }

    bool leq(Val a, Val b) const;
    Val meet(Val a, Val b) const;
    Val join(Val a, Val b) const;
    Val bottom() const { return carrier_->at(bottom_); }
    Val top() const { return carrier_->at(top_); }
    // Greatest lower bound of a finite family; the empty family gives top.
    Val inf(const std::vector<Val>& xs) const;
    // Least upper bound of a finite family; the empty family gives bottom.
    Val sup(const std::vector<Val>& xs) const;
    // The order as a relation on the carrier.
    FinRel leq_rel() const;

private:
    std::string name_;
    Cp carrier_;
    std::vector<uint8_t> leq_;    // n*n matrix, row-major
    std::vector<int32_t> meet_;   // n*n index tables
    std::vector<int32_t> join_;
    int32_t bottom_ = 0, top_ = 0;
};

// Total order c0 < c1 < ... on n fresh atoms (1 <= n <= 9).
FinLattice chain_lattice(int n);
// Four elements: bottom, two incomparable atoms, top.
FinLattice diamond_lattice();
// Five elements: bottom, three pairwise-incomparable atoms, top.  The
// smallest non-distributive, non-modular-complement witness.
FinLattice m3_lattice();
// Five elements: bottom < a < c < top and bottom < b < top with b
// incomparable to both a and c.  The smallest non-modular lattice.
FinLattice n5_lattice();
// All subsets of the base ordered by inclusion, or by reverse inclusion
// (so that bottom is the full base) when by_reverse_inclusion is set.
FinLattice powerset_lattice(const Cp& base, bool by_reverse_inclusion = false);

// Every lattice order on the standard n-element carrier, via exhaustive
// enumeration of the 3^(n(n-1)/2) comparability assignments.  Requires
// 1 <= n <= 5.
std::vector<FinLattice> enumerate_lattices(int n,
                                           uint64_t budget = kDefaultBudget);

// a & (b | c) == (a & b) | (a & c) for all triples.
bool is_distributive(const FinLattice& l);

// The way-below relation: s is way below x when every directed subset D with
// x <= sup D contains some d with s <= d.  Evaluated naively over all
// directed subsets of the carrier; on a finite lattice this coincides with
// the order itself, which callers can use as a cross-check.
FinRel way_below(const FinLattice& l);

// Every x must be the sup of { s : s way-below x }.  The second overload
// evaluates the same condition against a caller-supplied relation in place
// of the computed one, so a deliberately corrupted relation can be fed in to
// exercise the failure path.
LawReport continuous_lattice_check(const FinLattice& l);
LawReport continuous_lattice_check(const FinLattice& l, const FinRel& way);

// Topology generated by the sets { x : s way-below x } and
// { x : not (s <= x) } for each s.  Discrete on every finite lattice.
FinTopSpace lawson_topology(const FinLattice& l);

// Hit-and-miss hyperspace of a finite space: the carrier is the set of
// closed subsets, and the topology is generated, for each closed C, by
// { A : A and C are disjoint } and { A : A is not contained in C }.
FinTopSpace vietoris_subbasis(const FinTopSpace& space);

// For every filter F on the lattice's carrier, compare the filter's liminf
// (the sup of the infima of its members) with the inf of its adherence (the
// intersection of the closures of its members in the given topology); and
// for every ultrafilter, compare its set of topological limit points in the
// lattice's Lawson topology with the singleton on its liminf.  The topology
// must live on the lattice's carrier.
LawReport liminf_adh_check(const FinLattice& l, const FinTopSpace& top,
                           const CheckConfig& cfg = {});

}  // namespace weaklaw

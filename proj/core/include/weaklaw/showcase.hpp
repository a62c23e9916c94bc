// Worked end-to-end demonstrations: the hyperspace of a finite discrete
// space assembled from the subsets-over-ultrafilters law and compared against
// its direct description, the filter presentation of that law's composite
// monad, quantales of subsets over a commutative monoid, subsemigroup
// hyperspaces of semilattices and of normal bands, the nonempty-subsets
// variant, and a convergence scan over all small lattices and topologies.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "weaklaw/law.hpp"
#include "weaklaw/topology.hpp"

namespace weaklaw {

// The component of the subsets-over-ultrafilters law at X, computed directly
// from its defining comprehension: an ultrafilter on subsets of X goes to
// the set of ultrafilters on X containing the union of every one of its
// member families.  Brute-force and independent of the shipped law's
// principal-point shortcut, so the two can be compared.
FinFn vietoris_delta(const Cp& x);

// The induced semialgebra action on subsets of a finite space: an
// ultrafilter on subsets goes to the intersection of the closures of its
// member-family unions.  The space must be discrete — the only finite case
// carrying an ultrafilter-convergence algebra — and PreconditionError is
// thrown otherwise.
FinFn vietoris_action(const FinTopSpace& space);

// The full hyperspace construction at every requested size: the unique
// convergence algebra, the weak lifting of the subsets-over-ultrafilters
// law over it, and the identification of the result with the direct-image
// hyperspace monad — carrier all subsets, unit singleton, multiplication
// union, arrows direct image, action the closure formula, topology the
// hit-and-miss topology = the order topology of reverse inclusion.
LawReport vietoris_monad_fin(const std::vector<int>& sizes = {0, 1, 2, 3},
                             const CheckConfig& cfg = {});

// The composite monad of the subsets-over-ultrafilters law compared with
// the filter monad: the map sending a set of ultrafilters to the filter of
// its common members is a carrier bijection commuting with unit and
// multiplication at every requested size.
LawReport filter_composite_iso(const std::vector<int>& sizes = {0, 1, 2, 3},
                               const CheckConfig& cfg = {});

// A finite commutative monoid, given by its carrier, unit, and operation.
struct CommMonoid {
    std::string name;
    Cp carrier;
    Val unit;
    std::function<Val(Val, Val)> op;
};

CommMonoid z2_monoid();       // two elements under addition mod 2
CommMonoid trivial_monoid();  // one element
// The carrier of a lattice under binary meet, with unit its top.
CommMonoid meet_monoid(const FinLattice& l);
// Every commutative monoid structure on the standard n-element carrier
// (1 <= n <= 3), by exhaustive table enumeration.
std::vector<CommMonoid> enumerate_comm_monoids(int n,
                                               uint64_t budget = kDefaultBudget);

// The subset quantale of a commutative monoid: subsets under the pointwise
// product A.B = {ab}, with unit the singleton on the monoid unit.  Verifies
// the monoid laws on subsets, agreement of the pointwise product with the
// product induced by the multiset law, preservation of unions in each
// variable, and annihilation by the empty set.  PreconditionError when the
// input fails the commutative-monoid laws.
LawReport quantale_demo(const CommMonoid& m, const CheckConfig& cfg = {});

// The subsemigroup hyperspace of a semilattice (a lattice carrier under
// meet): the weak lifting of the subsets-over-finite-subsets law at the
// meet algebra has carrier the meet-closed subsets, and its induced binary
// product equals the pointwise-meet product, which in turn equals the
// transversal-product formula.
LawReport subsemigroup_demo(const FinLattice& semilattice,
                            const CheckConfig& cfg = {});

// The subsemigroup hyperspace of small normal bands: free bands on the given
// generator counts plus two handmade quotients (a meet band and a left-zero
// band).  The lifted carrier is the set of product-closed subsets and the
// induced operation is the pointwise band product, cross-checked against a
// word-evaluation oracle.
LawReport normal_band_demo(const std::vector<int>& generator_counts = {1, 2},
                           const CheckConfig& cfg = {});

// The nonempty-subsets variant of the hyperspace law: the component matches
// the same comprehension restricted to nonempty sets, the weak-law diagrams
// pass, and the lifted carrier is the nonempty subsets.  Finite-scale
// evidence, labelled as such in the report.
LawReport nonempty_variant_demo(const std::vector<int>& sizes = {0, 1, 2},
                                const CheckConfig& cfg = {});

// Convergence scan over all small lattices: way-below coincides with the
// order, every finite lattice is continuous (and a corrupted approximation
// relation is caught), the order topology is discrete, discrete topologies
// satisfy the liminf/adherence condition while the indiscrete chain fails
// it, and the one-way relationship between "topology is the order topology"
// and the convergence condition is checked, with its known one-sidedness
// witnessed explicitly.
LawReport lattice_scan_demo(int max_size = 5, const CheckConfig& cfg = {});

// Catalog of demos for the command-line driver.
struct DemoEntry {
    std::string name;  // CLI argument
    std::string note;
    std::vector<int> default_sizes;
    std::function<LawReport(const std::vector<int>&, const CheckConfig&)> run;
};
std::vector<DemoEntry> all_demos();

}  // namespace weaklaw

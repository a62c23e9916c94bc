// The shipped monads: powerset (full, nonempty, finitary), ultrafilter,
// filter, size-truncated multiset, size-truncated normal band, and identity.
// Each is an executable MonadSpec; the ultrafilter and filter monads use the
// fact that on a finite set every (ultra)filter is principal, with the
// defining axioms asserted independently and the membership formulas kept as
// test oracles.
#pragma once

#include <string>
#include <vector>

#include "weaklaw/monad.hpp"

namespace weaklaw {

MonadPtr powerset_monad();
MonadPtr nonempty_powerset_monad();
MonadPtr finite_powerset_monad();
MonadPtr ultrafilter_monad();
MonadPtr filter_monad();
MonadPtr multiset_monad(int degree = 3);
MonadPtr normal_band_monad(int degree = 3);
MonadPtr identity_monad();

// Catalog order.
std::vector<MonadPtr> all_monads();
// Lookup by name or symbol ("powerset" or "P"); nullptr when unknown.
MonadPtr find_monad(const std::string& name);

// Set-algebra helpers shared by monads, laws, and tests.  All lists are in
// canonical value order.
std::vector<Val> all_subsets(const std::vector<Val>& elems);
std::vector<Val> intersect_sorted(const std::vector<Val>& a, const std::vector<Val>& b);
std::vector<Val> union_sorted(const std::vector<Val>& a, const std::vector<Val>& b);

// The filter of all supersets of `core` inside `universe`, as a set value.
Val upset_of(const Cp& universe, const std::vector<Val>& core);
// Intersection of the members of a set-of-sets value (the core of a filter).
std::vector<Val> filter_core(Val filt);
// The unique element shared by all members of an ultrafilter value.
Val principal_point(Val ultra);
Val principal_ultrafilter(const Cp& y, Val point);

}  // namespace weaklaw

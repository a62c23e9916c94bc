// Interned, immutable values: the element universe for all finite carriers.
//
// Every element that can appear in a carrier is a Value: an atom, a canonical
// (sorted, duplicate-free) set, a canonical multiset (sorted, with
// multiplicities), an ordered pair, or a bipointed set (a set together with
// two distinguished members).  Values are hash-consed into a global pool, so
// structural equality is pointer equality and deeply nested elements share
// storage.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace weaklaw {

enum class Tag : uint8_t { Atom, Set, Multiset, Pair, Bip };

class Value;
using Val = const Value*;

class Value {
public:
    Tag tag() const { return tag_; }
    uint32_t id() const { return id_; }

    // Atom payload; only valid when tag() == Tag::Atom.
    const std::string& atom() const { return atom_; }

    // Children. Set: sorted unique; Multiset: sorted with repeats;
    // Pair: exactly two; Bip: the sorted unique underlying set.
    const std::vector<Val>& kids() const { return kids_; }

    // Bipointed distinguished members; only valid when tag() == Tag::Bip.
    Val first_point() const { return a_; }
    Val second_point() const { return b_; }

    bool contains(Val v) const;  // membership in kids() (Set/Multiset/Bip)

    std::string str() const;  // compact human-readable rendering

private:
    friend class ValuePool;
    Tag tag_ = Tag::Atom;
    uint32_t id_ = 0;
    std::string atom_;
    std::vector<Val> kids_;
    Val a_ = nullptr;
    Val b_ = nullptr;
};

// Constructors (canonicalize and intern).
Val atom(std::string_view name);
Val set_of(std::vector<Val> elems);       // sorts, removes duplicates
Val multiset_of(std::vector<Val> elems);  // sorts, keeps duplicates
Val pair_of(Val a, Val b);
// Bipointed set; throws PreconditionError unless a and b occur in elems.
Val bip_of(std::vector<Val> elems, Val a, Val b);

Val empty_set();

// Structural total order: atoms first (by label), then by tag, then
// lexicographically on children (Bip: underlying set, then the two points).
// Returns <0, 0, >0.  cmp(a, b) == 0 iff a == b (interning).
int cmp(Val a, Val b);
inline bool val_less(Val a, Val b) { return cmp(a, b) < 0; }

// Number of values interned so far (diagnostics / benchmarks).
size_t interned_count();

}  // namespace weaklaw

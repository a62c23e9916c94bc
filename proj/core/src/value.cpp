#include "weaklaw/value.hpp"

#include <algorithm>
#include <memory>
#include <sstream>
#include <unordered_map>

#include "weaklaw/errors.hpp"

namespace weaklaw {

// Named (not anonymous-namespace) so the friend declaration in value.hpp can
// reach it; the class itself is visible only to this translation unit.
class ValuePool {
public:
    Val intern(Tag tag, std::string_view atom, std::vector<Val> kids, Val a, Val b) {
        Key key{tag, atom, &kids, a, b};
        auto it = pool_.find(key);
        if (it != pool_.end()) return it->second.get();
        auto owned = std::make_unique<Value>();
        Value* raw = owned.get();
        raw->tag_ = tag;
        raw->id_ = uint32_t(pool_.size());
        raw->atom_ = std::string(atom);
        raw->kids_ = std::move(kids);
        raw->a_ = a;
        raw->b_ = b;
        // The stored key views the value's own strings/kids, which live as
        // long as the pool entry does.
        Key stored{raw->tag_, raw->atom_, &raw->kids_, a, b};
        pool_.emplace(stored, std::move(owned));
        return raw;
    }

    size_t size() const { return pool_.size(); }

    static ValuePool& instance() {
        static ValuePool p;
        return p;
    }

private:
    struct Key {
        Tag tag;
        std::string_view atom;
        const std::vector<Val>* kids;
        Val a;
        Val b;
    };

    struct KeyHash {
        size_t operator()(const Key& k) const {
            size_t h = std::hash<int>()(int(k.tag));
            auto mix = [&h](size_t v) { h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
            mix(std::hash<std::string_view>()(k.atom));
            for (Val v : *k.kids) mix(std::hash<const void*>()(v));
            mix(std::hash<const void*>()(k.a));
            mix(std::hash<const void*>()(k.b));
            return h;
        }
    };

    struct KeyEq {
        bool operator()(const Key& x, const Key& y) const {
            return x.tag == y.tag && x.atom == y.atom && *x.kids == *y.kids && x.a == y.a &&
                   x.b == y.b;
        }
    };

    std::unordered_map<Key, std::unique_ptr<Value>, KeyHash, KeyEq> pool_;
};

namespace {

ValuePool& pool() { return ValuePool::instance(); }

int cmp_kid_lists(const std::vector<Val>& x, const std::vector<Val>& y) {
    size_t n = std::min(x.size(), y.size());
    for (size_t i = 0; i < n; ++i) {
        if (int c = cmp(x[i], y[i])) return c;
    }
    if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
    return 0;
}

}  // namespace

// Kept a free function (not a Value method) so the interning shortcut a == b
// stays visible at every call site of the recursion.
int cmp(Val a, Val b) {
    if (a == b) return 0;
    bool aa = a->tag() == Tag::Atom, ba = b->tag() == Tag::Atom;
    if (aa && ba) return a->atom().compare(b->atom());
    if (aa != ba) return aa ? -1 : 1;
    if (a->tag() != b->tag()) return int(a->tag()) < int(b->tag()) ? -1 : 1;
    if (int c = cmp_kid_lists(a->kids(), b->kids())) return c;
    if (a->tag() == Tag::Bip) {
        if (int c = cmp(a->first_point(), b->first_point())) return c;
        return cmp(a->second_point(), b->second_point());
    }
    return 0;
}

bool Value::contains(Val v) const {
    auto it = std::lower_bound(kids_.begin(), kids_.end(), v, val_less);
    return it != kids_.end() && *it == v;
}

Val atom(std::string_view name) { return pool().intern(Tag::Atom, name, {}, nullptr, nullptr); }

Val set_of(std::vector<Val> elems) {
    std::sort(elems.begin(), elems.end(), val_less);
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return pool().intern(Tag::Set, {}, std::move(elems), nullptr, nullptr);
}

Val multiset_of(std::vector<Val> elems) {
    std::sort(elems.begin(), elems.end(), val_less);
    return pool().intern(Tag::Multiset, {}, std::move(elems), nullptr, nullptr);
}

Val pair_of(Val a, Val b) { return pool().intern(Tag::Pair, {}, {a, b}, nullptr, nullptr); }

Val bip_of(std::vector<Val> elems, Val a, Val b) {
    std::sort(elems.begin(), elems.end(), val_less);
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    auto in = [&elems](Val v) {
        auto it = std::lower_bound(elems.begin(), elems.end(), v, val_less);
        return it != elems.end() && *it == v;
    };
    if (!in(a) || !in(b))
        throw PreconditionError("bipointed set: both distinguished points must belong to the set");
    return pool().intern(Tag::Bip, {}, std::move(elems), a, b);
}

Val empty_set() { return set_of({}); }

size_t interned_count() { return pool().size(); }

std::string Value::str() const {
    std::ostringstream os;
    auto join = [&os](const std::vector<Val>& kids) {
        for (size_t i = 0; i < kids.size(); ++i) {
            if (i) os << ",";
            os << kids[i]->str();
        }
    };
    switch (tag_) {
        case Tag::Atom: os << atom_; break;
        case Tag::Set:
            os << "{";
            join(kids_);
            os << "}";
            break;
        case Tag::Multiset:
            os << "[";
            join(kids_);
            os << "]";
            break;
        case Tag::Pair:
            os << "(" << kids_[0]->str() << "," << kids_[1]->str() << ")";
            break;
        case Tag::Bip:
            os << "<{";
            join(kids_);
            os << "}:" << a_->str() << "," << b_->str() << ">";
            break;
    }
    return os.str();
}

}  // namespace weaklaw

#include "weaklaw/finset.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

namespace weaklaw {

namespace {
std::atomic<uint64_t> g_budget{kDefaultBudget};
}

uint64_t element_budget() { return g_budget.load(); }
void set_element_budget(uint64_t budget) {
    if (budget < 1) throw PreconditionError("element budget must be at least 1");
    g_budget.store(budget);
}
void guard_budget(double n, const std::string& what) {
    if (!(n <= double(g_budget.load()))) {
        std::ostringstream os;
        os << what << " would need " << n << " elements, over the budget of " << g_budget.load();
        throw BudgetError(os.str());
    }
}

Carrier::Carrier(std::string name, std::vector<Val> elems)
    : name_(std::move(name)), elems_(std::move(elems)) {
    std::sort(elems_.begin(), elems_.end(), val_less);
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    pos_.reserve(elems_.size());
    for (size_t i = 0; i < elems_.size(); ++i) pos_[elems_[i]] = int(i);
}

int Carrier::index_of(Val v) const {
    auto it = pos_.find(v);
    if (it == pos_.end())
        throw PreconditionError("element " + v->str() + " is not in carrier " + name_);
    return it->second;
}

Cp make_carrier(std::string name, std::vector<Val> elems) {
    guard_budget(double(elems.size()), "carrier " + name);
    return std::make_shared<const Carrier>(std::move(name), std::move(elems));
}

Cp std_carrier(int n) {
    static const char* names[] = {"a", "b", "c", "d", "e"};
    if (n < 0 || n > 5) throw PreconditionError("std_carrier supports sizes 0..5");
    std::vector<Val> elems;
    for (int i = 0; i < n; ++i) elems.push_back(atom(names[i]));
    return make_carrier("X" + std::to_string(n), std::move(elems));
}

FinFn::FinFn(Cp dom, Cp cod, std::vector<int32_t> tab)
    : dom_(std::move(dom)), cod_(std::move(cod)), tab_(std::move(tab)) {
    if (tab_.size() != dom_->size())
        throw PreconditionError("function table size does not match domain " + dom_->name());
    for (int32_t t : tab_)
        if (t < 0 || size_t(t) >= cod_->size())
            throw PreconditionError("function table entry outside codomain " + cod_->name());
}

FinFn FinFn::from_fn(Cp dom, Cp cod, const std::function<Val(Val)>& f) {
    std::vector<int32_t> tab;
    tab.reserve(dom->size());
    for (Val v : dom->elems()) tab.push_back(cod->index_of(f(v)));
    return FinFn(std::move(dom), std::move(cod), std::move(tab));
}

FinFn FinFn::identity(Cp x) {
    std::vector<int32_t> tab(x->size());
    for (size_t i = 0; i < tab.size(); ++i) tab[i] = int32_t(i);
    Cp dom = x;
    return FinFn(std::move(dom), std::move(x), std::move(tab));
}

bool FinFn::operator==(const FinFn& o) const {
    return dom_->elems() == o.dom_->elems() && cod_->elems() == o.cod_->elems() &&
           tab_ == o.tab_;
}

FinFn compose(const FinFn& g, const FinFn& f) {
    if (f.cod()->elems() != g.dom()->elems())
        throw PreconditionError("compose: codomain of first map must equal domain of second");
    std::vector<int32_t> tab(f.dom()->size());
    for (size_t i = 0; i < tab.size(); ++i) tab[i] = g.map_idx(f.map_idx(int32_t(i)));
    return FinFn(f.dom(), g.cod(), std::move(tab));
}

bool is_surjective(const FinFn& f) {
    std::vector<char> hit(f.cod()->size(), 0);
    for (int32_t t : f.tab()) hit[t] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

bool is_injective(const FinFn& f) {
    std::vector<char> hit(f.cod()->size(), 0);
    for (int32_t t : f.tab()) {
        if (hit[t]) return false;
        hit[t] = 1;
    }
    return true;
}

PartialFn::PartialFn(Cp dom, Cp cod, std::vector<int32_t> tab)
    : dom_(std::move(dom)), cod_(std::move(cod)), tab_(std::move(tab)) {
    if (tab_.size() != dom_->size())
        throw PreconditionError("partial function table size does not match domain");
    for (int32_t t : tab_)
        if (t != -1 && (t < 0 || size_t(t) >= cod_->size()))
            throw PreconditionError("partial function table entry outside codomain");
}

PartialFn PartialFn::total(const FinFn& f) { return PartialFn(f.dom(), f.cod(), f.tab()); }

std::optional<Val> PartialFn::operator()(Val v) const {
    int32_t t = tab_[dom_->index_of(v)];
    if (t < 0) return std::nullopt;
    return cod_->at(t);
}

size_t PartialFn::undefined_count() const {
    return size_t(std::count(tab_.begin(), tab_.end(), int32_t(-1)));
}

FinFn PartialFn::to_total() const {
    for (int32_t t : tab_)
        if (t < 0)
            throw PreconditionError("partial function is undefined somewhere on " + dom_->name());
    return FinFn(dom_, cod_, tab_);
}

FinRel::FinRel(Cp dom, Cp cod, std::vector<std::pair<int32_t, int32_t>> pairs)
    : dom_(std::move(dom)), cod_(std::move(cod)), pairs_(std::move(pairs)) {
    std::sort(pairs_.begin(), pairs_.end());
    pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
    memb_.reserve(pairs_.size());
    for (auto& [i, j] : pairs_) {
        if (i < 0 || size_t(i) >= dom_->size() || j < 0 || size_t(j) >= cod_->size())
            throw PreconditionError("relation pair outside carriers");
        memb_.insert((uint64_t(uint32_t(i)) << 32) | uint32_t(j));
    }
}

FinRel FinRel::from_pairs(Cp dom, Cp cod, const std::vector<std::pair<Val, Val>>& pairs) {
    std::vector<std::pair<int32_t, int32_t>> idx;
    idx.reserve(pairs.size());
    for (auto& [a, b] : pairs) idx.emplace_back(dom->index_of(a), cod->index_of(b));
    return FinRel(std::move(dom), std::move(cod), std::move(idx));
}

FinRel FinRel::full(Cp dom, Cp cod) {
    std::vector<std::pair<int32_t, int32_t>> idx;
    idx.reserve(dom->size() * cod->size());
    for (size_t i = 0; i < dom->size(); ++i)
        for (size_t j = 0; j < cod->size(); ++j) idx.emplace_back(int32_t(i), int32_t(j));
    return FinRel(std::move(dom), std::move(cod), std::move(idx));
}

FinRel FinRel::identity(Cp x) {
    std::vector<std::pair<int32_t, int32_t>> idx;
    for (size_t i = 0; i < x->size(); ++i) idx.emplace_back(int32_t(i), int32_t(i));
    Cp dom = x;
    return FinRel(std::move(dom), std::move(x), std::move(idx));
}

bool FinRel::related(Val a, Val b) const {
    if (!dom_->contains(a) || !cod_->contains(b)) return false;
    return related_idx(dom_->index_of(a), cod_->index_of(b));
}

std::vector<Val> FinRel::image_of(const std::vector<Val>& xs) const {
    std::vector<Val> out;
    for (Val x : xs) {
        int32_t i = dom_->index_of(x);
        for (auto& [a, b] : pairs_)
            if (a == i) out.push_back(cod_->at(b));
    }
    std::sort(out.begin(), out.end(), val_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool FinRel::subset_of(const FinRel& o) const {
    for (auto& [i, j] : pairs_)
        if (!o.related_idx(i, j)) return false;
    return true;
}

bool FinRel::operator==(const FinRel& o) const {
    return dom_->elems() == o.dom_->elems() && cod_->elems() == o.cod_->elems() &&
           pairs_ == o.pairs_;
}

FinRel compose_rel(const FinRel& s, const FinRel& r) {
    return compose_rel_with_witness(s, r, nullptr);
}

FinRel compose_rel_with_witness(const FinRel& s, const FinRel& r,
                                std::unordered_map<uint64_t, Val>* witness) {
    if (r.cod()->elems() != s.dom()->elems())
        throw PreconditionError("compose_rel: middle carriers do not match");
    // Index s by its domain side for the join.
    std::vector<std::vector<int32_t>> fwd(s.dom()->size());
    for (auto& [y, z] : s.pairs()) fwd[y].push_back(z);
    std::vector<std::pair<int32_t, int32_t>> out;
    for (auto& [x, y] : r.pairs()) {
        for (int32_t z : fwd[y]) {
            out.emplace_back(x, z);
            if (witness) {
                uint64_t key = (uint64_t(uint32_t(x)) << 32) | uint32_t(z);
                witness->emplace(key, r.cod()->at(y));
            }
        }
    }
    return FinRel(r.dom(), s.cod(), std::move(out));
}

FinRel graph(const FinFn& f) {
    std::vector<std::pair<int32_t, int32_t>> idx;
    idx.reserve(f.dom()->size());
    for (size_t i = 0; i < f.dom()->size(); ++i) idx.emplace_back(int32_t(i), f.map_idx(int32_t(i)));
    return FinRel(f.dom(), f.cod(), std::move(idx));
}

FinRel cograph(const FinFn& f) { return converse(graph(f)); }

FinRel converse(const FinRel& r) {
    std::vector<std::pair<int32_t, int32_t>> idx;
    idx.reserve(r.pairs().size());
    for (auto& [i, j] : r.pairs()) idx.emplace_back(j, i);
    return FinRel(r.cod(), r.dom(), std::move(idx));
}

Tabulation tabulate(const FinRel& r) {
    std::vector<Val> apex_elems;
    apex_elems.reserve(r.pairs().size());
    for (auto& [i, j] : r.pairs()) apex_elems.push_back(pair_of(r.dom()->at(i), r.cod()->at(j)));
    Cp apex = make_carrier("tab(" + r.dom()->name() + "," + r.cod()->name() + ")",
                           std::move(apex_elems));
    FinFn p = FinFn::from_fn(apex, r.dom(), [](Val w) { return w->kids()[0]; });
    FinFn q = FinFn::from_fn(apex, r.cod(), [](Val w) { return w->kids()[1]; });
    return Tabulation{std::move(apex), std::move(p), std::move(q)};
}

AdjunctionReport check_adjunction(const FinFn& f) {
    FinRel lower = graph(f);
    FinRel upper = cograph(f);
    // Unit: identity on dom included in cograph(f) . graph(f).
    FinRel unit = compose_rel(upper, lower);
    if (!FinRel::identity(f.dom()).subset_of(unit)) {
        for (size_t i = 0; i < f.dom()->size(); ++i)
            if (!unit.related_idx(int32_t(i), int32_t(i)))
                return {false, "unit inclusion fails at " + f.dom()->at(i)->str()};
        return {false, "unit inclusion fails"};
    }
    // Counit: graph(f) . cograph(f) included in identity on cod.
    FinRel counit = compose_rel(lower, upper);
    for (auto& [i, j] : counit.pairs())
        if (i != j)
            return {false, "counit inclusion fails at (" + f.cod()->at(i)->str() + "," +
                               f.cod()->at(j)->str() + ")"};
    return {true, ""};
}

bool Square::commutes() const {
    if (top.dom()->elems() != left.dom()->elems() ||
        top.cod()->elems() != right.dom()->elems() ||
        left.cod()->elems() != bottom.dom()->elems() ||
        bottom.cod()->elems() != right.cod()->elems())
        return false;
    return compose(bottom, left) == compose(right, top);
}

WeakPullbackReport is_weak_pullback(const Square& sq) {
    if (!sq.commutes()) throw PreconditionError("is_weak_pullback: square does not commute");
    // Pullback of (bottom: C -> D, right: B -> D): pairs (c, b) agreeing in D.
    // Comparison sends a in A to (left a, top a); look for an unhit pair.
    std::unordered_set<uint64_t> hit;
    hit.reserve(sq.top.dom()->size());
    for (size_t a = 0; a < sq.top.dom()->size(); ++a) {
        uint64_t key = (uint64_t(uint32_t(sq.left.map_idx(int32_t(a)))) << 32) |
                       uint32_t(sq.top.map_idx(int32_t(a)));
        hit.insert(key);
    }
    for (size_t c = 0; c < sq.bottom.dom()->size(); ++c) {
        for (size_t b = 0; b < sq.right.dom()->size(); ++b) {
            if (sq.bottom.map_idx(int32_t(c)) != sq.right.map_idx(int32_t(b))) continue;
            uint64_t key = (uint64_t(uint32_t(c)) << 32) | uint32_t(b);
            if (!hit.count(key))
                return {false, pair_of(sq.bottom.dom()->at(c), sq.right.dom()->at(b))};
        }
    }
    return {true, std::nullopt};
}

Splitting split_idempotent(const FinFn& e, const std::string& image_name) {
    if (e.dom()->elems() != e.cod()->elems())
        throw PreconditionError("split_idempotent: endomap required");
    if (!(compose(e, e) == e))
        throw PreconditionError("split_idempotent: map is not idempotent");
    std::vector<Val> fixed;
    for (size_t i = 0; i < e.dom()->size(); ++i)
        if (e.map_idx(int32_t(i)) == int32_t(i)) fixed.push_back(e.dom()->at(i));
    Cp image = make_carrier(image_name, std::move(fixed));
    FinFn p = FinFn::from_fn(e.dom(), image, [&e](Val v) { return e(v); });
    FinFn i = FinFn::from_fn(image, e.dom(), [](Val v) { return v; });
    return Splitting{std::move(image), std::move(p), std::move(i)};
}

}  // namespace weaklaw

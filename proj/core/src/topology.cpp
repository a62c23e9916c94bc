#include "weaklaw/topology.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "check_util.hpp"
#include "weaklaw/zoo.hpp"

namespace weaklaw {

namespace {

Val complement_in(const Cp& x, Val a) {
    std::vector<Val> out;
    out.reserve(x->size());
    for (Val v : x->elems())
        if (!a->contains(v)) out.push_back(v);
    return set_of(std::move(out));
}

void require_subset_value(const Cp& x, Val a, const std::string& role) {
    if (a->tag() != Tag::Set)
        throw PreconditionError(role + " must be a set value, got " + a->str());
    for (Val v : a->kids())
        if (!x->contains(v))
            throw PreconditionError(role + " " + a->str() +
                                    " has elements outside carrier " + x->name());
}

}  // namespace

// ---------------------------------------------------------------------------
// FinTopSpace

FinTopSpace::FinTopSpace(std::string name, Cp carrier, std::vector<Val> opens)
    : name_(std::move(name)),
      carrier_(std::move(carrier)),
      opens_(std::move(opens)) {
    if (!carrier_) throw PreconditionError("a topology needs a carrier");
    std::sort(opens_.begin(), opens_.end(), val_less);
    opens_.erase(std::unique(opens_.begin(), opens_.end()), opens_.end());
    for (Val a : opens_) {
        require_subset_value(carrier_, a, "open set of " + name_);
        open_memb_.insert(a);
    }
    if (!is_open(empty_set()))
        throw PreconditionError("topology " + name_ +
                                " is missing the empty set");
    if (!is_open(set_of(carrier_->elems())))
        throw PreconditionError("topology " + name_ +
                                " is missing the full carrier");
    for (size_t i = 0; i < opens_.size(); ++i)
        for (size_t j = i + 1; j < opens_.size(); ++j) {
            Val u = set_of(union_sorted(opens_[i]->kids(), opens_[j]->kids()));
            if (!is_open(u))
                throw PreconditionError("topology " + name_ +
                                        " is not closed under union: " +
                                        opens_[i]->str() + " with " +
                                        opens_[j]->str());
            Val m = set_of(intersect_sorted(opens_[i]->kids(), opens_[j]->kids()));
            if (!is_open(m))
                throw PreconditionError("topology " + name_ +
                                        " is not closed under intersection: " +
                                        opens_[i]->str() + " with " +
                                        opens_[j]->str());
        }
}

FinTopSpace FinTopSpace::discrete(const Cp& x) {
    return FinTopSpace(x->name() + ".discrete", x, all_subsets(x->elems()));
}

FinTopSpace FinTopSpace::indiscrete(const Cp& x) {
    return FinTopSpace(x->name() + ".indiscrete", x,
                       {empty_set(), set_of(x->elems())});
}

FinTopSpace FinTopSpace::from_subbasis(std::string name, const Cp& x,
                                       const std::vector<Val>& subbasis) {
    // The saturated family has at most 2^|X| members and each closure phase
    // touches each pair once, so the work is bounded by 4^|X|.
    guard_budget(std::pow(4.0, double(x->size())),
                 "subbasis saturation over " + x->name());
    std::vector<Val> fam;
    std::unordered_set<Val> seen;
    auto add = [&](Val v) {
        if (seen.insert(v).second) fam.push_back(v);
    };
    for (Val s : subbasis) {
        require_subset_value(x, s, "subbasic set of " + name);
        add(s);
    }
    add(set_of(x->elems()));  // the empty intersection
    // Finite intersections first (a basis), then finite unions of basis sets;
    // each loop processes pairs against a growing work list until fixpoint.
    for (size_t i = 0; i < fam.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            add(set_of(intersect_sorted(fam[i]->kids(), fam[j]->kids())));
    add(empty_set());  // the empty union
    for (size_t i = 0; i < fam.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            add(set_of(union_sorted(fam[i]->kids(), fam[j]->kids())));
    return FinTopSpace(std::move(name), x, std::move(fam));
}

bool FinTopSpace::is_closed(Val a) const {
    require_subset_value(carrier_, a, "closedness query on " + name_);
    return is_open(complement_in(carrier_, a));
}

Val FinTopSpace::closure(Val a) const {
    require_subset_value(carrier_, a, "closure argument on " + name_);
    std::vector<Val> cur = carrier_->elems();
    for (Val o : opens_) {
        Val c = complement_in(carrier_, o);
        bool covers = true;
        for (Val v : a->kids())
            if (!c->contains(v)) {
                covers = false;
                break;
            }
        if (covers) cur = intersect_sorted(cur, c->kids());
    }
    return set_of(std::move(cur));
}

std::vector<Val> FinTopSpace::closed_sets() const {
    std::vector<Val> out;
    out.reserve(opens_.size());
    for (Val o : opens_) out.push_back(complement_in(carrier_, o));
    std::sort(out.begin(), out.end(), val_less);
    return out;
}

bool FinTopSpace::is_discrete() const {
    return opens_.size() == (size_t(1) << carrier_->size());
}

bool FinTopSpace::same_topology(const FinTopSpace& o) const {
    return carrier_->elems() == o.carrier_->elems() && opens_ == o.opens_;
}

std::vector<FinTopSpace> enumerate_topologies(const Cp& x, uint64_t budget) {
    const size_t n = x->size();
    const std::vector<Val> subs = all_subsets(x->elems());
    const size_t s = subs.size();
    // Families are constrained to contain the empty and full sets, leaving
    // 2^(2^n - 2) candidates to scan.
    double candidates = (s <= 2) ? 1.0 : std::pow(2.0, double(s - 2));
    if (candidates > double(budget))
        throw BudgetError("scanning " + std::to_string(candidates) +
                          " open-set families over " + x->name() +
                          " exceeds the budget");
    std::map<Val, int> idx;
    for (size_t i = 0; i < s; ++i) idx[subs[i]] = int(i);
    std::vector<int> uni(s * s), itc(s * s);
    for (size_t i = 0; i < s; ++i)
        for (size_t j = 0; j < s; ++j) {
            uni[i * s + j] = idx.at(set_of(union_sorted(subs[i]->kids(), subs[j]->kids())));
            itc[i * s + j] = idx.at(set_of(intersect_sorted(subs[i]->kids(), subs[j]->kids())));
        }
    const int empty_i = idx.at(empty_set());
    const int full_i = idx.at(set_of(x->elems()));
    std::vector<int> free_ids;
    for (size_t i = 0; i < s; ++i)
        if (int(i) != empty_i && int(i) != full_i) free_ids.push_back(int(i));
    std::vector<FinTopSpace> out;
    for (uint64_t mask = 0; mask < (uint64_t(1) << free_ids.size()); ++mask) {
        std::vector<char> in(s, 0);
        in[empty_i] = in[full_i] = 1;
        for (size_t k = 0; k < free_ids.size(); ++k)
            if (mask >> k & 1) in[free_ids[k]] = 1;
        bool closed = true;
        for (size_t i = 0; i < s && closed; ++i) {
            if (!in[i]) continue;
            for (size_t j = 0; j < i && closed; ++j) {
                if (!in[j]) continue;
                closed = in[uni[i * s + j]] && in[itc[i * s + j]];
            }
        }
        if (!closed) continue;
        std::vector<Val> opens;
        for (size_t i = 0; i < s; ++i)
            if (in[i]) opens.push_back(subs[i]);
        out.push_back(FinTopSpace(x->name() + ".tau" + std::to_string(out.size()),
                                  x, std::move(opens)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// FinLattice

FinLattice::FinLattice(std::string name, Cp carrier,
                       const std::function<bool(Val, Val)>& leq)
    : name_(std::move(name)), carrier_(std::move(carrier)) {
    if (!carrier_ || carrier_->size() == 0)
        throw PreconditionError("a lattice needs a nonempty carrier");
    const size_t n = carrier_->size();
    leq_.assign(n * n, 0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            leq_[i * n + j] = leq(carrier_->at(i), carrier_->at(j)) ? 1 : 0;
    for (size_t i = 0; i < n; ++i)
        if (!leq_[i * n + i])
            throw PreconditionError(name_ + ": order is not reflexive at " +
                                    carrier_->at(i)->str());
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (leq_[i * n + j] && leq_[j * n + i])
                throw PreconditionError(name_ + ": order is not antisymmetric on " +
                                        carrier_->at(i)->str() + ", " +
                                        carrier_->at(j)->str());
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (!leq_[i * n + j]) continue;
            for (size_t k = 0; k < n; ++k)
                if (leq_[j * n + k] && !leq_[i * n + k])
                    throw PreconditionError(
                        name_ + ": order is not transitive through " +
                        carrier_->at(i)->str() + " <= " + carrier_->at(j)->str() +
                        " <= " + carrier_->at(k)->str());
        }
    meet_.assign(n * n, -1);
    join_.assign(n * n, -1);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            for (size_t c = 0; c < n; ++c) {
                if (!(leq_[c * n + i] && leq_[c * n + j])) continue;
                bool greatest = true;
                for (size_t k = 0; k < n && greatest; ++k)
                    if (leq_[k * n + i] && leq_[k * n + j])
                        greatest = leq_[k * n + c];
                if (greatest) {
                    meet_[i * n + j] = int32_t(c);
                    break;
                }
            }
            if (meet_[i * n + j] < 0)
                throw PreconditionError(name_ + ": no meet of " +
                                        carrier_->at(i)->str() + " and " +
                                        carrier_->at(j)->str());
            for (size_t c = 0; c < n; ++c) {
                if (!(leq_[i * n + c] && leq_[j * n + c])) continue;
                bool least = true;
                for (size_t k = 0; k < n && least; ++k)
                    if (leq_[i * n + k] && leq_[j * n + k])
                        least = leq_[c * n + k];
                if (least) {
                    join_[i * n + j] = int32_t(c);
                    break;
                }
            }
            if (join_[i * n + j] < 0)
                throw PreconditionError(name_ + ": no join of " +
                                        carrier_->at(i)->str() + " and " +
                                        carrier_->at(j)->str());
        }
    bottom_ = 0;
    top_ = 0;
    for (size_t i = 1; i < n; ++i) {
        bottom_ = meet_[size_t(bottom_) * n + i];
        top_ = join_[size_t(top_) * n + i];
    }
}

bool FinLattice::leq(Val a, Val b) const {
    const size_t n = carrier_->size();
    return leq_[size_t(carrier_->index_of(a)) * n + carrier_->index_of(b)] != 0;
}

Val FinLattice::meet(Val a, Val b) const {
    const size_t n = carrier_->size();
    return carrier_->at(
        meet_[size_t(carrier_->index_of(a)) * n + carrier_->index_of(b)]);
}

Val FinLattice::join(Val a, Val b) const {
    const size_t n = carrier_->size();
    return carrier_->at(
        join_[size_t(carrier_->index_of(a)) * n + carrier_->index_of(b)]);
}

Val FinLattice::inf(const std::vector<Val>& xs) const {
    Val acc = top();
    for (Val v : xs) acc = meet(acc, v);
    return acc;
}

Val FinLattice::sup(const std::vector<Val>& xs) const {
    Val acc = bottom();
    for (Val v : xs) acc = join(acc, v);
    return acc;
}

FinRel FinLattice::leq_rel() const {
    const size_t n = carrier_->size();
    std::vector<std::pair<int32_t, int32_t>> pairs;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (leq_[i * n + j]) pairs.emplace_back(int32_t(i), int32_t(j));
    return FinRel(carrier_, carrier_, std::move(pairs));
}

FinLattice chain_lattice(int n) {
    if (n < 1 || n > 9)
        throw PreconditionError("chain_lattice supports 1 through 9 elements");
    std::vector<Val> elems;
    for (int i = 0; i < n; ++i) elems.push_back(atom("c" + std::to_string(i)));
    Cp c = make_carrier("chain" + std::to_string(n), std::move(elems));
    return FinLattice("chain" + std::to_string(n), c, [](Val a, Val b) {
        return a->atom() <= b->atom();
    });
}

FinLattice diamond_lattice() {
    Val bo = atom("bot"), lf = atom("lft"), rg = atom("rgt"), tp = atom("top");
    Cp c = make_carrier("diamond", {bo, lf, rg, tp});
    return FinLattice("diamond", c, [bo, tp](Val a, Val b) {
        return a == b || a == bo || b == tp;
    });
}

FinLattice m3_lattice() {
    Val bo = atom("bot"), tp = atom("top");
    Cp c = make_carrier("M3", {bo, atom("m1"), atom("m2"), atom("m3"), tp});
    return FinLattice("M3", c, [bo, tp](Val a, Val b) {
        return a == b || a == bo || b == tp;
    });
}

FinLattice n5_lattice() {
    Val bo = atom("bot"), na = atom("na"), nb = atom("nb"), nc = atom("nc"),
        tp = atom("top");
    Cp c = make_carrier("N5", {bo, na, nb, nc, tp});
    return FinLattice("N5", c, [bo, na, nc, tp](Val a, Val b) {
        return a == b || a == bo || b == tp || (a == na && b == nc);
    });
}

FinLattice powerset_lattice(const Cp& base, bool by_reverse_inclusion) {
    std::vector<Val> subs = all_subsets(base->elems());
    std::string nm = base->name() + (by_reverse_inclusion ? ".rev-subsets" : ".subsets");
    Cp c = make_carrier(nm, std::move(subs));
    auto incl = [](Val a, Val b) {
        for (Val v : a->kids())
            if (!b->contains(v)) return false;
        return true;
    };
    return FinLattice(nm, c, [incl, by_reverse_inclusion](Val a, Val b) {
        return by_reverse_inclusion ? incl(b, a) : incl(a, b);
    });
}

namespace {

// Lattice test on a strict order matrix without exception control flow:
// every pair needs a greatest lower and least upper bound.
bool all_bounds_exist(const std::vector<uint8_t>& m, size_t n) {
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            bool have_meet = false, have_join = false;
            for (size_t c = 0; c < n && !have_meet; ++c) {
                if (!(m[c * n + i] && m[c * n + j])) continue;
                bool greatest = true;
                for (size_t k = 0; k < n && greatest; ++k)
                    if (m[k * n + i] && m[k * n + j]) greatest = m[k * n + c];
                have_meet = greatest;
            }
            if (!have_meet) return false;
            for (size_t c = 0; c < n && !have_join; ++c) {
                if (!(m[i * n + c] && m[j * n + c])) continue;
                bool least = true;
                for (size_t k = 0; k < n && least; ++k)
                    if (m[i * n + k] && m[j * n + k]) least = m[c * n + k];
                have_join = least;
            }
            if (!have_join) return false;
        }
    return true;
}

}  // namespace

std::vector<FinLattice> enumerate_lattices(int n, uint64_t budget) {
    if (n < 1 || n > 5)
        throw PreconditionError("lattice enumeration supports sizes 1 through 5");
    Cp x = std_carrier(n);
    const size_t sz = size_t(n);
    const int npairs = n * (n - 1) / 2;
    double total = std::pow(3.0, npairs);
    if (total > double(budget))
        throw BudgetError("scanning " + std::to_string(total) +
                          " comparability assignments exceeds the budget");
    std::vector<int> st(size_t(npairs), 0);
    std::vector<FinLattice> out;
    while (true) {
        std::vector<uint8_t> m(sz * sz, 0);
        for (size_t i = 0; i < sz; ++i) m[i * sz + i] = 1;
        int p = 0;
        for (size_t i = 0; i < sz; ++i)
            for (size_t j = i + 1; j < sz; ++j, ++p) {
                if (st[size_t(p)] == 1) m[i * sz + j] = 1;
                if (st[size_t(p)] == 2) m[j * sz + i] = 1;
            }
        bool transitive = true;
        for (size_t i = 0; i < sz && transitive; ++i)
            for (size_t j = 0; j < sz && transitive; ++j) {
                if (!m[i * sz + j]) continue;
                for (size_t k = 0; k < sz && transitive; ++k)
                    if (m[j * sz + k] && !m[i * sz + k]) transitive = false;
            }
        if (transitive && all_bounds_exist(m, sz)) {
            std::string nm = "L" + std::to_string(n) + "." +
                             std::to_string(out.size());
            out.push_back(FinLattice(nm, x, [m, x, sz](Val a, Val b) {
                return m[size_t(x->index_of(a)) * sz + x->index_of(b)] != 0;
            }));
        }
        size_t k = 0;
        while (k < size_t(npairs) && ++st[k] == 3) st[k++] = 0;
        if (k == size_t(npairs)) break;
    }
    return out;
}

bool is_distributive(const FinLattice& l) {
    for (Val a : l.carrier()->elems())
        for (Val b : l.carrier()->elems())
            for (Val c : l.carrier()->elems())
                if (l.meet(a, l.join(b, c)) !=
                    l.join(l.meet(a, b), l.meet(a, c)))
                    return false;
    return true;
}

// ---------------------------------------------------------------------------
// Way-below, Lawson, hyperspace

FinRel way_below(const FinLattice& l) {
    const Cp& x = l.carrier();
    const size_t n = x->size();
    guard_budget(std::pow(2.0, double(n)) * double(n) * double(n),
                 "directed-subset scan over " + l.name());
    std::vector<uint32_t> directed;
    std::vector<int> sup_idx;
    for (uint32_t d = 1; d < (uint32_t(1) << n); ++d) {
        bool ok = true;
        std::vector<Val> members;
        for (size_t i = 0; i < n; ++i)
            if (d >> i & 1) members.push_back(x->at(i));
        for (size_t a = 0; a < members.size() && ok; ++a)
            for (size_t b = a; b < members.size() && ok; ++b) {
                bool bounded = false;
                for (Val u : members)
                    if (l.leq(members[a], u) && l.leq(members[b], u)) {
                        bounded = true;
                        break;
                    }
                ok = bounded;
            }
        if (!ok) continue;
        directed.push_back(d);
        sup_idx.push_back(x->index_of(l.sup(members)));
    }
    std::vector<std::pair<int32_t, int32_t>> pairs;
    for (size_t s = 0; s < n; ++s)
        for (size_t t = 0; t < n; ++t) {
            bool wb = true;
            for (size_t di = 0; di < directed.size() && wb; ++di) {
                if (!l.leq(x->at(t), x->at(size_t(sup_idx[di])))) continue;
                bool found = false;
                for (size_t k = 0; k < n; ++k)
                    if ((directed[di] >> k & 1) && l.leq(x->at(s), x->at(k))) {
                        found = true;
                        break;
                    }
                wb = found;
            }
            if (wb) pairs.emplace_back(int32_t(s), int32_t(t));
        }
    return FinRel(x, x, std::move(pairs));
}

LawReport continuous_lattice_check(const FinLattice& l) {
    return continuous_lattice_check(l, way_below(l));
}

LawReport continuous_lattice_check(const FinLattice& l, const FinRel& way) {
    if (way.dom()->elems() != l.carrier()->elems() ||
        way.cod()->elems() != l.carrier()->elems())
        throw PreconditionError(
            "the supplied relation does not live on the lattice carrier");
    CheckConfig cfg;
    LawReport rep;
    rep.subject = "lattice " + l.name();
    rep.operation = "continuous_lattice_check";
    rep.budget = cfg.budget;
    const size_t n = l.carrier()->size();
    detail::DiagramRun run(rep, cfg, "sup-of-approximants", l.name(), double(n),
                           double(n) * double(n), 0, false);
    for (Val v : l.carrier()->elems()) {
        std::vector<Val> below;
        for (Val s : l.carrier()->elems())
            if (way.related(s, v)) below.push_back(s);
        if (!run.instance(v, v, l.sup(below), "", "x", "sup of approximants"))
            break;
    }
    run.finish();
    return rep;
}

FinTopSpace lawson_topology(const FinLattice& l) {
    FinRel wb = way_below(l);
    const Cp& x = l.carrier();
    std::vector<Val> sub;
    for (Val s : x->elems()) {
        std::vector<Val> strictly_above, missing;
        for (Val v : x->elems()) {
            if (wb.related(s, v)) strictly_above.push_back(v);
            if (!l.leq(s, v)) missing.push_back(v);
        }
        sub.push_back(set_of(std::move(strictly_above)));
        sub.push_back(set_of(std::move(missing)));
    }
    return FinTopSpace::from_subbasis(l.name() + ".lawson", x, sub);
}

FinTopSpace vietoris_subbasis(const FinTopSpace& space) {
    std::vector<Val> closed = space.closed_sets();
    Cp v = make_carrier(space.name() + ".V", closed);
    std::vector<Val> sub;
    for (Val c : closed) {
        std::vector<Val> miss, hit;
        for (Val a : closed) {
            if (intersect_sorted(a->kids(), c->kids()).empty())
                miss.push_back(a);
            bool inside = true;
            for (Val w : a->kids())
                if (!c->contains(w)) {
                    inside = false;
                    break;
                }
            if (!inside) hit.push_back(a);
        }
        sub.push_back(set_of(std::move(miss)));
        sub.push_back(set_of(std::move(hit)));
    }
    return FinTopSpace::from_subbasis(space.name() + ".vietoris", v, sub);
}

LawReport liminf_adh_check(const FinLattice& l, const FinTopSpace& top,
                           const CheckConfig& cfg) {
    if (top.carrier()->elems() != l.carrier()->elems())
        throw PreconditionError("the topology " + top.name() +
                                " does not live on the lattice carrier");
    const Cp& x = l.carrier();
    LawReport rep;
    rep.subject = "lattice " + l.name() + " with " + top.name();
    rep.operation = "liminf_adh_check";
    rep.budget = cfg.budget;

    auto liminf_of = [&](Val filt) {
        std::vector<Val> infima;
        for (Val a : filt->kids()) infima.push_back(l.inf(a->kids()));
        return l.sup(infima);
    };

    {
        MonadPtr fm = filter_monad();
        Cp fx = fm->obj(x);
        const double total = double(fx->size());
        detail::DiagramRun run(rep, cfg, "liminf-vs-inf-of-adherence",
                               l.name() + " with " + top.name(), total,
                               total * std::pow(2.0, double(x->size())), 0,
                               false);
        if (run.exhaustive()) {
            for (Val filt : fx->elems()) {
                std::vector<Val> adh = x->elems();
                for (Val a : filt->kids())
                    adh = intersect_sorted(adh, top.closure(a)->kids());
                if (!run.instance(filt, liminf_of(filt), l.inf(adh), "",
                                  "liminf", "inf of adherence"))
                    break;
            }
        }
        run.finish();
    }

    {
        // Topological limits are taken in the lattice's own Lawson topology:
        // each ultrafilter must converge there to exactly its liminf.
        FinTopSpace lawson = lawson_topology(l);
        MonadPtr um = ultrafilter_monad();
        Cp ux = um->obj(x);
        const double total = double(ux->size());
        detail::DiagramRun run(rep, cfg, "ultrafilter-limits-are-liminfs",
                               l.name(), total,
                               total * double(lawson.opens().size()) *
                                   double(x->size()),
                               0, false);
        if (run.exhaustive()) {
            for (Val uf : ux->elems()) {
                std::vector<Val> limits;
                for (Val y : x->elems()) {
                    bool converges = true;
                    for (Val u : lawson.opens()) {
                        if (!u->contains(y)) continue;
                        if (!uf->contains(u)) {
                            converges = false;
                            break;
                        }
                    }
                    if (converges) limits.push_back(y);
                }
                if (!run.instance(uf, set_of(std::move(limits)),
                                  set_of({liminf_of(uf)}), "", "limit points",
                                  "liminf"))
                    break;
            }
        }
        run.finish();
    }
    return rep;
}

}  // namespace weaklaw

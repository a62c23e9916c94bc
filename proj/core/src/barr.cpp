#include "weaklaw/barr.hpp"

#include <algorithm>
#include <cmath>

#include "check_util.hpp"
#include "weaklaw/zoo.hpp"

namespace weaklaw {

using detail::DiagramRun;
using detail::fn_desc;

Cp FunctorSpec::obj(const Cp& x) {
    if (obj_override) return obj_override(x);
    auto it = obj_memo_.find(x->elems());
    if (it != obj_memo_.end()) return it->second;
    Cp t = make_carrier(name + "(" + x->name() + ")", elements_fn(x));
    obj_memo_.emplace(x->elems(), t);
    return t;
}

FinFn FunctorSpec::arr(const FinFn& f) {
    Cp fdom = obj(f.dom()), fcod = obj(f.cod());
    FinFn fe = f;
    return FinFn::from_fn(fdom, fcod, [this, fe](Val t) {
        return map_elem([&fe](Val v) { return fe(v); }, t, fe.cod());
    });
}

double FunctorSpec::est_size(double base) const {
    if (!size_of || base < 0) return -1;
    return size_of(base);
}

double FunctorSpec::est_elem_cost(double base) const {
    if (!elem_cost || base < 0) return 1;
    return elem_cost(base);
}

FunctorPtr functor_of(const MonadPtr& m) {
    auto f = std::make_shared<FunctorSpec>();
    f->name = m->symbol;
    f->elements_fn = m->elements_fn;
    f->map_elem = m->map_elem;
    f->size_of = m->size_of;
    f->elem_cost = m->elem_cost;
    MonadPtr keep = m;
    f->obj_override = [keep](const Cp& x) { return keep->obj(x); };
    return f;
}

FunctorPtr identity_functor() {
    auto f = std::make_shared<FunctorSpec>();
    f->name = "Id";
    f->map_elem = [](const std::function<Val(Val)>& g, Val t, const Cp&) {
        return g(t);
    };
    f->size_of = [](double b) { return b; };
    f->obj_override = [](const Cp& x) { return x; };
    return f;
}

FunctorPtr constant_functor(int points) {
    auto f = std::make_shared<FunctorSpec>();
    f->name = "Const" + std::to_string(points);
    std::vector<Val> pts;
    for (int i = 0; i < points; ++i) pts.push_back(atom("c" + std::to_string(i)));
    f->elements_fn = [pts](const Cp&) { return pts; };
    f->map_elem = [](const std::function<Val(Val)>&, Val t, const Cp&) { return t; };
    f->size_of = [points](double) { return double(points); };
    return f;
}

FunctorPtr support_functor() {
    auto f = std::make_shared<FunctorSpec>();
    f->name = "Supp";
    f->elements_fn = [](const Cp& x) {
        std::vector<Val> out;
        if (x->size() > 0) out.push_back(atom("*"));
        return out;
    };
    f->map_elem = [](const std::function<Val(Val)>&, Val t, const Cp&) { return t; };
    f->size_of = [](double b) { return b > 0 ? 1.0 : 0.0; };
    return f;
}

FinRel barr_lift(FunctorSpec& f, const FinRel& r) {
    Tabulation t = tabulate(r);
    FinFn fp = f.arr(t.p), fq = f.arr(t.q);
    return compose_rel(graph(fq), cograph(fp));
}

FinRel egli_milner(const FinRel& r) {
    auto p = powerset_monad();
    Cp px = p->obj(r.dom()), py = p->obj(r.cod());
    std::vector<std::pair<Val, Val>> pairs;
    for (Val a : px->elems())
        for (Val b : py->elems()) {
            bool fwd = true, bwd = true;
            for (Val x : a->kids()) {
                bool hit = false;
                for (Val y : b->kids())
                    if (r.related(x, y)) {
                        hit = true;
                        break;
                    }
                if (!hit) {
                    fwd = false;
                    break;
                }
            }
            if (fwd)
                for (Val y : b->kids()) {
                    bool hit = false;
                    for (Val x : a->kids())
                        if (r.related(x, y)) {
                            hit = true;
                            break;
                        }
                    if (!hit) {
                        bwd = false;
                        break;
                    }
                }
            if (fwd && bwd) pairs.emplace_back(a, b);
        }
    return FinRel::from_pairs(px, py, pairs);
}

FinRel beta_lift(const FinRel& r) {
    auto bm = ultrafilter_monad();
    Cp bx = bm->obj(r.dom()), by = bm->obj(r.cod());
    std::vector<std::pair<Val, Val>> pairs;
    for (Val f : bx->elems())
        for (Val g : by->elems()) {
            bool ok = true;
            for (Val a : f->kids())
                if (!g->contains(set_of(r.image_of(a->kids())))) {
                    ok = false;
                    break;
                }
            if (ok) pairs.emplace_back(f, g);
        }
    return FinRel::from_pairs(bx, by, pairs);
}

std::vector<FinRel> enumerate_relations(const Cp& x, const Cp& y, uint64_t budget) {
    size_t cells = x->size() * y->size();
    double total = std::pow(2.0, double(cells));
    if (total > double(budget))
        throw BudgetError("enumerating " + std::to_string(total) +
                          " relations exceeds the budget");
    std::vector<FinRel> out;
    size_t ny = y->size();
    for (uint64_t mask = 0; mask < (uint64_t(1) << cells); ++mask) {
        std::vector<std::pair<int32_t, int32_t>> pairs;
        for (size_t k = 0; k < cells; ++k)
            if (mask & (uint64_t(1) << k))
                pairs.emplace_back(int32_t(k / ny), int32_t(k % ny));
        out.emplace_back(x, y, std::move(pairs));
    }
    return out;
}

FinRel sample_relation(const Cp& x, const Cp& y, Rng& rng) {
    std::vector<std::pair<int32_t, int32_t>> pairs;
    for (size_t i = 0; i < x->size(); ++i)
        for (size_t j = 0; j < y->size(); ++j)
            if (rng.coin()) pairs.emplace_back(int32_t(i), int32_t(j));
    return FinRel(x, y, std::move(pairs));
}

namespace {

struct PbSquare {
    Cp apex;
    Square sq;
};

// The canonical pullback of the cospan (f, g): apex of pairs, projections as
// top/left legs.
PbSquare canonical_pullback(const FinFn& f, const FinFn& g) {
    std::vector<Val> pe;
    for (Val x : f.dom()->elems())
        for (Val y : g.dom()->elems())
            if (f(x) == g(y)) pe.push_back(pair_of(x, y));
    std::sort(pe.begin(), pe.end(), val_less);
    Cp apex = make_carrier("Pb(" + f.dom()->name() + "," + g.dom()->name() + ")",
                           std::move(pe));
    FinFn p = FinFn::from_fn(apex, f.dom(), [](Val w) { return w->kids()[0]; });
    FinFn q = FinFn::from_fn(apex, g.dom(), [](Val w) { return w->kids()[1]; });
    return {apex, Square{q, p, f, g}};
}

Square functor_image(FunctorSpec& F, const Square& sq) {
    return Square{F.arr(sq.top), F.arr(sq.left), F.arr(sq.bottom), F.arr(sq.right)};
}

// First pair related by a but not by b, rendered as a (dom, cod) value pair.
Val first_diff(const FinRel& a, const FinRel& b) {
    for (const auto& pr : a.pairs())
        if (!b.related_idx(pr.first, pr.second))
            return pair_of(a.dom()->at(pr.first), a.cod()->at(pr.second));
    return nullptr;
}

// Witness pair for a failed relation equality, from either side.
Val equality_diff(const FinRel& lhs, const FinRel& rhs) {
    Val d = first_diff(lhs, rhs);
    return d ? d : first_diff(rhs, lhs);
}

std::vector<int> clean_sizes(const CheckConfig& cfg) {
    std::vector<int> sizes = cfg.sizes;
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    return sizes;
}

}  // namespace

LawReport check_weakly_cartesian_functor(FunctorSpec& F, const CheckConfig& cfg) {
    LawReport rep;
    rep.subject = "functor " + F.name;
    rep.operation = "check_weakly_cartesian_functor";
    rep.budget = cfg.budget;
    std::vector<int> sizes = clean_sizes(cfg);
    std::vector<Cp> xs;
    for (int n : sizes) xs.push_back(std_carrier(n));

    for (size_t ia = 0; ia < xs.size(); ++ia)
        for (size_t ib = 0; ib < xs.size(); ++ib)
            for (size_t ic = 0; ic < xs.size(); ++ic) {
                const Cp &xa = xs[ia], &xb = xs[ib], &xc = xs[ic];
                int a = sizes[ia], b = sizes[ib], c = sizes[ic];
                double total =
                    count_functions(xa, xc) * count_functions(xb, xc);
                std::string where =
                    xa->name() + "," + xb->name() + "->" + xc->name();

                // Per-cospan cost: image-square scan over F(dom) x F(dom'),
                // plus building F of a typically-small apex (memoized across
                // cospans, so the estimate uses the expected apex size).
                double fa = std::max(1.0, F.est_size(a));
                double fb = std::max(1.0, F.est_size(b));
                double apx = c > 0 ? double(a) * double(b) / double(c) + 1 : 1;
                double per = std::max(
                    1.0, fa * fb / 4 +
                             std::max(1.0, F.est_size(apx)) * F.est_elem_cost(apx));

                {
                    DiagramRun run(rep, cfg, "pullback-image", where, total,
                                   total * per, per, true);
                    auto eval = [&](const FinFn& f, const FinFn& g) {
                        PbSquare pb = canonical_pullback(f, g);
                        WeakPullbackReport wr =
                            is_weak_pullback(functor_image(F, pb.sq));
                        return run.predicate(
                            wr.missing ? *wr.missing : nullptr, wr.weak,
                            "f=" + fn_desc(f) + " g=" + fn_desc(g));
                    };
                    if (run.exhaustive()) {
                        bool alive = true;
                        for (const FinFn& f : enumerate_functions(xa, xc)) {
                            if (!alive) break;
                            for (const FinFn& g : enumerate_functions(xb, xc))
                                if (!(alive = eval(f, g))) break;
                        }
                    } else if (run.sampled()) {
                        for (uint64_t i = 0; i < cfg.samples; ++i)
                            if (!eval(sample_function(xa, xc, run.rng()),
                                      sample_function(xb, xc, run.rng())))
                                break;
                    }
                    run.finish();
                }

                // All weak-pullback completions with small standard apexes:
                // non-commuting or non-weak candidates are vacuous instances.
                double comp_total = 0;
                for (int w : sizes)
                    comp_total += std::pow(double(a), double(w)) *
                                  std::pow(double(b), double(w));
                comp_total *= total;
                {
                    DiagramRun run(rep, cfg, "completion-image", where,
                                   comp_total, comp_total, per, true);
                    auto eval = [&](const FinFn& f, const FinFn& g,
                                    const FinFn& u, const FinFn& v) {
                        Square sq{v, u, f, g};
                        if (!sq.commutes()) return run.predicate(nullptr, true, "");
                        if (!is_weak_pullback(sq).weak)
                            return run.predicate(nullptr, true, "");
                        WeakPullbackReport wr =
                            is_weak_pullback(functor_image(F, sq));
                        return run.predicate(
                            wr.missing ? *wr.missing : nullptr, wr.weak,
                            "f=" + fn_desc(f) + " g=" + fn_desc(g) +
                                " apex=" + u.dom()->name());
                    };
                    if (run.exhaustive()) {
                        bool alive = true;
                        for (const FinFn& f : enumerate_functions(xa, xc)) {
                            if (!alive) break;
                            for (const FinFn& g : enumerate_functions(xb, xc)) {
                                if (!alive) break;
                                for (const Cp& xw : xs) {
                                    if (!alive) break;
                                    for (const FinFn& u :
                                         enumerate_functions(xw, xa)) {
                                        if (!alive) break;
                                        for (const FinFn& v :
                                             enumerate_functions(xw, xb))
                                            if (!(alive = eval(f, g, u, v))) break;
                                    }
                                }
                            }
                        }
                    } else if (run.sampled()) {
                        for (uint64_t i = 0; i < cfg.samples; ++i) {
                            const Cp& xw = xs[run.rng().below(xs.size())];
                            if (!eval(sample_function(xa, xc, run.rng()),
                                      sample_function(xb, xc, run.rng()),
                                      sample_function(xw, xa, run.rng()),
                                      sample_function(xw, xb, run.rng())))
                                break;
                        }
                    }
                    run.finish();
                }
            }
    return rep;
}

LawReport check_weakly_cartesian_nat(MonadSpec& m, NatFamily which,
                                     const CheckConfig& cfg) {
    if (which == NatFamily::Mult && m.truncated)
        throw PreconditionError(
            "the multiplication is partial (size-truncated), so its naturality "
            "squares are not total maps and fall outside this check");
    LawReport rep;
    rep.subject =
        "monad " + m.name + (which == NatFamily::Unit ? " (unit)" : " (mult)");
    rep.operation = "check_weakly_cartesian_nat";
    rep.budget = cfg.budget;
    std::vector<int> sizes = clean_sizes(cfg);
    std::vector<Cp> xs;
    for (int n : sizes) xs.push_back(std_carrier(n));

    bool all_bijective = true;
    const char* fam = which == NatFamily::Unit ? "unit-square" : "mult-square";
    for (size_t ia = 0; ia < xs.size(); ++ia) {
        if (which == NatFamily::Unit) {
            FinFn eta = m.unit(xs[ia]);
            all_bijective = all_bijective && is_injective(eta) && is_surjective(eta);
        }
        for (size_t ib = 0; ib < xs.size(); ++ib) {
            const Cp &xa = xs[ia], &xb = xs[ib];
            double total = count_functions(xa, xb);
            double t1a = m.est_size(double(sizes[ia]));
            double per = std::max(1.0, which == NatFamily::Unit
                                           ? t1a
                                           : m.est_size(t1a));
            DiagramRun run(rep, cfg, fam, xa->name() + "->" + xb->name(), total,
                           total * per, per, true);
            auto eval = [&](const FinFn& f) {
                Square sq =
                    which == NatFamily::Unit
                        ? Square{m.unit(xa), f, m.unit(xb), m.arr(f)}
                        : Square{m.mult(xa).to_total(), m.arr(m.arr(f)),
                                 m.mult(xb).to_total(), m.arr(f)};
                WeakPullbackReport wr = is_weak_pullback(sq);
                return run.predicate(wr.missing ? *wr.missing : nullptr, wr.weak,
                                     "f=" + fn_desc(f));
            };
            if (run.exhaustive()) {
                for (const FinFn& f : enumerate_functions(xa, xb))
                    if (!eval(f)) break;
            } else if (run.sampled()) {
                for (uint64_t i = 0; i < cfg.samples; ++i)
                    if (!eval(sample_function(xa, xb, run.rng()))) break;
            }
            run.finish();
        }
    }
    if (which == NatFamily::Unit && all_bijective && rep.ok())
        rep.notes.push_back(
            "every tested unit component is a bijection, so each naturality "
            "square is a genuine pullback; this is special to finite carriers "
            "and does not persist at larger cardinalities");
    return rep;
}

LawReport check_2functor(FunctorSpec& F, const CheckConfig& cfg) {
    LawReport rep;
    rep.subject = "functor " + F.name;
    rep.operation = "check_2functor";
    rep.budget = cfg.budget;
    std::vector<int> sizes = clean_sizes(cfg);
    std::vector<Cp> xs;
    for (int n : sizes) xs.push_back(std_carrier(n));

    // Rough cost of one lifting between carriers of these sizes: build F of
    // an apex of up to a*b pairs, then compose two graphs.
    auto lift_cost = [&](int a, int b) {
        double apx = double(a) * double(b) / 2;
        return std::max(1.0, F.est_size(apx) * F.est_elem_cost(apx));
    };

    for (size_t ia = 0; ia < xs.size(); ++ia) {
        const Cp& xa = xs[ia];
        int a = sizes[ia];
        DiagramRun run(rep, cfg, "lift-identity", xa->name(), 1,
                       lift_cost(a, a), lift_cost(a, a), false);
        if (run.exhaustive()) {
            FinRel lifted = barr_lift(F, FinRel::identity(xa));
            FinRel want = FinRel::identity(F.obj(xa));
            run.predicate(equality_diff(lifted, want), lifted == want, "");
        }
        run.finish();
    }

    for (size_t ia = 0; ia < xs.size(); ++ia)
        for (size_t ib = 0; ib < xs.size(); ++ib) {
            const Cp &xa = xs[ia], &xb = xs[ib];
            int a = sizes[ia], b = sizes[ib];
            std::string where = xa->name() + "->" + xb->name();

            {
                double total = count_functions(xa, xb);
                double per = lift_cost(a, b);
                DiagramRun run(rep, cfg, "lift-graph", where, total, total * per,
                               per, true);
                auto eval = [&](const FinFn& g) {
                    FinRel lifted = barr_lift(F, graph(g));
                    FinRel want = graph(F.arr(g));
                    return run.predicate(equality_diff(lifted, want),
                                         lifted == want, "g=" + fn_desc(g));
                };
                if (run.exhaustive()) {
                    for (const FinFn& g : enumerate_functions(xa, xb))
                        if (!eval(g)) break;
                } else if (run.sampled()) {
                    for (uint64_t i = 0; i < cfg.samples; ++i)
                        if (!eval(sample_function(xa, xb, run.rng()))) break;
                }
                run.finish();
            }

            {
                // Inclusion order: each cell is out of both, in both, or in
                // the larger relation only.
                size_t cells = xa->size() * xb->size();
                double total = std::pow(3.0, double(cells));
                double per = 2 * lift_cost(a, b);
                DiagramRun run(rep, cfg, "lift-monotone", where, total,
                               total * per, per, true);
                size_t ny = xb->size();
                auto eval = [&](const std::vector<int>& cell) {
                    std::vector<std::pair<int32_t, int32_t>> small, big;
                    for (size_t k = 0; k < cells; ++k) {
                        if (cell[k] == 0) continue;
                        big.emplace_back(int32_t(k / ny), int32_t(k % ny));
                        if (cell[k] == 1) small.push_back(big.back());
                    }
                    FinRel r(xa, xb, std::move(small));
                    FinRel rr(xa, xb, std::move(big));
                    FinRel lr = barr_lift(F, r), lrr = barr_lift(F, rr);
                    return run.predicate(first_diff(lr, lrr), lr.subset_of(lrr),
                                         "");
                };
                if (run.exhaustive()) {
                    std::vector<int> cell(cells, 0);
                    bool alive = true;
                    while (alive) {
                        alive = eval(cell);
                        size_t k = 0;
                        while (k < cells && ++cell[k] == 3) cell[k++] = 0;
                        if (k == cells) break;
                    }
                } else if (run.sampled()) {
                    std::vector<int> cell(cells);
                    for (uint64_t i = 0; i < cfg.samples; ++i) {
                        for (size_t k = 0; k < cells; ++k)
                            cell[k] = int(run.rng().below(3));
                        if (!eval(cell)) break;
                    }
                }
                run.finish();
            }
        }

    for (size_t ia = 0; ia < xs.size(); ++ia)
        for (size_t ib = 0; ib < xs.size(); ++ib)
            for (size_t ic = 0; ic < xs.size(); ++ic) {
                const Cp &xa = xs[ia], &xb = xs[ib], &xc = xs[ic];
                int a = sizes[ia], b = sizes[ib], c = sizes[ic];
                double total = std::pow(2.0, double(xa->size() * xb->size())) *
                               std::pow(2.0, double(xb->size() * xc->size()));
                double per =
                    lift_cost(a, b) + lift_cost(b, c) + lift_cost(a, c);
                std::string where =
                    xa->name() + "->" + xb->name() + "->" + xc->name();
                DiagramRun run(rep, cfg, "lift-compose", where, total,
                               total * per, per, true);
                auto eval = [&](const FinRel& r, const FinRel& s) {
                    FinRel lhs = barr_lift(F, compose_rel(s, r));
                    FinRel rhs = compose_rel(barr_lift(F, s), barr_lift(F, r));
                    return run.predicate(equality_diff(lhs, rhs), lhs == rhs, "");
                };
                if (run.exhaustive()) {
                    bool alive = true;
                    for (const FinRel& r : enumerate_relations(xa, xb)) {
                        if (!alive) break;
                        for (const FinRel& s : enumerate_relations(xb, xc))
                            if (!(alive = eval(r, s))) break;
                    }
                } else if (run.sampled()) {
                    for (uint64_t i = 0; i < cfg.samples; ++i)
                        if (!eval(sample_relation(xa, xb, run.rng()),
                                  sample_relation(xb, xc, run.rng())))
                            break;
                }
                run.finish();
            }
    return rep;
}

}  // namespace weaklaw

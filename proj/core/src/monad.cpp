#include "weaklaw/monad.hpp"

#include <algorithm>
#include <cmath>

#include "check_util.hpp"

namespace weaklaw {

using detail::DiagramRun;
using detail::elemwise;
using detail::fn_desc;

uint64_t fnv1a(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

Val undefined_marker() { return atom("<undefined>"); }

Cp MonadSpec::obj(const Cp& x) {
    auto it = obj_memo_.find(x->elems());
    if (it != obj_memo_.end()) return it->second;
    Cp t = make_carrier(symbol + "(" + x->name() + ")", elements_fn(x));
    obj_memo_.emplace(x->elems(), t);
    return t;
}

FinFn MonadSpec::arr(const FinFn& f) {
    Cp tdom = obj(f.dom()), tcod = obj(f.cod());
    FinFn fe = f;
    return FinFn::from_fn(tdom, tcod, [this, fe](Val t) {
        return map_elem([&fe](Val v) { return fe(v); }, t, fe.cod());
    });
}

FinFn MonadSpec::unit(const Cp& x) {
    return FinFn::from_fn(x, obj(x), [this, &x](Val v) { return unit_elem(x, v); });
}

PartialFn MonadSpec::mult(const Cp& x) {
    Cp tx = obj(x), ttx = obj(tx);
    std::vector<int32_t> tab(ttx->size(), -1);
    for (size_t i = 0; i < ttx->size(); ++i) {
        Val r = mult_elem(x, ttx->at(i));
        if (r) tab[i] = tx->index_of(r);
    }
    return PartialFn(ttx, tx, std::move(tab));
}

Val MonadSpec::map1(const FinFn& f, Val t) const {
    return map_elem([&f](Val v) { return f(v); }, t, f.cod());
}

double MonadSpec::est_size(double base) const {
    if (!size_of || base < 0) return -1;
    return size_of(base);
}

double MonadSpec::est_elem_cost(double base) const {
    if (!elem_cost || base < 0) return 1;
    return elem_cost(base);
}

double count_functions(const Cp& dom, const Cp& cod) {
    return std::pow(double(cod->size()), double(dom->size()));
}

std::vector<FinFn> enumerate_functions(const Cp& dom, const Cp& cod, uint64_t budget) {
    double n = count_functions(dom, cod);
    if (cod->size() == 0 && dom->size() > 0) return {};
    guard_budget(n, "functions " + dom->name() + " -> " + cod->name());
    if (n > double(budget))
        throw BudgetError("function space " + dom->name() + " -> " + cod->name() +
                          " exceeds budget");
    std::vector<FinFn> out;
    std::vector<int32_t> tab(dom->size(), 0);
    while (true) {
        out.emplace_back(dom, cod, tab);
        size_t i = 0;
        for (; i < tab.size(); ++i) {
            if (++tab[i] < int32_t(cod->size())) break;
            tab[i] = 0;
        }
        if (i == tab.size()) break;
        if (tab.empty()) break;
    }
    return out;
}

FinFn sample_function(const Cp& dom, const Cp& cod, Rng& rng) {
    if (cod->size() == 0 && dom->size() > 0)
        throw PreconditionError("no functions into an empty carrier");
    std::vector<int32_t> tab(dom->size(), 0);
    for (auto& t : tab) t = int32_t(cod->size() ? rng.below(cod->size()) : 0);
    return FinFn(dom, cod, std::move(tab));
}

LawReport check_monad_laws(MonadSpec& m, const CheckConfig& cfg) {
    LawReport rep;
    rep.subject = "monad " + m.name;
    rep.operation = "check-monad";
    rep.budget = cfg.budget;

    std::vector<int> sizes = cfg.sizes;
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

    try {
        std::vector<Cp> xs, txs;
        for (int n : sizes) {
            xs.push_back(std_carrier(n));
            txs.push_back(m.obj(xs.back()));
        }
        const size_t k = xs.size();

        // T(id) = id on T X.
        for (size_t a = 0; a < k; ++a) {
            const auto& tx = txs[a]->elems();
            DiagramRun run(rep, cfg, "functor-id", xs[a]->name(),
                           double(tx.size()), double(tx.size()), 1, false);
            if (!run.skipped()) {
                auto ident = [](Val v) { return v; };
                for (Val t : tx)
                    if (!run.instance(t, m.map_elem(ident, t, xs[a]), t, "", "T(id)", "id"))
                        break;
            }
            run.finish();
        }

        // T(g . f) = T(g) . T(f) on T X, over all (or sampled) f, g.
        for (size_t a = 0; a < k; ++a)
            for (size_t b = 0; b < k; ++b)
                for (size_t c = 0; c < k; ++c) {
                    double nf = count_functions(xs[a], xs[b]);
                    double ng = count_functions(xs[b], xs[c]);
                    double total = nf * ng * double(txs[a]->size());
                    std::string where =
                        xs[a]->name() + "->" + xs[b]->name() + "->" + xs[c]->name();
                    bool can_sample = xs[b]->size() > 0 && xs[c]->size() > 0 &&
                                      txs[a]->size() > 0;
                    DiagramRun run(rep, cfg, "functor-comp", where, total, total, 1,
                                   can_sample);
                    if (run.exhaustive()) {
                        bool live = total > 0;
                        if (live)
                            for (const FinFn& f : enumerate_functions(xs[a], xs[b])) {
                                for (const FinFn& g : enumerate_functions(xs[b], xs[c])) {
                                    FinFn gf = compose(g, f);
                                    auto fe = elemwise(f), ge = elemwise(g),
                                         gfe = elemwise(gf);
                                    for (Val t : txs[a]->elems())
                                        if (!run.instance(
                                                t, m.map_elem(gfe, t, xs[c]),
                                                m.map_elem(ge, m.map_elem(fe, t, xs[b]), xs[c]),
                                                "f=" + fn_desc(f) + " g=" + fn_desc(g),
                                                "T(g.f)", "T(g).T(f)")) {
                                            live = false;
                                            break;
                                        }
                                    if (!live) break;
                                }
                                if (!live) break;
                            }
                    } else if (run.sampled()) {
                        for (uint64_t d = 0; d < cfg.samples; ++d) {
                            FinFn f = sample_function(xs[a], xs[b], run.rng());
                            FinFn g = sample_function(xs[b], xs[c], run.rng());
                            FinFn gf = compose(g, f);
                            auto fe = elemwise(f), ge = elemwise(g), gfe = elemwise(gf);
                            Val t = txs[a]->at(run.rng().below(txs[a]->size()));
                            if (!run.instance(t, m.map_elem(gfe, t, xs[c]),
                                              m.map_elem(ge, m.map_elem(fe, t, xs[b]), xs[c]),
                                              "f=" + fn_desc(f) + " g=" + fn_desc(g),
                                              "T(g.f)", "T(g).T(f)"))
                                break;
                        }
                    }
                    run.finish();
                }

        // T(f) . unit = unit . f on X.
        for (size_t a = 0; a < k; ++a)
            for (size_t b = 0; b < k; ++b) {
                double nf = count_functions(xs[a], xs[b]);
                double total = nf * double(xs[a]->size());
                std::string where = xs[a]->name() + "->" + xs[b]->name();
                DiagramRun run(rep, cfg, "unit-naturality", where, total, total, 1, false);
                if (run.exhaustive() && total > 0) {
                    bool live = true;
                    for (const FinFn& f : enumerate_functions(xs[a], xs[b])) {
                        auto fe = elemwise(f);
                        for (Val v : xs[a]->elems())
                            if (!run.instance(v, m.unit_elem(xs[b], f(v)),
                                              m.map_elem(fe, m.unit_elem(xs[a], v), xs[b]),
                                              "f=" + fn_desc(f), "unit.f", "T(f).unit")) {
                                live = false;
                                break;
                            }
                        if (!live) break;
                    }
                }
                run.finish();
            }

        // T(f) . mult = mult . T(T(f)) on T T X.
        for (size_t a = 0; a < k; ++a)
            for (size_t b = 0; b < k; ++b) {
                double nf = count_functions(xs[a], xs[b]);
                double s2 = m.est_size(double(txs[a]->size()));
                std::string where = xs[a]->name() + "->" + xs[b]->name();
                bool mat = s2 >= 0 && s2 <= double(cfg.budget);
                double total = s2 < 0 ? -1 : nf * s2;
                bool can_sample = bool(m.sample_elem) && xs[b]->size() > 0;
                DiagramRun run(rep, cfg, "mult-naturality", where, total,
                               mat ? total : -1,
                               m.est_elem_cost(double(txs[a]->size())), can_sample);
                auto check_one = [&](const FinFn& f, Val tt) {
                    auto fe = elemwise(f);
                    auto tf = [&](Val t) { return m.map_elem(fe, t, xs[b]); };
                    Val u = m.mult_elem(xs[a], tt);
                    Val lhs = u ? m.map_elem(fe, u, xs[b]) : nullptr;
                    Val rhs = m.mult_elem(xs[b], m.map_elem(tf, tt, txs[b]));
                    return run.instance(tt, lhs, rhs, "f=" + fn_desc(f),
                                        "T(f).mult", "mult.TT(f)");
                };
                if (run.exhaustive() && total > 0) {
                    Cp ttx = m.obj(txs[a]);
                    bool live = true;
                    for (const FinFn& f : enumerate_functions(xs[a], xs[b])) {
                        for (Val tt : ttx->elems())
                            if (!check_one(f, tt)) {
                                live = false;
                                break;
                            }
                        if (!live) break;
                    }
                } else if (run.sampled()) {
                    for (uint64_t d = 0; d < cfg.samples; ++d) {
                        FinFn f = sample_function(xs[a], xs[b], run.rng());
                        Val tt = m.sample_elem(txs[a], run.rng());
                        if (!check_one(f, tt)) break;
                    }
                }
                run.finish();
            }

        // mult . unit_{T X} = id and mult . T(unit) = id on T X.
        for (size_t a = 0; a < k; ++a) {
            const auto& tx = txs[a]->elems();
            {
                DiagramRun run(rep, cfg, "left-unit", xs[a]->name(),
                               double(tx.size()), double(tx.size()), 1, false);
                if (!run.skipped())
                    for (Val t : tx) {
                        Val lhs = m.mult_elem(xs[a], m.unit_elem(txs[a], t));
                        if (!run.instance(t, lhs, t, "", "mult.unit_T", "id")) break;
                    }
                run.finish();
            }
            {
                DiagramRun run(rep, cfg, "right-unit", xs[a]->name(),
                               double(tx.size()), double(tx.size()), 1, false);
                if (!run.skipped()) {
                    auto eta = [&](Val v) { return m.unit_elem(xs[a], v); };
                    for (Val t : tx) {
                        Val lhs = m.mult_elem(xs[a], m.map_elem(eta, t, txs[a]));
                        if (!run.instance(t, lhs, t, "", "mult.T(unit)", "id")) break;
                    }
                }
                run.finish();
            }
        }

        // mult . T(mult) = mult . mult_{T X} on T T T X.
        for (size_t a = 0; a < k; ++a) {
            if (m.assoc_scan) {
                DiagramStat st = m.assoc_scan(xs[a], cfg);
                if (st.mode == "sampled" && !rep.seed) rep.seed = cfg.seed;
                rep.absorb(st);
                continue;
            }
            double s1 = double(txs[a]->size());
            double s2 = m.est_size(s1);
            double s3 = s2 < 0 ? -1 : m.est_size(s2);
            double cost3 = s3 < 0 ? -1 : s3 * m.est_elem_cost(s2);
            bool can_build_tt = s2 >= 0 && s2 <= double(cfg.budget);
            bool can_sample = bool(m.sample_elem) && can_build_tt;
            DiagramRun run(rep, cfg, "assoc", xs[a]->name(), s3,
                           can_build_tt ? cost3 : -1,
                           can_build_tt ? m.est_elem_cost(s2) : -1, can_sample);
            auto inner_mult = [&](Val tt) { return m.mult_elem(xs[a], tt); };
            auto check_one = [&](Val ttt) {
                Val ltt = m.map_elem(inner_mult, ttt, txs[a]);
                Val lhs = ltt ? m.mult_elem(xs[a], ltt) : nullptr;
                Val rtt = m.mult_elem(txs[a], ttt);
                Val rhs = rtt ? m.mult_elem(xs[a], rtt) : nullptr;
                return run.instance(ttt, lhs, rhs, "", "mult.T(mult)", "mult.mult_T");
            };
            if (run.exhaustive()) {
                Cp ttx = m.obj(txs[a]);
                for (Val ttt : m.elements_fn(ttx))
                    if (!check_one(ttt)) break;
            } else if (run.sampled()) {
                Cp ttx = m.obj(txs[a]);
                for (uint64_t d = 0; d < cfg.samples; ++d)
                    if (!check_one(m.sample_elem(ttx, run.rng()))) break;
            }
            run.finish();
        }
    } catch (const BudgetError& e) {
        rep.status = Status::BudgetExceeded;
        rep.notes.push_back(std::string("stopped: ") + e.what());
    }

    if (m.truncated)
        rep.notes.push_back(
            "multiplication is partial (size-truncated); diagrams are asserted "
            "where both paths are defined, out_of_range counts the rest");
    return rep;
}

LawReport check_algebra(MonadSpec& m, const AlgebraSpec& alg, bool require_unit,
                        const CheckConfig& cfg) {
    LawReport rep;
    rep.subject = (require_unit ? "algebra " : "semialgebra ") + alg.name;
    rep.operation = "check-algebra";
    rep.budget = cfg.budget;

    Cp x = alg.carrier;
    try {
        Cp tx = m.obj(x);
        if (alg.action.dom() != tx && alg.action.dom()->elems() != tx->elems())
            throw PreconditionError("action domain is not T(" + x->name() + ")");
        if (alg.action.cod()->elems() != x->elems())
            throw PreconditionError("action codomain is not " + x->name());

        if (require_unit) {
            DiagramRun run(rep, cfg, "action-unit", x->name(), double(x->size()),
                           double(x->size()), 1, false);
            for (Val v : x->elems()) {
                Val lhs = alg.action(m.unit_elem(x, v));
                if (!run.instance(v, lhs, v, "", "action.unit", "id")) break;
            }
            run.finish();
        }

        double s2 = m.est_size(double(tx->size()));
        bool mat = s2 >= 0 && s2 <= double(cfg.budget);
        bool can_sample = bool(m.sample_elem);
        DiagramRun run(rep, cfg, "action-assoc", x->name(), s2, mat ? s2 : -1,
                       m.est_elem_cost(double(tx->size())), can_sample);
        auto act = elemwise(alg.action);
        auto check_one = [&](Val tt) {
            Val lhs = alg.action(m.map_elem(act, tt, x));
            Val u = m.mult_elem(x, tt);
            Val rhs = u ? alg.action(u) : nullptr;
            if (!rhs) {
                // Law asserted only where mult is defined; count as skipped.
                return run.instance(tt, nullptr, nullptr, "", "action.T(action)",
                                    "action.mult");
            }
            return run.instance(tt, lhs, rhs, "", "action.T(action)", "action.mult");
        };
        if (run.exhaustive()) {
            for (Val tt : m.elements_fn(tx))
                if (!check_one(tt)) break;
        } else if (run.sampled()) {
            for (uint64_t d = 0; d < cfg.samples; ++d)
                if (!check_one(m.sample_elem(tx, run.rng()))) break;
        }
        run.finish();
    } catch (const BudgetError& e) {
        rep.status = Status::BudgetExceeded;
        rep.notes.push_back(std::string("stopped: ") + e.what());
    }
    return rep;
}

NormalizedSemialgebra normalize_semialgebra(MonadSpec& m, const AlgebraSpec& semi,
                                            const std::string& image_name) {
    Cp x = semi.carrier;
    FinFn e = compose(semi.action, m.unit(x));
    if (compose(e, e) != e)
        throw PreconditionError("action . unit is not idempotent on " + x->name() +
                                "; not a semialgebra action");
    std::string nm = image_name.empty() ? x->name() + "~" : image_name;
    Splitting sp = split_idempotent(e, nm);
    FinFn ti = m.arr(sp.i);
    FinFn induced = compose(sp.p, compose(semi.action, ti));
    return NormalizedSemialgebra{sp, AlgebraSpec{semi.name + "-normalized",
                                                 sp.image, induced}};
}

FinFn kleisli_compose(MonadSpec& m, const FinFn& f, const FinFn& g, const Cp& z_base) {
    Cp tz = m.obj(z_base);
    if (g.cod()->elems() != tz->elems())
        throw PreconditionError("second Kleisli arrow does not land in T(" +
                                z_base->name() + ")");
    auto ge = elemwise(g);
    return FinFn::from_fn(f.dom(), tz, [&](Val v) {
        Val r = m.mult_elem(z_base, m.map_elem(ge, f(v), tz));
        if (!r)
            throw PreconditionError("Kleisli composite undefined at " + v->str() +
                                    " (truncated multiplication)");
        return r;
    });
}

std::vector<AlgebraSpec> enumerate_algebras(MonadSpec& m, const Cp& x,
                                            bool require_unit, uint64_t budget) {
    Cp tx = m.obj(x);
    double tables = std::pow(double(x->size()), double(tx->size()));
    guard_budget(tables, "algebra structures on " + x->name());
    if (tables > double(budget))
        throw BudgetError("algebra enumeration on " + x->name() + " exceeds budget");
    double s2 = m.est_size(double(tx->size()));
    if (s2 < 0 || s2 > double(budget))
        throw BudgetError("T T " + x->name() + " too large for algebra enumeration");

    Cp ttx = m.obj(tx);
    // Precompute the multiplication as an index table (-1 where undefined).
    std::vector<int32_t> mult_tab(ttx->size(), -1);
    for (size_t i = 0; i < ttx->size(); ++i) {
        Val r = m.mult_elem(x, ttx->at(i));
        if (r) mult_tab[i] = tx->index_of(r);
    }
    std::vector<int32_t> unit_tab(x->size());
    for (size_t i = 0; i < x->size(); ++i)
        unit_tab[i] = tx->index_of(m.unit_elem(x, x->at(i)));

    std::vector<AlgebraSpec> out;
    if (x->size() == 0) {
        if (tx->size() == 0)
            out.push_back(AlgebraSpec{x->name() + "-alg-0", x, FinFn(tx, x, {})});
        // A nonempty T(empty) admits no action at all.
        return out;
    }

    std::vector<int32_t> tab(tx->size(), 0);
    size_t ordinal = 0;
    while (true) {
        bool good = true;
        if (require_unit)
            for (size_t i = 0; i < x->size() && good; ++i)
                good = tab[unit_tab[i]] == int32_t(i);
        if (good) {
            FinFn action(tx, x, tab);
            auto act = elemwise(action);
            for (size_t i = 0; i < ttx->size() && good; ++i) {
                if (mult_tab[i] < 0) continue;
                Val ta = m.map_elem(act, ttx->at(i), x);
                good = action(ta) == x->at(tab[mult_tab[i]]);
            }
            if (good)
                out.push_back(AlgebraSpec{x->name() + "-alg-" + std::to_string(ordinal++),
                                          x, std::move(action)});
        }
        size_t i = 0;
        for (; i < tab.size(); ++i) {
            if (++tab[i] < int32_t(x->size())) break;
            tab[i] = 0;
        }
        if (i == tab.size()) break;
    }
    return out;
}

}  // namespace weaklaw

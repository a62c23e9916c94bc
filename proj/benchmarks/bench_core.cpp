// Microbenchmarks for the hot paths: value interning, relation composition,
// and idempotent splitting on mid-sized carriers.
#include <benchmark/benchmark.h>

#include <vector>

#include "weaklaw/finset.hpp"
#include "weaklaw/value.hpp"

namespace {

using namespace weaklaw;

std::vector<Val> subsets_of(const std::vector<Val>& base) {
    std::vector<Val> out;
    for (uint64_t mask = 0; mask < (uint64_t(1) << base.size()); ++mask) {
        std::vector<Val> kids;
        for (size_t i = 0; i < base.size(); ++i)
            if (mask & (uint64_t(1) << i)) kids.push_back(base[i]);
        out.push_back(set_of(kids));
    }
    return out;
}

void BM_ValueIntern(benchmark::State& state) {
    std::vector<Val> atoms;
    for (char c = 'a'; c < 'a' + 8; ++c) atoms.push_back(atom(std::string(1, c)));
    for (auto _ : state) {
        Val v = set_of({atoms[0], atoms[3], atoms[5]});
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_ValueIntern);

void BM_RelCompose(benchmark::State& state) {
    const int n = int(state.range(0));
    std::vector<Val> atoms;
    for (int i = 0; i < n; ++i) atoms.push_back(atom("x" + std::to_string(i)));
    Cp x = make_carrier("B" + std::to_string(n), atoms);
    std::vector<std::pair<int32_t, int32_t>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if ((i + j) % 3 == 0) pairs.emplace_back(i, j);
    FinRel r(x, x, pairs);
    for (auto _ : state) {
        FinRel rr = compose_rel(r, r);
        benchmark::DoNotOptimize(rr);
    }
}
BENCHMARK(BM_RelCompose)->Arg(16)->Arg(64);

void BM_SplitIdempotent(benchmark::State& state) {
    std::vector<Val> atoms;
    for (int i = 0; i < 32; ++i) atoms.push_back(atom("x" + std::to_string(i)));
    Cp x = make_carrier("B32", atoms);
    std::vector<int32_t> tab(32);
    for (int i = 0; i < 32; ++i) tab[i] = i - (i % 4);  // retract onto multiples of 4
    FinFn e(x, x, tab);
    for (auto _ : state) {
        Splitting s = split_idempotent(e, "img");
        benchmark::DoNotOptimize(s.image);
    }
}
BENCHMARK(BM_SplitIdempotent);

}  // namespace

BENCHMARK_MAIN();

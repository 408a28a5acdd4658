// Serial reference against OpenMP for each kernel on the same inputs.

#include <benchmark/benchmark.h>

#include <random>

#include "tatecup/cochain.hpp"
#include "tatecup/kernels.hpp"

using namespace tatecup;

namespace {

// S3 acting on Z/4 + Z/4 + Z/4 through the sign, tensored with the identity.
ModulePtr workload_module() {
    static ModulePtr m = [] {
        auto g = make_group(FiniteGroup::symmetric3());
        auto carrier = make_group(FgAbGroup::canonical({Int(4), Int(4), Int(4)}, 0));
        std::vector<IntMatrix> act;
        for (uint32_t s = 0; s < g->order(); ++s) {
            // odd permutations have order 2
            const bool odd = s != 0 && g->element_order(s) == 2;
            IntMatrix a = IntMatrix::identity(3);
            if (odd)
                for (std::size_t i = 0; i < 3; ++i) a(i, i) = Int(-1);
            act.push_back(a);
        }
        return make_module(g, carrier, act, "M");
    }();
    return m;
}

template <class F>
void coboundary_bench(benchmark::State& state, F kernel) {
    auto m = workload_module();
    const int r = static_cast<int>(state.range(0));
    std::mt19937_64 rng(11);
    Cochain f = random_cochain(m, r, rng);
    IntVector out(kernels::power(m->group()->order(), r + 1) * m->gens());
    auto view = m->view();
    for (auto _ : state) {
        kernel(view, r, f.values(), out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(out.size()));
}

template <class F>
void cup_bench(benchmark::State& state, F kernel) {
    auto m = workload_module();
    const int r = static_cast<int>(state.range(0));
    const int s = static_cast<int>(state.range(1));
    std::mt19937_64 rng(12);
    Cochain f = random_cochain(m, r, rng);
    Cochain g = random_cochain(m, s, rng);
    auto out_module = trivial_module(m->group(), m->carrier(), "T");
    GPairing p = GPairing::from_function(m, m, out_module, [](std::size_t a, std::size_t b) {
        IntVector v(3);
        v[(a + b) % 3] = Int(1);
        return v;
    });
    IntVector out(kernels::power(m->group()->order(), r + s) * m->gens());
    kernels::GroupView gv{m->group()->table(), m->group()->order()};
    auto rv = m->view();
    auto pv = p.view();
    for (auto _ : state) {
        kernel(gv, rv, pv, r, s, f.values(), g.values(), out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(out.size()));
}

template <class F>
void reduce_bench(benchmark::State& state, F kernel) {
    const std::size_t rows = static_cast<std::size_t>(state.range(0));
    const std::size_t cols = static_cast<std::size_t>(state.range(1));
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> d(-50, 50);
    std::vector<IntVector> base(cols, IntVector(rows));
    for (auto& c : base)
        for (auto& x : c) x = Int(d(rng));
    std::vector<Int> moduli(rows, Int(0));
    std::vector<std::size_t> targets;
    std::vector<Int> factors;
    for (std::size_t t = 1; t < cols; ++t) {
        targets.push_back(t);
        factors.push_back(Int(d(rng)));
    }
    for (auto _ : state) {
        state.PauseTiming();
        auto columns = base;
        state.ResumeTiming();
        kernel(columns, 0, targets, factors, moduli, 0);
        benchmark::DoNotOptimize(columns.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(rows * (cols - 1)));
}

void BM_coboundary_serial(benchmark::State& s) { coboundary_bench(s, kernels::serial::coboundary); }
void BM_coboundary_omp(benchmark::State& s) { coboundary_bench(s, kernels::omp::coboundary); }
void BM_cup_serial(benchmark::State& s) { cup_bench(s, kernels::serial::cup); }
void BM_cup_omp(benchmark::State& s) { cup_bench(s, kernels::omp::cup); }
void BM_reduce_serial(benchmark::State& s) { reduce_bench(s, kernels::serial::reduce_columns); }
void BM_reduce_omp(benchmark::State& s) { reduce_bench(s, kernels::omp::reduce_columns); }

}  // namespace

BENCHMARK(BM_coboundary_serial)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_coboundary_omp)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_cup_serial)->Args({1, 1})->Args({2, 2})->Args({2, 3})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_cup_omp)->Args({1, 1})->Args({2, 2})->Args({2, 3})->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_reduce_serial)->Args({256, 256})->Args({2048, 512})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_reduce_omp)->Args({256, 256})->Args({2048, 512})->Unit(benchmark::kMicrosecond)->UseRealTime();

BENCHMARK_MAIN();

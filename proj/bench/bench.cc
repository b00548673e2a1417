/* vim: set sw=4 sts=4 et foldmethod=syntax : */

// Parallel kernels against their serial references.

#include <hkernel/hwalk.hh>
#include <hkernel/search.hh>

#include <benchmark/benchmark.h>

#include <random>

using namespace hkernel;

namespace
{
    auto random_instance(int n, int k, double density) -> ColouredInstance
    {
        std::mt19937_64 rng(n * 31 + k);
        std::bernoulli_distribution arc(density);
        std::uniform_int_distribution<int> colour(0, k - 1);
        ColouredInstance inst(n, k);
        for (int u = 0 ; u < n ; ++u)
            for (int v = 0 ; v < n ; ++v)
                if (u != v && arc(rng))
                    inst.add_arc(u, v, colour(rng));
        return inst;
    }

    auto path_pattern(int k) -> Pattern
    {
        Digraph d(k);
        for (int c = 0 ; c < k ; ++c) {
            d.add_arc(c, c);
            if (c + 1 < k)
                d.add_arc(c, c + 1);
        }
        return Pattern{ d };
    }

    auto two_k1() -> Pattern
    {
        Digraph d(2);
        d.add_arc(0, 0);
        d.add_arc(1, 1);
        return Pattern{ d };
    }

    template <auto reach>
    auto bm_reach(benchmark::State & state) -> void
    {
        int n = int(state.range(0));
        auto inst = random_instance(n, 4, 4.0 / n);
        auto h = path_pattern(4);
        for (auto _ : state)
            benchmark::DoNotOptimize(reach(inst, h));
    }

    template <auto falsifier>
    auto bm_falsify(benchmark::State & state) -> void
    {
        SearchBounds bounds;
        bounds.max_vertices = int(state.range(0));
        auto h = two_k1();
        for (auto _ : state)
            benchmark::DoNotOptimize(falsifier(h, bounds));
    }
}

BENCHMARK(bm_reach<h_reach>)->Arg(8)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_reach<h_reach_reference>)->Arg(8)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_falsify<falsify>)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_falsify<falsify_serial>)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

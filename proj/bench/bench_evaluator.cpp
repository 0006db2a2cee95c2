// Compares the serial reference batch evaluator against the OpenMP one on a
// synthetic market and checks that their outputs are bitwise identical.

#include <omp.h>

#include <chrono>
#include <cstdio>

#include "parden/backtest/backtest.hpp"
#include "parden/common/rng.hpp"
#include "parden/search/operators.hpp"

using namespace parden;

int main(int argc, char** argv) {
    const int batch_size = argc > 1 ? std::atoi(argv[1]) : 60;
    const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;

    const auto spec = market::SyntheticMarketSpec::randomized(5, 1260, 7);
    const auto data = market::generate_synthetic(spec);
    const backtest::BacktestEvaluator evaluator(data, backtest::BacktestConfig{});

    Rng rng(42);
    auto batch = search::latin_hypercube(rng, batch_size, SearchSpace::kDims);

    const auto time_ms = [](auto&& fn) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    };

    std::vector<backtest::BacktestResult> serial, parallel;
    double serial_ms = 0.0, parallel_ms = 0.0;
    for (int r = 0; r < repeats; ++r) {
        serial_ms += time_ms([&] { serial = evaluator.evaluate_batch_encoded_serial(batch); });
        parallel_ms += time_ms([&] { parallel = evaluator.evaluate_batch_encoded(batch, 0); });
    }
    serial_ms /= repeats;
    parallel_ms /= repeats;

    bool identical = serial.size() == parallel.size();
    for (std::size_t i = 0; identical && i < serial.size(); ++i)
        identical = serial[i].objectives == parallel[i].objectives;

    std::printf("batch=%d threads=%d repeats=%d\n", batch_size, omp_get_max_threads(), repeats);
    std::printf("%-22s %10.1f ms\n", "serial reference", serial_ms);
    std::printf("%-22s %10.1f ms\n", "openmp batch", parallel_ms);
    std::printf("%-22s %10.2fx\n", "speedup", serial_ms / parallel_ms);
    std::printf("bitwise identical: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}

// Serial reference kernel vs. OpenMP kernel on the same workload.
//
//   bench_mc [paths] [workers]

#include <chrono>
#include <cstdlib>
#include <iostream>

#include "levyfp/exponents.hpp"
#include "levyfp/simulation.hpp"

int main(int argc, char** argv)
{
    using namespace levyfp;
    namespace chrono = std::chrono;

    const std::int64_t paths = argc > 1 ? std::atoll(argv[1]) : 200000;
    const int workers = argc > 2 ? std::atoi(argv[2]) : 0;

    struct Case {
        const char* name;
        LevyModel model;
        double x;
        double t;
    };
    const Case cases[] = {
        {"brownian x=2 t=1 (plain)", LevyModel::brownian(-1.0, 1.0), 2.0, 1.0},
        {"brownian x=20 t=10 (tilted)", tilt(LevyModel::brownian(-1.0, 1.0), 3.0), 20.0, 10.0},
        {"cramer_lundberg x=30 t=10 (tilted)",
         tilt(LevyModel::cramer_lundberg(1.0, 1.0, 2.0), inverse_psi_prime(LevyModel::cramer_lundberg(1.0, 1.0, 2.0), 3.0)),
         30.0, 10.0},
    };

    const PathSettings settings{0.01, true};
    for (const auto& c : cases) {
        auto t0 = chrono::steady_clock::now();
        const auto serial = simulate_paths_serial(c.model, c.x, c.t, settings, paths, 7);
        auto t1 = chrono::steady_clock::now();
        const auto parallel = simulate_paths_parallel(c.model, c.x, c.t, settings, paths, 7, workers);
        auto t2 = chrono::steady_clock::now();

        bool same = serial.size() == parallel.size();
        for (std::size_t i = 0; same && i < serial.size(); ++i)
            same = serial[i].hit == parallel[i].hit && serial[i].tau == parallel[i].tau &&
                   serial[i].position == parallel[i].position;

        const auto ms_serial = chrono::duration_cast<chrono::milliseconds>(t1 - t0).count();
        const auto ms_parallel = chrono::duration_cast<chrono::milliseconds>(t2 - t1).count();
        std::cout << c.name << "\n  serial   " << ms_serial << " ms\n  openmp   " << ms_parallel
                  << " ms\n  speedup  " << (ms_parallel > 0 ? double(ms_serial) / double(ms_parallel) : 0.0)
                  << "\n  identical " << (same ? "yes" : "NO") << '\n';
    }
}

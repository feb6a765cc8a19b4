// Times the OpenMP-parallel recognizer against the serial reference on
// multi-atom instances, plus a batch sweep where parallelism is per-graph.
#include <chrono>
#include <cstdio>
#include <vector>

#include "pef/oracle.hpp"
#include "pef/recognizer.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace pef;
namespace orc = pef::oracle;

namespace {

double time_recognize(const Graph& g, bool parallel, int reps) {
    double best = 1e99;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        Verdict v = recognize(g, RecognizeOptions{parallel});
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                        .count();
        if (!v.free()) std::fprintf(stderr, "unexpected forbidden instance\n");
        best = std::min(best, ms);
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    int reps = argc > 1 ? std::atoi(argv[1]) : 3;
#ifdef _OPENMP
    std::printf("threads available: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP: both columns run the serial path\n");
#endif
    std::printf("%-34s %10s %10s %9s\n", "instance", "serial ms", "parallel", "speedup");
    struct Config {
        const char* name;
        int target_n, atoms, max_bag;
        uint64_t seed;
    };
    for (const Config& cfg : std::vector<Config>{
             {"free graph n~500, 8 atoms", 500, 8, 6, 11},
             {"free graph n~1500, 16 atoms", 1500, 16, 6, 12},
             {"free graph n~3000, 24 atoms", 3000, 24, 6, 13},
             {"free graph n~3000, 48 atoms", 3000, 48, 5, 14},
         }) {
        orc::GeneratorSpec spec;
        spec.target_n = cfg.target_n;
        spec.max_atoms = cfg.atoms;
        spec.max_bag = cfg.max_bag;
        spec.seed = cfg.seed;
        Graph g = orc::gen_free_graph(spec);
        double serial = time_recognize(g, false, reps);
        double parallel = time_recognize(g, true, reps);
        char label[64];
        std::snprintf(label, sizeof label, "%s (n=%d m=%d)", cfg.name, g.vertex_count(),
                      g.edge_count());
        std::printf("%-34s %10.2f %10.2f %8.2fx\n", label, serial, parallel, serial / parallel);
    }
    // batch sweep: recognize many small graphs, outer loop parallel
    {
        std::vector<Graph> batch;
        for (uint64_t seed = 0; seed < 2000; ++seed) {
            orc::GeneratorSpec spec;
            spec.target_n = 40;
            spec.max_atoms = 4;
            spec.max_bag = 4;
            spec.seed = seed;
            batch.push_back(orc::gen_free_graph(spec));
        }
        auto run = [&](bool parallel) {
            auto t0 = std::chrono::steady_clock::now();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
#endif
            for (size_t i = 0; i < batch.size(); ++i)
                recognize(batch[i], RecognizeOptions{false});
            return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        };
        double serial = run(false), parallel = run(true);
        std::printf("%-34s %10.2f %10.2f %8.2fx\n", "batch of 2000 graphs (n~40)", serial, parallel,
                    serial / parallel);
    }
    return 0;
}

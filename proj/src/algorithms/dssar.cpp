#include "spp/algorithms.hpp"

namespace spp {

DssarTrace dssar_trace(const Instance& inst) {
    const auto& utilities = inst.utility().utilities;
    const int L = inst.num_cells();
    const int real = inst.num_real_channels();
    const auto& graph = inst.constraints();

    RealMatrix work = utilities;
    DssarTrace trace{Matching::all_virtual(inst), {}, 0};

    for (int iteration = 0; iteration < L; ++iteration) {
        ++trace.iterations;
        int best_cell = 0;
        int best_channel = 0;
        double best = work(0, 0);
        for (int l = 0; l < L; ++l) {
            for (int s = 0; s < real; ++s) {
                if (work(l, s) > best) {
                    best = work(l, s);
                    best_cell = l;
                    best_channel = s;
                }
            }
        }
        if (!(best > 0.0)) break;

        trace.matching[best_cell] = best_channel;
        trace.assignments.emplace_back(best_cell, best_channel);
        for (int s = 0; s < real; ++s) work(best_cell, s) = 0.0;
        for (int neighbor : graph.neighbors(best_cell)) work(neighbor, best_channel) = 0.0;
    }
    return trace;
}

Matching dssar(const Instance& inst) { return dssar_trace(inst).matching; }

}  // namespace spp

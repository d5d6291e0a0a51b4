#include "spp/metrics.hpp"

#include <algorithm>

namespace spp {

namespace {

std::int64_t s_welfare_int(const Instance& inst, const Matching& m) {
    const auto& r = inst.ranking();
    const int L = inst.num_cells();
    std::int64_t total = 0;
    for (int l = 0; l < L; ++l) {
        if (m[l] != inst.virtual_channel()) total += L - r.channel_ranks(l, m[l]) + 1;
    }
    return total;
}

std::int64_t l_welfare_int(const Instance& inst, const Matching& m) {
    const auto& r = inst.ranking();
    const int S = inst.num_channels();
    std::int64_t total = 0;
    for (int l = 0; l < inst.num_cells(); ++l) {
        if (m[l] != inst.virtual_channel()) total += S - r.cell_ranks(l, m[l]);
    }
    return total;
}

}  // namespace

double s_welfare(const Instance& inst, const Matching& matching) {
    matching.validate(inst);
    return static_cast<double>(s_welfare_int(inst, matching));
}

double l_welfare(const Instance& inst, const Matching& matching) {
    matching.validate(inst);
    return static_cast<double>(l_welfare_int(inst, matching));
}

NormalizedWelfare normalize(double s_raw, double l_raw, const Instance& inst) {
    const double L = inst.num_cells();
    const double real_channels = inst.num_real_channels();
    NormalizedWelfare n{};
    n.s_norm = std::clamp(s_raw / (L * L), 0.0, 1.0);
    n.l_norm = std::clamp(l_raw / (L * real_channels), 0.0, 1.0);
    n.total = (n.s_norm + n.l_norm) / 2.0;
    return n;
}

double sum_rate(const Instance& inst, const Matching& matching) {
    matching.validate(inst);
    const auto& u = inst.utility().utilities;
    double total = 0.0;
    for (int l = 0; l < inst.num_cells(); ++l) total += u(l, matching[l]);
    return total;
}

int matched_count(const Instance& inst, const Matching& matching) {
    return static_cast<int>(std::count_if(matching.assignment.begin(), matching.assignment.end(),
                                          [&](int s) { return s != inst.virtual_channel(); }));
}

WelfareReport welfare_report(const Instance& inst, const Matching& matching) {
    WelfareReport r;
    r.matched_count = matched_count(inst, matching);
    if (inst.has_ranking()) {
        r.s_welfare_raw = s_welfare(inst, matching);
        r.l_welfare_raw = l_welfare(inst, matching);
        const auto n = normalize(r.s_welfare_raw, r.l_welfare_raw, inst);
        r.s_welfare_norm = n.s_norm;
        r.l_welfare_norm = n.l_norm;
        r.total_welfare_norm = n.total;
    } else {
        r.sum_rate = sum_rate(inst, matching);
    }
    return r;
}

double objective(const Instance& inst, const Matching& matching) {
    if (inst.has_ranking()) {
        return normalize(s_welfare(inst, matching), l_welfare(inst, matching), inst).total;
    }
    return sum_rate(inst, matching);
}

std::int64_t ranking_welfare_key(const Instance& inst, const Matching& matching) {
    return s_welfare_int(inst, matching) * inst.num_real_channels() +
           l_welfare_int(inst, matching) * inst.num_cells();
}

}  // namespace spp

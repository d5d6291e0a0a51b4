#include "spp/csma_sim.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "spp/instance_io.hpp"

namespace spp {

const char* to_string(SimMode mode) {
    switch (mode) {
        case SimMode::carrier_sense: return "csma";
        case SimMode::control_messages: return "messages";
    }
    return "?";
}

const char* to_string(SimEventKind kind) {
    switch (kind) {
        case SimEventKind::transmit: return "transmit";
        case SimEventKind::sense_busy: return "sense-busy";
        case SimEventKind::control_message: return "control-message";
    }
    return "?";
}

double backoff(double utility) {
    if (!(utility > 0.0)) throw std::invalid_argument("backoff needs a positive utility");
    return 1.0 / utility;
}

std::vector<std::pair<int, int>> SimTrace::transmit_order() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& e : events) {
        if (e.kind == SimEventKind::transmit) out.emplace_back(e.cell, e.channel);
    }
    return out;
}

namespace {

// Queue entries order by time; at equal times control messages run first,
// then cell and channel index.
struct Pending {
    double time;
    int priority;
    int cell;
    int channel;

    bool operator>(const Pending& o) const {
        return std::tie(time, priority, cell, channel) >
               std::tie(o.time, o.priority, o.cell, o.channel);
    }
};

constexpr int kMessagePriority = 0;
constexpr int kTransmitPriority = 1;

void require_distinct(const Instance& inst) {
    const auto& u = inst.utility().utilities;
    std::vector<double> values;
    for (int l = 0; l < inst.num_cells(); ++l) {
        for (int s = 0; s < inst.num_real_channels(); ++s) values.push_back(u(l, s));
    }
    std::sort(values.begin(), values.end());
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] == values[i - 1] || backoff(values[i]) == backoff(values[i - 1])) {
            throw std::invalid_argument(
                "carrier-sense simulation needs pairwise distinct utilities (duplicate " +
                format_real(values[i]) + ")");
        }
    }
}

}  // namespace

SimTrace simulate_csma(const Instance& inst, SimMode mode) {
    const auto& u = inst.utility().utilities;
    if (mode == SimMode::carrier_sense) require_distinct(inst);

    const int L = inst.num_cells();
    const int real = inst.num_real_channels();
    const auto& graph = inst.constraints();

    std::priority_queue<Pending, std::vector<Pending>, std::greater<>> queue;
    for (int l = 0; l < L; ++l) {
        for (int s = 0; s < real; ++s) queue.push({backoff(u(l, s)), kTransmitPriority, l, s});
    }

    std::vector<char> assigned(L, 0);
    std::vector<char> blocked(static_cast<std::size_t>(L) * real, 0);
    auto is_blocked = [&](int l, int s) -> char& {
        return blocked[static_cast<std::size_t>(l) * real + s];
    };

    SimTrace trace{{}, Matching::all_virtual(inst)};

    // Neighbours of `cell` stop contending for `channel`.
    auto silence_neighbors = [&](double time, int cell, int channel, bool record) {
        for (int n : graph.neighbors(cell)) {
            if (assigned[n] || is_blocked(n, channel)) continue;
            is_blocked(n, channel) = 1;
            if (record) trace.events.push_back({time, SimEventKind::sense_busy, n, channel});
        }
    };

    while (!queue.empty()) {
        const Pending ev = queue.top();
        queue.pop();
        if (ev.priority == kMessagePriority) {
            trace.events.push_back({ev.time, SimEventKind::control_message, ev.cell, ev.channel});
            silence_neighbors(ev.time, ev.cell, ev.channel, false);
            continue;
        }
        if (assigned[ev.cell] || is_blocked(ev.cell, ev.channel)) continue;

        assigned[ev.cell] = 1;
        trace.final_matching[ev.cell] = ev.channel;
        trace.events.push_back({ev.time, SimEventKind::transmit, ev.cell, ev.channel});
        if (mode == SimMode::carrier_sense) {
            silence_neighbors(ev.time, ev.cell, ev.channel, true);
        } else {
            queue.push({ev.time, kMessagePriority, ev.cell, ev.channel});
        }
    }
    return trace;
}

std::string trace_to_csv(const SimTrace& trace) {
    std::string out = "time,kind,cell,channel\n";
    for (const auto& e : trace.events) {
        out += format_real(e.time);
        out += ',';
        out += to_string(e.kind);
        out += ',' + std::to_string(e.cell + 1) + ',' + std::to_string(e.channel + 1) + '\n';
    }
    return out;
}

}  // namespace spp

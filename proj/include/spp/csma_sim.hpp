// Discrete-event simulation of the two distributed realisations of the greedy
// utility algorithm: opportunistic CSMA with utility-driven backoff, and
// explicit local control messages.
//
// Idealised model: zero propagation delay, perfect sensing, no collisions,
// control messages delivered with zero delay (processed before any other
// transmission scheduled for the same instant).

#pragma once

#include <string>
#include <vector>

#include "spp/core.hpp"

namespace spp {

enum class SimMode { carrier_sense, control_messages };
enum class SimEventKind { transmit, sense_busy, control_message };

const char* to_string(SimMode mode);
const char* to_string(SimEventKind kind);

/// Backoff time for a positive utility: 1/u. Throws std::invalid_argument
/// for u <= 0.
double backoff(double utility);

struct SimEvent {
    double time;
    SimEventKind kind;
    int cell;
    int channel;
};

struct SimTrace {
    std::vector<SimEvent> events;
    Matching final_matching;

    /// (cell, channel) of the transmit events in order.
    std::vector<std::pair<int, int>> transmit_order() const;
};

/// Throws std::invalid_argument for ranking instances, and in carrier_sense
/// mode when two real-channel utilities coincide.
SimTrace simulate_csma(const Instance& inst, SimMode mode);

/// CSV rows "time,kind,cell,channel" (1-based indices) with a header line.
std::string trace_to_csv(const SimTrace& trace);

}  // namespace spp

#include <string>

#include "spp/harness.hpp"
#include "spp/instance_io.hpp"

namespace spp {

std::string describe_verdict(const StabilityReport& report) {
    if (report.conflict) {
        const auto& c = *report.conflict;
        return "not harmonious: cells " + std::to_string(c.cell_a + 1) + " and " +
               std::to_string(c.cell_b + 1) + " conflict on channel " +
               std::to_string(c.channel + 1);
    }
    if (report.blocking) {
        return "blocking pair: cell " + std::to_string(report.blocking->cell + 1) +
               " and channel " + std::to_string(report.blocking->channel + 1);
    }
    return report.stable ? "stable" : "unstable";
}

VerifyReport verify_matching(const Instance& inst, const Matching& matching) {
    VerifyReport out;
    try {
        matching.validate(inst);
    } catch (const ValidationError& e) {
        out.text = std::string("admissible: no (") + e.what() + ")\nharmonious: no\nstable: no\n";
        return out;
    }
    out.admissible = true;
    const StabilityReport report = check_stability(inst, matching);
    out.harmonious = report.harmonious;
    out.stable = report.stable;
    out.text = "admissible: yes\n";
    out.text += report.harmonious ? "harmonious: yes\n"
                                  : "harmonious: no (" + describe_verdict(report) + ")\n";
    if (report.stable) {
        out.text += "stable: yes\n";
    } else if (!report.harmonious) {
        out.text += "stable: no (not harmonious)\n";
    } else {
        out.text += "stable: no (" + describe_verdict(report) + ")\n";
    }
    return out;
}

VerifyReport verify_files(const std::filesystem::path& instance_path,
                          const std::filesystem::path& matching_path) {
    const Instance inst = load_instance(instance_path);
    return verify_matching(inst, load_matching(matching_path, inst));
}

}  // namespace spp

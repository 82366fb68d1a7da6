#include "pdef/sensing.hpp"

#include <algorithm>
#include <stdexcept>

namespace pdef {

ObservationSet observe(const DefenderState& defender, const WorldState& world,
                       double sensing_radius) {
    if (!(sensing_radius > 0.0)) throw std::invalid_argument("sensing radius must be positive");
    ObservationSet out{defender.id, {}, world.time, sensing_radius};
    for (const IntruderState& in : world.intruders) {
        if (in.status != IntruderStatus::active) continue;
        if (distance(in.position, defender.position) <= sensing_radius) {
            out.observed_intruder_ids.push_back(in.id);
        }
    }
    std::sort(out.observed_intruder_ids.begin(), out.observed_intruder_ids.end());
    return out;
}

std::vector<ObservationSet> observe_all(const WorldState& world, double sensing_radius) {
    std::vector<ObservationSet> out;
    out.reserve(world.defenders.size());
    for (const DefenderState& d : world.defenders) out.push_back(observe(d, world, sensing_radius));
    return out;
}

}  // namespace pdef

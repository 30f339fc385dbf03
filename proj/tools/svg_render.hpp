#pragma once

#include <optional>
#include <string>

#include "mvca.h"

namespace cli {

// Static scene plot for one simulated trace: per-vehicle trajectories, start
// markers, goals, the snapshot poses with their danger circles, and for every
// avoidance pair active at the snapshot the value-function level sets at 0
// (solid) and at conflict_threshold (dashed), transformed into the world
// frame of the avoiding vehicle.  snapshot_time picks the record closest to
// that time; by default the record with the most active assignments (earliest
// on ties) is shown.
std::string render_scene(const mvca_field* field, const mvca_trace* trace,
                         double conflict_threshold,
                         std::optional<double> snapshot_time);

}  // namespace cli

#ifndef RELAYLAB_TRIP_HPP
#define RELAYLAB_TRIP_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "relaylab/estimators.hpp"
#include "relaylab/signals.hpp"

namespace relaylab {

/// Axis-aligned zone-one rectangle in the R-L plane, boundary included.
struct RectZone {
    double r_min = 0.0;
    double r_max = 1.0;
    double l_min = 0.0;
    double l_max = 1.0;

    void validate() const;
    bool contains(double r, double l) const {
        return r >= r_min && r <= r_max && l >= l_min && l <= l_max;
    }
};

/// Convex polygon in the R-L plane, boundary included. Vertices may be
/// given in either winding order; they are normalized to counter-clockwise.
class PolygonZone {
public:
    explicit PolygonZone(std::vector<std::array<double, 2>> vertices);
    const std::vector<std::array<double, 2>>& vertices() const {
        return vertices_;
    }
    bool contains(double r, double l) const;

private:
    std::vector<std::array<double, 2>> vertices_;
};

class ZoneCharacteristic {
public:
    ZoneCharacteristic() : shape_(RectZone{}) {}
    ZoneCharacteristic(RectZone rect);        // NOLINT: implicit by design
    ZoneCharacteristic(PolygonZone polygon);  // NOLINT

    bool contains(double r, double l) const;

private:
    std::variant<RectZone, PolygonZone> shape_;
};

/// True iff the estimate is valid and lies inside (or on the boundary of)
/// the zone. Invalid estimates are always outside.
bool zone_contains(const ZoneCharacteristic& zone, const RLEstimate& est);

/// Saturating trip counter: in-zone estimates count up toward the
/// threshold, out-of-zone estimates count down toward zero.
struct CounterState {
    int count = 0;
    int threshold = 4;
};

CounterState counter_step(CounterState state, bool inside);

struct TripEvent {
    std::size_t sample_index = 0; ///< last sample consumed when the counter hit threshold
    double time = 0.0;            ///< seconds
};

/// Counter trace over a boolean in-zone sequence, plus the index of the
/// first element at which the counter reached the threshold.
struct CounterScan {
    std::vector<int> trace;
    std::optional<std::size_t> trip_index;
};

CounterScan scan_counter(const std::vector<bool>& inside, int threshold);

struct RelayResult {
    std::optional<TripEvent> trip;
    std::vector<int> counter_trace; ///< one entry per estimate window
    EstimateSeries estimates;
};

/// Slides the three-sample estimator one sample at a time and feeds the
/// counting scheme. The trace is always returned, trip or no trip.
RelayResult run_relay(const SampledSignal& v, const SampledSignal& i,
                      const ZoneCharacteristic& zone, int threshold = 4);

} // namespace relaylab

#endif

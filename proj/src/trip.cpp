#include "relaylab/trip.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace relaylab {

void RectZone::validate() const {
    if (!(r_min < r_max) || !(l_min < l_max))
        throw std::invalid_argument("zone: rectangle bounds must satisfy min < max");
}

namespace {

double cross(const std::array<double, 2>& a, const std::array<double, 2>& b,
             const std::array<double, 2>& c) {
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

} // namespace

PolygonZone::PolygonZone(std::vector<std::array<double, 2>> vertices)
    : vertices_(std::move(vertices)) {
    if (vertices_.size() < 3)
        throw std::invalid_argument("zone: polygon needs at least 3 vertices");
    for (const auto& v : vertices_)
        if (!std::isfinite(v[0]) || !std::isfinite(v[1]))
            throw std::invalid_argument("zone: polygon vertices must be finite");

    double area2 = 0.0;
    for (std::size_t j = 0; j < vertices_.size(); ++j) {
        const auto& a = vertices_[j];
        const auto& b = vertices_[(j + 1) % vertices_.size()];
        area2 += a[0] * b[1] - b[0] * a[1];
    }
    if (area2 == 0.0)
        throw std::invalid_argument("zone: polygon is degenerate");
    if (area2 < 0.0) std::reverse(vertices_.begin(), vertices_.end());

    for (std::size_t j = 0; j < vertices_.size(); ++j) {
        const auto& a = vertices_[j];
        const auto& b = vertices_[(j + 1) % vertices_.size()];
        const auto& c = vertices_[(j + 2) % vertices_.size()];
        if (cross(a, b, c) < 0.0)
            throw std::invalid_argument("zone: polygon must be convex");
    }
}

bool PolygonZone::contains(double r, double l) const {
    const std::array<double, 2> p{r, l};
    for (std::size_t j = 0; j < vertices_.size(); ++j) {
        const auto& a = vertices_[j];
        const auto& b = vertices_[(j + 1) % vertices_.size()];
        if (cross(a, b, p) < 0.0) return false;
    }
    return true;
}

ZoneCharacteristic::ZoneCharacteristic(RectZone rect) : shape_(rect) {
    rect.validate();
}

ZoneCharacteristic::ZoneCharacteristic(PolygonZone polygon)
    : shape_(std::move(polygon)) {}

bool ZoneCharacteristic::contains(double r, double l) const {
    return std::visit([&](const auto& shape) { return shape.contains(r, l); },
                      shape_);
}

bool zone_contains(const ZoneCharacteristic& zone, const RLEstimate& est) {
    return est.valid && zone.contains(est.R, est.L);
}

CounterState counter_step(CounterState state, bool inside) {
    if (inside)
        state.count = std::min(state.count + 1, state.threshold);
    else
        state.count = std::max(state.count - 1, 0);
    return state;
}

CounterScan scan_counter(const std::vector<bool>& inside, int threshold) {
    if (threshold < 1)
        throw std::invalid_argument("counter: threshold must be >= 1");
    CounterScan scan;
    scan.trace.reserve(inside.size());
    CounterState state{0, threshold};
    for (std::size_t j = 0; j < inside.size(); ++j) {
        state = counter_step(state, inside[j]);
        scan.trace.push_back(state.count);
        if (!scan.trip_index && state.count >= threshold) scan.trip_index = j;
    }
    return scan;
}

RelayResult run_relay(const SampledSignal& v, const SampledSignal& i,
                      const ZoneCharacteristic& zone, int threshold) {
    if (i.size() < 3)
        throw std::invalid_argument("run_relay: need at least 3 samples");

    RelayResult result;
    result.estimates = estimate_series(v, i);
    std::vector<bool> inside(result.estimates.size());
    for (std::size_t j = 0; j < inside.size(); ++j)
        inside[j] = zone_contains(zone, result.estimates[j]);

    CounterScan scan = scan_counter(inside, threshold);
    result.counter_trace = std::move(scan.trace);
    if (scan.trip_index) {
        const std::size_t last_sample = result.estimates[*scan.trip_index].k + 2;
        result.trip = TripEvent{last_sample, i.time_at(last_sample)};
    }
    return result;
}

} // namespace relaylab

// SPDX-License-Identifier: Apache-2.0

#include "nightsched/merit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace nightsched {

int time_fitness_interval(Instant now, std::optional<Instant> last_obs_start, Seconds t_var)
{
    if (!last_obs_start) {
        return 1;
    }
    return now - *last_obs_start >= t_var / 2.0 ? 1 : 0;
}

int time_fitness_periodic(Instant t, Instant epoch, Seconds period, Seconds phase_start, Seconds phase_end)
{
    // Phase in [0, period); the window may end exactly at the period, where
    // phase 0 of the next cycle is also inside.
    double phase = std::fmod(t - epoch, period);
    if (phase < 0) {
        phase += period;
    }
    if (phase >= phase_start && phase <= phase_end) {
        return 1;
    }
    return (phase_end >= period && phase + period <= phase_end && phase + period >= phase_start) ? 1 : 0;
}

int time_fitness_special(Instant t, const std::vector<TimeWindow>& windows)
{
    if (windows.empty()) {
        return 1;
    }
    return std::any_of(windows.begin(), windows.end(), [t](const TimeWindow& w) { return w.contains(t); }) ? 1 : 0;
}

namespace {

bool moon_constraint_holds(const MoonConstraint& constraint, const Site& site, const EquatorialCoord& target,
                           const MoonState& moon, Instant t)
{
    return std::visit(
        [&](const auto& c) -> bool {
            using C = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<C, MoonAltitudeLimit>) {
                return altitude(site, moon.coord, t) <= c.max_altitude;
            } else if constexpr (std::is_same_v<C, MoonPhaseAltitudeLimit>) {
                const bool in_phase = moon.phase >= c.phase_from && moon.phase <= c.phase_to;
                return !(in_phase && altitude(site, moon.coord, t) > c.max_altitude);
            } else {
                return angular_distance(target, moon.coord) >= c.min_distance && moon.phase >= c.min_phase;
            }
        },
        constraint);
}

}  // namespace

int moon_fitness(const ProblemInstance& instance, const Ticket& ticket, Instant start, Instant end)
{
    if (ticket.moon_constraints.empty()) {
        return 1;
    }
    if (!instance.moon) {
        throw RangeError("ticket '" + ticket.id + "' declares moon constraints but the instance has no moon table");
    }
    const auto& coord = instance.targets.at(ticket.target).coord;
    auto holds_at = [&](Instant t) {
        const MoonState moon = moon_state(*instance.moon, t);
        return std::all_of(ticket.moon_constraints.begin(), ticket.moon_constraints.end(),
                           [&](const MoonConstraint& c) { return moon_constraint_holds(c, instance.site, coord, moon, t); });
    };
    for (Instant t = start; t < end; t += kMoonSampleStep) {
        if (!holds_at(t)) {
            return 0;
        }
    }
    return holds_at(end) ? 1 : 0;
}

int moon_fitness(const ProblemInstance& instance, const Schedule& schedule, std::size_t k)
{
    const EntrySpan span = entry_span(instance, schedule, k);
    return moon_fitness(instance, instance.ticket(schedule.entries[k].ticket), span.start, span.end);
}

double height_fitness(const Target& target, Degrees h, const AltitudeRange& night_extremes)
{
    if (h <= target.min_altitude) {
        return 0.0;
    }
    const double floor = std::max(night_extremes.min, target.min_altitude);
    const double range = night_extremes.max - floor;
    if (range <= 0.0) {
        return h >= night_extremes.max ? 1.0 : 0.0;
    }
    return std::clamp((h - floor) / range, 0.0, 1.0);
}

double schedule_fitness_midpoint(const ProblemInstance& instance, const Schedule& schedule, const EntryFitness& f)
{
    if (schedule.empty()) {
        return 0.0;
    }
    const auto spans = entry_spans(instance, schedule);
    double sum = 0;
    for (std::size_t k = 0; k < spans.size(); ++k) {
        sum += f(schedule.entries[k], spans[k].midpoint);
    }
    return sum / static_cast<double>(spans.size());
}

double schedule_fitness_min(const ProblemInstance& instance, const Schedule& schedule, const EntryFitness& f,
                            Seconds step)
{
    if (!(step > 0)) {
        throw std::invalid_argument("sampling step must be > 0");
    }
    if (schedule.empty()) {
        return 0.0;
    }
    const auto spans = entry_spans(instance, schedule);
    double sum = 0;
    for (std::size_t k = 0; k < spans.size(); ++k) {
        const auto& entry = schedule.entries[k];
        const Instant from = spans[k].start + spans[k].slew;
        const Instant to = from + entry.loops * instance.target_of(entry.ticket).sequence.open_time;
        double lowest = f(entry, to);
        for (Instant t = from; t < to; t += step) {
            lowest = std::min(lowest, f(entry, t));
        }
        sum += lowest;
    }
    return sum / static_cast<double>(spans.size());
}

double altitude_merit(const ProblemInstance& instance, const Schedule& schedule)
{
    return schedule_fitness_midpoint(instance, schedule, [&](const ObservationEntry& entry, Instant t) {
        const Target& target = instance.target_of(entry.ticket);
        const AltitudeRange extremes = night_altitude_extremes(instance.site, target.coord, instance.night);
        return height_fitness(target, altitude(instance.site, target.coord, t), extremes);
    });
}

double distance_merit(const ProblemInstance& instance, const Schedule& schedule)
{
    double sum = 0;
    for (std::size_t k = 1; k < schedule.size(); ++k) {
        sum += angular_distance(instance.target_of(schedule.entries[k - 1].ticket).coord,
                                instance.target_of(schedule.entries[k].ticket).coord);
    }
    return sum;
}

double account_merit(const ProblemInstance& instance, const Schedule& schedule)
{
    const AccountUsage usage = account_usage(instance, schedule);
    double deviation = 0;
    for (std::size_t a = 0; a < instance.accounts.size(); ++a) {
        const double requested = instance.accounts[a].share;
        deviation += std::abs(usage.fractions[a] - requested) / requested;
    }
    return deviation;
}

int target_diversity(const ProblemInstance& instance, const Schedule& schedule)
{
    std::set<std::size_t> seen;
    for (const auto& entry : schedule.entries) {
        seen.insert(instance.ticket(entry.ticket).target);
    }
    return static_cast<int>(seen.size());
}

int observation_diversity(const Schedule& schedule)
{
    return static_cast<int>(schedule.size());
}

ObjectiveVector objective_vector(const ProblemInstance& instance, const Schedule& schedule)
{
    ObjectiveVector v;
    v.altitude = altitude_merit(instance, schedule);
    // 0.0 - x keeps a zero merit from turning into -0.
    v.distance_neg = 0.0 - distance_merit(instance, schedule);
    v.account_neg = 0.0 - account_merit(instance, schedule);
    v.target_diversity = target_diversity(instance, schedule);
    v.observation_diversity = observation_diversity(schedule);
    return v;
}

}  // namespace nightsched

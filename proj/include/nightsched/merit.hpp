// SPDX-License-Identifier: Apache-2.0
//
// Fitness and merit functions. Time fitness functions are binary; the five
// schedule merits form the objective vector the optimizer maximizes.

#pragma once

#include <array>
#include <functional>
#include <optional>

#include "nightsched/model.hpp"

namespace nightsched {

inline constexpr std::size_t kObjectiveCount = 5;

/// Objectives in maximization orientation; minimized merits are stored negated.
struct ObjectiveVector {
    double altitude{0};
    double distance_neg{0};
    double account_neg{0};
    double target_diversity{0};
    double observation_diversity{0};

    [[nodiscard]] std::array<double, kObjectiveCount> components() const
    {
        return {altitude, distance_neg, account_neg, target_diversity, observation_diversity};
    }
    [[nodiscard]] double operator[](std::size_t i) const { return components()[i]; }

    friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
};

int time_fitness_interval(Instant now, std::optional<Instant> last_obs_start, Seconds t_var);

int time_fitness_periodic(Instant t, Instant epoch, Seconds period, Seconds phase_start, Seconds phase_end);

int time_fitness_special(Instant t, const std::vector<TimeWindow>& windows);

/// Moon fitness of a ticket observed over [start, end], sampled at both ends
/// and every kMoonSampleStep in between. Returns 1 when the ticket declares no
/// constraints.
inline constexpr Seconds kMoonSampleStep = 300.0;
int moon_fitness(const ProblemInstance& instance, const Ticket& ticket, Instant start, Instant end);

/// Moon fitness of entry k of a schedule.
int moon_fitness(const ProblemInstance& instance, const Schedule& schedule, std::size_t k);

/// Height fitness for altitude h given the target's altitude extremes over the night.
double height_fitness(const Target& target, Degrees h, const AltitudeRange& night_extremes);

/// Per-entry fitness evaluated at an instant.
using EntryFitness = std::function<double(const ObservationEntry&, Instant)>;

/// Mean of f at each entry's midpoint; 0 for an empty schedule.
double schedule_fitness_midpoint(const ProblemInstance& instance, const Schedule& schedule, const EntryFitness& f);

/// Mean over entries of the minimum of f over the shutter-open part of the
/// entry, sampled every `step` seconds and at both endpoints.
double schedule_fitness_min(const ProblemInstance& instance, const Schedule& schedule, const EntryFitness& f,
                            Seconds step);

double altitude_merit(const ProblemInstance& instance, const Schedule& schedule);

/// Sum of slew distances between consecutive entries, degrees.
double distance_merit(const ProblemInstance& instance, const Schedule& schedule);

/// AD = sum_k |OC[k] - A[k]| / A[k].
double account_merit(const ProblemInstance& instance, const Schedule& schedule);

int target_diversity(const ProblemInstance& instance, const Schedule& schedule);

int observation_diversity(const Schedule& schedule);

ObjectiveVector objective_vector(const ProblemInstance& instance, const Schedule& schedule);

}  // namespace nightsched

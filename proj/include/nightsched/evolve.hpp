// SPDX-License-Identifier: Apache-2.0
//
// Evolutionary search over night schedules: the NSGA-II engine with
// constraint-aware crowded tournament selection, its variation operators and
// repair, and a single-objective elitist GA used as a baseline.

#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "nightsched/constraints.hpp"
#include "nightsched/merit.hpp"
#include "nightsched/model.hpp"
#include "nightsched/random.hpp"

namespace nightsched {

struct GAParams {
    std::size_t population_size{100};
    int generations{100};
    double crossover_probability{0.9};
    double mutation_probability{0.2};
    double elite_fraction{0.1};  // simple GA only
    std::uint64_t rng_seed{1};
    Seconds min_entry_duration{0};  // repair never trims an entry below this
    int simple_entries{0};          // simple GA chromosome length, 0 = fill the night
    unsigned threads{1};            // evaluation threads; does not affect results
};

/// Throws std::invalid_argument on out-of-range parameters.
void validate(const GAParams& params);

struct RankedIndividual {
    Schedule schedule;
    ObjectiveVector objectives;
    int violations{0};
    int rank{0};  // 1 = first front; 0 = not ranked yet
    double crowding{0};
};

using Fronts = std::vector<std::vector<std::size_t>>;

Schedule random_schedule(const ProblemInstance& instance, Rng& rng);

/// Pareto dominance in maximization orientation.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Fewer violations first, Pareto dominance among equal violation counts.
bool constrained_dominates(const RankedIndividual& a, const RankedIndividual& b);

enum class SortMode { Objectives, Constrained };

/// Domination-count nondominated sort. Sets rank on every individual and
/// returns the fronts as index lists, best first.
Fronts fast_nondominated_sort(std::span<RankedIndividual> population, SortMode mode = SortMode::Objectives);

/// Assigns crowding distance to the members of one front.
void crowding_distance(std::span<RankedIndividual> population, const std::vector<std::size_t>& front);

/// Sort plus crowding for every front.
Fronts rank_population(std::span<RankedIndividual> population, SortMode mode = SortMode::Constrained);

/// True when i is preferred to j: fewer violations, else lower rank, else
/// larger crowding distance.
bool cc_precedes(const RankedIndividual& i, const RankedIndividual& j);

/// Winner of the crowded constraint-dominated comparison; ties go to i.
const RankedIndividual& crowded_cc_compare(const RankedIndividual& i, const RankedIndividual& j);

const RankedIndividual& binary_tournament(std::span<const RankedIndividual> population, Rng& rng);

/// Sorts, pushes overlapping entries later and trims or drops entries until
/// the last one ends by night end. The result satisfies is_feasible.
Schedule repair(const ProblemInstance& instance, Schedule schedule, Seconds min_entry_duration = 0);

/// Entries of p1 starting before cut, then entries of p2 starting at or after it, repaired.
Schedule crossover_at(const ProblemInstance& instance, const Schedule& p1, const Schedule& p2, Instant cut,
                      Seconds min_entry_duration = 0);

Schedule crossover_timepoint(const ProblemInstance& instance, const Schedule& p1, const Schedule& p2, Rng& rng,
                             Seconds min_entry_duration = 0);

enum class MutationKind { DeleteEntry, ChangeTicket, AdjustLoops };

Schedule mutate(const ProblemInstance& instance, const Schedule& schedule, MutationKind kind, Rng& rng,
                Seconds min_entry_duration = 0);

/// Applies one of the three mutations, chosen uniformly.
Schedule mutate(const ProblemInstance& instance, const Schedule& schedule, Rng& rng, Seconds min_entry_duration = 0);

/// Computes objectives and violations. With threads > 1 the work is split
/// into contiguous chunks; each result lands in its own slot.
void evaluate(const ProblemInstance& instance, std::span<RankedIndividual> population, unsigned threads = 1);

RankedIndividual make_individual(const ProblemInstance& instance, Schedule schedule);

struct Generation {
    std::vector<RankedIndividual> parents;    // P_t
    std::vector<RankedIndividual> offspring;  // Q_t
};

/// Elitist environmental selection from P_t + Q_t followed by breeding of the next offspring.
Generation nsga2_generation(const ProblemInstance& instance, Generation current, const GAParams& params, Rng& rng);

struct GenerationStats {
    int generation{0};
    double altitude{0};
    double distance{0};
    double account{0};
    double target_diversity{0};
    double observation_diversity{0};
    int best_violations{0};
};

GenerationStats population_stats(int generation, std::span<const RankedIndividual> population);

struct Nsga2Result {
    std::vector<RankedIndividual> population;
    std::vector<RankedIndividual> pareto_front;
    std::vector<GenerationStats> stats;
};

/// Zero-violation members of the population that no other member dominates.
std::vector<RankedIndividual> pareto_front(std::span<const RankedIndividual> population);

Nsga2Result run_nsga2(const ProblemInstance& instance, const GAParams& params,
                      const std::function<void(const GenerationStats&)>& on_generation = {});

/// Fraction of entries whose target is above the horizon at the entry midpoint.
double visibility_ratio(const ProblemInstance& instance, const Schedule& schedule);

/// Fixed slot grid of the simple GA: slot k starts at night start + k * length.
struct SlotLayout {
    std::size_t count{0};
    Seconds length{0};
};

SlotLayout simple_ga_layout(const ProblemInstance& instance, const GAParams& params);

struct SimpleGaStats {
    int generation{0};
    double average{0};
    double max{0};
};

struct SimpleGaResult {
    Schedule best;
    double best_fitness{0};
    std::vector<Schedule> population;
    std::vector<SimpleGaStats> stats;
};

/// Roulette-wheel parent choice proportional to fitness; uniform if all are zero.
std::size_t roulette_select(std::span<const double> fitness, Rng& rng);

/// Two children of a single-point crossover at entry index r.
std::pair<Schedule, Schedule> two_fold_crossover(const Schedule& a, const Schedule& b, std::size_t r);

SimpleGaResult run_simple_ga(const ProblemInstance& instance, const GAParams& params,
                             const std::function<void(const SimpleGaStats&)>& on_generation = {});

}  // namespace nightsched

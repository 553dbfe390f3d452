// SPDX-License-Identifier: Apache-2.0

#include "nightsched/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace nightsched {

void validate(const GAParams& params)
{
    if (params.population_size < 4 || params.population_size % 2 != 0) {
        throw std::invalid_argument("population size must be even and >= 4");
    }
    if (params.generations < 0) {
        throw std::invalid_argument("generations must be >= 0");
    }
    auto probability = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!probability(params.crossover_probability) || !probability(params.mutation_probability)) {
        throw std::invalid_argument("crossover and mutation probabilities must lie in [0, 1]");
    }
    if (!(params.elite_fraction > 0.0 && params.elite_fraction <= 1.0)) {
        throw std::invalid_argument("elite fraction must lie in (0, 1]");
    }
    if (!(params.min_entry_duration >= 0.0)) {
        throw std::invalid_argument("minimum entry duration must be >= 0");
    }
    if (params.simple_entries < 0) {
        throw std::invalid_argument("simple GA entry count must be >= 0");
    }
}

Schedule random_schedule(const ProblemInstance& instance, Rng& rng)
{
    Schedule schedule;
    Instant t = instance.night.start;
    std::optional<EquatorialCoord> previous;
    for (;;) {
        const std::size_t ticket = rng.index(instance.tickets.size());
        const Target& target = instance.target_of(ticket);
        const int loops = rng.uniform_int(1, target.sequence.max_loops);
        const Instant end = t + total_time(target.sequence, slew_time(instance.slew, previous, target.coord), loops);
        if (end > instance.night.end) {
            break;
        }
        schedule.entries.push_back({t, ticket, loops});
        t = end;
        previous = target.coord;
    }
    return schedule;
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b)
{
    const auto x = a.components();
    const auto y = b.components();
    bool strictly_better = false;
    for (std::size_t m = 0; m < kObjectiveCount; ++m) {
        if (x[m] < y[m]) {
            return false;
        }
        strictly_better = strictly_better || x[m] > y[m];
    }
    return strictly_better;
}

bool constrained_dominates(const RankedIndividual& a, const RankedIndividual& b)
{
    if (a.violations != b.violations) {
        return a.violations < b.violations;
    }
    return dominates(a.objectives, b.objectives);
}

Fronts fast_nondominated_sort(std::span<RankedIndividual> population, SortMode mode)
{
    const std::size_t n = population.size();
    auto better = [&](std::size_t i, std::size_t j) {
        return mode == SortMode::Constrained ? constrained_dominates(population[i], population[j])
                                             : dominates(population[i].objectives, population[j].objectives);
    };

    std::vector<std::vector<std::size_t>> dominated(n);
    std::vector<std::size_t> dominator_count(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (better(i, j)) {
                dominated[i].push_back(j);
                ++dominator_count[j];
            } else if (better(j, i)) {
                dominated[j].push_back(i);
                ++dominator_count[i];
            }
        }
    }

    Fronts fronts;
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i) {
        if (dominator_count[i] == 0) {
            current.push_back(i);
        }
    }
    while (!current.empty()) {
        const int rank = static_cast<int>(fronts.size()) + 1;
        std::vector<std::size_t> next;
        for (std::size_t i : current) {
            population[i].rank = rank;
            for (std::size_t j : dominated[i]) {
                if (--dominator_count[j] == 0) {
                    next.push_back(j);
                }
            }
        }
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

void crowding_distance(std::span<RankedIndividual> population, const std::vector<std::size_t>& front)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    for (std::size_t i : front) {
        population[i].crowding = front.size() <= 2 ? inf : 0.0;
    }
    if (front.size() <= 2) {
        return;
    }

    std::vector<std::size_t> order;
    for (std::size_t m = 0; m < kObjectiveCount; ++m) {
        // Ties keep front order, so the boundary pick does not depend on m.
        order = front;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return population[a].objectives[m] < population[b].objectives[m];
        });
        population[order.front()].crowding = inf;
        population[order.back()].crowding = inf;
        const double range = population[order.back()].objectives[m] - population[order.front()].objectives[m];
        if (range <= 0.0) {
            continue;
        }
        for (std::size_t k = 1; k + 1 < order.size(); ++k) {
            auto& individual = population[order[k]];
            if (std::isinf(individual.crowding)) {
                continue;
            }
            individual.crowding +=
                (population[order[k + 1]].objectives[m] - population[order[k - 1]].objectives[m]) / range;
        }
    }
}

Fronts rank_population(std::span<RankedIndividual> population, SortMode mode)
{
    Fronts fronts = fast_nondominated_sort(population, mode);
    for (const auto& front : fronts) {
        crowding_distance(population, front);
    }
    return fronts;
}

bool cc_precedes(const RankedIndividual& i, const RankedIndividual& j)
{
    if (i.violations != j.violations) {
        return i.violations < j.violations;
    }
    if (i.rank != j.rank) {
        return i.rank < j.rank;
    }
    return i.crowding > j.crowding;
}

const RankedIndividual& crowded_cc_compare(const RankedIndividual& i, const RankedIndividual& j)
{
    return cc_precedes(j, i) ? j : i;
}

const RankedIndividual& binary_tournament(std::span<const RankedIndividual> population, Rng& rng)
{
    if (population.empty()) {
        throw std::invalid_argument("tournament on an empty population");
    }
    const auto& a = population[rng.index(population.size())];
    const auto& b = population[rng.index(population.size())];
    return crowded_cc_compare(a, b);
}

Schedule repair(const ProblemInstance& instance, Schedule schedule, Seconds min_entry_duration)
{
    auto& entries = schedule.entries;
    for (auto& entry : entries) {
        entry.loops = std::clamp(entry.loops, 1, instance.target_of(entry.ticket).sequence.max_loops);
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const ObservationEntry& a, const ObservationEntry& b) { return a.start < b.start; });

    const Night& night = instance.night;
    std::vector<Seconds> durations;
    for (;;) {
        // Push every start to the end of its predecessor.
        durations.assign(entries.size(), 0.0);
        std::optional<EquatorialCoord> previous;
        Instant previous_end = night.start;
        std::optional<std::size_t> overflow;
        for (std::size_t k = 0; k < entries.size(); ++k) {
            auto& entry = entries[k];
            const Target& target = instance.target_of(entry.ticket);
            entry.start = std::max(entry.start, previous_end);
            durations[k] = slew_time(instance.slew, previous, target.coord) + entry.loops * target.sequence.total_time;
            previous_end = entry.start + durations[k];
            previous = target.coord;
            if (!overflow && previous_end > night.end) {
                overflow = k;
            }
        }
        if (!overflow) {
            return schedule;
        }

        auto& first = entries[*overflow];
        const auto& seq = instance.target_of(first.ticket).sequence;
        if (seq.loopable && first.loops > 1 && durations[*overflow] - seq.total_time >= min_entry_duration) {
            --first.loops;
            continue;
        }
        // Drop the shortest of the overflowing entries, preferring the latest on ties.
        std::size_t victim = *overflow;
        for (std::size_t k = *overflow + 1; k < entries.size(); ++k) {
            if (durations[k] <= durations[victim]) {
                victim = k;
            }
        }
        entries.erase(entries.begin() + static_cast<std::ptrdiff_t>(victim));
    }
}

Schedule crossover_at(const ProblemInstance& instance, const Schedule& p1, const Schedule& p2, Instant cut,
                      Seconds min_entry_duration)
{
    Schedule child;
    for (const auto& entry : p1.entries) {
        if (entry.start < cut) {
            child.entries.push_back(entry);
        }
    }
    for (const auto& entry : p2.entries) {
        if (entry.start >= cut) {
            child.entries.push_back(entry);
        }
    }
    return repair(instance, std::move(child), min_entry_duration);
}

Schedule crossover_timepoint(const ProblemInstance& instance, const Schedule& p1, const Schedule& p2, Rng& rng,
                             Seconds min_entry_duration)
{
    const Instant cut = rng.uniform(instance.night.start, instance.night.end);
    return crossover_at(instance, p1, p2, cut, min_entry_duration);
}

Schedule mutate(const ProblemInstance& instance, const Schedule& schedule, MutationKind kind, Rng& rng,
                Seconds min_entry_duration)
{
    Schedule result = schedule;
    auto& entries = result.entries;
    if (!entries.empty()) {
        const std::size_t k = rng.index(entries.size());
        switch (kind) {
        case MutationKind::DeleteEntry:
            entries.erase(entries.begin() + static_cast<std::ptrdiff_t>(k));
            break;
        case MutationKind::ChangeTicket:
            if (instance.tickets.size() > 1) {
                std::size_t other = rng.index(instance.tickets.size() - 1);
                if (other >= entries[k].ticket) {
                    ++other;
                }
                entries[k].ticket = other;
                entries[k].loops = std::min(entries[k].loops, instance.target_of(other).sequence.max_loops);
            }
            break;
        case MutationKind::AdjustLoops:
            entries[k].loops = rng.uniform_int(1, instance.target_of(entries[k].ticket).sequence.max_loops);
            break;
        }
    }
    return repair(instance, std::move(result), min_entry_duration);
}

Schedule mutate(const ProblemInstance& instance, const Schedule& schedule, Rng& rng, Seconds min_entry_duration)
{
    constexpr MutationKind kinds[] = {MutationKind::DeleteEntry, MutationKind::ChangeTicket, MutationKind::AdjustLoops};
    return mutate(instance, schedule, kinds[rng.index(3)], rng, min_entry_duration);
}

RankedIndividual make_individual(const ProblemInstance& instance, Schedule schedule)
{
    RankedIndividual individual;
    individual.schedule = std::move(schedule);
    individual.objectives = objective_vector(instance, individual.schedule);
    individual.violations = total_violations(instance, individual.schedule).total;
    return individual;
}

void evaluate(const ProblemInstance& instance, std::span<RankedIndividual> population, unsigned threads)
{
    auto evaluate_range = [&](std::size_t from, std::size_t to) {
        for (std::size_t i = from; i < to; ++i) {
            auto& individual = population[i];
            individual.objectives = objective_vector(instance, individual.schedule);
            individual.violations = total_violations(instance, individual.schedule).total;
        }
    };

    const std::size_t n = population.size();
    const std::size_t workers = std::min<std::size_t>(std::max(1U, threads), n);
    if (workers <= 1) {
        evaluate_range(0, n);
        return;
    }

    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (n + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    evaluate_range(w * chunk, std::min(n, (w + 1) * chunk));
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto& error : errors) {
        if (error) {
            std::rethrow_exception(error);
        }
    }
}

namespace {

std::vector<RankedIndividual> breed(const ProblemInstance& instance, std::span<const RankedIndividual> parents,
                                    const GAParams& params, Rng& rng)
{
    std::vector<RankedIndividual> offspring(params.population_size);
    for (auto& child : offspring) {
        const auto& first = binary_tournament(parents, rng);
        const auto& second = binary_tournament(parents, rng);
        child.schedule = rng.bernoulli(params.crossover_probability)
                             ? crossover_timepoint(instance, first.schedule, second.schedule, rng,
                                                   params.min_entry_duration)
                             : first.schedule;
        if (rng.bernoulli(params.mutation_probability)) {
            child.schedule = mutate(instance, child.schedule, rng, params.min_entry_duration);
        }
    }
    evaluate(instance, offspring, params.threads);
    return offspring;
}

}  // namespace

Generation nsga2_generation(const ProblemInstance& instance, Generation current, const GAParams& params, Rng& rng)
{
    const std::size_t n = params.population_size;
    std::vector<RankedIndividual> combined = std::move(current.parents);
    combined.insert(combined.end(), std::make_move_iterator(current.offspring.begin()),
                    std::make_move_iterator(current.offspring.end()));

    const Fronts fronts = rank_population(combined, SortMode::Constrained);

    Generation next;
    next.parents.reserve(n);
    for (const auto& front : fronts) {
        if (next.parents.size() + front.size() <= n) {
            for (std::size_t i : front) {
                next.parents.push_back(std::move(combined[i]));
            }
            continue;
        }
        std::vector<std::size_t> last(front);
        std::stable_sort(last.begin(), last.end(),
                         [&](std::size_t a, std::size_t b) { return combined[a].crowding > combined[b].crowding; });
        for (std::size_t k = 0; next.parents.size() < n; ++k) {
            next.parents.push_back(std::move(combined[last[k]]));
        }
        break;
    }

    rank_population(next.parents, SortMode::Constrained);
    next.offspring = breed(instance, next.parents, params, rng);
    return next;
}

GenerationStats population_stats(int generation, std::span<const RankedIndividual> population)
{
    GenerationStats stats;
    stats.generation = generation;
    if (population.empty()) {
        return stats;
    }
    stats.best_violations = std::numeric_limits<int>::max();
    for (const auto& individual : population) {
        stats.altitude += individual.objectives.altitude;
        stats.distance += 0.0 - individual.objectives.distance_neg;
        stats.account += 0.0 - individual.objectives.account_neg;
        stats.target_diversity += individual.objectives.target_diversity;
        stats.observation_diversity += individual.objectives.observation_diversity;
        stats.best_violations = std::min(stats.best_violations, individual.violations);
    }
    const auto count = static_cast<double>(population.size());
    stats.altitude /= count;
    stats.distance /= count;
    stats.account /= count;
    stats.target_diversity /= count;
    stats.observation_diversity /= count;
    return stats;
}

std::vector<RankedIndividual> pareto_front(std::span<const RankedIndividual> population)
{
    std::vector<RankedIndividual> front;
    for (std::size_t i = 0; i < population.size(); ++i) {
        if (population[i].violations != 0) {
            continue;
        }
        const bool dominated = std::any_of(population.begin(), population.end(), [&](const RankedIndividual& other) {
            return dominates(other.objectives, population[i].objectives);
        });
        if (!dominated) {
            front.push_back(population[i]);
        }
    }
    return front;
}

Nsga2Result run_nsga2(const ProblemInstance& instance, const GAParams& params,
                      const std::function<void(const GenerationStats&)>& on_generation)
{
    validate(params);
    Rng rng(params.rng_seed);

    Generation generation;
    generation.parents.resize(params.population_size);
    generation.offspring.resize(params.population_size);
    for (auto& individual : generation.parents) {
        individual.schedule = random_schedule(instance, rng);
    }
    for (auto& individual : generation.offspring) {
        individual.schedule = random_schedule(instance, rng);
    }
    evaluate(instance, generation.parents, params.threads);
    evaluate(instance, generation.offspring, params.threads);
    rank_population(generation.parents, SortMode::Constrained);

    Nsga2Result result;
    auto record = [&](int g) {
        result.stats.push_back(population_stats(g, generation.parents));
        if (on_generation) {
            on_generation(result.stats.back());
        }
    };
    record(0);
    for (int g = 1; g <= params.generations; ++g) {
        generation = nsga2_generation(instance, std::move(generation), params, rng);
        record(g);
    }

    result.population = std::move(generation.parents);
    result.pareto_front = pareto_front(result.population);
    return result;
}

double visibility_ratio(const ProblemInstance& instance, const Schedule& schedule)
{
    return schedule_fitness_midpoint(instance, schedule, [&](const ObservationEntry& entry, Instant t) {
        return altitude(instance.site, instance.target_of(entry.ticket).coord, t) > 0.0 ? 1.0 : 0.0;
    });
}

SlotLayout simple_ga_layout(const ProblemInstance& instance, const GAParams& params)
{
    const Seconds night = instance.night.duration();
    std::size_t count = static_cast<std::size_t>(params.simple_entries);
    if (count == 0) {
        // Room for the longest single loop after the longest possible slew.
        Seconds longest = 0;
        for (const auto& target : instance.targets) {
            longest = std::max(longest, target.sequence.total_time);
        }
        const Seconds slot = instance.slew.settle + 180.0 / instance.slew.rate + longest;
        count = static_cast<std::size_t>(std::floor(night / slot));
    }
    return {count, count > 0 ? night / static_cast<double>(count) : 0.0};
}

std::size_t roulette_select(std::span<const double> fitness, Rng& rng)
{
    const double total = std::accumulate(fitness.begin(), fitness.end(), 0.0);
    if (!(total > 0.0)) {
        return rng.index(fitness.size());
    }
    const double spin = rng.unit() * total;
    double cumulative = 0;
    for (std::size_t i = 0; i < fitness.size(); ++i) {
        cumulative += fitness[i];
        if (spin < cumulative) {
            return i;
        }
    }
    // Rounding can leave the spin just past the last boundary.
    for (std::size_t i = fitness.size(); i-- > 0;) {
        if (fitness[i] > 0.0) {
            return i;
        }
    }
    return fitness.size() - 1;
}

std::pair<Schedule, Schedule> two_fold_crossover(const Schedule& a, const Schedule& b, std::size_t r)
{
    std::pair<Schedule, Schedule> children{a, b};
    for (std::size_t k = 0; k < r && k < a.size() && k < b.size(); ++k) {
        children.first.entries[k] = a.entries[k];
        children.second.entries[k] = b.entries[k];
    }
    for (std::size_t k = r; k < a.size() && k < b.size(); ++k) {
        children.first.entries[k] = b.entries[k];
        children.second.entries[k] = a.entries[k];
    }
    return children;
}

SimpleGaResult run_simple_ga(const ProblemInstance& instance, const GAParams& params,
                             const std::function<void(const SimpleGaStats&)>& on_generation)
{
    validate(params);
    Rng rng(params.rng_seed);
    const SlotLayout layout = simple_ga_layout(instance, params);
    const std::size_t n = params.population_size;

    auto random_entry = [&](std::size_t slot) {
        return ObservationEntry{instance.night.start + static_cast<double>(slot) * layout.length,
                                rng.index(instance.tickets.size()), 1};
    };

    SimpleGaResult result;
    auto& population = result.population;
    population.resize(n);
    for (auto& schedule : population) {
        for (std::size_t k = 0; k < layout.count; ++k) {
            schedule.entries.push_back(random_entry(k));
        }
    }

    std::vector<double> fitness(n);
    auto assess = [&](int generation) {
        for (std::size_t i = 0; i < n; ++i) {
            fitness[i] = visibility_ratio(instance, population[i]);
        }
        SimpleGaStats stats;
        stats.generation = generation;
        stats.average = std::accumulate(fitness.begin(), fitness.end(), 0.0) / static_cast<double>(n);
        stats.max = *std::max_element(fitness.begin(), fitness.end());
        result.stats.push_back(stats);
        if (on_generation) {
            on_generation(stats);
        }
    };

    const auto elite_count =
        std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(params.elite_fraction * static_cast<double>(n))), 1, n);

    assess(0);
    for (int g = 1; g <= params.generations; ++g) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fitness[a] > fitness[b]; });

        std::vector<Schedule> elite;
        std::vector<double> elite_fitness;
        for (std::size_t k = 0; k < elite_count; ++k) {
            elite.push_back(population[order[k]]);
            elite_fitness.push_back(fitness[order[k]]);
        }

        std::vector<Schedule> next = elite;
        while (next.size() < n) {
            const Schedule& a = elite[roulette_select(elite_fitness, rng)];
            const Schedule& b = elite[roulette_select(elite_fitness, rng)];
            auto children = (layout.count > 0 && rng.bernoulli(params.crossover_probability))
                                ? two_fold_crossover(a, b, rng.index(layout.count))
                                : std::pair<Schedule, Schedule>{a, b};
            for (Schedule* child : {&children.first, &children.second}) {
                if (next.size() == n) {
                    break;
                }
                if (layout.count > 0 && rng.bernoulli(params.mutation_probability)) {
                    const std::size_t slot = rng.index(layout.count);
                    child->entries[slot] = random_entry(slot);
                }
                next.push_back(std::move(*child));
            }
        }
        population = std::move(next);
        assess(g);
    }

    const auto best = static_cast<std::size_t>(std::max_element(fitness.begin(), fitness.end()) - fitness.begin());
    result.best = population[best];
    result.best_fitness = fitness[best];
    return result;
}

}  // namespace nightsched

// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "nightsched/evolve.hpp"
#include "nightsched/instance_io.hpp"
#include "oracles.hpp"

namespace nightsched {
namespace {

using testing::base_instance;
using testing::make_target;
using testing::make_ticket;
using testing::three_target_instance;

constexpr double kInf = std::numeric_limits<double>::infinity();

ObjectiveVector vec(double a, double b, double c, double d, double e)
{
    return ObjectiveVector{a, b, c, d, e};
}

RankedIndividual with_objectives(const ObjectiveVector& v, int violations = 0)
{
    RankedIndividual r;
    r.objectives = v;
    r.violations = violations;
    return r;
}

TEST(GAParams, Validation)
{
    GAParams p;
    EXPECT_NO_THROW(validate(p));
    p.population_size = 5;
    EXPECT_THROW(validate(p), std::invalid_argument);
    p.population_size = 2;
    EXPECT_THROW(validate(p), std::invalid_argument);
    p = GAParams{};
    p.crossover_probability = 1.5;
    EXPECT_THROW(validate(p), std::invalid_argument);
    p = GAParams{};
    p.elite_fraction = 0;
    EXPECT_THROW(validate(p), std::invalid_argument);
}

TEST(RandomSchedule, NothingFitsGivesEmptySchedule)
{
    ProblemInstance p = base_instance();
    p.targets = {make_target("t", 0, 0, p.night.duration(), 100)};
    p.tickets = {make_ticket("k", 0)};
    Rng rng(1);
    EXPECT_TRUE(random_schedule(p, rng).empty());
}

TEST(RandomSchedule, ExactFitGivesOneEntry)
{
    ProblemInstance p = base_instance();
    p.targets = {make_target("t", 0, 0, p.night.duration() - p.slew.settle, 100)};
    p.tickets = {make_ticket("k", 0)};
    Rng rng(1);
    const Schedule s = random_schedule(p, rng);
    ASSERT_EQ(s.size(), 1U);
    EXPECT_EQ(s.entries[0].start, p.night.start);
    EXPECT_EQ(entry_span(p, s, 0).end, p.night.end);
}

TEST(RandomSchedule, AlwaysFeasible)
{
    const ProblemInstance p = gen_scenario_equatorial({});
    Rng rng(2);
    for (int i = 0; i < 1000; ++i) {
        const Schedule s = random_schedule(p, rng);
        ASSERT_TRUE(is_feasible(p, s).ok);
        ASSERT_FALSE(s.empty());
        EXPECT_LE(entry_span(p, s, s.size() - 1).end, p.night.end);
    }
}

TEST(Dominance, Examples)
{
    EXPECT_FALSE(dominates(vec(1, 0, 0, 2, 2), vec(1, 0, 0, 2, 2)));
    EXPECT_TRUE(dominates(vec(1, 0, 0, 2, 2), vec(0.5, 0, 0, 2, 2)));
    EXPECT_FALSE(dominates(vec(1, -5, 0, 2, 2), vec(0.5, 0, 0, 2, 2)));
    EXPECT_FALSE(dominates(vec(0.5, 0, 0, 2, 2), vec(1, -5, 0, 2, 2)));
}

TEST(Dominance, ConstrainedPrefersFewerViolations)
{
    const auto good = with_objectives(vec(0, 0, 0, 0, 0), 0);
    const auto bad = with_objectives(vec(1, 1, 1, 1, 1), 2);
    EXPECT_TRUE(constrained_dominates(good, bad));
    EXPECT_FALSE(constrained_dominates(bad, good));
    EXPECT_FALSE(constrained_dominates(with_objectives(vec(1, 0, 0, 0, 0), 2), bad));
    EXPECT_TRUE(constrained_dominates(bad, with_objectives(vec(0, 0, 0, 0, 0), 2)));
}

TEST(NondominatedSort, Examples)
{
    std::vector<RankedIndividual> pop;
    for (int i = 0; i < 5; ++i) {
        pop.push_back(with_objectives(vec(i, -i, 0, 0, 0)));
    }
    EXPECT_EQ(fast_nondominated_sort(pop).size(), 1U);

    pop.clear();
    for (int i = 0; i < 5; ++i) {
        pop.push_back(with_objectives(vec(i, i, 0, 0, 0)));
    }
    const Fronts chain = fast_nondominated_sort(pop);
    ASSERT_EQ(chain.size(), 5U);
    for (std::size_t f = 0; f < 5; ++f) {
        EXPECT_EQ(chain[f], std::vector<std::size_t>{4 - f});
        EXPECT_EQ(pop[4 - f].rank, static_cast<int>(f) + 1);
    }
}

std::vector<RankedIndividual> random_population(std::mt19937_64& gen, std::size_t n)
{
    // A coarse grid so that ties and duplicates occur.
    std::uniform_int_distribution<int> v(0, 4);
    std::vector<RankedIndividual> pop;
    for (std::size_t i = 0; i < n; ++i) {
        pop.push_back(with_objectives(vec(v(gen), v(gen), v(gen), v(gen), v(gen))));
    }
    return pop;
}

TEST(NondominatedSort, MatchesBruteForcePeeling)
{
    std::mt19937_64 gen(99);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + gen() % 64;
        auto pop = random_population(gen, n);
        Fronts fronts = fast_nondominated_sort(pop);
        std::vector<oracle::Point> points;
        for (const auto& r : pop) {
            points.push_back(r.objectives.components());
        }
        auto expected = oracle::peel_fronts(points);
        for (auto& f : fronts) {
            std::sort(f.begin(), f.end());
        }
        ASSERT_EQ(fronts, expected);
        for (std::size_t f = 0; f < fronts.size(); ++f) {
            for (std::size_t i : fronts[f]) {
                EXPECT_EQ(pop[i].rank, static_cast<int>(f) + 1);
            }
        }
    }
}

TEST(NondominatedSort, ConstrainedModeOrdersByViolationsFirst)
{
    std::vector<RankedIndividual> pop{with_objectives(vec(5, 5, 5, 5, 5), 1), with_objectives(vec(0, 0, 0, 0, 0), 0),
                                      with_objectives(vec(1, 0, 0, 0, 0), 0)};
    const Fronts fronts = fast_nondominated_sort(pop, SortMode::Constrained);
    ASSERT_EQ(fronts.size(), 3U);
    EXPECT_EQ(fronts[0], std::vector<std::size_t>{2});
    EXPECT_EQ(fronts[1], std::vector<std::size_t>{1});
    EXPECT_EQ(fronts[2], std::vector<std::size_t>{0});
}

TEST(Crowding, Examples)
{
    std::vector<RankedIndividual> pop{with_objectives(vec(0, 0, 0, 0, 0)), with_objectives(vec(1, -1, 0, 0, 0))};
    crowding_distance(pop, {0, 1});
    EXPECT_EQ(pop[0].crowding, kInf);
    EXPECT_EQ(pop[1].crowding, kInf);

    pop = {with_objectives(vec(0, 0, 0, 0, 0)), with_objectives(vec(1, -1, 0, 0, 0)), with_objectives(vec(2, -2, 0, 0, 0))};
    crowding_distance(pop, {0, 1, 2});
    EXPECT_EQ(pop[0].crowding, kInf);
    EXPECT_EQ(pop[2].crowding, kInf);
    EXPECT_DOUBLE_EQ(pop[1].crowding, 2.0);
}

TEST(Crowding, MatchesTextbookImplementation)
{
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> v(-10, 10);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + gen() % 40;
        std::vector<RankedIndividual> pop;
        std::vector<oracle::Point> points;
        std::vector<std::size_t> front;
        for (std::size_t i = 0; i < n; ++i) {
            pop.push_back(with_objectives(vec(v(gen), v(gen), v(gen), std::floor(v(gen)), v(gen))));
            points.push_back(pop.back().objectives.components());
            front.push_back(i);
        }
        crowding_distance(pop, front);
        const auto expected = oracle::crowding(points);
        for (std::size_t i = 0; i < n; ++i) {
            if (std::isinf(expected[i])) {
                EXPECT_TRUE(std::isinf(pop[i].crowding));
            } else {
                EXPECT_NEAR(pop[i].crowding, expected[i], 1e-9);
            }
        }
    }
}

RankedIndividual attrs(int violations, int rank, double crowding)
{
    RankedIndividual r;
    r.violations = violations;
    r.rank = rank;
    r.crowding = crowding;
    return r;
}

TEST(CrowdedCompare, Examples)
{
    const auto a = attrs(0, 3, 0.1), b = attrs(3, 1, 5);
    EXPECT_EQ(&crowded_cc_compare(a, b), &a);
    EXPECT_EQ(&crowded_cc_compare(b, a), &a);

    const auto c = attrs(0, 1, 0.1), d = attrs(0, 2, 5);
    EXPECT_EQ(&crowded_cc_compare(d, c), &c);

    const auto e = attrs(0, 1, 0.7), f = attrs(0, 1, 0.2);
    EXPECT_EQ(&crowded_cc_compare(f, e), &e);

    const auto g = attrs(0, 1, 0.5), h = attrs(0, 1, 0.5);
    EXPECT_EQ(&crowded_cc_compare(g, h), &g);
    EXPECT_EQ(&crowded_cc_compare(h, g), &h);
}

TEST(CrowdedCompare, Asymmetric)
{
    std::mt19937_64 gen(4);
    std::uniform_int_distribution<int> small(0, 3);
    for (int i = 0; i < 20000; ++i) {
        const auto x = attrs(small(gen), 1 + small(gen), small(gen) == 3 ? kInf : small(gen) * 0.5);
        const auto y = attrs(small(gen), 1 + small(gen), small(gen) == 3 ? kInf : small(gen) * 0.5);
        EXPECT_FALSE(cc_precedes(x, y) && cc_precedes(y, x));
        const bool same = x.violations == y.violations && x.rank == y.rank && x.crowding == y.crowding;
        if (!same) {
            EXPECT_TRUE(cc_precedes(x, y) || cc_precedes(y, x));
        }
    }
}

TEST(Tournament, SingleAndFrequency)
{
    std::vector<RankedIndividual> one{attrs(0, 1, 1)};
    Rng rng(8);
    EXPECT_EQ(&binary_tournament(one, rng), &one[0]);

    std::vector<RankedIndividual> pop;
    for (int r = 1; r <= 3; ++r) {
        for (int k = 0; k < 10; ++k) {
            pop.push_back(attrs(0, r, 1.0));
        }
    }
    std::array<int, 4> wins{};
    for (int i = 0; i < 10000; ++i) {
        ++wins[static_cast<std::size_t>(binary_tournament(pop, rng).rank)];
    }
    // Expected shares 5/9, 3/9 and 1/9.
    EXPECT_GT(wins[1], wins[2]);
    EXPECT_GT(wins[2], wins[3]);
    EXPECT_NEAR(wins[1] / 10000.0, 5.0 / 9, 0.03);
    EXPECT_NEAR(wins[3] / 10000.0, 1.0 / 9, 0.03);
}

TEST(Repair, FeasibleInputUnchanged)
{
    const ProblemInstance p = three_target_instance();
    Rng rng(12);
    for (int i = 0; i < 100; ++i) {
        const Schedule s = random_schedule(p, rng);
        EXPECT_EQ(repair(p, s), s);
    }
}

TEST(Repair, PushesOverlappingCopy)
{
    const ProblemInstance p = three_target_instance();
    const Instant ns = p.night.start;
    const Schedule s = repair(p, Schedule{{{ns, 1, 1}, {ns, 1, 1}}});
    ASSERT_EQ(s.size(), 2U);
    EXPECT_EQ(s.entries[1].start, ns + 10 + 100);
    EXPECT_TRUE(is_feasible(p, s).ok);
}

TEST(Repair, ClampsStartToNightStart)
{
    const ProblemInstance p = three_target_instance();
    const Schedule s = repair(p, Schedule{{{p.night.start - 500, 1, 1}}});
    EXPECT_EQ(s.entries[0].start, p.night.start);
}

TEST(Repair, RemovalCountOnOverfullNight)
{
    ProblemInstance p = base_instance();
    // Each entry lasts 10 s settle + 690 s; 28800 s of night holds 41 of them.
    p.targets = {make_target("t", 0, 0, 690, 690)};
    p.tickets = {make_ticket("k", 0)};
    const double d = 700;
    for (int m : {41, 42, 45, 60}) {
        Schedule s;
        for (int i = 0; i < m; ++i) {
            s.entries.push_back({p.night.start, 0, 1});
        }
        const Schedule r = repair(p, s);
        const double overflow = std::max(0.0, m * d - p.night.duration());
        EXPECT_EQ(static_cast<double>(m) - static_cast<double>(r.size()), std::ceil(overflow / d)) << m;
        EXPECT_TRUE(is_feasible(p, r).ok);
    }
}

TEST(Repair, TrimsLoopsBeforeRemoving)
{
    ProblemInstance p = base_instance();
    p.targets = {make_target("t", 0, 0, 600, 600, 10)};
    p.tickets = {make_ticket("k", 0)};
    const Instant late = p.night.end - 10 - 3 * 600;
    const Schedule r = repair(p, Schedule{{{late, 0, 5}}});
    ASSERT_EQ(r.size(), 1U);
    EXPECT_EQ(r.entries[0].loops, 3);

    // A minimum entry duration stops trimming and forces removal instead.
    EXPECT_TRUE(repair(p, Schedule{{{late, 0, 5}}}, 5 * 600).empty());
}

TEST(Repair, RemovesShortestOverflowingEntry)
{
    ProblemInstance p = base_instance();
    p.slew = {0, 2};
    p.targets = {make_target("long", 0, 0, 28000, 100), make_target("short", 0, 0, 300, 100),
                 make_target("mid", 0, 0, 600, 100)};
    p.tickets = {make_ticket("kl", 0), make_ticket("ks", 1), make_ticket("km", 2)};
    const Instant ns = p.night.start;
    const Schedule r = repair(p, Schedule{{{ns, 0, 1}, {ns + 1, 2, 1}, {ns + 2, 1, 1}}});
    ASSERT_EQ(r.size(), 2U);
    EXPECT_EQ(r.entries[1].ticket, 2U);
}

TEST(Crossover, Examples)
{
    const ProblemInstance p = gen_scenario_equatorial({});
    Rng rng(3);
    const Schedule a = random_schedule(p, rng);
    const Schedule b = random_schedule(p, rng);
    EXPECT_EQ(crossover_at(p, a, b, p.night.start), repair(p, b));
    ASSERT_GE(a.size(), 3U);
    const Instant between = (a.entries[1].start + a.entries[2].start) / 2;
    EXPECT_EQ(crossover_at(p, a, a, between), a);

    const Schedule child = crossover_at(p, a, b, between);
    EXPECT_EQ(child.entries[0], a.entries[0]);
    EXPECT_EQ(child.entries[1], a.entries[1]);
}

TEST(Mutation, Examples)
{
    ProblemInstance p = base_instance();
    p.targets = {make_target("t", 0, 0, 100, 50, 3)};
    p.tickets = {make_ticket("k", 0)};
    Rng rng(6);
    const Schedule one{{{p.night.start, 0, 2}}};
    EXPECT_TRUE(mutate(p, one, MutationKind::DeleteEntry, rng).empty());
    EXPECT_EQ(mutate(p, one, MutationKind::ChangeTicket, rng), one);
    EXPECT_TRUE(mutate(p, Schedule{}, MutationKind::ChangeTicket, rng).empty());

    std::set<int> loops;
    for (int i = 0; i < 200; ++i) {
        loops.insert(mutate(p, one, MutationKind::AdjustLoops, rng).entries[0].loops);
    }
    EXPECT_EQ(loops, (std::set<int>{1, 2, 3}));
}

TEST(Mutation, ChangeTicketPicksAnotherTicketAndClampsLoops)
{
    const ProblemInstance p = three_target_instance();
    Rng rng(10);
    const Schedule s{{{p.night.start, 0, 3}}};
    for (int i = 0; i < 100; ++i) {
        const Schedule m = mutate(p, s, MutationKind::ChangeTicket, rng);
        ASSERT_EQ(m.size(), 1U);
        EXPECT_NE(m.entries[0].ticket, 0U);
        EXPECT_EQ(m.entries[0].loops, 1);
    }
}

TEST(Operators, OutputsFeasibleAndRepairIdempotent)
{
    const ProblemInstance p = gen_scenario_equatorial({});
    Rng rng(2024);
    std::vector<Schedule> pool;
    for (int i = 0; i < 50; ++i) {
        pool.push_back(random_schedule(p, rng));
    }
    for (int i = 0; i < 10000; ++i) {
        const Schedule& a = pool[rng.index(pool.size())];
        const Schedule& b = pool[rng.index(pool.size())];
        const Schedule child = crossover_timepoint(p, a, b, rng);
        const Schedule mutant = mutate(p, child, rng);
        for (const Schedule* s : {&child, &mutant}) {
            ASSERT_TRUE(is_feasible(p, *s).ok);
            if (!s->empty()) {
                ASSERT_LE(entry_span(p, *s, s->size() - 1).end, p.night.end);
            }
            ASSERT_EQ(repair(p, *s), *s);
        }
        pool[rng.index(pool.size())] = mutant;
    }
}

TEST(Evaluate, ParallelMatchesSequential)
{
    const ProblemInstance p = gen_scenario_equatorial({});
    Rng rng(1);
    std::vector<RankedIndividual> a(37);
    for (auto& r : a) {
        r.schedule = random_schedule(p, rng);
    }
    auto b = a;
    evaluate(p, a, 1);
    evaluate(p, b, 4);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].objectives, b[i].objectives);
        EXPECT_EQ(a[i].violations, b[i].violations);
    }
}

/// Individuals tagged by a one-entry schedule whose start is the tag.
RankedIndividual tagged(const ObjectiveVector& v, int tag)
{
    RankedIndividual r = with_objectives(v);
    r.schedule.entries.push_back({static_cast<double>(tag), 0, 1});
    return r;
}

std::set<int> tags(const std::vector<RankedIndividual>& pop)
{
    std::set<int> out;
    for (const auto& r : pop) {
        out.insert(static_cast<int>(r.schedule.entries.at(0).start));
    }
    return out;
}

TEST(Nsga2Generation, SingleFrontKeepsMostCrowdingDistant)
{
    const ProblemInstance p = three_target_instance();
    GAParams params;
    params.population_size = 10;
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0, 100);

    Generation g;
    std::vector<oracle::Point> points;
    for (int i = 0; i < 20; ++i) {
        const double x = u(gen);
        auto r = tagged(vec(x, -x, 0, 0, 0), i);
        points.push_back(r.objectives.components());
        (i < 10 ? g.parents : g.offspring).push_back(r);
    }
    const auto d = oracle::crowding(points);
    std::vector<int> order(20);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return d[a] > d[b]; });
    const std::set<int> expected(order.begin(), order.begin() + 10);

    Rng rng(1);
    const Generation next = nsga2_generation(p, g, params, rng);
    EXPECT_EQ(tags(next.parents), expected);
    EXPECT_EQ(next.offspring.size(), 10U);
}

TEST(Nsga2Generation, ExactFirstFrontIsKept)
{
    const ProblemInstance p = three_target_instance();
    GAParams params;
    params.population_size = 6;
    Generation g;
    for (int i = 0; i < 6; ++i) {
        // Offspring hold the first front; parents sit one unit behind.
        g.offspring.push_back(tagged(vec(i, 6 - i, 0, 0, 0), i));
        g.parents.push_back(tagged(vec(i - 1, 5 - i, 0, 0, 0), 100 + i));
    }
    Rng rng(2);
    const Generation next = nsga2_generation(p, g, params, rng);
    EXPECT_EQ(tags(next.parents), (std::set<int>{0, 1, 2, 3, 4, 5}));
    for (const auto& r : next.parents) {
        EXPECT_EQ(r.rank, 1);
    }
}

TEST(Nsga2Generation, Elitism)
{
    ProblemInstance p = gen_scenario_equatorial({.count = 12, .night_hours = 8});
    p.tickets[0].required = true;
    p.tickets[1].max_observations = 1;
    GAParams params;
    params.population_size = 16;
    Rng rng(5);
    Generation g;
    for (int i = 0; i < 16; ++i) {
        g.parents.push_back(make_individual(p, random_schedule(p, rng)));
        g.offspring.push_back(make_individual(p, random_schedule(p, rng)));
    }
    rank_population(g.parents);
    for (int step = 0; step < 15; ++step) {
        std::vector<RankedIndividual> combined = g.parents;
        combined.insert(combined.end(), g.offspring.begin(), g.offspring.end());
        const Fronts fronts = rank_population(combined, SortMode::Constrained);
        int fewest = std::numeric_limits<int>::max();
        for (const auto& r : combined) {
            fewest = std::min(fewest, r.violations);
        }

        g = nsga2_generation(p, g, params, rng);

        ASSERT_EQ(g.parents.size(), 16U);
        auto survives = [&](const RankedIndividual& r) {
            return std::any_of(g.parents.begin(), g.parents.end(), [&](const RankedIndividual& q) {
                return q.schedule == r.schedule && q.objectives == r.objectives;
            });
        };
        if (fronts[0].size() <= 16) {
            for (std::size_t i : fronts[0]) {
                EXPECT_TRUE(survives(combined[i]));
            }
        }
        // The best individual by the crowded comparison is never lost.
        const auto best = std::min_element(combined.begin(), combined.end(),
                                           [](const RankedIndividual& a, const RankedIndividual& b) { return cc_precedes(a, b); });
        EXPECT_TRUE(survives(*best));
        EXPECT_EQ(best->violations, fewest);
    }
}

TEST(RunNsga2, ZeroGenerationsReturnsInitialFront)
{
    const ProblemInstance p = gen_scenario_equatorial({.count = 10});
    GAParams params;
    params.population_size = 20;
    params.generations = 0;
    params.rng_seed = 77;
    const Nsga2Result result = run_nsga2(p, params);
    ASSERT_EQ(result.stats.size(), 1U);

    Rng rng(77);
    std::vector<RankedIndividual> initial;
    for (int i = 0; i < 20; ++i) {
        initial.push_back(make_individual(p, random_schedule(p, rng)));
    }
    std::vector<Schedule> expected;
    for (const auto& r : initial) {
        if (r.violations == 0 && oracle::nondominated_in(r, initial)) {
            expected.push_back(r.schedule);
        }
    }
    std::vector<Schedule> got;
    for (const auto& r : result.pareto_front) {
        got.push_back(r.schedule);
    }
    EXPECT_EQ(got, expected);
}

TEST(RunNsga2, DeterministicAndThreadIndependent)
{
    const ProblemInstance p = gen_scenario_equatorial({.count = 30});
    GAParams params;
    params.population_size = 24;
    params.generations = 8;
    params.rng_seed = 11;
    const Nsga2Result a = run_nsga2(p, params);
    params.threads = 3;
    const Nsga2Result b = run_nsga2(p, params);
    ASSERT_EQ(a.pareto_front.size(), b.pareto_front.size());
    for (std::size_t i = 0; i < a.pareto_front.size(); ++i) {
        EXPECT_EQ(a.pareto_front[i].schedule, b.pareto_front[i].schedule);
        EXPECT_EQ(a.pareto_front[i].objectives, b.pareto_front[i].objectives);
    }
    ASSERT_EQ(a.stats.size(), 9U);
    for (std::size_t g = 0; g < a.stats.size(); ++g) {
        EXPECT_EQ(a.stats[g].altitude, b.stats[g].altitude);
        EXPECT_EQ(a.stats[g].best_violations, b.stats[g].best_violations);
    }
}

TEST(RunNsga2, FrontIsNondominatedAndFeasible)
{
    const ProblemInstance p = gen_scenario_equatorial({.count = 40});
    GAParams params;
    params.population_size = 40;
    params.generations = 20;
    const Nsga2Result r = run_nsga2(p, params);
    ASSERT_FALSE(r.pareto_front.empty());
    for (const auto& member : r.pareto_front) {
        EXPECT_EQ(member.violations, 0);
        EXPECT_TRUE(oracle::nondominated_in(member, r.population));
        EXPECT_TRUE(is_feasible(p, member.schedule).ok);
    }
}

TEST(VisibilityRatio, Examples)
{
    ProblemInstance p = base_instance();
    p.targets = {make_target("north", 0, 80), make_target("south", 0, -80)};
    p.tickets = {make_ticket("kn", 0), make_ticket("ks", 1)};
    const Instant ns = p.night.start;
    EXPECT_EQ(visibility_ratio(p, Schedule{{{ns, 0, 1}, {ns + 1000, 0, 1}}}), 1);
    EXPECT_EQ(visibility_ratio(p, Schedule{{{ns, 1, 1}}}), 0);
    EXPECT_EQ(visibility_ratio(p, Schedule{{{ns, 0, 1}, {ns + 1000, 1, 1}}}), 0.5);
    EXPECT_EQ(visibility_ratio(p, Schedule{}), 0);
}

TEST(VisibilityRatio, RandomSchedulesAverageOneHalf)
{
    const ProblemInstance p = gen_scenario_equatorial({});
    Rng rng(123);
    double sum = 0;
    for (int i = 0; i < 10000; ++i) {
        sum += visibility_ratio(p, random_schedule(p, rng));
    }
    EXPECT_NEAR(sum / 10000, 0.5, 0.02);
}

TEST(SimpleGa, LayoutFillsTheNight)
{
    const ProblemInstance p = gen_scenario_equatorial({});
    GAParams params;
    const SlotLayout l = simple_ga_layout(p, params);
    // 12 h / (10 s + 90 s + 600 s) = 61.7.
    EXPECT_EQ(l.count, 61U);
    EXPECT_DOUBLE_EQ(l.length, 12 * 3600.0 / 61);
    params.simple_entries = 10;
    EXPECT_EQ(simple_ga_layout(p, params).count, 10U);
}

TEST(SimpleGa, TwoFoldCrossover)
{
    const Schedule a{{{0, 0, 1}, {1, 1, 1}, {2, 2, 1}}};
    const Schedule b{{{0, 2, 1}, {1, 2, 1}, {2, 0, 1}}};
    auto [c, d] = two_fold_crossover(a, b, 0);
    EXPECT_EQ(c, b);
    EXPECT_EQ(d, a);
    std::tie(c, d) = two_fold_crossover(a, b, 2);
    EXPECT_EQ(c, (Schedule{{{0, 0, 1}, {1, 1, 1}, {2, 0, 1}}}));
    EXPECT_EQ(d, (Schedule{{{0, 2, 1}, {1, 2, 1}, {2, 2, 1}}}));
}

TEST(SimpleGa, Roulette)
{
    Rng rng(9);
    const std::vector<double> only_one{0, 1, 0};
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(roulette_select(only_one, rng), 1U);
    }
    const std::vector<double> zeros(4, 0.0);
    std::array<int, 4> hits{};
    for (int i = 0; i < 8000; ++i) {
        ++hits[roulette_select(zeros, rng)];
    }
    for (int h : hits) {
        EXPECT_NEAR(h / 8000.0, 0.25, 0.03);
    }
    const std::vector<double> weighted{1, 3};
    int second = 0;
    for (int i = 0; i < 8000; ++i) {
        second += roulette_select(weighted, rng) == 1 ? 1 : 0;
    }
    EXPECT_NEAR(second / 8000.0, 0.75, 0.03);
}

TEST(SimpleGa, FullEliteIsStatic)
{
    const ProblemInstance p = gen_scenario_equatorial({});
    GAParams params;
    params.population_size = 20;
    params.elite_fraction = 1.0;
    params.generations = 0;
    const SimpleGaResult start = run_simple_ga(p, params);
    params.generations = 10;
    const SimpleGaResult end = run_simple_ga(p, params);
    for (const auto& s : start.population) {
        EXPECT_EQ(std::count(start.population.begin(), start.population.end(), s),
                  std::count(end.population.begin(), end.population.end(), s));
    }
    for (const auto& row : end.stats) {
        EXPECT_DOUBLE_EQ(row.average, end.stats[0].average);
        EXPECT_EQ(row.max, end.stats[0].max);
    }
}

TEST(SimpleGa, Converges)
{
    const ProblemInstance p = gen_scenario_equatorial({});
    GAParams params;
    params.rng_seed = 3;
    const SimpleGaResult r = run_simple_ga(p, params);
    ASSERT_EQ(r.stats.size(), 101U);
    EXPECT_NEAR(r.stats[0].average, 0.5, 0.05);
    EXPECT_GE(r.stats.back().max, 0.99);
    EXPECT_EQ(r.best_fitness, visibility_ratio(p, r.best));
}

}  // namespace
}  // namespace nightsched

// SPDX-License-Identifier: Apache-2.0

#include "nightsched/constraints.hpp"

#include <algorithm>
#include <map>

#include "nightsched/merit.hpp"

namespace nightsched {

int visibility_violations(const ProblemInstance& instance, const Schedule& schedule)
{
    const auto spans = entry_spans(instance, schedule);
    int count = 0;
    for (std::size_t k = 0; k < spans.size(); ++k) {
        const Target& target = instance.target_of(schedule.entries[k].ticket);
        auto visible = [&](Instant t) { return altitude(instance.site, target.coord, t) > target.min_altitude; };
        bool ok = visible(spans[k].end);
        for (Instant t = spans[k].start; ok && t < spans[k].end; t += kVisibilitySampleStep) {
            ok = visible(t);
        }
        count += ok ? 0 : 1;
    }
    return count;
}

int schedule_time_violations(const ProblemInstance& instance, const Schedule& schedule)
{
    std::map<std::size_t, Instant> last_start;
    int count = 0;
    for (const auto& entry : schedule.entries) {
        const Ticket& ticket = instance.ticket(entry.ticket);
        const Instant t = entry.start;
        bool ok = time_fitness_special(t, ticket.windows) == 1;
        if (ticket.time_fitness) {
            ok = ok && std::visit(
                [&](const auto& f) {
                    using F = std::decay_t<decltype(f)>;
                    if constexpr (std::is_same_v<F, IntervalFitness>) {
                        std::optional<Instant> last = f.last_obs_start;
                        if (auto it = last_start.find(entry.ticket); it != last_start.end()) {
                            last = last ? std::max(*last, it->second) : it->second;
                        }
                        return time_fitness_interval(t, last, f.t_var) == 1;
                    } else if constexpr (std::is_same_v<F, PeriodicFitness>) {
                        return time_fitness_periodic(t, f.epoch, f.period, f.phase_start, f.phase_end) == 1;
                    } else {
                        return time_fitness_special(t, f.windows) == 1;
                    }
                },
                *ticket.time_fitness);
        }
        count += ok ? 0 : 1;
        last_start[entry.ticket] = t;
    }
    return count;
}

int unobserved_ticket_violations(const ProblemInstance& instance, const Schedule& schedule, const Night& night)
{
    std::vector<bool> observed(instance.tickets.size(), false);
    for (const auto& entry : schedule.entries) {
        static_cast<void>(instance.ticket(entry.ticket));  // throws on unknown ticket
        observed[entry.ticket] = true;
    }
    int count = 0;
    for (std::size_t i = 0; i < instance.tickets.size(); ++i) {
        const Ticket& ticket = instance.tickets[i];
        if (!ticket.required || observed[i]) {
            continue;
        }
        const bool applicable =
            ticket.windows.empty() || std::any_of(ticket.windows.begin(), ticket.windows.end(), [&](const TimeWindow& w) {
                return w.start <= night.end && w.end >= night.start;
            });
        count += applicable ? 1 : 0;
    }
    return count;
}

int obs_count_violations(const ProblemInstance& instance, const Schedule& schedule)
{
    std::vector<int> occurrences(instance.tickets.size(), 0);
    for (const auto& entry : schedule.entries) {
        static_cast<void>(instance.ticket(entry.ticket));
        ++occurrences[entry.ticket];
    }
    int count = 0;
    for (std::size_t i = 0; i < instance.tickets.size(); ++i) {
        if (const auto& limit = instance.tickets[i].max_observations) {
            count += std::max(0, occurrences[i] - *limit);
        }
    }
    return count;
}

ViolationReport total_violations(const ProblemInstance& instance, const Schedule& schedule, const Night& night)
{
    ViolationReport report;
    report.visibility = visibility_violations(instance, schedule);
    report.schedule_time = schedule_time_violations(instance, schedule);
    report.unobserved = unobserved_ticket_violations(instance, schedule, night);
    report.obs_count = obs_count_violations(instance, schedule);
    report.total = report.visibility + report.schedule_time + report.unobserved + report.obs_count;
    return report;
}

}  // namespace nightsched

// SPDX-License-Identifier: Apache-2.0

#include "nightsched/model.hpp"

#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace nightsched {

namespace {

[[noreturn]] void fail(const std::string& what)
{
    throw InstanceError(what);
}

std::string quoted(const std::string& id)
{
    return "'" + id + "'";
}

void validate_windows(const std::vector<TimeWindow>& windows, const std::string& owner)
{
    for (const auto& w : windows) {
        if (!(std::isfinite(w.start) && std::isfinite(w.end)) || !(w.start < w.end)) {
            fail("TimeWindow: window of " + owner + " must satisfy start < end");
        }
    }
}

void validate_time_fitness(const TimeFitness& fitness, const std::string& owner)
{
    if (const auto* interval = std::get_if<IntervalFitness>(&fitness)) {
        if (!(interval->t_var > 0)) {
            fail("IntervalFitness: t_var of " + owner + " must be > 0");
        }
    } else if (const auto* periodic = std::get_if<PeriodicFitness>(&fitness)) {
        if (!(periodic->period > 0)) {
            fail("PeriodicFitness: period of " + owner + " must be > 0");
        }
        if (!(0 <= periodic->phase_start && periodic->phase_start <= periodic->phase_end
              && periodic->phase_end <= periodic->period)) {
            fail("PeriodicFitness: " + owner + " requires 0 <= phase_start <= phase_end <= period");
        }
    } else {
        validate_windows(std::get<SpecialFitness>(fitness).windows, owner);
    }
}

}  // namespace

const Ticket& ProblemInstance::ticket(std::size_t index) const
{
    if (index >= tickets.size()) {
        fail("schedule references unknown ticket index " + std::to_string(index));
    }
    return tickets[index];
}

const Target& ProblemInstance::target_of(std::size_t ticket_index) const
{
    const Ticket& t = ticket(ticket_index);
    if (t.target >= targets.size()) {
        fail("ticket " + quoted(t.id) + " references unknown target index");
    }
    return targets[t.target];
}

void validate(const ProblemInstance& instance)
{
    const auto& site = instance.site;
    if (!(site.latitude >= -90 && site.latitude <= 90)) {
        fail("Site: latitude must lie in [-90, 90]");
    }
    if (!(site.longitude >= -180 && site.longitude <= 180)) {
        fail("Site: longitude must lie in [-180, 180]");
    }
    if (!(std::isfinite(instance.night.start) && std::isfinite(instance.night.end))
        || !(instance.night.end > instance.night.start)) {
        fail("Night: end must be after start");
    }
    if (!(instance.slew.settle >= 0)) {
        fail("SlewModel: settle must be >= 0");
    }
    if (!(instance.slew.rate > 0)) {
        fail("SlewModel: rate must be > 0");
    }

    if (instance.accounts.empty()) {
        fail("AccountShares: at least one account is required");
    }
    std::set<std::string> account_ids;
    double share_sum = 0;
    for (const auto& account : instance.accounts) {
        if (!account_ids.insert(account.id).second) {
            fail("Account: duplicate id " + quoted(account.id));
        }
        if (!(account.share > 0)) {
            fail("AccountShares: share of account " + quoted(account.id) + " must be > 0");
        }
        share_sum += account.share;
    }
    if (std::abs(share_sum - 1.0) > 1e-9) {
        std::ostringstream msg;
        msg << "AccountShares: shares sum to " << share_sum << ", expected 1";
        fail(msg.str());
    }

    std::set<std::string> target_ids;
    for (const auto& target : instance.targets) {
        if (!target_ids.insert(target.id).second) {
            fail("Target: duplicate id " + quoted(target.id));
        }
        if (!(target.coord.ra >= 0 && target.coord.ra < 360)) {
            fail("EquatorialCoord: ra of target " + quoted(target.id) + " must lie in [0, 360)");
        }
        if (!(target.coord.dec >= -90 && target.coord.dec <= 90)) {
            fail("EquatorialCoord: dec of target " + quoted(target.id) + " must lie in [-90, 90]");
        }
        if (!(target.min_altitude >= -90 && target.min_altitude < 90)) {
            fail("Target: min_altitude of " + quoted(target.id) + " must lie in [-90, 90)");
        }
        const auto& seq = target.sequence;
        if (!(seq.total_time > 0) || !(seq.open_time > 0) || !(seq.open_time <= seq.total_time)) {
            fail("ObservingSequence: target " + quoted(target.id) + " requires 0 < open_time <= total_time");
        }
        if (seq.max_loops < 1) {
            fail("ObservingSequence: max_loops of target " + quoted(target.id) + " must be >= 1");
        }
        if (!seq.loopable && seq.max_loops != 1) {
            fail("ObservingSequence: non-loopable target " + quoted(target.id) + " must have max_loops = 1");
        }
    }

    if (instance.tickets.empty()) {
        fail("ProblemInstance: at least one ticket is required");
    }
    std::set<std::string> ticket_ids;
    bool any_moon_constraint = false;
    for (const auto& ticket : instance.tickets) {
        const std::string owner = "ticket " + quoted(ticket.id);
        if (!ticket_ids.insert(ticket.id).second) {
            fail("Ticket: duplicate id " + quoted(ticket.id));
        }
        if (ticket.target >= instance.targets.size()) {
            fail("Ticket: " + owner + " references a missing target");
        }
        if (ticket.account >= instance.accounts.size()) {
            fail("Ticket: " + owner + " references a missing account");
        }
        validate_windows(ticket.windows, owner);
        if (ticket.max_observations && *ticket.max_observations < 1) {
            fail("Ticket: max_observations of " + owner + " must be >= 1");
        }
        if (ticket.time_fitness) {
            validate_time_fitness(*ticket.time_fitness, owner);
        }
        any_moon_constraint = any_moon_constraint || !ticket.moon_constraints.empty();
    }

    if (instance.moon) {
        const auto& samples = instance.moon->samples;
        for (std::size_t i = 1; i < samples.size(); ++i) {
            if (!(samples[i].time > samples[i - 1].time)) {
                fail("MoonTable: sample instants must be strictly increasing");
            }
        }
        for (const auto& s : samples) {
            if (!(s.phase >= 0 && s.phase < 360) || !(s.coord.ra >= 0 && s.coord.ra < 360)
                || !(s.coord.dec >= -90 && s.coord.dec <= 90)) {
                fail("MoonTable: sample coordinates or phase out of range");
            }
        }
    }
    if (any_moon_constraint && (!instance.moon || instance.moon->samples.size() < 2)) {
        fail("MoonTable: at least 2 samples are required when a ticket declares moon constraints");
    }
}

Seconds slew_time(const SlewModel& model, const std::optional<EquatorialCoord>& from, const EquatorialCoord& to)
{
    if (!from) {
        return model.settle;
    }
    return model.settle + angular_distance(*from, to) / model.rate;
}

Seconds dark_time(const ObservingSequence& seq, Seconds slew, int loops)
{
    return slew + loops * (seq.total_time - seq.open_time);
}

Seconds total_time(const ObservingSequence& seq, Seconds slew, int loops)
{
    if (loops < 1 || loops > seq.max_loops) {
        throw std::invalid_argument("loop count " + std::to_string(loops) + " outside [1, "
                                    + std::to_string(seq.max_loops) + "]");
    }
    return slew + loops * seq.total_time;
}

namespace {

// Unchecked span arithmetic; schedules under evaluation may carry
// out-of-range loop counts.
EntrySpan span_from(const ProblemInstance& instance, const ObservationEntry& entry,
                    const std::optional<EquatorialCoord>& previous)
{
    const Target& target = instance.target_of(entry.ticket);
    const auto& seq = target.sequence;
    EntrySpan span;
    span.start = entry.start;
    span.slew = slew_time(instance.slew, previous, target.coord);
    span.end = entry.start + span.slew + entry.loops * seq.total_time;
    span.midpoint = entry.start + span.slew + entry.loops * seq.open_time / 2.0;
    return span;
}

}  // namespace

EntrySpan entry_span(const ProblemInstance& instance, const Schedule& schedule, std::size_t k)
{
    if (k >= schedule.size()) {
        throw std::out_of_range("entry index " + std::to_string(k) + " out of range");
    }
    std::optional<EquatorialCoord> previous;
    if (k > 0) {
        previous = instance.target_of(schedule.entries[k - 1].ticket).coord;
    }
    return span_from(instance, schedule.entries[k], previous);
}

std::vector<EntrySpan> entry_spans(const ProblemInstance& instance, const Schedule& schedule)
{
    std::vector<EntrySpan> spans;
    spans.reserve(schedule.size());
    std::optional<EquatorialCoord> previous;
    for (const auto& entry : schedule.entries) {
        spans.push_back(span_from(instance, entry, previous));
        previous = instance.target_of(entry.ticket).coord;
    }
    return spans;
}

Feasibility is_feasible(const ProblemInstance& instance, const Schedule& schedule)
{
    if (schedule.empty()) {
        return {};
    }
    const auto spans = entry_spans(instance, schedule);
    for (std::size_t k = 0; k + 1 < spans.size(); ++k) {
        if (spans[k + 1].start < spans[k].end) {
            return {false, FeasibilityCondition::Ordering};
        }
    }
    for (const auto& entry : schedule.entries) {
        if (entry.loops < 1) {
            return {false, FeasibilityCondition::LoopCount};
        }
    }
    if (schedule.entries.front().start < instance.night.start) {
        return {false, FeasibilityCondition::StartAfterNight};
    }
    if (schedule.entries.back().start > instance.night.end) {
        return {false, FeasibilityCondition::StartBeforeEnd};
    }
    return {};
}

AccountUsage account_usage(const ProblemInstance& instance, const Schedule& schedule)
{
    AccountUsage usage;
    usage.seconds.assign(instance.accounts.size(), 0.0);
    usage.fractions.assign(instance.accounts.size(), 0.0);

    const auto spans = entry_spans(instance, schedule);
    for (std::size_t k = 0; k < spans.size(); ++k) {
        const Ticket& ticket = instance.ticket(schedule.entries[k].ticket);
        usage.seconds.at(ticket.account) += spans[k].end - spans[k].start;
    }
    usage.total = std::accumulate(usage.seconds.begin(), usage.seconds.end(), 0.0);
    if (usage.total > 0) {
        for (std::size_t a = 0; a < usage.seconds.size(); ++a) {
            usage.fractions[a] = usage.seconds[a] / usage.total;
        }
    }
    return usage;
}

}  // namespace nightsched

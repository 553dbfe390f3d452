// SPDX-License-Identifier: Apache-2.0
//
// Problem data model: observing sequences, targets, tickets, accounts and
// schedules, together with the duration arithmetic and the feasibility
// predicate of a night schedule.

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "nightsched/ephemeris.hpp"

namespace nightsched {

/// Thrown when an instance is malformed or a schedule references something
/// the instance does not contain.
class InstanceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct ObservingSequence {
    Seconds total_time{0};  // one loop
    Seconds open_time{0};   // shutter open time of one loop
    bool loopable{false};
    int max_loops{1};
};

struct Target {
    std::string id;
    EquatorialCoord coord;
    Degrees min_altitude{0};
    ObservingSequence sequence;
};

struct TimeWindow {
    Instant start{0};
    Instant end{0};

    [[nodiscard]] bool contains(Instant t) const { return t >= start && t <= end; }
};

// Moon constraints. Each one must hold for an observation to be worth doing.
struct MoonAltitudeLimit {
    Degrees max_altitude{0};
};
struct MoonPhaseAltitudeLimit {
    Degrees phase_from{0};
    Degrees phase_to{0};
    Degrees max_altitude{0};
};
struct MoonDistanceLimit {
    Degrees min_distance{0};
    Degrees min_phase{0};
};
using MoonConstraint = std::variant<MoonAltitudeLimit, MoonPhaseAltitudeLimit, MoonDistanceLimit>;

// Time-fitness predicates a ticket may declare.
struct IntervalFitness {
    Seconds t_var{0};
    std::optional<Instant> last_obs_start;
};
struct PeriodicFitness {
    Instant epoch{0};   // P_s
    Seconds period{0};  // P_l
    Seconds phase_start{0};
    Seconds phase_end{0};
};
struct SpecialFitness {
    std::vector<TimeWindow> windows;
};
using TimeFitness = std::variant<IntervalFitness, PeriodicFitness, SpecialFitness>;

struct Ticket {
    std::string id;
    std::size_t target{0};   // index into ProblemInstance::targets
    std::size_t account{0};  // index into ProblemInstance::accounts
    std::vector<TimeWindow> windows;  // empty means anytime
    bool required{false};
    std::optional<int> max_observations;
    std::vector<MoonConstraint> moon_constraints;
    std::optional<TimeFitness> time_fitness;
};

struct Account {
    std::string id;
    double share{0};
};

struct SlewModel {
    Seconds settle{0};
    double rate{1};  // degrees per second
};

struct ProblemInstance {
    Site site;
    Night night;
    std::vector<Account> accounts;
    SlewModel slew;
    std::vector<Target> targets;
    std::vector<Ticket> tickets;
    std::optional<MoonTable> moon;

    [[nodiscard]] const Ticket& ticket(std::size_t index) const;
    [[nodiscard]] const Target& target_of(std::size_t ticket_index) const;
};

/// Checks every structural invariant (cross references, shares, windows,
/// sequences). Throws InstanceError naming the violated invariant.
void validate(const ProblemInstance& instance);

struct ObservationEntry {
    Instant start{0};
    std::size_t ticket{0};
    int loops{1};

    friend bool operator==(const ObservationEntry&, const ObservationEntry&) = default;
};

struct Schedule {
    std::vector<ObservationEntry> entries;

    [[nodiscard]] std::size_t size() const { return entries.size(); }
    [[nodiscard]] bool empty() const { return entries.empty(); }

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

Seconds slew_time(const SlewModel& model, const std::optional<EquatorialCoord>& from, const EquatorialCoord& to);

Seconds dark_time(const ObservingSequence& seq, Seconds slew, int loops);

/// TT = slew + loops * total_time. Throws std::invalid_argument when loops
/// is outside [1, max_loops].
Seconds total_time(const ObservingSequence& seq, Seconds slew, int loops);

struct EntrySpan {
    Instant start{0};
    Instant end{0};
    Seconds slew{0};
    Instant midpoint{0};  // start + slew + loops * open_time / 2
};

/// Timing of entry k, slewing from the previous entry's target.
EntrySpan entry_span(const ProblemInstance& instance, const Schedule& schedule, std::size_t k);

/// Spans of every entry in one pass.
std::vector<EntrySpan> entry_spans(const ProblemInstance& instance, const Schedule& schedule);

enum class FeasibilityCondition {
    Ordering = 1,       // SS[k+1] >= end of entry k
    LoopCount = 2,      // SL[k] >= 1
    StartAfterNight = 3,  // SS[1] >= N_s
    StartBeforeEnd = 4,   // SS[s] <= N_e
};

struct Feasibility {
    bool ok{true};
    std::optional<FeasibilityCondition> violated;
};

Feasibility is_feasible(const ProblemInstance& instance, const Schedule& schedule);

struct AccountUsage {
    std::vector<Seconds> seconds;  // OA
    Seconds total{0};              // OT
    std::vector<double> fractions;  // OC
};

AccountUsage account_usage(const ProblemInstance& instance, const Schedule& schedule);

}  // namespace nightsched

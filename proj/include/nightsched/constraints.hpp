// SPDX-License-Identifier: Apache-2.0
//
// Constraint violation counters. Each counter returns how many times the
// schedule breaks one kind of constraint; their sum is the violation count
// used by constrained selection.

#pragma once

#include "nightsched/model.hpp"

namespace nightsched {

inline constexpr Seconds kVisibilitySampleStep = 60.0;

struct ViolationReport {
    int visibility{0};
    int schedule_time{0};
    int unobserved{0};
    int obs_count{0};
    int total{0};

    friend bool operator==(const ViolationReport&, const ViolationReport&) = default;
};

/// Entries whose target is at or below its minimum altitude somewhere in the
/// entry span (both ends plus a 60 s grid).
int visibility_violations(const ProblemInstance& instance, const Schedule& schedule);

/// Entries starting outside their ticket's windows or where the ticket's time
/// fitness is 0 at the start instant. Interval fitness counts earlier entries
/// of the same ticket as previous observations.
int schedule_time_violations(const ProblemInstance& instance, const Schedule& schedule);

/// Required tickets applicable to the night that no entry observes.
int unobserved_ticket_violations(const ProblemInstance& instance, const Schedule& schedule, const Night& night);

/// Sum over tickets of observations beyond max_observations.
int obs_count_violations(const ProblemInstance& instance, const Schedule& schedule);

ViolationReport total_violations(const ProblemInstance& instance, const Schedule& schedule, const Night& night);

inline ViolationReport total_violations(const ProblemInstance& instance, const Schedule& schedule)
{
    return total_violations(instance, schedule, instance.night);
}

}  // namespace nightsched

// SPDX-License-Identifier: Apache-2.0
//
// Small hand-built instances shared by the unit tests.

#pragma once

#include <string>

#include "nightsched/instance_io.hpp"
#include "nightsched/model.hpp"

namespace nightsched::testing {

inline Target make_target(std::string id, double ra, double dec, double total = 100, double open = 50,
                          int max_loops = 1, double min_alt = 0)
{
    Target t;
    t.id = std::move(id);
    t.coord = {ra, dec};
    t.min_altitude = min_alt;
    t.sequence = {total, open, max_loops > 1, max_loops};
    return t;
}

inline Ticket make_ticket(std::string id, std::size_t target, std::size_t account = 0)
{
    Ticket k;
    k.id = std::move(id);
    k.target = target;
    k.account = account;
    return k;
}

/// One account, settle 10 s at 2 deg/s, site at 36 N, an 8 h night.
inline ProblemInstance base_instance()
{
    ProblemInstance p;
    p.site = {36, 0};
    p.night = {parse_utc("2008-03-01T20:00:00Z"), parse_utc("2008-03-02T04:00:00Z")};
    p.accounts = {{"main", 1.0}};
    p.slew = {10, 2};
    return p;
}

/// Targets at ra 0/90/180 on the equator with one ticket each.
inline ProblemInstance three_target_instance()
{
    ProblemInstance p = base_instance();
    p.targets = {make_target("a", 0, 0, 300, 200, 3), make_target("b", 90, 0, 100, 50), make_target("c", 180, 0, 200, 200)};
    p.tickets = {make_ticket("ka", 0), make_ticket("kb", 1), make_ticket("kc", 2)};
    return p;
}

/// Accounts x and y at 0.5 each, no settle time. Tickets k1 (x, 300 s),
/// k2 (y, 100 s), k3 (x, 3600 s) and k4 (y, 3600 s).
inline ProblemInstance two_account_instance()
{
    ProblemInstance p = base_instance();
    p.accounts = {{"x", 0.5}, {"y", 0.5}};
    p.slew = {0, 2};
    p.targets = {make_target("t1", 0, 0, 300, 300), make_target("t2", 0, 0, 100, 100),
                 make_target("t3", 0, 0, 3600, 3600)};
    p.tickets = {make_ticket("k1", 0, 0), make_ticket("k2", 1, 1), make_ticket("k3", 2, 0), make_ticket("k4", 2, 1)};
    return p;
}

}  // namespace nightsched::testing

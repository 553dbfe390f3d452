// SPDX-License-Identifier: Apache-2.0
//
// Positional astronomy used by the scheduler: sidereal time, hour angle,
// altitude, altitude extremes and tabulated Moon state. All angles are in
// degrees, all instants are UTC seconds since the Unix epoch.

#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nightsched {

using Instant = double;  // UTC seconds since 1970-01-01T00:00:00Z
using Seconds = double;
using Degrees = double;

/// Sidereal rotation rate of the Earth, degrees of LST per UTC second.
inline constexpr double kSiderealRate = 360.98564736629 / 86400.0;
inline constexpr double kSiderealDay = 86400.0 * 360.0 / 360.98564736629;

/// Thrown when a time lies outside a tabulated range.
class RangeError : public std::range_error {
  public:
    using std::range_error::range_error;
};

struct Site {
    Degrees latitude{0};
    Degrees longitude{0};  // east positive
};

struct EquatorialCoord {
    Degrees ra{0};
    Degrees dec{0};
};

struct Night {
    Instant start{0};
    Instant end{0};

    [[nodiscard]] Seconds duration() const { return end - start; }
    [[nodiscard]] bool contains(Instant t) const { return t >= start && t <= end; }
};

struct MoonSample {
    Instant time{0};
    EquatorialCoord coord;
    Degrees phase{0};
};

/// Moon ephemeris table; sample instants strictly increasing.
struct MoonTable {
    std::vector<MoonSample> samples;

    [[nodiscard]] bool empty() const { return samples.empty(); }
};

struct MoonState {
    EquatorialCoord coord;
    Degrees phase{0};
};

struct AltitudeRange {
    Degrees min{0};
    Degrees max{0};
};

/// Normalizes to [0, 360).
Degrees normalize_degrees(Degrees angle);

Degrees local_sidereal_time(Instant t, const Site& site);

/// (lst - ra) wrapped to (-180, 180].
Degrees hour_angle(Degrees lst, Degrees ra);

/// Altitude for a given hour angle; the building block of altitude().
Degrees altitude_at_hour_angle(Degrees latitude, Degrees dec, Degrees hour_angle);

Degrees altitude(const Site& site, const EquatorialCoord& coord, Instant t);

/// Altitudes of upper and lower culmination, i.e. the extremes over a full
/// sidereal day.
AltitudeRange daily_altitude_extremes(const Site& site, Degrees dec);

/// First instant >= from at which the object reaches the given hour angle.
Instant next_hour_angle_crossing(const Site& site, Degrees ra, Degrees target_hour_angle, Instant from);

/// Altitude extremes attained within [night.start, night.end]. Requires
/// night.end > night.start.
AltitudeRange night_altitude_extremes(const Site& site, const EquatorialCoord& coord, const Night& night);

/// Great-circle separation in [0, 180].
Degrees angular_distance(const EquatorialCoord& a, const EquatorialCoord& b);

/// Linear interpolation of the Moon table. Right ascension and phase are
/// interpolated along the shorter arc. Throws RangeError outside the table.
MoonState moon_state(const MoonTable& table, Instant t);

}  // namespace nightsched

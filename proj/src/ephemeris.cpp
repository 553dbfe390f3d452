// SPDX-License-Identifier: Apache-2.0

#include "nightsched/ephemeris.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace nightsched {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;
constexpr double kUnixEpochJd = 2440587.5;
constexpr double kJ2000Jd = 2451545.0;

double wrap180(double angle)
{
    double w = std::fmod(angle, 360.0);
    if (w <= -180.0) {
        w += 360.0;
    } else if (w > 180.0) {
        w -= 360.0;
    }
    return w;
}

double arc_interpolate(double from, double to, double fraction)
{
    return normalize_degrees(from + fraction * wrap180(to - from));
}

}  // namespace

Degrees normalize_degrees(Degrees angle)
{
    double w = std::fmod(angle, 360.0);
    if (w < 0.0) {
        w += 360.0;
    }
    // fmod of a tiny negative value can round up to exactly 360
    return w >= 360.0 ? 0.0 : w;
}

Degrees local_sidereal_time(Instant t, const Site& site)
{
    // IAU 1982 GMST polynomial expressed in days from J2000.0 (Meeus 12.4).
    const double days = (t / 86400.0 + kUnixEpochJd) - kJ2000Jd;
    const double centuries = days / 36525.0;
    const double gmst = 280.46061837 + 360.98564736629 * days + 0.000387933 * centuries * centuries
                        - centuries * centuries * centuries / 38710000.0;
    return normalize_degrees(gmst + site.longitude);
}

Degrees hour_angle(Degrees lst, Degrees ra)
{
    return wrap180(lst - ra);
}

Degrees altitude_at_hour_angle(Degrees latitude, Degrees dec, Degrees ha)
{
    const double phi = latitude * kDegToRad;
    const double delta = dec * kDegToRad;
    const double s = std::sin(phi) * std::sin(delta) + std::cos(phi) * std::cos(delta) * std::cos(ha * kDegToRad);
    return std::asin(std::clamp(s, -1.0, 1.0)) * kRadToDeg;
}

Degrees altitude(const Site& site, const EquatorialCoord& coord, Instant t)
{
    const double ha = hour_angle(local_sidereal_time(t, site), coord.ra);
    return altitude_at_hour_angle(site.latitude, coord.dec, ha);
}

AltitudeRange daily_altitude_extremes(const Site& site, Degrees dec)
{
    // Upper culmination happens at H = 0, lower at H = 180. Away from the
    // zenith and nadir these reduce to 90 - phi + dec and phi + dec - 90 in
    // the north, with the signs of phi and dec swapped in the south.
    const double upper = 90.0 - std::abs(site.latitude - dec);
    const double lower = std::abs(site.latitude + dec) - 90.0;
    return {std::clamp(lower, -90.0, 90.0), std::clamp(upper, -90.0, 90.0)};
}

Instant next_hour_angle_crossing(const Site& site, Degrees ra, Degrees target_hour_angle, Instant from)
{
    const double ha = hour_angle(local_sidereal_time(from, site), ra);
    Instant t = from + normalize_degrees(target_hour_angle - ha) / kSiderealRate;
    // One correction step for the quadratic GMST term.
    const double residual = wrap180(target_hour_angle - hour_angle(local_sidereal_time(t, site), ra));
    t += residual / kSiderealRate;
    return std::max(t, from);
}

AltitudeRange night_altitude_extremes(const Site& site, const EquatorialCoord& coord, const Night& night)
{
    const AltitudeRange day = daily_altitude_extremes(site, coord.dec);
    const double at_start = altitude(site, coord, night.start);
    const double at_end = altitude(site, coord, night.end);

    AltitudeRange result{std::min(at_start, at_end), std::max(at_start, at_end)};
    if (next_hour_angle_crossing(site, coord.ra, 0.0, night.start) <= night.end) {
        result.max = day.max;
    }
    if (next_hour_angle_crossing(site, coord.ra, 180.0, night.start) <= night.end) {
        result.min = day.min;
    }
    return result;
}

Degrees angular_distance(const EquatorialCoord& a, const EquatorialCoord& b)
{
    // Vincenty form, well conditioned for both tiny and antipodal separations.
    const double d1 = a.dec * kDegToRad;
    const double d2 = b.dec * kDegToRad;
    const double dra = (b.ra - a.ra) * kDegToRad;
    const double x = std::cos(d2) * std::sin(dra);
    const double y = std::cos(d1) * std::sin(d2) - std::sin(d1) * std::cos(d2) * std::cos(dra);
    const double z = std::sin(d1) * std::sin(d2) + std::cos(d1) * std::cos(d2) * std::cos(dra);
    return std::atan2(std::hypot(x, y), z) * kRadToDeg;
}

MoonState moon_state(const MoonTable& table, Instant t)
{
    const auto& samples = table.samples;
    if (samples.empty() || t < samples.front().time || t > samples.back().time) {
        std::ostringstream msg;
        msg << "moon table does not cover t=" << t;
        if (!samples.empty()) {
            msg << "; valid interval is [" << samples.front().time << ", " << samples.back().time << "]";
        } else {
            msg << "; table is empty";
        }
        throw RangeError(msg.str());
    }

    auto upper = std::upper_bound(samples.begin(), samples.end(), t,
                                  [](Instant value, const MoonSample& s) { return value < s.time; });
    if (upper == samples.end()) {
        const auto& last = samples.back();
        return {last.coord, last.phase};
    }
    const auto& hi = *upper;
    const auto& lo = *(upper - 1);
    if (t == lo.time) {
        return {lo.coord, lo.phase};
    }
    const double f = (t - lo.time) / (hi.time - lo.time);
    MoonState state;
    state.coord.ra = arc_interpolate(lo.coord.ra, hi.coord.ra, f);
    state.coord.dec = lo.coord.dec + f * (hi.coord.dec - lo.coord.dec);
    state.phase = arc_interpolate(lo.phase, hi.phase, f);
    return state;
}

}  // namespace nightsched

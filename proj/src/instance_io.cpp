// SPDX-License-Identifier: Apache-2.0

#include "nightsched/instance_io.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace nightsched {

using nlohmann::json;

namespace {

std::string fixed_text(double value)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
    return std::string(buf, ptr);
}

int parse_field(std::string_view text, std::size_t pos, std::size_t len)
{
    int value = 0;
    if (pos + len > text.size()) {
        throw ParseError("timestamp '" + std::string(text) + "' is truncated");
    }
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, value);
    if (ec != std::errc() || ptr != text.data() + pos + len) {
        throw ParseError("timestamp '" + std::string(text) + "' has a malformed field at column " + std::to_string(pos + 1));
    }
    return value;
}

// Reading helpers that turn missing keys and wrong types into messages
// naming the offending object.
const json& field(const json& object, const char* key, const std::string& owner)
{
    if (!object.is_object()) {
        throw InstanceError(owner + " must be a JSON object");
    }
    auto it = object.find(key);
    if (it == object.end()) {
        throw InstanceError(owner + " is missing required key '" + key + "'");
    }
    return *it;
}

double number(const json& value, const std::string& what)
{
    if (!value.is_number()) {
        throw InstanceError(what + " must be a number");
    }
    const double x = value.get<double>();
    if (!std::isfinite(x)) {
        throw InstanceError(what + " must be finite");
    }
    return x;
}

double number_field(const json& object, const char* key, const std::string& owner)
{
    return number(field(object, key, owner), owner + "." + key);
}

std::string string_field(const json& object, const char* key, const std::string& owner)
{
    const json& value = field(object, key, owner);
    if (!value.is_string()) {
        throw InstanceError(owner + "." + key + " must be a string");
    }
    return value.get<std::string>();
}

std::string id_field(const json& object, const std::string& owner)
{
    std::string id = string_field(object, "id", owner);
    if (id.empty() || id.find_first_of(" \t\r\n#") != std::string::npos) {
        throw InstanceError(owner + " id '" + id + "' must be non-empty without whitespace or '#'");
    }
    return id;
}

Instant instant_field(const json& object, const char* key, const std::string& owner)
{
    return parse_utc(string_field(object, key, owner));
}

bool bool_field(const json& object, const char* key, bool fallback, const std::string& owner)
{
    auto it = object.find(key);
    if (it == object.end()) {
        return fallback;
    }
    if (!it->is_boolean()) {
        throw InstanceError(owner + "." + key + " must be a boolean");
    }
    return it->get<bool>();
}

int int_value(const json& value, const std::string& what)
{
    if (!value.is_number_integer()) {
        throw InstanceError(what + " must be an integer");
    }
    return value.get<int>();
}

const json& array_field(const json& object, const char* key, const std::string& owner)
{
    const json& value = field(object, key, owner);
    if (!value.is_array()) {
        throw InstanceError(owner + "." + key + " must be an array");
    }
    return value;
}

std::vector<TimeWindow> windows_from(const json& array, const std::string& owner)
{
    if (!array.is_array()) {
        throw InstanceError(owner + " windows must be an array of [start, end] pairs");
    }
    std::vector<TimeWindow> windows;
    for (const auto& pair : array) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
            throw InstanceError(owner + " windows must be [start, end] pairs of UTC strings");
        }
        windows.push_back({parse_utc(pair[0].get<std::string>()), parse_utc(pair[1].get<std::string>())});
    }
    return windows;
}

json windows_to(const std::vector<TimeWindow>& windows)
{
    json array = json::array();
    for (const auto& w : windows) {
        array.push_back({format_utc(w.start), format_utc(w.end)});
    }
    return array;
}

MoonConstraint moon_constraint_from(const json& object, const std::string& owner)
{
    if (!object.is_object()) {
        throw InstanceError(owner + " moon constraint must be an object");
    }
    if (object.contains("min_distance")) {
        return MoonDistanceLimit{number_field(object, "min_distance", owner),
                                 number_field(object, "min_phase", owner)};
    }
    if (object.contains("phase_range")) {
        const json& range = object["phase_range"];
        if (!range.is_array() || range.size() != 2) {
            throw InstanceError(owner + ".phase_range must be a [from, to] pair");
        }
        return MoonPhaseAltitudeLimit{number(range[0], owner + ".phase_range"), number(range[1], owner + ".phase_range"),
                                      number_field(object, "max_altitude", owner)};
    }
    return MoonAltitudeLimit{number_field(object, "max_altitude", owner)};
}

json moon_constraint_to(const MoonConstraint& constraint)
{
    return std::visit(
        [](const auto& c) -> json {
            using C = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<C, MoonAltitudeLimit>) {
                return {{"max_altitude", c.max_altitude}};
            } else if constexpr (std::is_same_v<C, MoonPhaseAltitudeLimit>) {
                return {{"phase_range", {c.phase_from, c.phase_to}}, {"max_altitude", c.max_altitude}};
            } else {
                return {{"min_distance", c.min_distance}, {"min_phase", c.min_phase}};
            }
        },
        constraint);
}

TimeFitness time_fitness_from(const json& object, const std::string& owner)
{
    const std::string type = string_field(object, "type", owner + ".time_fitness");
    if (type == "interval") {
        IntervalFitness f;
        f.t_var = number_field(object, "t_var", owner);
        if (object.contains("last_obs_start") && !object["last_obs_start"].is_null()) {
            f.last_obs_start = instant_field(object, "last_obs_start", owner);
        }
        return f;
    }
    if (type == "periodic") {
        return PeriodicFitness{instant_field(object, "epoch", owner), number_field(object, "period", owner),
                               number_field(object, "phase_start", owner), number_field(object, "phase_end", owner)};
    }
    if (type == "special") {
        return SpecialFitness{windows_from(field(object, "windows", owner), owner)};
    }
    throw InstanceError(owner + ".time_fitness has unknown type '" + type + "'");
}

json time_fitness_to(const TimeFitness& fitness)
{
    return std::visit(
        [](const auto& f) -> json {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, IntervalFitness>) {
                json j = {{"type", "interval"}, {"t_var", f.t_var}};
                if (f.last_obs_start) {
                    j["last_obs_start"] = format_utc(*f.last_obs_start);
                }
                return j;
            } else if constexpr (std::is_same_v<F, PeriodicFitness>) {
                return {{"type", "periodic"},
                        {"epoch", format_utc(f.epoch)},
                        {"period", f.period},
                        {"phase_start", f.phase_start},
                        {"phase_end", f.phase_end}};
            } else {
                return {{"type", "special"}, {"windows", windows_to(f.windows)}};
            }
        },
        fitness);
}

}  // namespace

Instant parse_utc(std::string_view text)
{
    // YYYY-MM-DDTHH:MM:SS
    if (text.size() < 19 || text[4] != '-' || text[7] != '-' || (text[10] != 'T' && text[10] != ' ') || text[13] != ':'
        || text[16] != ':') {
        throw ParseError("timestamp '" + std::string(text) + "' is not of the form YYYY-MM-DDTHH:MM:SSZ");
    }
    const int year = parse_field(text, 0, 4);
    const int month = parse_field(text, 5, 2);
    const int day = parse_field(text, 8, 2);
    const int hour = parse_field(text, 11, 2);
    const int minute = parse_field(text, 14, 2);
    const int second = parse_field(text, 17, 2);

    std::size_t pos = 19;
    double fraction = 0;
    if (pos < text.size() && text[pos] == '.') {
        std::size_t end = pos + 1;
        while (end < text.size() && text[end] >= '0' && text[end] <= '9') {
            ++end;
        }
        if (end == pos + 1) {
            throw ParseError("timestamp '" + std::string(text) + "' has an empty fractional part");
        }
        std::from_chars(text.data() + pos, text.data() + end, fraction);
        pos = end;
    }
    if (pos < text.size() && text[pos] == 'Z') {
        ++pos;
    }
    if (pos != text.size()) {
        throw ParseError("timestamp '" + std::string(text) + "' has trailing characters at column " + std::to_string(pos + 1));
    }

    using namespace std::chrono;
    const year_month_day date{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                              std::chrono::day{static_cast<unsigned>(day)}};
    if (!date.ok() || hour > 23 || minute > 59 || second > 60) {
        throw ParseError("timestamp '" + std::string(text) + "' is not a valid calendar time");
    }
    const auto days_since_epoch = sys_days{date}.time_since_epoch().count();
    return static_cast<double>(days_since_epoch) * 86400.0 + hour * 3600.0 + minute * 60.0 + second + fraction;
}

std::string format_utc(Instant t)
{
    using namespace std::chrono;
    const double whole = std::floor(t);
    const auto total = static_cast<long long>(whole);
    long long days = total / 86400;
    long long rem = total % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    const year_month_day date{sys_days{std::chrono::days{days}}};
    char buf[64];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02lld:%02lld:%02lld", static_cast<int>(date.year()),
                  static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()), rem / 3600, (rem / 60) % 60,
                  rem % 60);
    std::string text = buf;
    if (const double fraction = t - whole; fraction > 0) {
        const std::string digits = fixed_text(fraction);  // "0.xxx"
        text += digits.substr(1);
    }
    return text + "Z";
}

ProblemInstance instance_from_json(const json& doc)
{
    if (!doc.is_object()) {
        throw InstanceError("instance must be a JSON object");
    }
    ProblemInstance instance;

    const json& site = field(doc, "site", "instance");
    instance.site.latitude = number_field(site, "latitude", "site");
    instance.site.longitude = number_field(site, "longitude", "site");

    const json& night = field(doc, "night", "instance");
    instance.night.start = instant_field(night, "start", "night");
    instance.night.end = instant_field(night, "end", "night");

    const json& slew = field(doc, "slew", "instance");
    instance.slew.settle = number_field(slew, "settle", "slew");
    instance.slew.rate = number_field(slew, "rate", "slew");

    std::map<std::string, std::size_t> account_index;
    for (const auto& a : array_field(doc, "accounts", "instance")) {
        Account account;
        account.id = id_field(a, "account");
        account.share = number_field(a, "share", "account '" + account.id + "'");
        account_index.emplace(account.id, instance.accounts.size());
        instance.accounts.push_back(std::move(account));
    }

    std::map<std::string, std::size_t> target_index;
    for (const auto& t : array_field(doc, "targets", "instance")) {
        Target target;
        target.id = id_field(t, "target");
        const std::string owner = "target '" + target.id + "'";
        target.coord.ra = number_field(t, "ra", owner);
        target.coord.dec = number_field(t, "dec", owner);
        target.min_altitude = number_field(t, "min_altitude", owner);
        const json& seq = field(t, "sequence", owner);
        target.sequence.total_time = number_field(seq, "total_time", owner + ".sequence");
        target.sequence.open_time = number_field(seq, "open_time", owner + ".sequence");
        target.sequence.loopable = bool_field(seq, "loopable", false, owner + ".sequence");
        target.sequence.max_loops =
            seq.contains("max_loops") ? int_value(seq["max_loops"], owner + ".sequence.max_loops") : 1;
        target_index.emplace(target.id, instance.targets.size());
        instance.targets.push_back(std::move(target));
    }

    for (const auto& k : array_field(doc, "tickets", "instance")) {
        Ticket ticket;
        ticket.id = id_field(k, "ticket");
        const std::string owner = "ticket '" + ticket.id + "'";
        const std::string target_id = string_field(k, "target", owner);
        const std::string account_id = string_field(k, "account", owner);
        auto target = target_index.find(target_id);
        if (target == target_index.end()) {
            throw InstanceError("Ticket: " + owner + " references missing target id '" + target_id + "'");
        }
        auto account = account_index.find(account_id);
        if (account == account_index.end()) {
            throw InstanceError("Ticket: " + owner + " references missing account id '" + account_id + "'");
        }
        ticket.target = target->second;
        ticket.account = account->second;
        if (k.contains("windows")) {
            ticket.windows = windows_from(k["windows"], owner);
        }
        ticket.required = bool_field(k, "required", false, owner);
        if (k.contains("max_observations") && !k["max_observations"].is_null()) {
            ticket.max_observations = int_value(k["max_observations"], owner + ".max_observations");
        }
        if (k.contains("moon")) {
            const json& moon = k["moon"];
            if (!moon.is_array()) {
                throw InstanceError(owner + ".moon must be an array of constraints");
            }
            for (const auto& c : moon) {
                ticket.moon_constraints.push_back(moon_constraint_from(c, owner));
            }
        }
        if (k.contains("time_fitness") && !k["time_fitness"].is_null()) {
            ticket.time_fitness = time_fitness_from(k["time_fitness"], owner);
        }
        instance.tickets.push_back(std::move(ticket));
    }

    if (doc.contains("moon") && !doc["moon"].is_null()) {
        MoonTable table;
        for (const auto& s : array_field(doc, "moon", "instance")) {
            MoonSample sample;
            sample.time = instant_field(s, "time", "moon sample");
            sample.coord.ra = number_field(s, "ra", "moon sample");
            sample.coord.dec = number_field(s, "dec", "moon sample");
            sample.phase = number_field(s, "phase", "moon sample");
            table.samples.push_back(sample);
        }
        instance.moon = std::move(table);
    }

    validate(instance);
    return instance;
}

json instance_to_json(const ProblemInstance& instance)
{
    json doc;
    doc["site"] = {{"latitude", instance.site.latitude}, {"longitude", instance.site.longitude}};
    doc["night"] = {{"start", format_utc(instance.night.start)}, {"end", format_utc(instance.night.end)}};
    doc["slew"] = {{"settle", instance.slew.settle}, {"rate", instance.slew.rate}};
    doc["accounts"] = json::array();
    for (const auto& a : instance.accounts) {
        doc["accounts"].push_back({{"id", a.id}, {"share", a.share}});
    }
    doc["targets"] = json::array();
    for (const auto& t : instance.targets) {
        doc["targets"].push_back({{"id", t.id},
                                  {"ra", t.coord.ra},
                                  {"dec", t.coord.dec},
                                  {"min_altitude", t.min_altitude},
                                  {"sequence",
                                   {{"total_time", t.sequence.total_time},
                                    {"open_time", t.sequence.open_time},
                                    {"loopable", t.sequence.loopable},
                                    {"max_loops", t.sequence.max_loops}}}});
    }
    doc["tickets"] = json::array();
    for (const auto& k : instance.tickets) {
        json ticket = {{"id", k.id},
                       {"target", instance.targets.at(k.target).id},
                       {"account", instance.accounts.at(k.account).id},
                       {"required", k.required}};
        if (!k.windows.empty()) {
            ticket["windows"] = windows_to(k.windows);
        }
        if (k.max_observations) {
            ticket["max_observations"] = *k.max_observations;
        }
        if (!k.moon_constraints.empty()) {
            ticket["moon"] = json::array();
            for (const auto& c : k.moon_constraints) {
                ticket["moon"].push_back(moon_constraint_to(c));
            }
        }
        if (k.time_fitness) {
            ticket["time_fitness"] = time_fitness_to(*k.time_fitness);
        }
        doc["tickets"].push_back(std::move(ticket));
    }
    if (instance.moon) {
        doc["moon"] = json::array();
        for (const auto& s : instance.moon->samples) {
            doc["moon"].push_back(
                {{"time", format_utc(s.time)}, {"ra", s.coord.ra}, {"dec", s.coord.dec}, {"phase", s.phase}});
        }
    }
    return doc;
}

ProblemInstance parse_instance(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        // Translate the byte offset into a line and column.
        const std::size_t offset = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        std::size_t line = 1;
        std::size_t column = 1;
        for (std::size_t i = 0; i < offset; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError("JSON parse error at line " + std::to_string(line) + ", column " + std::to_string(column) + ": "
                         + e.what());
    }
    return instance_from_json(doc);
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InstanceError("cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

ProblemInstance load_instance(const std::string& path)
{
    return parse_instance(read_file(path));
}

std::string digest(std::string_view bytes)
{
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

ProblemInstance gen_scenario_equatorial(const ScenarioOptions& options)
{
    if (options.count < 1) {
        throw std::invalid_argument("scenario needs at least one target");
    }
    if (!(options.night_hours > 0 && options.night_hours < 24)) {
        throw std::invalid_argument("night length must lie in (0, 24) hours");
    }

    ProblemInstance instance;
    instance.site = {options.latitude, 0.0};

    using namespace std::chrono;
    const auto base = sys_days{2008y / January / 1};
    const auto midnight = base + std::chrono::days{static_cast<long long>(options.seed % 366) + 1};
    const double midnight_seconds = static_cast<double>(midnight.time_since_epoch().count()) * 86400.0;
    const double half = options.night_hours * 3600.0 / 2.0;
    instance.night = {midnight_seconds - half, midnight_seconds + half};

    instance.accounts.push_back({"main", 1.0});
    instance.slew = {10.0, 2.0};

    for (int i = 0; i < options.count; ++i) {
        char id[32];
        std::snprintf(id, sizeof id, "ff%03d", i);
        Target target;
        target.id = id;
        target.coord = {360.0 * i / options.count, 0.0};
        target.min_altitude = 0.0;
        target.sequence = {options.sequence_total, options.sequence_open, options.max_loops > 1, options.max_loops};
        instance.targets.push_back(target);

        Ticket ticket;
        ticket.id = "t" + target.id;
        ticket.target = static_cast<std::size_t>(i);
        ticket.account = 0;
        instance.tickets.push_back(std::move(ticket));
    }
    validate(instance);
    return instance;
}

}  // namespace nightsched

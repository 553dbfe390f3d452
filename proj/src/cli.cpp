// SPDX-License-Identifier: Apache-2.0

#include "nightsched/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace nightsched {

std::string format_number(double value)
{
    if (!std::isfinite(value)) {
        throw std::range_error("non-finite value in output");
    }
    if (value == 0.0) {
        return "0";
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

namespace {

std::vector<std::string> split(std::string_view line)
{
    std::vector<std::string> fields;
    std::istringstream in{std::string(line)};
    for (std::string f; in >> f;) {
        fields.push_back(f);
    }
    return fields;
}

double parse_number(const std::string& text, std::size_t line)
{
    double value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw InstanceError("schedule line " + std::to_string(line) + ": '" + text + "' is not a number");
    }
    return value;
}

int parse_int(const std::string& text, std::size_t line)
{
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw InstanceError("schedule line " + std::to_string(line) + ": '" + text + "' is not an integer");
    }
    return value;
}

void write_header(std::ostream& out, const std::string& command, const std::string& instance_digest,
                  const GAParams& params)
{
    out << "# nightsched " << command << '\n';
    out << "# rng " << Rng::kAlgorithm << " seed " << params.rng_seed << '\n';
    out << "# instance fnv1a64 " << instance_digest << '\n';
}

void write_objectives(std::ostream& out, const char* tag, const ObjectiveVector& v)
{
    out << tag << ' ' << format_number(v.altitude) << ' ' << format_number(0.0 - v.distance_neg) << ' '
        << format_number(0.0 - v.account_neg) << ' ' << format_number(v.target_diversity) << ' '
        << format_number(v.observation_diversity) << '\n';
}

}  // namespace

Schedule parse_schedule(const ProblemInstance& instance, std::string_view text, std::optional<int> member)
{
    std::map<std::string, std::size_t> ticket_index;
    for (std::size_t i = 0; i < instance.tickets.size(); ++i) {
        ticket_index.emplace(instance.tickets[i].id, i);
    }

    Schedule schedule;
    std::istringstream in{std::string(text)};
    std::size_t line_number = 0;
    for (std::string line; std::getline(in, line);) {
        ++line_number;
        auto fields = split(line);
        if (fields.empty() || fields.front().starts_with('#')) {
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(fields.front().front()))) {
            if (fields.front() != "SCHED") {
                continue;  // other tagged streams of a run report
            }
            if (fields.size() != 5) {
                throw InstanceError("schedule line " + std::to_string(line_number) + ": SCHED rows have 4 fields");
            }
            if (parse_int(fields[1], line_number) != member.value_or(0)) {
                continue;
            }
            fields.erase(fields.begin(), fields.begin() + 2);
        }
        if (fields.size() != 3) {
            throw InstanceError("schedule line " + std::to_string(line_number) + ": expected 'start ticket loops'");
        }
        ObservationEntry entry;
        entry.start = fields[0].find('T') != std::string::npos ? parse_utc(fields[0]) : parse_number(fields[0], line_number);
        auto ticket = ticket_index.find(fields[1]);
        if (ticket == ticket_index.end()) {
            throw InstanceError("schedule line " + std::to_string(line_number) + ": unknown ticket id '" + fields[1] + "'");
        }
        entry.ticket = ticket->second;
        entry.loops = parse_int(fields[2], line_number);
        schedule.entries.push_back(entry);
    }
    return schedule;
}

void cmd_schedule(const std::string& instance_path, const GAParams& params, std::ostream& out)
{
    const std::string text = read_file(instance_path);
    const ProblemInstance instance = parse_instance(text);
    validate(params);

    write_header(out, "schedule", digest(text), params);
    out << "# params population " << params.population_size << " generations " << params.generations
        << " crossover_p " << format_number(params.crossover_probability) << " mutation_p "
        << format_number(params.mutation_probability) << " min_entry_duration "
        << format_number(params.min_entry_duration) << '\n';
    out << "# columns GEN g avg_alt avg_dist avg_AD avg_tdiv avg_odiv best_violations\n";

    const Nsga2Result result = run_nsga2(instance, params, [&](const GenerationStats& s) {
        out << "GEN " << s.generation << ' ' << format_number(s.altitude) << ' ' << format_number(s.distance) << ' '
            << format_number(s.account) << ' ' << format_number(s.target_diversity) << ' '
            << format_number(s.observation_diversity) << ' ' << s.best_violations << '\n';
    });

    out << "# columns PARETO alt dist AD tdiv odiv\n";
    for (const auto& member : result.pareto_front) {
        write_objectives(out, "PARETO", member.objectives);
    }
    out << "# columns SCHED member start ticket loops\n";
    for (std::size_t m = 0; m < result.pareto_front.size(); ++m) {
        for (const auto& entry : result.pareto_front[m].schedule.entries) {
            out << "SCHED " << m << ' ' << format_number(entry.start) << ' ' << instance.tickets[entry.ticket].id << ' '
                << entry.loops << '\n';
        }
    }
}

void cmd_simple_ga(const std::string& instance_path, const GAParams& params, std::optional<int> runs, std::ostream& out)
{
    const std::string text = read_file(instance_path);
    const ProblemInstance instance = parse_instance(text);
    validate(params);
    if (runs && *runs < 1) {
        throw std::invalid_argument("--runs must be >= 1");
    }

    write_header(out, "simple-ga", digest(text), params);
    out << "# params population " << params.population_size << " generations " << params.generations
        << " crossover_p " << format_number(params.crossover_probability) << " mutation_p "
        << format_number(params.mutation_probability) << " elite " << format_number(params.elite_fraction)
        << " entries " << simple_ga_layout(instance, params).count << '\n';
    out << (runs ? "# columns GEN run g avg_fitness max_fitness\n" : "# columns GEN g avg_fitness max_fitness\n");

    for (int run = 0; run < runs.value_or(1); ++run) {
        GAParams p = params;
        p.rng_seed = params.rng_seed + static_cast<std::uint64_t>(run);
        run_simple_ga(instance, p, [&](const SimpleGaStats& s) {
            out << "GEN ";
            if (runs) {
                out << run << ' ';
            }
            out << s.generation << ' ' << format_number(s.average) << ' ' << format_number(s.max) << '\n';
        });
    }
}

void cmd_gen_scenario(const ScenarioOptions& options, std::ostream& out)
{
    out << instance_to_json(gen_scenario_equatorial(options)).dump(2) << '\n';
}

void cmd_evaluate(const std::string& instance_path, const std::string& schedule_path, std::optional<int> member,
                  std::ostream& out)
{
    const ProblemInstance instance = load_instance(instance_path);
    const Schedule schedule = parse_schedule(instance, read_file(schedule_path), member);

    const Feasibility feasibility = is_feasible(instance, schedule);
    const ObjectiveVector objectives = objective_vector(instance, schedule);
    const ViolationReport violations = total_violations(instance, schedule);
    const AccountUsage usage = account_usage(instance, schedule);

    out << "# nightsched evaluate\n";
    out << "# columns FEASIBLE ok violated_condition (0 = none)\n";
    out << "FEASIBLE " << (feasibility.ok ? 1 : 0) << ' '
        << (feasibility.violated ? static_cast<int>(*feasibility.violated) : 0) << '\n';
    out << "# columns MERITS alt dist AD tdiv odiv\n";
    write_objectives(out, "MERITS", objectives);
    out << "# columns VIOLATIONS visibility schedule_time unobserved obs_count total\n";
    out << "VIOLATIONS " << violations.visibility << ' ' << violations.schedule_time << ' ' << violations.unobserved
        << ' ' << violations.obs_count << ' ' << violations.total << '\n';
    out << "# columns ACCOUNTS";
    for (const auto& account : instance.accounts) {
        out << ' ' << account.id;
    }
    out << "\nACCOUNTS";
    for (double fraction : usage.fractions) {
        out << ' ' << format_number(fraction);
    }
    out << '\n';
}

namespace {

void add_ga_options(CLI::App& cmd, GAParams& params)
{
    cmd.add_option("--population", params.population_size, "population size N (even, >= 4)");
    cmd.add_option("--generations", params.generations, "number of generations");
    cmd.add_option("--seed", params.rng_seed, "64-bit random seed");
    cmd.add_option("--crossover-p", params.crossover_probability, "crossover probability");
    cmd.add_option("--mutation-p", params.mutation_probability, "mutation probability");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Pareto-optimal night observation scheduling"};
    app.require_subcommand(1);

    GAParams params;
    std::string instance_path;
    std::string schedule_path;
    std::string out_path;
    int runs = 1;
    int member = 0;
    ScenarioOptions scenario;

    auto* schedule = app.add_subcommand("schedule", "run NSGA-II and print statistics, Pareto front and schedules");
    schedule->add_option("instance", instance_path, "problem instance JSON")->required();
    add_ga_options(*schedule, params);
    schedule->add_option("--min-entry", params.min_entry_duration, "shortest entry repair may leave, seconds");
    schedule->add_option("--threads", params.threads, "evaluation threads (results do not depend on it)");
    schedule->add_option("--out", out_path, "write output to a file instead of stdout");

    auto* simple = app.add_subcommand("simple-ga", "run the single-objective visibility GA");
    simple->add_option("instance", instance_path, "problem instance JSON")->required();
    add_ga_options(*simple, params);
    simple->add_option("--elite", params.elite_fraction, "elite fraction (0, 1]");
    simple->add_option("--entries", params.simple_entries, "entries per schedule, 0 fills the night");
    auto* runs_opt = simple->add_option("--runs", runs, "independent runs; adds a run column");
    simple->add_option("--out", out_path, "write output to a file instead of stdout");

    auto* gen = app.add_subcommand("gen-scenario", "write an equatorial flat-field scenario as instance JSON");
    gen->add_option("--count", scenario.count, "number of targets");
    gen->add_option("--lat", scenario.latitude, "site latitude, degrees");
    gen->add_option("--night-hours", scenario.night_hours, "night length, hours");
    gen->add_option("--seed", scenario.seed, "seed choosing the date");
    gen->add_option("--out", out_path, "write output to a file instead of stdout");

    auto* evaluate_cmd = app.add_subcommand("evaluate", "evaluate a schedule listing against an instance");
    evaluate_cmd->add_option("instance", instance_path, "problem instance JSON")->required();
    evaluate_cmd->add_option("schedule", schedule_path, "schedule rows or a schedule run report")->required();
    auto* member_opt = evaluate_cmd->add_option("--member", member, "front member to take from SCHED rows");
    evaluate_cmd->add_option("--out", out_path, "write output to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            err << "error: cannot write '" << out_path << "'\n";
            return kExitUsage;
        }
    }
    std::ostream& sink = out_path.empty() ? out : file;

    try {
        if (*schedule) {
            cmd_schedule(instance_path, params, sink);
        } else if (*simple) {
            cmd_simple_ga(instance_path, params, runs_opt->count() > 0 ? std::optional<int>(runs) : std::nullopt, sink);
        } else if (*gen) {
            cmd_gen_scenario(scenario, sink);
        } else {
            cmd_evaluate(instance_path, schedule_path, member_opt->count() > 0 ? std::optional<int>(member) : std::nullopt,
                         sink);
        }
    } catch (const InstanceError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInstance;
    } catch (const std::range_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitRange;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    sink.flush();
    return kExitOk;
}

}  // namespace nightsched

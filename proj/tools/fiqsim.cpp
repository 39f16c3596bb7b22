// fiqsim: construct, evolve, measure, and statistically probe quantities
// whose digits actualize lazily from exact rational propensities.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fiq/actualization.hpp"
#include "fiq/domains.hpp"
#include "fiq/dynamics.hpp"
#include "fiq/experiments.hpp"
#include "fiq/fiq.hpp"
#include "fiq/quantity_spec.hpp"
#include "fiq/random.hpp"
#include "fiq/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;
constexpr int kExitStatistical = 3;

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

void write_text(const std::optional<std::string>& path, const std::string& text) {
    if (path) {
        std::ofstream out(*path);
        if (!out) throw std::runtime_error("cannot write " + *path);
        out << text;
    } else {
        std::cout << text;
    }
}

// Every run echoes its effective configuration, defaults included.
void echo_config(const nlohmann::json& effective) {
    std::cerr << "config: " << effective.dump() << "\n";
}

nlohmann::json quantity_to_json(const fiq::Quantity& q) {
    if (std::holds_alternative<fiq::Fiq>(q)) return fiq::to_json(std::get<fiq::Fiq>(q));
    const fiq::DigitSource& src = *std::get<std::unique_ptr<fiq::DigitSource>>(q);
    if (const auto* r = dynamic_cast<const fiq::RationalQuantity*>(&src)) {
        const fiq::ExpansionPeriod ep = r->expansion_period();
        return {{"kind", "rational"},
                {"value", fiq::rational_to_string(r->value())},
                {"expansion", {{"preperiod", ep.preperiod}, {"period", ep.period}}}};
    }
    if (const auto* t = dynamic_cast<const fiq::TruncatedReal*>(&src)) {
        return {{"kind", "truncated"}, {"bits", t->bit_string()}, {"cutoff", t->cutoff()}};
    }
    std::string digits;
    for (std::uint64_t j = 1; j <= 16; ++j) digits.push_back('0' + src.digit_at(j));
    return {{"kind", "computable"}, {"generator", src.describe().substr(11)}, {"first_digits", digits}};
}

fiq::Quantity quantity_from_json(const nlohmann::json& j) {
    if (j.contains("prefix") && j.contains("window")) return fiq::fiq_from_json(j);
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "rational") {
        return fiq::make_source("rational:" + j.at("value").get<std::string>());
    }
    if (kind == "truncated") {
        return fiq::make_source("truncated:" + j.at("bits").get<std::string>() + ":" +
                                std::to_string(j.at("cutoff").get<std::uint64_t>()));
    }
    if (kind == "computable") {
        return fiq::make_source("computable:" + j.at("generator").get<std::string>());
    }
    throw std::invalid_argument("unknown quantity kind: " + kind);
}

// Invalid content inside an otherwise well-formed input file is a validation
// failure (exit 1), not a usage error (exit 2).
struct ValidationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

fiq::Quantity load_quantity(const std::string& path) {
    const nlohmann::json j = read_json_file(path);
    try {
        return quantity_from_json(j);
    } catch (const std::invalid_argument& e) {
        throw ValidationFailure(e.what());
    } catch (const nlohmann::json::exception& e) {
        throw ValidationFailure(e.what());
    }
}

int cmd_make(const std::string& spec, const std::optional<std::string>& out) {
    fiq::Quantity q = fiq::parse_quantity_spec(spec);
    echo_config({{"command", "make"}, {"spec", spec}, {"version", fiq::kVersion}});
    write_text(out, quantity_to_json(q).dump(2) + "\n");
    return kExitOk;
}

int cmd_validate(const std::string& path) {
    const nlohmann::json j = read_json_file(path);
    if (!(j.contains("prefix") && j.contains("window"))) {
        quantity_from_json(j);  // construction is the validity check
        std::cout << "{\"ok\": true, \"violations\": []}\n";
        return kExitOk;
    }
    const fiq::FiqCandidate candidate = fiq::candidate_from_json(j);
    const fiq::ValidityReport report = fiq::validate(candidate);
    nlohmann::json out = {{"ok", report.ok()}, {"violations", report.violations}};
    std::cout << out.dump(2) << "\n";
    return report.ok() ? kExitOk : kExitInvariant;
}

int cmd_measure(const std::string& path, std::uint64_t resolution, std::uint64_t seed,
                const std::optional<std::string>& out) {
    fiq::Quantity q = load_quantity(path);
    echo_config({{"command", "measure"},
                 {"input", path},
                 {"resolution", resolution},
                 {"seed", seed},
                 {"stream", 0},
                 {"version", fiq::kVersion}});
    if (!std::holds_alternative<fiq::Fiq>(q)) {
        // Exact domains read their leading digits directly.
        const fiq::DigitSource& src = *std::get<std::unique_ptr<fiq::DigitSource>>(q);
        std::string reading;
        for (std::uint64_t j = 1; j <= resolution; ++j) reading.push_back('0' + src.digit_at(j));
        std::cout << reading << "\n";
        return kExitOk;
    }
    fiq::Fiq& f = std::get<fiq::Fiq>(q);
    fiq::RandomnessSource rng(seed, 0);
    std::cout << fiq::measure(f, resolution, rng) << "\n";
    if (out) write_text(out, fiq::to_json(f).dump(2) + "\n");
    return kExitOk;
}

int cmd_evolve(const std::string& path, const std::string& map_spec, std::uint64_t steps,
               const std::string& engine_spec, std::uint64_t seed,
               const std::optional<std::string>& out, const std::optional<std::string>& save) {
    fiq::Quantity q = load_quantity(path);
    const fiq::MapSpec map = fiq::parse_map_spec(map_spec);
    echo_config({{"command", "evolve"},
                 {"input", path},
                 {"map", map_spec},
                 {"steps", steps},
                 {"engine", engine_spec},
                 {"seed", seed},
                 {"stream", 0},
                 {"version", fiq::kVersion}});

    std::optional<fiq::SpontaneousEngine> engine;
    if (engine_spec.rfind("spontaneous:", 0) == 0) {
        engine.emplace(fiq::parse_rational(engine_spec.substr(12)));
    } else if (engine_spec != "none") {
        throw CLI::ValidationError("--engine", "expected 'none' or 'spontaneous:p/q'");
    }

    std::ostringstream csv;
    fiq::RandomnessSource rng(seed, 0);

    if (std::holds_alternative<fiq::Fiq>(q)) {
        fiq::Fiq& f = std::get<fiq::Fiq>(q);
        csv << "step,emitted_bits,N,M,information_content\n";
        for (std::uint64_t t = 1; t <= steps; ++t) {
            if (engine) engine->step(f, rng);
            std::string emitted;
            if (std::holds_alternative<fiq::ShiftMap>(map)) {
                emitted = fiq::shift_step_fiq(f, std::get<fiq::ShiftMap>(map), rng);
            } else {
                fiq::rotation_step_fiq(f, std::get<fiq::RotationMap>(map));
            }
            csv << t << ',' << emitted << ',' << f.determined_count() << ',' << f.window_end() << ','
                << fiq::information_content(f) << '\n';
        }
        write_text(out, csv.str());
        if (save) write_text(save, fiq::to_json(f).dump(2) + "\n");
        return kExitOk;
    }

    const fiq::DigitSource& src = *std::get<std::unique_ptr<fiq::DigitSource>>(q);
    csv << "step,emitted_bits,value\n";
    if (const auto* t = dynamic_cast<const fiq::TruncatedReal*>(&src)) {
        fiq::TruncatedReal current = *t;
        for (std::uint64_t i = 1; i <= steps; ++i) {
            if (!std::holds_alternative<fiq::ShiftMap>(map)) {
                throw CLI::ValidationError("--map", "truncated quantities evolve under shift only");
            }
            auto traj = fiq::evolve_exact(current, std::get<fiq::ShiftMap>(map), 1);
            current = traj.value;
            csv << i << ',' << traj.emitted << ",0." << current.bit_string() << '\n';
        }
        write_text(out, csv.str());
        if (save) {
            write_text(save, nlohmann::json({{"kind", "truncated"},
                                             {"bits", current.bit_string()},
                                             {"cutoff", current.cutoff()}})
                                     .dump(2) +
                                 "\n");
        }
        return kExitOk;
    }
    const auto* r = dynamic_cast<const fiq::RationalQuantity*>(&src);
    if (r == nullptr) {
        throw CLI::ValidationError("quantity", "evolve supports fiq, rational, and truncated quantities");
    }
    fiq::Rational x = r->value();
    for (std::uint64_t i = 1; i <= steps; ++i) {
        std::string emitted;
        if (std::holds_alternative<fiq::ShiftMap>(map)) {
            emitted = fiq::shift_step_exact(x, std::get<fiq::ShiftMap>(map).s);
        } else {
            fiq::rotation_step_exact(x, std::get<fiq::RotationMap>(map).alpha);
        }
        csv << i << ',' << emitted << ',' << fiq::rational_to_string(x) << '\n';
    }
    write_text(out, csv.str());
    if (save) {
        fiq::RationalQuantity evolved(x);
        const fiq::ExpansionPeriod ep = evolved.expansion_period();
        write_text(save, nlohmann::json({{"kind", "rational"},
                                         {"value", fiq::rational_to_string(x)},
                                         {"expansion", {{"preperiod", ep.preperiod}, {"period", ep.period}}}})
                                 .dump(2) +
                             "\n");
    }
    return kExitOk;
}

int cmd_experiment(const std::string& config_path, const std::optional<std::string>& name,
                   std::optional<std::uint64_t> seed, const std::string& out_dir) {
    nlohmann::json config = read_json_file(config_path);
    if (name) config["name"] = *name;
    if (seed) config["seed"] = *seed;
    const fiq::ExperimentOutput result = fiq::run_experiment(config);

    std::ofstream csv(out_dir + "/results.csv");
    std::ofstream summary(out_dir + "/summary.json");
    if (!csv || !summary) throw std::runtime_error("cannot write outputs under " + out_dir);
    csv << result.results_csv;
    summary << result.summary.dump(2) << "\n";
    std::cout << result.summary.dump(2) << "\n";
    return result.passed ? kExitOk : kExitStatistical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-information quantity simulator"};
    app.set_version_flag("--version", fiq::kVersion);
    app.require_subcommand(1);

    std::string spec, path, map_spec = "shift:1", engine_spec = "none", config_path, out_dir = ".";
    std::optional<std::string> out, save, exp_name;
    std::uint64_t steps = 1, resolution = 1, seed = 0;
    std::optional<std::uint64_t> seed_override;

    auto* make = app.add_subcommand("make", "construct a quantity from a spec string");
    make->add_option("spec", spec, "e.g. rational:1/3, fiq:prefix=101,window=3/10;1/4")->required();
    make->add_option("--out", out, "output path (stdout if omitted)");

    auto* evolve = app.add_subcommand("evolve", "evolve a quantity, writing a trajectory CSV");
    evolve->add_option("input", path, "quantity JSON file")->required();
    evolve->add_option("--map", map_spec, "'shift:s' or 'rotation:p/q'");
    evolve->add_option("--steps", steps, "number of time steps");
    evolve->add_option("--engine", engine_spec, "'none' or 'spontaneous:p/q'");
    evolve->add_option("--seed", seed, "randomness seed");
    evolve->add_option("--out", out, "trajectory CSV path (stdout if omitted)");
    evolve->add_option("--save", save, "write the evolved quantity JSON here");

    auto* measure = app.add_subcommand("measure", "measure a quantity at resolution k");
    measure->add_option("input", path, "quantity JSON file")->required();
    measure->add_option("--resolution", resolution, "digits to determine")->required();
    measure->add_option("--seed", seed, "randomness seed");
    measure->add_option("--out", out, "write the post-measurement quantity JSON here");

    auto* experiment = app.add_subcommand("experiment", "run a named ensemble experiment");
    experiment->add_option("--config", config_path, "experiment config JSON")->required();
    experiment->add_option("--name", exp_name, "override the experiment name");
    experiment->add_option("--seed", seed_override, "override the config seed");
    experiment->add_option("--out-dir", out_dir, "directory for results.csv and summary.json");

    auto* validate = app.add_subcommand("validate", "check a quantity JSON against its invariants");
    validate->add_option("input", path, "quantity JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (make->parsed()) return cmd_make(spec, out);
        if (evolve->parsed()) return cmd_evolve(path, map_spec, steps, engine_spec, seed, out, save);
        if (measure->parsed()) return cmd_measure(path, resolution, seed, out);
        if (experiment->parsed()) return cmd_experiment(config_path, exp_name, seed_override, out_dir);
        if (validate->parsed()) return cmd_validate(path);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ValidationFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const fiq::PrecisionExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitUsage;
}

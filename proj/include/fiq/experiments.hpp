#ifndef FIQ_EXPERIMENTS_HPP
#define FIQ_EXPERIMENTS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fiq/actualization.hpp"
#include "fiq/domains.hpp"
#include "fiq/dynamics.hpp"
#include "fiq/fiq.hpp"
#include "fiq/random.hpp"
#include "fiq/stats.hpp"
#include "fiq/version.hpp"

namespace fiq {

inline constexpr const char* kExperimentSchema = "fiqsim-experiment/1";

/// One completed ensemble experiment: effective config echo, per-replica
/// results, summary statistics, and the overall verdict. Rerunning the echoed
/// config reproduces both output strings byte for byte.
struct ExperimentOutput {
    nlohmann::json summary;
    std::string results_csv;
    bool passed = false;
};

namespace detail {

inline nlohmann::json base_summary(const std::string& name, const nlohmann::json& config) {
    return {{"schema", kExperimentSchema},
            {"name", name},
            {"seed", config.at("seed").get<std::uint64_t>()},
            {"version", kVersion},
            {"config", config}};
}

inline std::string bits_to_string(const std::vector<int>& bits) {
    std::string s;
    s.reserve(bits.size());
    for (int b : bits) s.push_back(b ? '1' : '0');
    return s;
}

inline std::uint64_t reading_to_index(const std::string& reading) {
    std::uint64_t v = 0;
    for (char ch : reading) v = (v << 1) | static_cast<std::uint64_t>(ch - '0');
    return v;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Empirical indistinguishability: FIQ initial conditions versus their
// hidden-variable completion (a real-number IC whose expansion pre-draws the
// tail). Both ensembles run the shift map and are read at resolution k; the
// two k-bit reading histograms are compared by a two-sample chi-square test.

struct IndistinguishabilityParams {
    std::uint64_t k = 3;             // reading resolution in bits
    std::uint64_t replicas = 8000;
    std::uint64_t steps = 5;
    std::uint64_t prefix_depth = 0;  // shared determined prefix per replica pair
    bool seed_matched = false;       // ensemble B reuses ensemble A's actualized digits
    double p_threshold = 0.01;
    std::uint64_t seed = 0;
};

inline ExperimentOutput indistinguishability_test(const IndistinguishabilityParams& p) {
    const std::uint64_t cells = std::uint64_t{1} << p.k;
    const bool underpowered = p.replicas < 5 * cells;
    const ShiftMap map(1);

    std::vector<std::uint64_t> counts_fiq(cells, 0), counts_hv(cells, 0);
    std::uint64_t identical = 0;
    std::ostringstream csv;
    csv << "replica,prefix,reading_fiq,reading_hv\n";

    for (std::uint64_t r = 0; r < p.replicas; ++r) {
        RandomnessSource prefix_rng(p.seed, 3 * r);
        RandomnessSource fiq_rng(p.seed, 3 * r + 1);
        RandomnessSource hv_rng(p.seed, 3 * r + 2);

        std::vector<int> prefix(p.prefix_depth);
        for (auto& b : prefix) b = prefix_rng.next_bit();

        // Ensemble A: lazily actualized FIQ.
        Fiq f(prefix, {});
        const std::string emitted = evolve_fiq(f, map, p.steps, fiq_rng);
        const std::string reading_fiq = measure(f, p.k, fiq_rng);

        // Ensemble B: deterministic completion with pre-drawn digits.
        std::vector<int> digits = prefix;
        if (p.seed_matched) {
            digits.clear();
            for (char ch : emitted) digits.push_back(ch - '0');
            for (char ch : reading_fiq) digits.push_back(ch - '0');
        } else {
            while (digits.size() < p.steps + p.k) digits.push_back(hv_rng.next_bit());
        }
        Int num = 0;
        for (int b : digits) num = (num << 1) | b;
        Rational x = digits.empty() ? Rational(0) : Rational(num, Int(1) << digits.size());
        const ExactTrajectory traj = evolve_exact(x, map, p.steps);
        std::string reading_hv;
        for (std::uint64_t j = 1; j <= p.k; ++j) reading_hv.push_back('0' + binary_digit(traj.value, j));

        counts_fiq[detail::reading_to_index(reading_fiq)]++;
        counts_hv[detail::reading_to_index(reading_hv)]++;
        if (reading_fiq == reading_hv) ++identical;
        csv << r << ',' << detail::bits_to_string(prefix) << ',' << reading_fiq << ',' << reading_hv << '\n';
    }

    const ChiSquareResult chi = chi_square_two_sample(counts_fiq, counts_hv);
    const bool replica_identical = identical == p.replicas;
    const bool passed = chi.p_value > p.p_threshold && (!p.seed_matched || replica_identical);

    nlohmann::json config = {{"schema", kExperimentSchema},
                             {"name", "indistinguishability"},
                             {"seed", p.seed},
                             {"params",
                              {{"k", p.k},
                               {"replicas", p.replicas},
                               {"steps", p.steps},
                               {"prefix_depth", p.prefix_depth},
                               {"seed_matched", p.seed_matched}}},
                             {"tolerances", {{"p_threshold", p.p_threshold}}}};
    nlohmann::json summary = detail::base_summary("indistinguishability", config);
    summary["statistics"] = {{"chi_square", chi.statistic},
                             {"df", chi.df},
                             {"p_value", chi.p_value},
                             {"identical_readings", identical},
                             {"counts_fiq", counts_fiq},
                             {"counts_hidden_variable", counts_hv},
                             {"underpowered", underpowered}};
    summary["pass"] = passed;
    return {std::move(summary), csv.str(), passed};
}

// ---------------------------------------------------------------------------
// Measurement stability: repeated measurements at scheduled resolutions must
// agree on their common prefix, replica by replica.

struct MeasurementStabilityParams {
    std::vector<std::uint64_t> schedule = {2, 4, 8, 8, 4};
    std::uint64_t replicas = 1000;
    std::uint64_t seed = 0;
};

inline ExperimentOutput measurement_stability_test(const MeasurementStabilityParams& p) {
    std::uint64_t violations = 0;
    std::ostringstream csv;
    csv << "replica,readings,violations\n";

    for (std::uint64_t r = 0; r < p.replicas; ++r) {
        RandomnessSource rng(p.seed, r);
        // Random initial condition: a short determined prefix plus a few
        // window propensities, so the schedule hits all three digit regions.
        std::vector<int> prefix(rng.next_below(4));
        for (auto& b : prefix) b = rng.next_bit();
        std::vector<Propensity> window;
        const std::uint64_t wsize = rng.next_below(4);
        for (std::uint64_t i = 0; i < wsize; ++i) {
            const std::uint64_t den = 2 + rng.next_below(29);
            const std::uint64_t num = 1 + rng.next_below(den - 1);
            window.emplace_back(Rational(num, den));
        }
        Fiq f(std::move(prefix), std::move(window));

        std::vector<std::string> readings;
        std::uint64_t local = 0;
        for (std::uint64_t k : p.schedule) {
            readings.push_back(measure(f, k, rng));
        }
        for (std::size_t i = 0; i < readings.size(); ++i) {
            for (std::size_t j = i + 1; j < readings.size(); ++j) {
                const std::size_t common = std::min(readings[i].size(), readings[j].size());
                if (readings[i].compare(0, common, readings[j], 0, common) != 0) ++local;
            }
        }
        violations += local;
        csv << r << ',';
        for (std::size_t i = 0; i < readings.size(); ++i) {
            if (i) csv << ';';
            csv << readings[i];
        }
        csv << ',' << local << '\n';
    }

    const bool passed = violations == 0;
    nlohmann::json config = {{"schema", kExperimentSchema},
                             {"name", "measurement_stability"},
                             {"seed", p.seed},
                             {"params", {{"schedule", p.schedule}, {"replicas", p.replicas}}},
                             {"tolerances", {{"max_violations", 0}}}};
    nlohmann::json summary = detail::base_summary("measurement_stability", config);
    summary["statistics"] = {{"violations", violations}};
    summary["pass"] = passed;
    return {std::move(summary), csv.str(), passed};
}

// ---------------------------------------------------------------------------
// Recurrence: rational initial conditions recur with the period of their
// expansion; FIQ initial conditions show only chance-level coincidences of
// the k-digit coarse state.

struct RecurrenceParams {
    std::string ic = "fiq";          // "fiq" or "rational:p/q"
    std::uint64_t k = 10;            // coarse-state resolution
    std::uint64_t steps = 50;
    std::uint64_t replicas = 10000;  // ignored for rational ICs
    double sigmas = 4.0;
    std::uint64_t seed = 0;
};

inline ExperimentOutput recurrence_test(const RecurrenceParams& p) {
    const ShiftMap map(1);
    nlohmann::json config = {{"schema", kExperimentSchema},
                             {"name", "recurrence"},
                             {"seed", p.seed},
                             {"params",
                              {{"ic", p.ic},
                               {"k", p.k},
                               {"steps", p.steps},
                               {"replicas", p.replicas}}},
                             {"tolerances", {{"sigmas", p.sigmas}}}};
    nlohmann::json summary = detail::base_summary("recurrence", config);
    std::ostringstream csv;

    if (p.ic.rfind("rational:", 0) == 0) {
        Rational x = parse_rational(p.ic.substr(9));
        RationalQuantity q(x);  // validates [0,1)
        auto coarse = [&](const Rational& v) {
            std::string s;
            for (std::uint64_t j = 1; j <= p.k; ++j) s.push_back('0' + binary_digit(v, j));
            return s;
        };
        const std::string initial = coarse(x);
        std::uint64_t period = 0;
        for (std::uint64_t t = 1; t <= p.steps; ++t) {
            shift_step_exact(x, map.s);
            if (coarse(x) == initial) {
                period = t;
                break;
            }
        }
        const bool recurred = period != 0;
        csv << "ic,recurred,period\n" << p.ic << ',' << (recurred ? 1 : 0) << ',' << period << '\n';
        summary["statistics"] = {{"recurred", recurred}, {"period", period}};
        summary["pass"] = recurred;
        return {std::move(summary), csv.str(), recurred};
    }

    // FIQ ensemble: coarse state is read (forcing actualization) after every
    // step; recurrence means the initial reading reappears within the run.
    csv << "replica,recurred,return_time\n";
    std::uint64_t recurred_count = 0;
    for (std::uint64_t r = 0; r < p.replicas; ++r) {
        RandomnessSource rng(p.seed, r);
        Fiq f;
        const std::string initial = measure(f, p.k, rng);
        std::uint64_t return_time = 0;
        for (std::uint64_t t = 1; t <= p.steps; ++t) {
            shift_step_fiq(f, map, rng);
            if (measure(f, p.k, rng) == initial) {
                return_time = t;
                break;
            }
        }
        if (return_time != 0) ++recurred_count;
        csv << r << ',' << (return_time != 0 ? 1 : 0) << ',' << return_time << '\n';
    }
    const double fraction = static_cast<double>(recurred_count) / static_cast<double>(p.replicas);
    // Chance of at least one k-digit coincidence in T independent tries:
    // 1 - (1 - 2^-k)^T (the union bound T * 2^-k overshoots for small k).
    const double per_step = 1.0 / static_cast<double>(std::uint64_t{1} << p.k);
    const double baseline = 1.0 - std::pow(1.0 - per_step, static_cast<double>(p.steps));
    const bool passed = within_binomial_band(fraction, baseline, p.replicas, p.sigmas);
    summary["statistics"] = {{"recurrence_fraction", fraction},
                             {"chance_baseline", baseline},
                             {"band", binomial_band(baseline, p.replicas, p.sigmas)}};
    summary["pass"] = passed;
    return {std::move(summary), csv.str(), passed};
}

// ---------------------------------------------------------------------------
// Emergent macro-determinism: the mean of n fully indeterminate quantities,
// each actualized to a fixed depth, has across-replica variance 1/(12n).

struct EmergenceParams {
    std::vector<std::uint64_t> n_values = {1, 10, 100, 1000};
    std::uint64_t replicas = 2000;
    std::uint64_t depth = 16;
    double rel_tolerance = 0.15;
    std::uint64_t seed = 0;
};

inline ExperimentOutput emergence_test(const EmergenceParams& p) {
    std::ostringstream csv;
    csv << "n,replica,mean\n";
    nlohmann::json table = nlohmann::json::array();
    bool passed = true;
    std::uint64_t stream = 0;

    for (std::uint64_t n : p.n_values) {
        std::vector<double> means;
        means.reserve(p.replicas);
        for (std::uint64_t r = 0; r < p.replicas; ++r) {
            RandomnessSource rng(p.seed, stream++);
            double total = 0;
            for (std::uint64_t particle = 0; particle < n; ++particle) {
                Fiq f;
                for (std::uint64_t d = 0; d < p.depth; ++d) actualize_next(f, rng);
                total += f.prefix_value().convert_to<double>();
            }
            const double mean = total / static_cast<double>(n);
            means.push_back(mean);
            csv << n << ',' << r << ',' << mean << '\n';
        }
        const double var = sample_variance(means);
        const double expected = 1.0 / (12.0 * static_cast<double>(n));
        const bool ok = std::abs(var - expected) <= p.rel_tolerance * expected;
        passed = passed && ok;
        table.push_back({{"n", n}, {"variance", var}, {"expected", expected}, {"pass", ok}});
    }

    nlohmann::json config = {{"schema", kExperimentSchema},
                             {"name", "emergence"},
                             {"seed", p.seed},
                             {"params",
                              {{"n_values", p.n_values},
                               {"replicas", p.replicas},
                               {"depth", p.depth}}},
                             {"tolerances", {{"rel_tolerance", p.rel_tolerance}}}};
    nlohmann::json summary = detail::base_summary("emergence", config);
    summary["statistics"] = {{"variance_table", table}};
    summary["pass"] = passed;
    return {std::move(summary), csv.str(), passed};
}

// ---------------------------------------------------------------------------
// Truncated-real unit dependence: rescaling a quantity (a unit change) can
// push digits past the representation cutoff.

struct TruncationDemoParams {
    std::string bits = "101";
    std::uint64_t cutoff = 3;
    Rational scale = Rational(1, 2);
    std::uint64_t seed = 0;  // unused; kept for a uniform config schema
};

inline ExperimentOutput truncation_unit_dependence_demo(const TruncationDemoParams& p) {
    std::vector<int> bits;
    for (char ch : p.bits) bits.push_back(ch - '0');
    TruncatedReal q(bits, p.cutoff);
    const Rational rescaled = q.value() * p.scale;
    const Rational fractional = rescaled - Rational(rational_num(rescaled) / rational_den(rescaled));

    const bool terminating = is_dyadic(fractional);
    const std::uint64_t required = terminating ? dyadic_bit_count(fractional) : 0;
    const bool lossless = terminating && required <= p.cutoff;
    std::string lost;
    if (!terminating) {
        lost = "infinite";
    } else if (required > p.cutoff) {
        lost = std::to_string(required - p.cutoff);
    } else {
        lost = "0";
    }

    std::ostringstream csv;
    csv << "bits,cutoff,scale,rescaled,terminating,required_digits,lost_digits\n";
    csv << p.bits << ',' << p.cutoff << ',' << rational_to_string(p.scale) << ','
        << rational_to_string(rescaled) << ',' << (terminating ? 1 : 0) << ','
        << (terminating ? std::to_string(required) : "inf") << ',' << lost << '\n';

    nlohmann::json config = {{"schema", kExperimentSchema},
                             {"name", "truncation_unit_dependence"},
                             {"seed", p.seed},
                             {"params",
                              {{"bits", p.bits},
                               {"cutoff", p.cutoff},
                               {"scale", rational_to_string(p.scale)}}},
                             {"tolerances", nlohmann::json::object()}};
    nlohmann::json summary = detail::base_summary("truncation_unit_dependence", config);
    summary["statistics"] = {{"rescaled", rational_to_string(rescaled)},
                             {"terminating", terminating},
                             {"required_digits", terminating ? nlohmann::json(required) : nlohmann::json("inf")},
                             {"lost_digits", lost},
                             {"lossless", lossless}};
    summary["pass"] = true;
    return {std::move(summary), csv.str(), true};
}

// ---------------------------------------------------------------------------
// JSON dispatcher: runs a named experiment from a config document and echoes
// the effective configuration, so any summary's "config" field replays.

inline ExperimentOutput run_experiment(const nlohmann::json& config) {
    if (config.value("schema", std::string(kExperimentSchema)) != kExperimentSchema) {
        throw std::invalid_argument("unsupported config schema");
    }
    const std::string name = config.at("name").get<std::string>();
    const std::uint64_t seed = config.value("seed", std::uint64_t{0});
    const nlohmann::json params = config.value("params", nlohmann::json::object());
    const nlohmann::json tol = config.value("tolerances", nlohmann::json::object());

    if (name == "indistinguishability") {
        IndistinguishabilityParams p;
        p.seed = seed;
        p.k = params.value("k", p.k);
        p.replicas = params.value("replicas", p.replicas);
        p.steps = params.value("steps", p.steps);
        p.prefix_depth = params.value("prefix_depth", p.prefix_depth);
        p.seed_matched = params.value("seed_matched", p.seed_matched);
        p.p_threshold = tol.value("p_threshold", p.p_threshold);
        return indistinguishability_test(p);
    }
    if (name == "measurement_stability") {
        MeasurementStabilityParams p;
        p.seed = seed;
        p.schedule = params.value("schedule", p.schedule);
        p.replicas = params.value("replicas", p.replicas);
        return measurement_stability_test(p);
    }
    if (name == "recurrence") {
        RecurrenceParams p;
        p.seed = seed;
        p.ic = params.value("ic", p.ic);
        p.k = params.value("k", p.k);
        p.steps = params.value("steps", p.steps);
        p.replicas = params.value("replicas", p.replicas);
        p.sigmas = tol.value("sigmas", p.sigmas);
        return recurrence_test(p);
    }
    if (name == "emergence") {
        EmergenceParams p;
        p.seed = seed;
        p.n_values = params.value("n_values", p.n_values);
        p.replicas = params.value("replicas", p.replicas);
        p.depth = params.value("depth", p.depth);
        p.rel_tolerance = tol.value("rel_tolerance", p.rel_tolerance);
        return emergence_test(p);
    }
    if (name == "truncation_unit_dependence") {
        TruncationDemoParams p;
        p.seed = seed;
        p.bits = params.value("bits", p.bits);
        p.cutoff = params.value("cutoff", p.cutoff);
        if (params.contains("scale")) p.scale = parse_rational(params["scale"].get<std::string>());
        return truncation_unit_dependence_demo(p);
    }
    throw std::invalid_argument("unknown experiment: " + name);
}

}  // namespace fiq

#endif  // FIQ_EXPERIMENTS_HPP

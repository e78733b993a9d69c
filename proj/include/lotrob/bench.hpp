#pragma once

#include "lotrob/fuzzy.hpp"
#include "lotrob/model.hpp"
#include "lotrob/robust.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace lotrob {

/// SplitMix64: the 64-bit mixer from Steele, Lea and Flood's "Fast
/// splittable pseudorandom number generators" (also the seeding generator
/// of the xoshiro family). Chosen because its output is a pure function of
/// (seed, counter), making instance suites portable and trivially
/// parallel; each generated instance gets its own stream.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    /// Stream k of a master seed: offset by k times the golden-ratio
    /// increment so streams never overlap.
    static SplitMix64 stream(std::uint64_t seed, std::uint64_t k) {
        return SplitMix64(seed + k * UINT64_C(0x9E3779B97F4A7C15));
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += UINT64_C(0x9E3779B97F4A7C15));
        z = (z ^ (z >> 30)) * UINT64_C(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)) * UINT64_C(0x94D049BB133111EB);
        return z ^ (z >> 31);
    }

    /// Uniform integer in [lo, hi] by rejection-free 128-bit scaling.
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>((static_cast<unsigned __int128>(next()) * span) >> 64);
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// Randomized instance shapes mirroring the experimental protocol: unit
/// inventory costs from {1..10}, unit backorder costs from {20..50},
/// capacities (and interval demands) as intervals [X, Y] with X uniform in
/// {0..99} and Y uniform in {100..199}; fuzzy mode draws triangular
/// demands with support [0, 199] and a uniform integer mode.
struct GeneratorConfig {
    int periods = 100;
    int instances = 10;
    std::uint64_t seed = 1;
    bool fuzzy = false;
    bool capacitated = true;
    std::vector<double> goal_betas = {0.0, 0.25, 0.5, 0.75, 1.0};  // d = c + beta*c
    int workers = 1;
};

struct BenchRow {
    int periods = 0;
    int instance = 0;            // index within the batch
    std::uint64_t seed = 0;      // stream seed of the instance
    std::string algorithm;
    double beta = -1;            // goal offset fraction; -1 outside fuzzy runs
    int iterations = 0;
    double seconds = 0;
    double value = 0;            // worst-case objective or necessity degree
};

struct BenchAggregate {
    int periods = 0;
    std::string algorithm;
    double beta = -1;
    int rows = 0;
    double min_seconds = 0, avg_seconds = 0, max_seconds = 0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::vector<BenchAggregate> aggregates;
};

std::vector<Instance> generate_instances(const GeneratorConfig& config);

/// Aggregates recomputed from the rows, grouped by (periods, algorithm,
/// beta) in first-appearance order.
std::vector<BenchAggregate> aggregate_rows(const std::vector<BenchRow>& rows);

/// Solves every generated interval instance with the scenario-cut method
/// and records iterations, wall time around the solve call, and the
/// worst-case objective.
BenchReport run_interval_bench(const GeneratorConfig& config, double epsilon = 1e-4);

/// For every generated fuzzy instance builds the goal (0,0,c,c+beta*c)
/// with c the uncapacitated min-max optimum on the demand supports, then
/// maximizes the necessity of meeting it for each configured beta.
BenchReport run_fuzzy_bench(const GeneratorConfig& config, double xi = 0.01,
                            double epsilon = 1e-4);

struct PolicyRow {
    std::string policy;
    ProductionPlan plan;
    double worst_cost = 0;
    double degree = -1;          // necessity degree; -1 without a goal
};

/// Side-by-side policy table. Interval instances compare the min-max plan
/// against the midpoint and both extreme-scenario plans on worst-case
/// cost. Fuzzy instances (goal required) compare the necessity-maximizing
/// plan against defuzzification policies; worst costs are taken over the
/// scenario cut at the robust plan's certified level.
std::vector<PolicyRow> compare_policies(const Instance& inst,
                                        const std::optional<FuzzyGoal>& goal = std::nullopt,
                                        double xi = 0.01, const RobustOptions& opts = {});

/// CSV with the documented header
/// periods,instance,seed,algorithm,beta,iterations,seconds,value followed
/// by aggregate rows keyed the same way.
void write_csv(const BenchReport& report, std::ostream& sink);

}  // namespace lotrob

#ifndef HVAC_VERIFY_HPP
#define HVAC_VERIFY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "hvac/param_opt.hpp"
#include "hvac/rng.hpp"

namespace hvac {

/// One randomized ordering-theorem instance, reproducible from its
/// parameters alone. f is strictly monotone by construction
/// (x + d sin(e x + p) with |d e| < 0.9, optionally negated); g is a random
/// smooth trigonometric surface; the feasible set is a random finite cloud.
struct VerifyInstance {
    Family family = Family::Type1;
    Monotonicity direction = Monotonicity::Increasing;
    std::uint64_t seed = 0;
    std::uint64_t index = 0;

    struct Generated {
        ObjectiveSpec spec;
        std::vector<double> lambdas;
    };

    Generated generate() const {
        Rng rng = Rng::for_sample(seed ^ (family == Family::Type2 ? 0x1000u : 0u) ^
                                      (direction == Monotonicity::Decreasing ? 0x2000u : 0u),
                                  index);
        Generated out;
        out.spec.family = family;

        double sign = direction == Monotonicity::Increasing ? 1.0 : -1.0;
        double wobble = rng.uniform(0.0, 0.8);
        double freq = rng.uniform(0.5, 3.0);
        if (wobble * freq > 0.9) wobble = 0.9 / freq;
        double phase = rng.uniform(0.0, 6.28);
        double scale = rng.uniform(0.2, 3.0);
        out.spec.f = [sign, wobble, freq, phase, scale](double x) {
            return sign * scale * (x + wobble * std::sin(freq * x + phase));
        };

        double a1 = rng.uniform(-3.0, 3.0), w1 = rng.uniform(0.3, 2.5);
        double v1 = rng.uniform(0.3, 2.5), p1 = rng.uniform(0.0, 6.28);
        double a2 = rng.uniform(-3.0, 3.0), w2 = rng.uniform(0.3, 2.5);
        double v2 = rng.uniform(0.3, 2.5), p2 = rng.uniform(0.0, 6.28);
        out.spec.g = [a1, w1, v1, p1, a2, w2, v2, p2](double x, double y) {
            return a1 * std::sin(w1 * x + v1 * y + p1) +
                   a2 * std::cos(w2 * x - v2 * y + p2);
        };

        int count = rng.uniform_int(2, 100);
        out.spec.feasible.reserve(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i)
            out.spec.feasible.push_back({rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)});

        const int lambda_count = 10;
        std::vector<double> lambdas;
        for (int i = 0; i < lambda_count; ++i) lambdas.push_back(rng.uniform(0.0, 4.0));
        if (index % 4 == 0) lambdas[0] = 0.0;  // exercise the lambda = 0 branch
        std::sort(lambdas.begin(), lambdas.end());
        lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
        out.lambdas = lambdas;
        return out;
    }
};

struct VerifyCounterexample {
    VerifyInstance instance;
    TheoremVerdict verdict;
};

struct VerifyReport {
    std::uint64_t instances_run = 0;
    std::vector<VerifyCounterexample> counterexamples;
    bool pass() const { return counterexamples.empty(); }
};

/// Runs `instances` randomized instances for each of the four
/// (family, direction) cases. `mutate_family` deliberately checks each
/// instance against the wrong family's ordering; it exists so the harness
/// itself can be shown to catch violations.
inline VerifyReport run_verification(std::uint64_t instances, std::uint64_t seed,
                                     bool mutate_family = false,
                                     std::size_t max_counterexamples = 5) {
    VerifyReport report;
    const Family families[] = {Family::Type1, Family::Type2};
    const Monotonicity directions[] = {Monotonicity::Increasing, Monotonicity::Decreasing};
    for (Family family : families)
        for (Monotonicity direction : directions)
            for (std::uint64_t i = 0; i < instances; ++i) {
                VerifyInstance inst{family, direction, seed, i};
                auto gen = inst.generate();
                TheoremVerdict verdict;
                if (mutate_family) {
                    // Check the opposite family's ordering against the real
                    // maximization; counterexamples are expected.
                    bool nonincreasing = (family == Family::Type1) ==
                                         (direction == Monotonicity::Increasing);
                    verdict = check_ordering(gen.spec, gen.lambdas, !nonincreasing, 0.0);
                } else {
                    verdict = check_theorem(gen.spec, gen.lambdas, direction, 0.0);
                }
                ++report.instances_run;
                if (!verdict.pass) {
                    report.counterexamples.push_back({inst, verdict});
                    if (report.counterexamples.size() >= max_counterexamples) return report;
                }
            }
    return report;
}

/// Re-runs a single serialized instance.
inline TheoremVerdict replay_instance(const VerifyInstance& inst) {
    auto gen = inst.generate();
    return check_theorem(gen.spec, gen.lambdas, inst.direction, 0.0);
}

}  // namespace hvac

#endif

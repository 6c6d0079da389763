#pragma once

#include <array>
#include <span>
#include <vector>

#include "maqd/archive.hpp"
#include "maqd/genome.hpp"
#include "maqd/rng.hpp"

namespace maqd {

struct Bounds {
    double lower = -5.0;
    double upper = 5.0;
};

struct VariationConfig {
    double eta = 16.0;               // polynomial mutation distribution index
    std::optional<double> p_mut;     // per-gene rate; defaults to 1/length at use
    double sigma_iso = 0.01;
    double sigma_line = 0.1;

    void validate() const;
};

enum class OperatorKind { PolynomialMutation, IsoLineVariation, TeamCrossover };

enum class Variant { SingleAgent, NaiveMA, MixME };

// Bounded polynomial mutation, one gene. With u <= 0.5 the gene moves toward
// the lower bound by delta = (2u)^(1/(eta+1)) - 1 scaled by (x - lower);
// otherwise toward the upper bound by delta = 1 - (2(1-u))^(1/(eta+1))
// scaled by (upper - x). u = 0.5 is a fixed point.
double polynomial_mutation_gene(double x, double u, double eta, Bounds bounds);

// Each gene mutates independently with probability p_mut (one uniform for the
// coin, one for u); untouched genes are copied bit-exactly.
std::vector<double> polynomial_mutation(std::span<const double> x, const VariationConfig& cfg,
                                        Bounds bounds, RngStream& rng);

// x1 + sigma_iso * eps + sigma_line * xi * (x2 - x1), clamped to bounds.
// eps is per-gene standard normal, xi one shared scalar standard normal.
std::vector<double> isoline_step(std::span<const double> x1, std::span<const double> x2,
                                 std::span<const double> eps, double xi,
                                 const VariationConfig& cfg, Bounds bounds);

// Stochastic wrapper: draws eps gene by gene, then xi.
std::vector<double> isoline_variation(std::span<const double> x1, std::span<const double> x2,
                                      const VariationConfig& cfg, Bounds bounds, RngStream& rng);

// Applies a mutation operator to every agent of one parent team. Agent i
// mutates under the child stream rng.fork(i), so its result depends only on
// its own parameters, not on the other agents' sizes. IsoLineVariation here
// degenerates to isotropic noise around the parent (the parent is its own
// line mate); batch emission pairs two distinct parent teams instead.
TeamGenome naive_team_variation(const TeamGenome& parent, OperatorKind op,
                                const VariationConfig& cfg, Bounds bounds,
                                const RngStream& rng);

// Agent-wise iso-line between corresponding agents of two parent teams.
TeamGenome team_isoline_variation(const TeamGenome& parent, const TeamGenome& mate,
                                  const VariationConfig& cfg, Bounds bounds,
                                  const RngStream& rng);

// Offspring agent i is a verbatim copy of parents[i].agents[i]; requires
// exactly one parent team per agent and homogeneous team shapes.
TeamGenome team_crossover(const std::vector<TeamGenome>& parents);

struct BatchSplit {
    // Offspring counts in fixed operator order; zero entries mean the
    // operator is not used by the variant.
    int polynomial = 0;
    int isoline = 0;
    int crossover = 0;

    int total() const { return polynomial + isoline + crossover; }
};

// MixME splits across all three operators, the other variants across the two
// mutations; remainders go to earlier operators, so counts differ by <= 1.
BatchSplit split_batch(int batch_size, Variant variant);

struct Offspring {
    TeamGenome genome;
    OperatorKind op;
};

// One batch of offspring. Offspring i draws its parents from the archive and
// applies its operator entirely under the child stream rng.fork(i); the
// first split.polynomial offspring use polynomial mutation, then iso-line,
// then team crossover.
std::vector<Offspring> emit_batch(const Archive& archive, int batch_size, Variant variant,
                                  const VariationConfig& cfg, Bounds bounds,
                                  const RngStream& rng);

}  // namespace maqd

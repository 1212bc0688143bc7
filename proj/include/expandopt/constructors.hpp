#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "expandopt/graph.hpp"

namespace expandopt {

/// Parameters of the Lubotzky-Phillips-Sarnak Cayley graph LPS(p, q).
/// Both primes must be distinct, congruent to 1 mod 4, with q > 2*sqrt(p).
struct LpsParams {
    int p;
    int q;
    int legendre;  // Legendre symbol (p|q): +1 -> PSL(2,q), -1 -> PGL(2,q)

    LpsParams(int p, int q);  // validates; throws std::invalid_argument

    /// Vertex count of the resulting graph: q(q^2-1)/2 for PSL, q(q^2-1) for PGL.
    long long vertex_count() const;
};

/// (p+1)-regular Ramanujan graph on PSL(2,q) or PGL(2,q).
///
/// Generators are the p+1 integer quadruples a0^2+a1^2+a2^2+a3^2 = p with
/// a0 > 0 odd and a1, a2, a3 even, mapped to [[a0+i*a1, a2+i*a3],
/// [-a2+i*a3, a0-i*a1]] over F_q where i^2 = -1 (mod q). Vertices are
/// projective classes canonicalized by scaling the first nonzero entry to 1;
/// the PSL case keeps the classes with square determinant. The generator set
/// is closed under inverses, so the Cayley graph is undirected; the result is
/// verified (p+1)-regular, simple and connected.
Graph lps_graph(int p, int q);
Graph lps_graph(const LpsParams& params);

struct RandomRegularParams {
    int n;                                  // >= 3
    int d;                                  // even, 2 <= d < n
    std::uint64_t seed = 0;
    long long max_attempts = 10'000'000;    // budget of permutation draws
};

/// Random d-regular graph: union of d/2 uniform permutations, edges
/// (i, pi_j(i)). A permutation introducing a self-loop or duplicate edge is
/// discarded and redrawn from the stream (whole-sample rejection has
/// acceptance probability ~exp(-(3(d/2) + d(d-2)/2)/2) independent of n and
/// is infeasible beyond tiny d); a disconnected result discards the whole
/// attempt. Deterministic per seed; integer-only sampling.
/// Throws resource exhaustion with the attempt count when the budget runs out.
Graph random_regular(const RandomRegularParams& params);

enum class CirculantReading {
    kOneToHalfD,        // offsets floor(n/d)*k, k = 1..d/2 (default reading)
    kZeroToHalfDMinus1, // literal k = 0..d/2-1 with the k = 0 self-loop dropped
};

/// Circulant comparison graph: vertex i joined to i +- offset (mod n) for
/// each offset. Offsets must be pairwise distinct mod n, nonzero, and != n/2,
/// otherwise the colliding pair is reported.
Graph circulant_regular(int n, int d, CirculantReading reading = CirculantReading::kOneToHalfD);

enum class NamedKind { complete, cycle, path, petersen };

Graph named_graph(NamedKind kind, int n);
NamedKind named_kind_from_string(const std::string& name);

/// LPS parameters that realize an (n, d) pair, if any exist.
std::optional<LpsParams> find_lps_params(long long n, int d);

/// Exhausted-budget error for generators (maps to the resource-limit exit code).
class resource_limit_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace expandopt

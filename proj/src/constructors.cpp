#include "expandopt/constructors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "expandopt/rng.hpp"

namespace expandopt {

namespace {

bool is_prime(int x) {
    if (x < 2) return false;
    for (int f = 2; f * f <= x; ++f)
        if (x % f == 0) return false;
    return true;
}

int pow_mod(long long base, long long exp, int mod) {
    long long result = 1;
    base %= mod;
    if (base < 0) base += mod;
    while (exp > 0) {
        if (exp & 1) result = result * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return static_cast<int>(result);
}

int legendre_symbol(int a, int q) {
    const int e = pow_mod(a, (q - 1) / 2, q);
    return e == q - 1 ? -1 : e;
}

int inverse_mod(int a, int q) { return pow_mod(a, q - 2, q); }

// Projective class of a 2x2 matrix over F_q, entries row-major, scaled so
// the first nonzero entry is 1.
using Mat2 = std::array<int, 4>;

Mat2 canonical(const Mat2& m, int q) {
    for (int x : m) {
        if (x % q != 0) {
            const int inv = inverse_mod(x % q, q);
            Mat2 out;
            for (int k = 0; k < 4; ++k) out[k] = int(1LL * m[k] * inv % q);
            return out;
        }
    }
    throw std::runtime_error("lps: zero matrix cannot be canonicalized");
}

Mat2 multiply(const Mat2& a, const Mat2& b, int q) {
    return {int((1LL * a[0] * b[0] + 1LL * a[1] * b[2]) % q),
            int((1LL * a[0] * b[1] + 1LL * a[1] * b[3]) % q),
            int((1LL * a[2] * b[0] + 1LL * a[3] * b[2]) % q),
            int((1LL * a[2] * b[1] + 1LL * a[3] * b[3]) % q)};
}

// Index of a canonical class in a dense table of size q^3 + q^2:
// classes (1, b, c, d) -> b q^2 + c q + d; classes (0, 1, c, d) -> q^3 + c q + d.
int class_index(const Mat2& m, int q) {
    if (m[0] == 1) return (m[1] * q + m[2]) * q + m[3];
    return q * q * q + m[2] * q + m[3];
}

}  // namespace

LpsParams::LpsParams(int p_in, int q_in) : p(p_in), q(q_in), legendre(0) {
    if (!is_prime(p) || p % 4 != 1)
        throw std::invalid_argument("lps: p = " + std::to_string(p) + " must be a prime congruent to 1 mod 4");
    if (!is_prime(q) || q % 4 != 1)
        throw std::invalid_argument("lps: q = " + std::to_string(q) + " must be a prime congruent to 1 mod 4");
    if (p == q) throw std::invalid_argument("lps: p and q must be distinct");
    if (double(q) <= 2.0 * std::sqrt(double(p)))
        throw std::invalid_argument("lps: requires q > 2*sqrt(p)");
    legendre = legendre_symbol(p, q);
}

long long LpsParams::vertex_count() const {
    const long long full = 1LL * q * (1LL * q * q - 1);
    return legendre == 1 ? full / 2 : full;
}

Graph lps_graph(const LpsParams& params) {
    const int p = params.p;
    const int q = params.q;

    int root = -1;  // i with i^2 = -1 (mod q); exists since q = 1 mod 4
    for (int x = 1; x < q; ++x)
        if (1LL * x * x % q == q - 1) {
            root = x;
            break;
        }
    if (root < 0) throw std::runtime_error("lps: no square root of -1 mod q");

    // All quadruples a0^2+a1^2+a2^2+a3^2 = p with a0 > 0 odd, a1,a2,a3 even.
    const int r = static_cast<int>(std::sqrt(double(p))) + 1;
    const int re = r - (r % 2);  // largest even magnitude to scan
    std::vector<Mat2> generators;
    auto wrap = [q](long long x) { return int(((x % q) + q) % q); };
    for (int a0 = 1; a0 <= r; a0 += 2)
        for (int a1 = -re; a1 <= re; a1 += 2)
            for (int a2 = -re; a2 <= re; a2 += 2)
                for (int a3 = -re; a3 <= re; a3 += 2) {
                    if (a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3 != p) continue;
                    Mat2 m{wrap(a0 + 1LL * root * a1), wrap(a2 + 1LL * root * a3),
                           wrap(-a2 + 1LL * root * a3), wrap(a0 - 1LL * root * a1)};
                    generators.push_back(canonical(m, q));
                }
    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
    if (static_cast<int>(generators.size()) != p + 1)
        throw std::runtime_error("lps: generator enumeration found " + std::to_string(generators.size()) +
                                 " classes, expected p + 1 = " + std::to_string(p + 1));

    // Vertex set: canonical invertible classes; PSL keeps square determinants.
    const bool psl = params.legendre == 1;
    std::vector<int> id_of(static_cast<std::size_t>(q) * q * q + static_cast<std::size_t>(q) * q, -1);
    std::vector<Mat2> verts;
    auto consider = [&](const Mat2& m) {
        const long long det = ((1LL * m[0] * m[3] - 1LL * m[1] * m[2]) % q + q) % q;
        if (det == 0) return;
        if (psl && legendre_symbol(static_cast<int>(det), q) != 1) return;
        id_of[class_index(m, q)] = static_cast<int>(verts.size());
        verts.push_back(m);
    };
    for (int b = 0; b < q; ++b)
        for (int c = 0; c < q; ++c)
            for (int d = 0; d < q; ++d) consider({1, b, c, d});
    for (int c = 0; c < q; ++c)
        for (int d = 0; d < q; ++d) consider({0, 1, c, d});

    if (static_cast<long long>(verts.size()) != params.vertex_count())
        throw std::runtime_error("lps: vertex enumeration found " + std::to_string(verts.size()) +
                                 " classes, expected " + std::to_string(params.vertex_count()));

    std::vector<Edge> edges;
    edges.reserve(verts.size() * (p + 1) / 2);
    for (int u = 0; u < static_cast<int>(verts.size()); ++u) {
        for (const auto& s : generators) {
            const Mat2 w = canonical(multiply(verts[u], s, q), q);
            const int v = id_of[class_index(w, q)];
            if (v < 0) throw std::runtime_error("lps: product left the vertex set");
            if (v == u) throw std::runtime_error("lps: generator fixed a vertex (self-loop)");
            if (u < v) edges.push_back({u, v, 1.0});
        }
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return std::pair{a.u, a.v} < std::pair{b.u, b.v};
    });
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    Graph g(static_cast<int>(verts.size()), std::move(edges));
    const auto deg = g.regular_degree();
    if (!deg || *deg != p + 1)
        throw std::runtime_error("lps: result is not (p+1)-regular");
    if (!is_connected(g)) throw std::runtime_error("lps: result is disconnected");
    return g;
}

Graph lps_graph(int p, int q) { return lps_graph(LpsParams(p, q)); }

Graph random_regular(const RandomRegularParams& params) {
    const int n = params.n;
    const int d = params.d;
    if (n < 3) throw std::invalid_argument("random_regular: requires n >= 3");
    if (d < 2 || d % 2 != 0) throw std::invalid_argument("random_regular: d must be even and >= 2");
    if (d >= n) throw std::invalid_argument("random_regular: requires d < n");

    SplitMix64 rng(params.seed);
    long long draws = 0;
    std::vector<bool> present(static_cast<std::size_t>(n) * n, false);
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::vector<Edge> edges;
    std::vector<std::size_t> trial_keys;

    // One downward Fisher-Yates pass is a uniform draw from any starting
    // arrangement, so the array is never reset; position i is final once
    // visited, which lets a violating draw abort early.
    auto draw_permutation = [&]() -> bool {
        trial_keys.clear();
        for (int i = n - 1; i >= 0; --i) {
            if (i > 0) {
                const int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
                std::swap(perm[i], perm[j]);
            }
            const int pi = perm[i];
            if (pi == i) return false;  // self-loop
            const std::size_t k =
                static_cast<std::size_t>(std::min(i, pi)) * n + static_cast<std::size_t>(std::max(i, pi));
            if (present[k]) return false;  // duplicate edge
            present[k] = true;
            trial_keys.push_back(k);
        }
        return true;
    };

    for (;;) {
        std::fill(present.begin(), present.end(), false);
        edges.clear();
        for (int j = 0; j < d / 2; ++j) {
            for (;;) {
                if (++draws > params.max_attempts)
                    throw resource_limit_error("random_regular: permutation draw budget exhausted after " +
                                               std::to_string(draws - 1) + " attempts");
                if (draw_permutation()) break;
                for (std::size_t k : trial_keys) present[k] = false;  // roll back the partial draw
            }
            for (std::size_t k : trial_keys)
                edges.push_back({static_cast<int>(k / n), static_cast<int>(k % n), 1.0});
        }
        Graph g(n, edges);
        if (is_connected(g)) return g;
        // disconnected: discard the whole attempt, keep drawing from the stream
    }
}

Graph circulant_regular(int n, int d, CirculantReading reading) {
    if (n < 3) throw std::invalid_argument("circulant: requires n >= 3");
    if (d < 2 || d % 2 != 0) throw std::invalid_argument("circulant: d must be even and >= 2");
    if (d >= n) throw std::invalid_argument("circulant: requires d < n");
    const int step = n / d;
    if (step == 0) throw std::invalid_argument("circulant: floor(n/d) is zero");

    std::vector<int> offsets;
    const int k_lo = (reading == CirculantReading::kOneToHalfD) ? 1 : 0;
    const int k_hi = (reading == CirculantReading::kOneToHalfD) ? d / 2 : d / 2 - 1;
    for (int k = k_lo; k <= k_hi; ++k) {
        const int o = static_cast<int>((1LL * step * k) % n);
        if (o == 0) continue;  // literal reading: the k = 0 self-loop is dropped
        offsets.push_back(o);
    }
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        if (2 * offsets[i] % n == 0)
            throw std::invalid_argument("circulant: offset " + std::to_string(offsets[i]) +
                                        " equals n/2 and cannot contribute degree 2");
        for (std::size_t j = i + 1; j < offsets.size(); ++j) {
            if (offsets[i] == offsets[j] || (offsets[i] + offsets[j]) % n == 0)
                throw std::invalid_argument("circulant: offset collision between " + std::to_string(offsets[i]) +
                                            " and " + std::to_string(offsets[j]));
        }
    }

    std::set<std::pair<int, int>> edge_set;
    for (int o : offsets)
        for (int i = 0; i < n; ++i) {
            const int j = (i + o) % n;
            edge_set.emplace(std::min(i, j), std::max(i, j));
        }
    std::vector<Edge> edges;
    edges.reserve(edge_set.size());
    for (const auto& [u, v] : edge_set) edges.push_back({u, v, 1.0});
    Graph g(n, std::move(edges));

    const int expected = 2 * static_cast<int>(offsets.size());
    const auto deg = g.regular_degree();
    if (!deg || *deg != expected)
        throw std::runtime_error("circulant: construction is not " + std::to_string(expected) + "-regular");
    return g;
}

Graph named_graph(NamedKind kind, int n) {
    std::vector<Edge> edges;
    switch (kind) {
        case NamedKind::complete:
            if (n < 1) throw std::invalid_argument("complete graph: requires n >= 1");
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
            return Graph(n, std::move(edges));
        case NamedKind::cycle:
            if (n < 3) throw std::invalid_argument("cycle graph: requires n >= 3");
            for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
            return Graph(n, std::move(edges));
        case NamedKind::path:
            if (n < 1) throw std::invalid_argument("path graph: requires n >= 1");
            for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
            return Graph(n, std::move(edges));
        case NamedKind::petersen: {
            if (n != 10) throw std::invalid_argument("petersen graph: n must be 10");
            // Kneser graph K(5,2): vertices are 2-subsets of {0..4}, edges
            // between disjoint subsets.
            std::vector<std::pair<int, int>> subsets;
            for (int a = 0; a < 5; ++a)
                for (int b = a + 1; b < 5; ++b) subsets.emplace_back(a, b);
            for (int i = 0; i < 10; ++i)
                for (int j = i + 1; j < 10; ++j) {
                    const auto& [a, b] = subsets[i];
                    const auto& [c, d] = subsets[j];
                    if (a != c && a != d && b != c && b != d) edges.push_back({i, j, 1.0});
                }
            return Graph(10, std::move(edges));
        }
    }
    throw std::invalid_argument("named_graph: unknown kind");
}

NamedKind named_kind_from_string(const std::string& name) {
    if (name == "complete") return NamedKind::complete;
    if (name == "cycle") return NamedKind::cycle;
    if (name == "path") return NamedKind::path;
    if (name == "petersen") return NamedKind::petersen;
    throw std::invalid_argument("unknown named graph kind: " + name);
}

std::optional<LpsParams> find_lps_params(long long n, int d) {
    const int p = d - 1;
    if (p < 5 || !is_prime(p) || p % 4 != 1) return std::nullopt;
    for (int q = 5; 1LL * q * (1LL * q * q - 1) / 2 <= n; q += 4) {
        if (!is_prime(q) || q == p) continue;
        if (double(q) <= 2.0 * std::sqrt(double(p))) continue;
        LpsParams params(p, q);
        if (params.vertex_count() == n) return params;
    }
    return std::nullopt;
}

}  // namespace expandopt

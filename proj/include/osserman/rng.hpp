#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <random>

namespace osserman {

/// SplitMix64 step; used to derive independent child seeds from a master
/// seed so that sample i never shares a stream with sample j.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Child seed for stream (salt_a, salt_b) under `master`. Deterministic and
/// order-independent: consuming one stream never shifts another.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t salt_a,
                                 std::uint64_t salt_b = 0) {
    std::uint64_t s = master;
    (void)splitmix64(s);
    s ^= 0xd1342543de82ef95ULL * (salt_a + 1);
    (void)splitmix64(s);
    s ^= 0xaf251af3b0f025b5ULL * (salt_b + 1);
    return splitmix64(s);
}

/// Thin wrapper around a seeded Mersenne Twister with the draw helpers the
/// samplers need.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double normal() {
        std::normal_distribution<double> d(0.0, 1.0);
        return d(gen_);
    }

    double uniform(double lo, double hi) {
        std::uniform_real_distribution<double> d(lo, hi);
        return d(gen_);
    }

    Eigen::VectorXd normal_vector(int n) {
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v[i] = normal();
        return v;
    }

    /// Uniform direction on the Euclidean unit sphere S^{n-1}.
    Eigen::VectorXd unit_sphere(int n) {
        Eigen::VectorXd v = normal_vector(n);
        double norm = v.norm();
        while (norm < 1e-12) {
            v = normal_vector(n);
            norm = v.norm();
        }
        return v / norm;
    }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

}  // namespace osserman

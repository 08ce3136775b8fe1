#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nystrompca/kernels.hpp"

namespace nystrompca::synth {

struct TabularData {
    Matrix features;
    Vector target; // size 0 when the table has no target
    std::vector<std::string> feature_names;
    std::string target_name;
};

// Wind-tunnel-style designed experiment: five physical factors on discrete
// grids with a smooth nonlinear response plus measurement noise. Mimics the
// shape of aerodynamic self-noise tables (1503 rows, 5 features, dB target).
TabularData airfoil_like(int n = 1503, std::uint64_t seed = 7);

// Correlated Gaussian-mixture table with k clusters, numeric features only.
TabularData gaussian_clusters(int n, int p, int k, double spread, std::uint64_t seed);

void write_csv(const TabularData& data, const std::string& path);

} // namespace nystrompca::synth

#include "synthetic_data.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "nystrompca/errors.hpp"
#include "nystrompca/rng.hpp"

namespace nystrompca::synth {

TabularData airfoil_like(int n, std::uint64_t seed) {
    const std::vector<double> freq = {200,  250,  315,  400,  500,   630,   800,
                                      1000, 1250, 1600, 2000, 2500,  3150,  4000,
                                      5000, 6300, 8000, 10000, 12500, 16000, 20000};
    std::vector<double> angle;
    for (int i = 0; i < 16; ++i) angle.push_back(1.5 * i);
    const std::vector<double> chord = {0.0254, 0.0508, 0.1016, 0.1524, 0.2286, 0.3048};
    const std::vector<double> velocity = {31.7, 39.6, 55.5, 71.3};

    SplitMix64 rng(seed);
    TabularData data;
    data.feature_names = {"frequency", "angle_of_attack", "chord_length",
                          "free_stream_velocity", "displacement_thickness"};
    data.target_name = "sound_pressure";
    data.features.resize(n, 5);
    data.target.resize(n);

    for (int i = 0; i < n; ++i) {
        const double f = freq[rng.next_below(freq.size())];
        const double a = angle[rng.next_below(angle.size())];
        const double c = chord[rng.next_below(chord.size())];
        const double u = velocity[rng.next_below(velocity.size())];
        // Boundary-layer thickness grows with incidence and scales with chord.
        const double thickness =
            c * (0.002 + 0.0028 * std::exp(a / 7.0)) * std::exp(0.12 * rng.next_gaussian());

        const double lf = std::log10(f);
        const double response = 122.0 - 4.0 * (lf - 3.0) * (lf - 3.0) +
                                14.0 * std::log10(u / 31.7) -
                                6.0 * std::log10(thickness / 0.002) - 0.35 * a;
        data.features(i, 0) = f;
        data.features(i, 1) = a;
        data.features(i, 2) = c;
        data.features(i, 3) = u;
        data.features(i, 4) = thickness;
        data.target(i) = response + 2.4 * rng.next_gaussian();
    }
    return data;
}

TabularData gaussian_clusters(int n, int p, int k, double spread, std::uint64_t seed) {
    SplitMix64 rng(seed);
    Matrix centers(k, p);
    for (int c = 0; c < k; ++c) {
        for (int j = 0; j < p; ++j) centers(c, j) = 2.2 * rng.next_gaussian();
    }
    // Shared loading matrix so features correlate within clusters.
    Matrix loadings = Matrix::Identity(p, p);
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
            loadings(i, j) += 0.4 * rng.next_gaussian() / std::sqrt(static_cast<double>(p));
        }
    }

    TabularData data;
    data.features.resize(n, p);
    for (int j = 0; j < p; ++j) data.feature_names.push_back("x" + std::to_string(j));
    for (int i = 0; i < n; ++i) {
        const auto cluster = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(k)));
        Vector z(p);
        for (int j = 0; j < p; ++j) z(j) = rng.next_gaussian();
        data.features.row(i) = centers.row(cluster) + spread * (loadings * z).transpose();
    }
    return data;
}

void write_csv(const TabularData& data, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    for (std::size_t j = 0; j < data.feature_names.size(); ++j) {
        if (j > 0) out << ',';
        out << data.feature_names[j];
    }
    const bool has_target = data.target.size() > 0;
    if (has_target) out << ',' << data.target_name;
    out << '\n';
    char buffer[64];
    for (int i = 0; i < data.features.rows(); ++i) {
        for (int j = 0; j < data.features.cols(); ++j) {
            if (j > 0) out << ',';
            std::snprintf(buffer, sizeof(buffer), "%.12g", data.features(i, j));
            out << buffer;
        }
        if (has_target) {
            std::snprintf(buffer, sizeof(buffer), "%.12g", data.target(i));
            out << ',' << buffer;
        }
        out << '\n';
    }
}

} // namespace nystrompca::synth

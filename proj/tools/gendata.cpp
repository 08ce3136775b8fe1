// Writes the bundled synthetic datasets used by the README walkthrough and
// the integration tests.
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "synthetic_data.hpp"

int main(int argc, char** argv) {
    CLI::App app{"generate the bundled synthetic CSV datasets"};
    std::string output = ".";
    app.add_option("--output", output, "output directory")->default_val(".");
    CLI11_PARSE(app, argc, argv);

    namespace fs = std::filesystem;
    fs::create_directories(output);
    using namespace nystrompca::synth;
    try {
        write_csv(airfoil_like(), (fs::path(output) / "airfoil_synth.csv").string());
        write_csv(gaussian_clusters(1000, 8, 3, 0.8, 101),
                  (fs::path(output) / "clusters8.csv").string());
        write_csv(gaussian_clusters(1000, 12, 5, 1.0, 202),
                  (fs::path(output) / "mix12.csv").string());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cout << "wrote airfoil_synth.csv, clusters8.csv, mix12.csv to " << output << "\n";
    return 0;
}

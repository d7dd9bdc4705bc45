// Writes the synthetic 533-ticker dataset (prices.csv, sectors.csv).
#include "corrnet/fixture.hpp"

#include <exception>
#include <iostream>

#include <CLI11.hpp>

int main(int argc, char** argv) {
    CLI::App app{"Generate the synthetic block-structured market fixture", "corrnet-fixture"};
    std::string dir = "fixture";
    corrnet::fixture::Options options;
    app.add_option("--out-dir", dir, "directory for prices.csv and sectors.csv");
    app.add_option("--seed", options.seed, "random seed");
    CLI11_PARSE(app, argc, argv);

    try {
        corrnet::fixture::write_dataset(corrnet::fixture::generate(options), dir);
    } catch (const std::exception& e) {
        std::cerr << "corrnet-fixture: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

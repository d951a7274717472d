#include "spectral_minmax/cli.hpp"

int main(int argc, char** argv) { return spectral_minmax::cli::run(argc, argv); }

#include "rotorbath/cli.hpp"

int main(int argc, char** argv) { return rotorbath::cli::run(argc, argv); }

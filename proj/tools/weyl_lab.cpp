#include "cli/run.hpp"

int main(int argc, char** argv) { return weyl::cli::run(argc, argv); }

#include "spikegue/cli.hpp"

int main(int argc, char** argv) { return spikegue::run_cli(argc, argv); }

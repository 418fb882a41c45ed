#include "chainlab/cli.hpp"

int main(int argc, char** argv) { return chainlab::cli::run(argc, argv); }

#include "slowlight/cli.hpp"

int main(int argc, char** argv) { return slowlight::cli::run(argc, argv); }

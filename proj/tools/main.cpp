#include "privbid/cli.hpp"

int main(int argc, char** argv) { return privbid::cli::run(argc, argv); }

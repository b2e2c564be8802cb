#include "fanosense/cli.hpp"

int main(int argc, char** argv) { return fanosense::cli::run(argc, argv); }

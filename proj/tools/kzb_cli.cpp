#include "kzb/cli.hpp"

int main(int argc, char** argv) { return kzb::run(argc, argv); }

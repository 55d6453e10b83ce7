#include "bcgame/cli.hpp"

int main(int argc, char** argv) { return bcgame::cli::run(argc, argv); }

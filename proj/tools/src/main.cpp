#include "commands.hpp"

int main(int argc, char** argv) { return lociso::cli::run(argc, argv); }

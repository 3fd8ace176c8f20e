#include "bugforecast/cli/app.hpp"

int main(int argc, char** argv) { return bugforecast::cli::run(argc, argv); }

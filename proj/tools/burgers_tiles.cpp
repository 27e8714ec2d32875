#include "burgers/app.hpp"

int main(int argc, char** argv) { return burgers::run_cli(argc, argv); }

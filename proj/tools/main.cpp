#include "kerrcs/app/run.hpp"

int main(int argc, char** argv) { return kerrcs::app::run_cli(argc, argv); }

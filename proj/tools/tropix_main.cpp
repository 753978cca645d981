#include "tropix/cli.hpp"

int main(int argc, char** argv) { return tropix::dispatch(argc, argv); }

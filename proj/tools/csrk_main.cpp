// csrk: inspect, reorder, tune and benchmark sparse matrices in CSR-k form.

#include "csrk/cli.hpp"

int main(int argc, char **argv) { return csrk::run_cli({argv, argv + argc}); }

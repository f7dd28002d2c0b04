#include <iostream>

#include "sepsys/reproduce.hpp"

int main() {
  const bool all_pass = sepsys::run_acceptance_suite(std::cout);
  return all_pass ? 0 : 1;
}

#include <iostream>

#include "anonkit/acceptance.hpp"

int main() {
    const auto results = anonkit::run_acceptance_suite(std::cout);
    return anonkit::all_passed(results) ? 0 : 1;
}

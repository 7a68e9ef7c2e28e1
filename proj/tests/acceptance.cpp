#include <iostream>

#include "barmc/suite.hpp"

int main() {
    barmc::SuiteOptions opt;
    opt.seed = 1;
    auto results = barmc::run_acceptance(opt, std::cout);
    return barmc::all_passed(results) ? 0 : 1;
}

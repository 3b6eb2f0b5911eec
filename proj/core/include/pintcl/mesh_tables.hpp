#pragma once

#include <string>

namespace pintcl {

// Time-level counts paired with each spatial mesh for the standard runs
// (chosen so the sequential march is comfortably CFL-stable on each problem).
// Returns 0 when no value is tabulated for the combination; the caller must
// then supply the time-level count explicitly.
int tabulated_nt(const std::string& problem, const std::string& ic, int nx);

// Final time of each problem's standard run.
double final_time(const std::string& problem);

}  // namespace pintcl

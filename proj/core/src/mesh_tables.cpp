#include "pintcl/mesh_tables.hpp"

#include <stdexcept>

namespace pintcl {

namespace {

struct Row {
  int nx;
  int nt;
};

constexpr Row kBurgersSquare[] = {{64, 161},    {128, 321},   {256, 641},  {512, 1281},
                                  {1024, 2561}, {2048, 5121}, {4096, 10241}};

constexpr Row kBlSquare[] = {{64, 188},    {128, 375},   {256, 748},  {512, 1494},
                             {1024, 2986}, {2048, 5971}, {4096, 11941}};

constexpr Row kBurgersSmooth[] = {{64, 155},    {128, 309},   {256, 617},  {512, 1233},
                                  {1024, 2465}, {2048, 4929}, {4096, 9857}};

int lookup(const Row* rows, int n, int nx) {
  for (int i = 0; i < n; ++i) {
    if (rows[i].nx == nx) return rows[i].nt;
  }
  return 0;
}

}  // namespace

int tabulated_nt(const std::string& problem, const std::string& ic, int nx) {
  if (problem == "burgers" && ic == "square") return lookup(kBurgersSquare, 7, nx);
  if (problem == "bl" && ic == "square") return lookup(kBlSquare, 7, nx);
  if (problem == "burgers" && ic == "smooth") return lookup(kBurgersSmooth, 7, nx);
  return 0;
}

double final_time(const std::string& problem) {
  if (problem == "burgers") return 4.0;
  if (problem == "bl") return 2.0;
  throw std::invalid_argument("final_time: unknown problem '" + problem + "'");
}

}  // namespace pintcl

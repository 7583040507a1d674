#pragma once

#include <cstdio>

namespace privbid::cli {

inline int run(int argc, char** argv) {
  (void)argc;
  (void)argv;
  std::fprintf(stderr, "privbid: not wired up yet\n");
  return 2;
}

}  // namespace privbid::cli

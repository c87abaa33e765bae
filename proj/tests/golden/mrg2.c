/* Generated from code matrix mMerge. */
#include <stdbool.h>
#include <stdint.h>
#include "matrixcode_rt.h"

void mMerge(mc_trinity *io) {
  int64_t u, v;
  enum { S, A, B, C, D, E, F, G, H } state = S;

  for (;;) {
    switch (state) {
    case A:
      if (mc_getR(io, &v)) {
        state = C;
      } else {
        state = D;
      }
      break;
    case B:
      if (mc_getR(io, &v)) {
        mc_putR(io);
        state = B;
      } else {
        state = H;
      }
      break;
    case C:
      if (u <= v) {
        mc_putL(io);
        state = E;
      } else {
        mc_putR(io);
        state = A;
      }
      break;
    case D:
      mc_putL(io);
      state = F;
      break;
    case E:
      if (mc_getL(io, &u)) {
        state = C;
      } else {
        state = G;
      }
      break;
    case F:
      if (mc_getL(io, &u)) {
        state = D;
      } else {
        state = H;
      }
      break;
    case G:
      mc_putR(io);
      state = B;
      break;
    case H:
      return;
    case S:
      if (mc_getL(io, &u)) {
        state = A;
      } else {
        state = B;
      }
      break;
    }
  }
}

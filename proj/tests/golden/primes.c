/* Generated from code matrix prTable. */
#include <stdbool.h>
#include <stdint.h>
#include "matrixcode_rt.h"

void prTable(int64_t N, int64_t p[]) {
  int64_t k, j, n;
  enum { S, A, B, C, H } state = S;

  for (;;) {
    switch (state) {
    case A:
      if (k >= N) {
        state = H;
      } else {
        j = p[k - 1] + 2;
        n = 0;
        state = B;
      }
      break;
    case B:
      if (p[n] * p[n] > j) {
        p[k] = j;
        k = k + 1;
        state = A;
      } else {
        state = C;
      }
      break;
    case C:
      if (j % p[n + 1] != 0) {
        n = n + 1;
        state = B;
      } else {
        j = j + 2;
        n = 0;
        state = C;
      }
      break;
    case H:
      return;
    case S:
      p[0] = 2;
      p[1] = 3;
      k = 2;
      state = A;
      break;
    }
  }
}

/* Generated from code matrix TurCode. */
#include <stdbool.h>
#include <stdint.h>
#include "matrixcode_rt.h"

void TurCode(mc_tape *tape) {
  enum { S, Q0, Q1, Q2, H } state = S;

  for (;;) {
    switch (state) {
    case H:
      return;
    case Q0:
      if (mc_rd(tape) == '(') {
        mc_dir(tape, 'R');
        mc_wr(tape, '(');
        state = Q0;
      } else if (mc_rd(tape) == 'X') {
        mc_dir(tape, 'R');
        mc_wr(tape, 'X');
        state = Q0;
      } else if (mc_rd(tape) == ')') {
        mc_dir(tape, 'L');
        mc_wr(tape, 'X');
        state = Q1;
      } else if (mc_rd(tape) == 'A') {
        mc_dir(tape, 'L');
        mc_wr(tape, 'A');
        state = Q2;
      } else {
        mc_fail();
      }
      break;
    case Q1:
      if (mc_rd(tape) == '(') {
        mc_dir(tape, 'R');
        mc_wr(tape, 'X');
        state = Q0;
      } else if (mc_rd(tape) == ')') {
        mc_dir(tape, 'L');
        mc_wr(tape, ')');
        state = Q1;
      } else if (mc_rd(tape) == 'X') {
        mc_dir(tape, 'L');
        mc_wr(tape, 'X');
        state = Q1;
      } else if (mc_rd(tape) == 'A') {
        mc_dir(tape, 'd');
        mc_wr(tape, '0');
        state = H;
      } else {
        mc_fail();
      }
      break;
    case Q2:
      if (mc_rd(tape) == 'X') {
        mc_dir(tape, 'L');
        mc_wr(tape, 'X');
        state = Q2;
      } else if (mc_rd(tape) == '(') {
        mc_dir(tape, 'd');
        mc_wr(tape, '0');
        state = H;
      } else if (mc_rd(tape) == 'A') {
        mc_dir(tape, 'd');
        mc_wr(tape, '1');
        state = H;
      } else {
        mc_fail();
      }
      break;
    case S:
      state = Q0;
      break;
    }
  }
}

/* Support routines for C code emitted from code matrices.
 *
 * Streams: an mc_trinity holds the two input streams `left` and `right`
 * and the output stream `out`, plus one counter per builtin. A get call
 * counts whether or not the stream is empty, so a test and its negation
 * cost one call together.
 *
 * Tape: an mc_tape is a window of `size` squares; square i of the
 * machine's tape lives at cells[i + origin]. Reads outside the window
 * see the blank symbol.
 */
#ifndef MATRIXCODE_RT_H
#define MATRIXCODE_RT_H

#include <stddef.h>
#include <stdint.h>
#include <stdio.h>
#include <stdlib.h>

typedef struct mc_trinity {
  const int64_t *left;
  size_t left_len, left_pos;
  const int64_t *right;
  size_t right_len, right_pos;
  int64_t *out; /* capacity left_len + right_len */
  size_t out_len;
  long calls_getL, calls_getR, calls_putL, calls_putR;
} mc_trinity;

typedef struct mc_tape {
  char *cells;
  long size;
  long origin;
  long head;
  char dir; /* 'L', 'R' or 'd' */
  char blank;
} mc_tape;

static inline void mc_fail(void) {
  fputs("matrixcode: no transition applies\n", stderr);
  abort();
}

/* Binds the head of `left` to *x (when x is not NULL); 0 when empty. */
static inline int mc_getL(mc_trinity *io, int64_t *x) {
  io->calls_getL++;
  if (io->left_pos >= io->left_len) return 0;
  if (x) *x = io->left[io->left_pos];
  return 1;
}

static inline int mc_getR(mc_trinity *io, int64_t *x) {
  io->calls_getR++;
  if (io->right_pos >= io->right_len) return 0;
  if (x) *x = io->right[io->right_pos];
  return 1;
}

static inline void mc_putL(mc_trinity *io) {
  io->calls_putL++;
  if (io->left_pos >= io->left_len) mc_fail();
  io->out[io->out_len++] = io->left[io->left_pos++];
}

static inline void mc_putR(mc_trinity *io) {
  io->calls_putR++;
  if (io->right_pos >= io->right_len) mc_fail();
  io->out[io->out_len++] = io->right[io->right_pos++];
}

static inline char mc_rd(const mc_tape *t) {
  const long i = t->head + t->origin;
  return i >= 0 && i < t->size ? t->cells[i] : t->blank;
}

/* Writes at the head, then moves one square in the current direction. */
static inline void mc_wr(mc_tape *t, char c) {
  const long i = t->head + t->origin;
  if (i < 0 || i >= t->size) mc_fail();
  t->cells[i] = c;
  if (t->dir == 'L') t->head--;
  else if (t->dir == 'R') t->head++;
}

static inline void mc_dir(mc_tape *t, char d) { t->dir = d; }

#endif /* MATRIXCODE_RT_H */

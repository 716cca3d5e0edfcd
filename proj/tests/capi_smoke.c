/* The public header must compile as C and link against the shared library. */
#include <stdio.h>

#include "fanforge.h"

int main(void) {
  ff_state* s = NULL;
  size_t copies = 0;
  if (ff_build(1, 4, &s) != FF_OK) {
    fprintf(stderr, "%s\n", ff_last_error());
    return 1;
  }
  if (ff_state_copy_count(s, &copies) != FF_OK || copies != 13) return 1;
  ff_state_free(s);
  printf("ok %s\n", ff_version());
  return 0;
}

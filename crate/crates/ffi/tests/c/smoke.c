#include <stdio.h>
#include <string.h>
#include "frobpow.h"

#define CHECK(cond) do { if (!(cond)) { fprintf(stderr, "failed: %s (%s)\n", #cond, fp_last_error() ? fp_last_error() : ""); return 1; } } while (0)

int main(void) {
    FpRing *ring = NULL;
    FpIdeal *ideal = NULL, *bracket = NULL;
    char *gb = NULL;
    uint64_t len = 0;

    CHECK(fp_ring_parse("GF(2)[x,y,z]/(x^3+y^3+z^3)", &ring) == FP_OK);
    CHECK(fp_ideal_parse(ring, "(x, y)", &ideal) == FP_OK);
    CHECK(fp_ideal_frobenius_power(ideal, 2, &bracket) == FP_OK);
    CHECK(fp_ideal_length(bracket, &len) == FP_OK);
    CHECK(len == 12);
    CHECK(fp_ideal_groebner(ideal, &gb) == FP_OK);
    printf("%s\n", gb);
    fp_string_free(gb);
    CHECK(fp_ideal_frobenius_power(ideal, 3, &bracket) == FP_INVALID_ARGUMENT);
    fp_ideal_free(bracket);
    fp_ideal_free(ideal);
    fp_ring_free(ring);
    return 0;
}

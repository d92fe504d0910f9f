#include <stdio.h>
#include <string.h>

#include "charq.h"

#define CHECK(expr)                                                        \
    do {                                                                   \
        CharqStatus st_ = (expr);                                          \
        if (st_ != CHARQ_STATUS_OK) {                                      \
            fprintf(stderr, "%s -> %d: %s\n", #expr, st_, charq_last_error()); \
            return 1;                                                      \
        }                                                                  \
    } while (0)

int main(void) {
    CharqRational *fhl = NULL, *sub = NULL;
    CharqGroup *torus = NULL;
    CharqCharacter *ch = NULL;
    CharqSeries *h = NULL;
    char *report = NULL;
    const uint32_t degs[] = {2, 2, 2, 2};
    const int64_t expected[] = {1, 0, 2, 0, 6, 0, 15};

    CHECK(charq_rational_fhl(&fhl));
    CHECK(charq_rational_substitute(fhl, &sub));
    CHECK(charq_rational_series(sub, 30, &ch));
    CHECK(charq_group_from_json("{\"type\":\"torus\",\"n\":2,\"weights\":[[1,-1]]}", &torus));
    CHECK(charq_hilbert_invariants(torus, ch, &h));
    for (size_t d = 0; d < 7; d++) {
        int64_t v = 0;
        CHECK(charq_series_coeff(h, d, &v));
        if (v != expected[d]) {
            fprintf(stderr, "coefficient %zu: %lld\n", d, (long long)v);
            return 1;
        }
    }
    CHECK(charq_fit(h, degs, 4, 5, &report));
    puts(report);
    if (strstr(report, "\"numerator\":[1,0,-2,0,4,0,-1]") == NULL) {
        return 1;
    }
    if (charq_group_from_json("{\"type\":\"so\",\"n\":2}", &torus) != CHARQ_STATUS_INVALID_INPUT) {
        return 1;
    }
    charq_string_free(report);
    charq_series_free(h);
    charq_character_free(ch);
    charq_group_free(torus);
    charq_rational_free(sub);
    charq_rational_free(fhl);
    return 0;
}

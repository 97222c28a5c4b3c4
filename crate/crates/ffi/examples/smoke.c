#include <stdio.h>
#include <string.h>
#include "weighted_catalan.h"

int main(void) {
    WcWeight *w = NULL;
    char *s = NULL;
    if (wc_weight_parse("oddsq", &w) != WC_STATUS_OK) return 10;
    if (wc_weighted_catalan(w, 3, WC_METHOD_DP, 0, &s) != WC_STATUS_OK) return 11;
    int ok = strcmp(s, "325") == 0;
    printf("C_3 = %s\n", s);
    wc_string_free(s);

    bool all = false;
    if (wc_verify_weighted(w, 64, 8, 64, &all) != WC_STATUS_OK || !all) return 12;
    wc_weight_free(w);

    if (wc_weight_parse("poly:1,2", &w) != WC_STATUS_OK) return 13;
    if (wc_verify_weighted(w, 4, 8, 64, &all) != WC_STATUS_NOT_IN_CLASS) return 14;
    printf("rejected: %s\n", wc_last_error_message());
    wc_weight_free(w);

    if (wc_weight_parse("bogus", &w) != WC_STATUS_PARSE) return 15;
    return ok ? 0 : 1;
}

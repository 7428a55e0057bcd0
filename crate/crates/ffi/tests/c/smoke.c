/* Loads the zero-divisor example and prints the verdict of pair P. */
#include <stdio.h>
#include "cmpairs.h"

static const char *SOURCE =
    "ring R = poly(x,y)/(x*y);\n"
    "ideal I = (x);\n"
    "module M = quotient(R, I);\n"
    "module N = coker(R, [[x]], shifts=[(0,1)]);\n"
    "pair P = (M, N) wrt I;\n";

int main(void) {
    CmpDocument *doc = NULL;
    if (cmp_document_load(SOURCE, &doc) != CMP_STATUS_OK) {
        fprintf(stderr, "load: %s\n", cmp_last_error());
        return 1;
    }
    CmpExtNat cd;
    if (cmp_pair_cd(doc, "P", &cd) != CMP_STATUS_OK || cd.kind != CMP_EXT_KIND_INFINITE) {
        fprintf(stderr, "cd: %s\n", cmp_last_error());
        cmp_document_free(doc);
        return 1;
    }
    char *verdict = NULL;
    CmpStatus s = cmp_pair_verdict(doc, "P", &verdict);
    if (s == CMP_STATUS_OK) {
        printf("%s\n", verdict);
    }
    cmp_string_free(verdict);
    if (cmp_pair_cd(doc, "Missing", &cd) != CMP_STATUS_NOT_FOUND) {
        s = CMP_STATUS_INTERNAL;
    }
    cmp_document_free(doc);
    return s == CMP_STATUS_OK ? 0 : 1;
}
